from typing import Hashable, Iterable


class UnionFind:
    """Disjoint sets with path compression and union by rank."""

    def __init__(self, items: Iterable[Hashable]):
        self.parent = {x: x for x in items}
        self.rank = {x: 0 for x in self.parent}

    def find(self, x):
        y = self.parent[x]
        if self.parent[y] != y:
            y = self.parent[x] = self.find(y)
        return y

    def union(self, x, y) -> bool:
        """Merge the sets of x and y; False if they were already one set."""
        x, y = self.find(x), self.find(y)
        if x == y:
            return False
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        elif self.rank[x] == self.rank[y]:
            self.rank[x] += 1
        self.parent[y] = x
        del self.rank[y]
        return True

    def same(self, x, y) -> bool:
        return self.find(x) == self.find(y)

    def groups(self) -> list[list]:
        """The sets, each in insertion order, ordered by first member."""
        found: dict = {}
        for x in self.parent:
            found.setdefault(self.find(x), []).append(x)
        return list(found.values())

    def __len__(self) -> int:
        return len(self.rank)
