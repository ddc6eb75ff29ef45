from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from nottingham_torsion.series import Prime, as_prime
from nottingham_torsion.utils.errors import DomainError, UsageError
from nottingham_torsion.utils.util import coprime_indices


@dataclass(frozen=True)
class Character:
    """
    A continuous character U_1 -> Z/p^2, stored by its values c_j = chi(E_j).

    Only nonzero coefficients are stored. `bound` is the degree through which
    units must be known to evaluate the character; it is raised automatically to
    the character's depth max(support, p * (largest unit index)), because
    chi(E_(kp)) = p c_k can be nonzero beyond the support. Equality and hashing
    ignore `bound`.

    Attributes:
        prime (Prime): The characteristic.
        coeffs (tuple[tuple[int, int], ...]): (j, c_j) with p not dividing j and 0 < c_j < p^2, ascending.
        bound (int): Evaluation bound m.
    """
    prime: Prime
    coeffs: tuple[tuple[int, int], ...]
    bound: int = field(default=1, compare=False)

    def __post_init__(self):
        p, psq = self.prime.p, self.prime.psq
        indices = [j for j, _ in self.coeffs]
        if indices != sorted(set(indices)):
            raise UsageError("character indices must be ascending and distinct")
        for j, c in self.coeffs:
            if j < 1 or j % p == 0:
                raise UsageError(f"index {j} is not a positive {p}-coprime index")
            if not 0 < c < psq:
                raise UsageError(f"coefficient {c} at index {j} is not a nonzero residue mod {psq}")
        object.__setattr__(self, "bound", max(self.bound, self.depth, 1))

    @classmethod
    def from_mapping(cls, prime: Prime | int, mapping: Mapping[int, int], bound: int = 1) -> Character:
        """Build from j -> c_j, reducing values mod p^2 and dropping zeros."""
        prime = as_prime(prime)
        coeffs = tuple((j, mapping[j] % prime.psq) for j in sorted(mapping) if mapping[j] % prime.psq)
        return cls(prime, coeffs, bound)

    @property
    def depth(self) -> int:
        units = self.unit_indices
        support = [j for j, _ in self.coeffs]
        return max(support + [self.prime.p * units[-1] if units else 0] + [0])

    @property
    def unit_indices(self) -> list[int]:
        return [j for j, c in self.coeffs if c % self.prime.p]

    @property
    def is_surjective(self) -> bool:
        return bool(self.unit_indices)

    def coefficient(self, j: int) -> int:
        return dict(self.coeffs).get(j, 0)

    def as_dict(self) -> dict[int, int]:
        return dict(self.coeffs)

    def rebound(self, bound: int) -> Character:
        """The same character with a different evaluation bound (never below its depth)."""
        if bound < self.depth:
            raise UsageError(f"bound {bound} is below the character depth {self.depth}")
        return Character(self.prime, self.coeffs, bound)

    def sort_key(self) -> tuple[int, ...]:
        """Coefficient vector over every p-coprime index up to the bound; orders characters lexicographically."""
        values = dict(self.coeffs)
        return tuple(values.get(j, 0) for j in coprime_indices(self.prime.p, 1, self.bound))


@dataclass(frozen=True)
class TypeLM:
    """The break sequence <l, m> of a character of order p^2."""
    l: int
    m: int

    def __str__(self) -> str:
        return f"<{self.l},{self.m}>"


@dataclass(frozen=True)
class StandardExpansion:
    """
    The digit split chi = sum x_i Z_i + sum a_j p Z_j with digits in [0, p).

    Attributes:
        prime (Prime): The characteristic.
        type (TypeLM): The break sequence of the expanded character.
        x (tuple[tuple[int, int], ...]): Nonzero unit digits x_i for i <= l.
        a (tuple[tuple[int, int], ...]): Nonzero p-digits a_j for j <= m.
    """
    prime: Prime
    type: TypeLM
    x: tuple[tuple[int, int], ...]
    a: tuple[tuple[int, int], ...]

    def __post_init__(self):
        x, a = dict(self.x), dict(self.a)
        if x.get(self.type.l, 0) == 0:
            raise DomainError(f"x_{self.type.l} must be nonzero")
        if self.type.m % self.prime.p and a.get(self.type.m, 0) == 0:
            raise DomainError(f"a_{self.type.m} must be nonzero when p does not divide m")

    def x_dict(self) -> dict[int, int]:
        return dict(self.x)

    def a_dict(self) -> dict[int, int]:
        return dict(self.a)

    def to_character(self) -> Character:
        p = self.prime.p
        values: dict[int, int] = {}
        for i, x_i in self.x:
            values[i] = values.get(i, 0) + x_i
        for j, a_j in self.a:
            values[j] = values.get(j, 0) + p * a_j
        return Character.from_mapping(self.prime, values, bound=self.type.m)


@dataclass(frozen=True)
class ReducedForm:
    """
    A reduced form x_l Z_l + sum_(m-l <= j <= m, p does not divide j) b_j p Z_j.

    When p = 2 and m = 2l the index l is in both parts; x_l and b_l are kept
    apart here and summed by `to_character`.

    Attributes:
        prime (Prime): The characteristic.
        l (int): First break.
        m (int): Second break.
        x_l (int): Unit digit in [1, p).
        b (tuple[tuple[int, int], ...]): (j, b_j) over every p-coprime j in [m - l, m], zeros included.
    """
    prime: Prime
    l: int
    m: int
    x_l: int
    b: tuple[tuple[int, int], ...]

    def __post_init__(self):
        p = self.prime.p
        if not 0 < self.x_l < p:
            raise DomainError(f"x_l must lie in [1, {p}), got {self.x_l}")
        if [j for j, _ in self.b] != self.window:
            raise DomainError(f"b must be indexed by the {p}-coprime indices in [{self.m - self.l}, {self.m}]")
        if any(not 0 <= b_j < p for _, b_j in self.b):
            raise DomainError(f"b digits must lie in [0, {p})")
        if self.m % p and dict(self.b)[self.m] == 0:
            raise DomainError("b_m must be nonzero when p does not divide m")

    @property
    def type(self) -> TypeLM:
        return TypeLM(self.l, self.m)

    @property
    def window(self) -> list[int]:
        return coprime_indices(self.prime.p, self.m - self.l, self.m)

    def to_character(self) -> Character:
        p = self.prime.p
        values = {self.l: self.x_l}
        for j, b_j in self.b:
            values[j] = values.get(j, 0) + p * b_j
        return Character.from_mapping(self.prime, values, bound=self.m)
