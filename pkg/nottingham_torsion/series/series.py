"""
Truncated power series over F_p.

Principal units 1 + a_1 t + ... + a_N t^N are held as `UnitSeries`; elements
u(t) = t * (unit) of the Nottingham group as `NottinghamElt`. The precision N of
both is the highest tracked degree of the unit part.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Mapping

import numpy as np
from sympy import isprime

from nottingham_torsion.utils.errors import UsageError
from nottingham_torsion.utils.util import coprime_indices, split_p_power

logger = logging.getLogger(__name__)

MAX_PRIME = 31


@dataclass(frozen=True)
class Prime:
    """A prime p with 2 <= p <= 31, and its square."""
    p: int
    psq: int = field(init=False, repr=False)

    def __post_init__(self):
        if isinstance(self.p, bool) or int(self.p) != self.p:
            raise UsageError(f"p must be an integer, got {self.p!r}")
        object.__setattr__(self, "p", int(self.p))
        if not 2 <= self.p <= MAX_PRIME or not isprime(self.p):
            raise UsageError(f"p must be a prime in [2, {MAX_PRIME}], got {self.p}")
        object.__setattr__(self, "psq", self.p * self.p)

    def __int__(self) -> int:
        return self.p


def as_prime(value: Prime | int) -> Prime:
    return value if isinstance(value, Prime) else Prime(value)


@dataclass(frozen=True)
class UnitSeries:
    """
    A principal unit 1 + a_1 t + ... + a_N t^N over F_p, truncated at degree N.

    Attributes:
        prime (Prime): The characteristic.
        precision (int): N, the highest tracked degree.
        coeffs (tuple[int, ...]): a_1 .. a_N as residues in [0, p).
    """
    prime: Prime
    precision: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.precision < 1:
            raise UsageError(f"precision must be positive, got {self.precision}")
        if len(self.coeffs) != self.precision:
            raise UsageError(f"expected {self.precision} coefficients, got {len(self.coeffs)}")
        p = self.prime.p
        if any(not 0 <= c < p for c in self.coeffs):
            raise UsageError(f"coefficients must be residues mod {p}: {self.coeffs}")

    @classmethod
    def one(cls, prime: Prime | int, precision: int) -> UnitSeries:
        return cls(as_prime(prime), precision, (0,) * precision)

    @classmethod
    def from_full(cls, prime: Prime | int, precision: int, values: Iterable[int]) -> UnitSeries:
        """
        Build a unit from coefficients c_0, c_1, ... (c_0 must be 1 mod p).

        Missing degrees are zero and degrees above `precision` are dropped.
        """
        prime = as_prime(prime)
        p = prime.p
        values = [int(v) % p for v in values]
        if not values or values[0] != 1:
            raise UsageError("a principal unit must have constant term 1")
        body = values[1:precision + 1]
        body += [0] * (precision - len(body))
        return cls(prime, precision, tuple(body))

    @classmethod
    def from_terms(cls, prime: Prime | int, precision: int, terms: Mapping[int, int]) -> UnitSeries:
        """Build 1 + sum(c * t^k) from a degree -> coefficient map; degree 0 is implicit."""
        prime = as_prime(prime)
        body = [0] * precision
        for k, c in terms.items():
            if k < 1:
                raise UsageError(f"degree must be positive, got {k}")
            if k <= precision:
                body[k - 1] = (body[k - 1] + c) % prime.p
        return cls(prime, precision, tuple(body))

    @classmethod
    def basis(cls, prime: Prime | int, j: int, precision: int) -> UnitSeries:
        """E_j = 1 + t^j."""
        return cls.from_terms(prime, precision, {j: 1})

    def coefficient(self, k: int) -> int:
        if k == 0:
            return 1
        if not 1 <= k <= self.precision:
            raise UsageError(f"degree {k} outside tracked range 0..{self.precision}")
        return self.coeffs[k - 1]

    def full_coefficients(self) -> np.ndarray:
        return np.array((1,) + self.coeffs, dtype=np.int64)

    def truncate(self, precision: int) -> UnitSeries:
        if precision > self.precision:
            raise UsageError(f"cannot raise precision from {self.precision} to {precision}")
        return UnitSeries(self.prime, precision, self.coeffs[:precision])

    def valuation(self) -> int | None:
        """Lowest k >= 1 with a_k != 0, or None for the unit 1."""
        for k, c in enumerate(self.coeffs, start=1):
            if c:
                return k
        return None

    def is_one(self) -> bool:
        return not any(self.coeffs)

    def __mul__(self, other: UnitSeries) -> UnitSeries:
        return unit_mul(self, other)

    def __pow__(self, e: int) -> UnitSeries:
        return unit_pow(self, e)

    def __str__(self) -> str:
        return format_unit(self)


@dataclass(frozen=True)
class NottinghamElt:
    """
    A group element u(t) = t * unit(t) of the Nottingham group, truncated.

    Attributes:
        unit (UnitSeries): u(t)/t; its precision is the element's precision.
    """
    unit: UnitSeries

    @property
    def prime(self) -> Prime:
        return self.unit.prime

    @property
    def precision(self) -> int:
        return self.unit.precision

    @classmethod
    def identity(cls, prime: Prime | int, precision: int) -> NottinghamElt:
        return cls(UnitSeries.one(prime, precision))

    @classmethod
    def from_coefficients(cls, prime: Prime | int, coeffs: Iterable[int]) -> NottinghamElt:
        """t(1 + a_1 t + ... + a_N t^N) from a_1 .. a_N."""
        prime = as_prime(prime)
        coeffs = tuple(int(a) % prime.p for a in coeffs)
        return cls(UnitSeries(prime, len(coeffs), coeffs))

    def is_identity(self) -> bool:
        return self.unit.is_one()

    def truncate(self, precision: int) -> NottinghamElt:
        return NottinghamElt(self.unit.truncate(precision))

    def __str__(self) -> str:
        return format_nottingham_product(self)


@dataclass(frozen=True)
class ExponentVector:
    """
    Exponents e_j in Z/p^2 over the p-coprime indices j <= bound.

    Attributes:
        prime (Prime): The characteristic.
        bound (int): m; keys are exactly the p-coprime j in [1, m].
        exps (tuple[tuple[int, int], ...]): (j, e_j) pairs, ascending in j, zeros included.
    """
    prime: Prime
    bound: int
    exps: tuple[tuple[int, int], ...]

    def __post_init__(self):
        p, psq = self.prime.p, self.prime.psq
        keys = [j for j, _ in self.exps]
        if keys != coprime_indices(p, 1, self.bound):
            raise UsageError(f"exponent keys must be the {p}-coprime indices up to {self.bound}")
        if any(not 0 <= e < psq for _, e in self.exps):
            raise UsageError(f"exponents must be reduced mod {psq}")

    @classmethod
    def from_mapping(cls, prime: Prime | int, bound: int, mapping: Mapping[int, int]) -> ExponentVector:
        prime = as_prime(prime)
        for j in mapping:
            if j < 1 or j > bound or j % prime.p == 0:
                raise UsageError(f"index {j} is not a {prime.p}-coprime index in [1, {bound}]")
        return cls(prime, bound,
                   tuple((j, mapping.get(j, 0) % prime.psq) for j in coprime_indices(prime.p, 1, bound)))

    def get(self, j: int) -> int:
        return dict(self.exps).get(j, 0)

    def as_dict(self) -> dict[int, int]:
        """Nonzero exponents only."""
        return {j: e for j, e in self.exps if e}


def _require_compatible(a: UnitSeries, b: UnitSeries) -> None:
    if a.prime != b.prime:
        raise UsageError(f"mismatched primes {a.prime.p} and {b.prime.p}")
    if a.precision != b.precision:
        raise UsageError(f"mismatched precisions {a.precision} and {b.precision}")


def unit_mul(a: UnitSeries, b: UnitSeries) -> UnitSeries:
    """
    Product of two units, truncated at their common precision.

    Raises:
        UsageError: If primes or precisions differ.
    """
    _require_compatible(a, b)
    product = np.convolve(a.full_coefficients(), b.full_coefficients())[: a.precision + 1]
    return UnitSeries.from_full(a.prime, a.precision, product)


def unit_inverse(a: UnitSeries) -> UnitSeries:
    p, n = a.prime.p, a.precision
    full = (1,) + a.coeffs
    inverse = [1] + [0] * n
    for k in range(1, n + 1):
        inverse[k] = -sum(full[i] * inverse[k - i] for i in range(1, k + 1)) % p
    return UnitSeries(a.prime, n, tuple(inverse[1:]))


def basis_power(prime: Prime | int, j: int, e: int, precision: int) -> UnitSeries:
    """
    (1 + t^j)^e for any integer e, by the binomial series.

    Only degrees i*j survive, with coefficient binom(e, i); for e < 0 that is
    (-1)^i * binom(-e + i - 1, i).
    """
    prime = as_prime(prime)
    terms = {}
    for i in range(1, precision // j + 1):
        if e >= 0:
            c = comb(e, i)
        else:
            c = (-1) ** i * comb(-e + i - 1, i)
        if c % prime.p:
            terms[i * j] = c
    return UnitSeries.from_terms(prime, precision, terms)


def unit_pow(a: UnitSeries, e: int) -> UnitSeries:
    """
    a^e at a's precision; negative e goes through the multiplicative inverse.
    """
    if e < 0:
        return unit_pow(unit_inverse(a), -e)
    k = a.valuation()
    if k is None:
        return a
    if a.coeffs[k - 1] == 1 and not any(a.coeffs[k:]):
        return basis_power(a.prime, k, e, a.precision)
    result = UnitSeries.one(a.prime, a.precision)
    base = a
    while e:
        if e & 1:
            result = unit_mul(result, base)
        e >>= 1
        if e:
            base = unit_mul(base, base)
    return result


def unit_subst(f: UnitSeries, u: NottinghamElt) -> UnitSeries:
    """
    The unit f(u(t)), truncated at u's precision.

    Raises:
        UsageError: If primes differ or f is tracked to a lower degree than u.
    """
    if f.prime != u.prime:
        raise UsageError(f"mismatched primes {f.prime.p} and {u.prime.p}")
    if f.precision < u.precision:
        raise UsageError(f"series precision {f.precision} is below element precision {u.precision}")
    p, n = u.prime.p, u.precision
    inner = u.unit.full_coefficients()
    result = np.zeros(n + 1, dtype=np.int64)
    result[0] = 1
    # power holds (u/t)^k through degree n - k
    power = np.ones(1, dtype=np.int64)
    for k in range(1, n + 1):
        power = np.convolve(power, inner)[: n + 1 - k] % p
        a_k = f.coeffs[k - 1]
        if a_k:
            result[k:] += a_k * power
    return UnitSeries.from_full(u.prime, n, result)


def basis_subst(j: int, u: NottinghamElt, precision: int | None = None) -> UnitSeries:
    """
    E_j(u(t)) = 1 + t^j (u/t)^j, truncated at `precision` (default: u's precision).

    Only u's coefficients up to degree precision - j are read, so a short prefix
    of u is enough when j is large.
    """
    n = u.precision if precision is None else precision
    body_degree = n - j
    if body_degree < 0:
        return UnitSeries.one(u.prime, n)
    if body_degree > u.precision:
        raise UsageError(f"need element coefficients through degree {body_degree}, have {u.precision}")
    values = [1] + [0] * n
    values[j] = 1
    if body_degree >= 1:
        body = unit_pow(u.unit.truncate(body_degree), j)
        for k, c in enumerate(body.coeffs, start=1):
            values[j + k] = c
    return UnitSeries.from_full(u.prime, n, values)


def nott_compose(u: NottinghamElt, v: NottinghamElt) -> NottinghamElt:
    """
    w(t) = u(v(t)).

    With u = t U(t) and v = t V(t), w = t V(t) U(v(t)).

    Raises:
        UsageError: If primes or precisions differ.
    """
    _require_compatible(u.unit, v.unit)
    return NottinghamElt(unit_mul(v.unit, unit_subst(u.unit, v)))


def nott_inverse(u: NottinghamElt) -> NottinghamElt:
    """
    The compositional inverse, solved degree by degree.

    The coefficient of t^(k+1) in u(w(t)) is w_k plus terms in w_1 .. w_(k-1),
    so each w_k is fixed by one back-substitution.
    """
    p, n = u.prime.p, u.precision
    coeffs = [0] * n
    for k in range(1, n + 1):
        trial = NottinghamElt(UnitSeries(u.prime, n, tuple(coeffs)))
        residual = nott_compose(u, trial).unit.coefficient(k)
        coeffs[k - 1] = (coeffs[k - 1] - residual) % p
    return NottinghamElt(UnitSeries(u.prime, n, tuple(coeffs)))


def unit_decompose(f: UnitSeries, m: int) -> ExponentVector:
    """
    Exponents e with f = prod E_j^(e_j) modulo U_(m+1), each e_j mod p^2.

    Greedy, lowest degree first: a residual coefficient c at degree k = p^s k'
    is stripped by E_k^(-c) = E_(k')^(-c p^s), adding c p^s to e_(k'); for s >= 2
    the contribution vanishes mod p^2.

    Raises:
        UsageError: If f is tracked to a degree below m.
    """
    if f.precision < m:
        raise UsageError(f"series precision {f.precision} is below decomposition bound {m}")
    p, psq = f.prime.p, f.prime.psq
    residual = f.truncate(m)
    exps = {j: 0 for j in coprime_indices(p, 1, m)}
    for k in range(1, m + 1):
        c = residual.coeffs[k - 1]
        if not c:
            continue
        s, base = split_p_power(k, p)
        if s < 2:
            exps[base] = (exps[base] + c * p ** s) % psq
        residual = unit_mul(residual, basis_power(f.prime, k, -c, m))
    return ExponentVector(f.prime, m, tuple(exps.items()))


def unit_recompose(e: ExponentVector, precision: int) -> UnitSeries:
    """
    prod E_j^(e_j) at the given precision, exponents taken in [0, p^2).

    Raises:
        UsageError: If precision is below the vector's bound.
    """
    if precision < e.bound:
        raise UsageError(f"precision {precision} is below exponent bound {e.bound}")
    result = UnitSeries.one(e.prime, precision)
    for j, exponent in e.exps:
        if exponent:
            result = unit_mul(result, basis_power(e.prime, j, exponent, precision))
    return result


def nottingham_factorization(u: NottinghamElt) -> tuple[tuple[int, int], ...]:
    """
    The product form u(t) = t * prod_k (1 + t^k)^(n_k), n_k in [0, p).

    Every k >= 1 appears as a factor (p-divisible k included), which makes the
    digits n_k unique at the element's precision. Only nonzero digits are returned.
    """
    residual = u.unit
    factors = []
    for k in range(1, u.precision + 1):
        c = residual.coeffs[k - 1]
        if c:
            factors.append((k, c))
            residual = unit_mul(residual, basis_power(u.prime, k, -c, u.precision))
    return tuple(factors)


def nottingham_from_factorization(prime: Prime | int, precision: int,
                                  factors: Iterable[tuple[int, int]]) -> NottinghamElt:
    """t * prod (1 + t^k)^(n_k); exponents may be any integer."""
    unit = UnitSeries.one(prime, precision)
    for k, n_k in factors:
        unit = unit_mul(unit, basis_power(prime, k, n_k, precision))
    return NottinghamElt(unit)


def format_unit(f: UnitSeries) -> str:
    """Sum-of-terms text, e.g. "1+t^3+2*t^4"."""
    terms = ["1"]
    for k, c in enumerate(f.coeffs, start=1):
        if not c:
            continue
        monomial = "t" if k == 1 else f"t^{k}"
        terms.append(monomial if c == 1 else f"{c}*{monomial}")
    return "+".join(terms)


def format_nottingham_product(u: NottinghamElt) -> str:
    """Product text, e.g. "t*(1+t^2)^1*(1+t^4)^2"; the identity is "t"."""
    factors = ["t"]
    for k, n_k in nottingham_factorization(u):
        monomial = "t" if k == 1 else f"t^{k}"
        factors.append(f"(1+{monomial})^{n_k}")
    return "*".join(factors)
