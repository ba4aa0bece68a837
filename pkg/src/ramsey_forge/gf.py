"""Arithmetic in GF(p^t) and its quadratic character.

Elements are polynomials over GF(p) of degree < t, reduced modulo a fixed
monic irreducible. The canonical enumeration ``a_0, a_1, ...`` maps index
``n`` to the element whose coefficient vector is the base-p expansion of
``n`` (constant term = least significant digit), so ``a_0 = 0`` and, for
t = 1, ``a_n = n``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np

from .errors import InvalidInput, UnsupportedField

MAX_ORDER = 2**31 - 1


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, t)`` with ``p**t == q`` and p prime, or None."""
    if q < 2:
        return None
    for p in range(2, q + 1):
        if p * p > q:
            break
        if q % p == 0:
            t = 0
            while q % p == 0:
                q //= p
                t += 1
            return (p, t) if q == 1 else None
    return (q, 1)


# -- polynomial helpers (coefficient lists, constant term first) ------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], m: tuple[int, ...], p: int) -> list[int]:
    """Remainder of a modulo the monic polynomial m over GF(p)."""
    a = _trim([c % p for c in a])
    dm = len(m) - 1
    while len(a) - 1 >= dm:
        lead = a[-1]
        shift = len(a) - 1 - dm
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - lead * c) % p
        _trim(a)
    return a


def _monic_polys(p: int, degree: int):
    for low in product(range(p), repeat=degree):
        # product varies the last position fastest; reverse so the
        # constant term is the fastest-varying (least significant) digit
        yield tuple(reversed(low)) + (1,)


def is_irreducible(poly: tuple[int, ...], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    deg = len(poly) - 1
    if deg < 1 or poly[-1] != 1:
        return False
    for d in range(1, deg // 2 + 1):
        for divisor in _monic_polys(p, d):
            if not _poly_mod(list(poly), divisor, p):
                return False
    return True


def smallest_irreducible(p: int, t: int) -> tuple[int, ...]:
    """Monic irreducible of degree t whose lower coefficients, read as a
    base-p number (constant term least significant), are smallest."""
    for n in range(p**t):
        low = tuple((n // p**i) % p for i in range(t))
        poly = low + (1,)
        if is_irreducible(poly, p):
            return poly
    raise AssertionError(f"no irreducible of degree {t} over GF({p})")  # pragma: no cover


@dataclass(frozen=True)
class FieldElement:
    coeffs: tuple[int, ...]

    def __repr__(self) -> str:
        return f"FieldElement{self.coeffs}"


@dataclass(frozen=True)
class FieldSpec:
    p: int
    t: int
    irreducible: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p**self.t

    @property
    def order_list(self) -> tuple[FieldElement, ...]:
        return _order_list(self.p, self.t)

    def __len__(self) -> int:
        return self.q

    # conversions between canonical indices and elements
    def element(self, index: int) -> FieldElement:
        if not 0 <= index < self.q:
            raise InvalidInput(f"index {index} outside GF({self.q})")
        return FieldElement(tuple((index // self.p**i) % self.p for i in range(self.t)))

    def index(self, x: FieldElement) -> int:
        self.check(x)
        return sum(c * self.p**i for i, c in enumerate(x.coeffs))

    def check(self, x: FieldElement) -> FieldElement:
        if len(x.coeffs) != self.t:
            raise InvalidInput(f"expected {self.t} coefficients, got {len(x.coeffs)}")
        for c in x.coeffs:
            if not 0 <= c < self.p:
                raise InvalidInput(f"coefficient {c} outside [0, {self.p - 1}]")
        return x

    @property
    def zero(self) -> FieldElement:
        return FieldElement((0,) * self.t)

    @property
    def one(self) -> FieldElement:
        return FieldElement((1,) + (0,) * (self.t - 1))

    def add(self, x: FieldElement, y: FieldElement) -> FieldElement:
        self.check(x), self.check(y)
        return FieldElement(tuple((a + b) % self.p for a, b in zip(x.coeffs, y.coeffs)))

    def neg(self, x: FieldElement) -> FieldElement:
        self.check(x)
        return FieldElement(tuple((-a) % self.p for a in x.coeffs))

    def sub(self, x: FieldElement, y: FieldElement) -> FieldElement:
        return self.add(x, self.neg(y))

    def mul(self, x: FieldElement, y: FieldElement) -> FieldElement:
        self.check(x), self.check(y)
        prod = [0] * (2 * self.t - 1)
        for i, a in enumerate(x.coeffs):
            if a:
                for j, b in enumerate(y.coeffs):
                    prod[i + j] += a * b
        r = _poly_mod(prod, self.irreducible, self.p)
        return FieldElement(tuple(r) + (0,) * (self.t - len(r)))

    def pow(self, x: FieldElement, e: int) -> FieldElement:
        if e < 0:
            return self.pow(self.inv(x), -e)
        result, base = self.one, x
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, x: FieldElement) -> FieldElement:
        if x == self.zero:
            raise ZeroDivisionError("zero has no inverse")
        return self.pow(x, self.q - 2)

    def quad_char(self, b: FieldElement) -> int:
        return quad_char(self, b)


@lru_cache(maxsize=None)
def _order_list(p: int, t: int) -> tuple[FieldElement, ...]:
    spec = FieldSpec(p, t, ())
    return tuple(spec.element(n) for n in range(p**t))


def field_create(p: int, t: int = 1) -> FieldSpec:
    """Build GF(p^t) with the lexicographically smallest irreducible."""
    if not isinstance(p, int) or not is_prime(p):
        raise InvalidInput(f"{p} is not prime")
    if not isinstance(t, int) or t < 1:
        raise InvalidInput(f"extension degree must be >= 1, got {t}")
    if p**t > MAX_ORDER:
        raise InvalidInput(f"GF({p}^{t}) exceeds the supported order")
    return FieldSpec(p, t, smallest_irreducible(p, t))


def field_from_order(q: int) -> FieldSpec:
    pt = prime_power(q)
    if pt is None:
        raise InvalidInput(f"{q} is not a prime power")
    return field_create(*pt)


def field_mul(spec: FieldSpec, x: FieldElement, y: FieldElement) -> FieldElement:
    return spec.mul(x, y)


def quad_char(spec: FieldSpec, b: FieldElement) -> int:
    """0 for zero, +1 for nonzero squares, -1 otherwise (Euler's criterion)."""
    if spec.p == 2:
        raise UnsupportedField("quadratic character needs odd characteristic")
    spec.check(b)
    if b == spec.zero:
        return 0
    r = spec.pow(b, (spec.q - 1) // 2)
    if r == spec.one:
        return 1
    assert r == spec.neg(spec.one), r
    return -1


@lru_cache(maxsize=64)
def _chi_table(spec: FieldSpec) -> np.ndarray:
    table = np.array([quad_char(spec, x) for x in spec.order_list], dtype=np.int8)
    table.flags.writeable = False
    return table


def chi_table(spec: FieldSpec) -> np.ndarray:
    """Quadratic character of every element, indexed canonically."""
    return _chi_table(spec)


def difference_indices(spec: FieldSpec) -> np.ndarray:
    """q x q array whose (i, j) entry is the index of a_i - a_j."""
    idx = np.arange(spec.q)
    digits = np.stack([(idx // spec.p**i) % spec.p for i in range(spec.t)], axis=1)
    diff = (digits[:, None, :] - digits[None, :, :]) % spec.p
    weights = np.array([spec.p**i for i in range(spec.t)], dtype=np.int64)
    return diff @ weights


def character_matrix(spec: FieldSpec) -> np.ndarray:
    """The matrix chi(a_i - a_j) as int64."""
    return chi_table(spec).astype(np.int64)[difference_indices(spec)]
