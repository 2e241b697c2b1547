"""Field tower F_p ⊂ F_q ⊂ F_{q²} with a canonical integer encoding.

An element of F_{q²} is the integer ``lo + hi*q`` where ``lo`` and ``hi`` are
its F_q coordinates in the basis {1, θ}, θ a root of the top modulus. F_q
elements use galois' integer representation (the base-p digits of their
polynomial coefficients), so F_q occupies exactly the indices [0, q).
"""
from __future__ import annotations

import functools
import logging

import galois
import numpy as np

from hermgrs.errors import (DefectError, DivisionByZero, InputError, InvalidCode, NoIrreducibleFound, NotPrime,
                            TooLarge)
from hermgrs.settings import load_caps

logger = logging.getLogger(__name__)

Elt = int


def _scalar_or_array(result):
    result = np.asarray(result)
    if result.ndim == 0:
        return int(result)
    return result


def _as_index(value) -> np.ndarray:
    return np.asarray(value, dtype=np.int64)


class FieldTower:
    """Arithmetic context for F_{q²}; immutable once built.

    Ring operations take Python ints or numpy integer arrays and work
    elementwise. Scalar inputs produce Python ints.
    """

    def __init__(self, p: int, m: int, base_modulus, top_modulus, generator: int,
                 add_q: np.ndarray, mul_q: np.ndarray, neg_q: np.ndarray,
                 exp: np.ndarray, log: np.ndarray) -> None:
        self.p = p
        self.m = m
        self.q = p ** m
        self.order = self.q * self.q
        self.base_modulus = tuple(base_modulus)
        self.top_modulus = tuple(top_modulus)
        self.generator = generator
        self.theta = self.q

        self._add_q = add_q
        self._mul_q = mul_q
        self._neg_q = neg_q
        self._exp = exp
        self._log = log

        everything = np.arange(self.order, dtype=np.int64)
        self._frob = _as_index(self.pow(everything, self.q))
        self._norm = _as_index(self.mul(everything, self._frob))
        for table in (self._add_q, self._mul_q, self._neg_q, self._exp, self._log, self._frob, self._norm):
            table.setflags(write=False)

    def __reduce__(self):
        return build_tower, (self.p, self.m)

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldTower) and (self.p, self.m) == (other.p, other.m)

    def __hash__(self) -> int:
        return hash((self.p, self.m))

    def __repr__(self) -> str:
        return f"FieldTower(p={self.p}, m={self.m})"

    def elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    def check(self, e, name: str = 'element') -> int:
        """Returns e as an int, or raises InvalidCode unless it indexes an element."""
        if isinstance(e, (bool, np.bool_)) or not isinstance(e, (int, np.integer)) or not 0 <= e < self.order:
            raise InvalidCode(f"{name}={e!r} is not an element index in [0, {self.order})")
        return int(e)

    def coords(self, a):
        a = _as_index(a)
        return a % self.q, a // self.q

    def add(self, a, b):
        a0, a1 = self.coords(a)
        b0, b1 = self.coords(b)
        return _scalar_or_array(self._add_q[a0, b0] + self.q * self._add_q[a1, b1])

    def neg(self, a):
        a0, a1 = self.coords(a)
        return _scalar_or_array(self._neg_q[a0] + self.q * self._neg_q[a1])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        a = _as_index(a)
        b = _as_index(b)
        product = self._exp[self._log[a] + self._log[b]]
        return _scalar_or_array(np.where((a == 0) | (b == 0), 0, product))

    def inv(self, a):
        a = _as_index(a)
        if np.any(a == 0):
            raise DivisionByZero("zero has no multiplicative inverse")
        return _scalar_or_array(self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)])

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        a = _as_index(a)
        if e == 0:
            return _scalar_or_array(np.ones_like(a))
        if e < 0:
            a = _as_index(self.inv(a))
            e = -e
        reduced = e % (self.order - 1)
        power = self._exp[(self._log[a] * reduced) % (self.order - 1)]
        return _scalar_or_array(np.where(a == 0, 0, power))

    def frob(self, a):
        return _scalar_or_array(self._frob[_as_index(a)])

    def nrm(self, a):
        return _scalar_or_array(self._norm[_as_index(a)])

    def in_base_field(self, a):
        return _scalar_or_array(_as_index(a) < self.q)


def _base_field(p: int, m: int):
    """Returns (galois field for F_q, canonical modulus coefficients low to high)."""
    prime_field = galois.GF(p)
    if m == 1:
        return prime_field, (0, 1)
    for tail in range(p ** m):
        candidate = galois.Poly.Int(p ** m + tail, field=prime_field)
        if candidate.is_irreducible():
            coeffs = tuple(int(c) for c in candidate.coeffs[::-1])
            return galois.GF(p ** m, irreducible_poly=candidate), coeffs
    raise NoIrreducibleFound(f"no monic irreducible of degree {m} over F_{p}")


def _field_table(values) -> np.ndarray:
    return np.array(values.view(np.ndarray), dtype=np.int64)


def build_tower(p: int, m: int, max_field: int | None = None) -> FieldTower:
    if not isinstance(p, int) or p < 2 or not galois.is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if not isinstance(m, int) or m < 1:
        raise InputError(f"extension degree must be a positive integer, got {m}")
    bound = max_field if max_field is not None else load_caps().max_field
    if (p ** m) ** 2 > bound:
        raise TooLarge(f"q^2 = {(p ** m) ** 2} exceeds the field bound {bound}")
    return _build_tower(p, m)


@functools.lru_cache(maxsize=None)
def _build_tower(p: int, m: int) -> FieldTower:
    q = p ** m
    order = q * q
    base, base_modulus = _base_field(p, m)
    elems = base.elements
    add_q = _field_table(elems[:, None] + elems[None, :])
    mul_q = _field_table(elems[:, None] * elems[None, :])
    neg_q = _field_table(-elems)

    ys = np.arange(q)
    squares = mul_q[ys, ys]
    top_modulus = None
    for key in range(q * q):
        b, c = divmod(key, q)
        values = add_q[add_q[squares, mul_q[b, ys]], c]
        if np.all(values != 0):
            top_modulus = (c, b, 1)
            break
    if top_modulus is None:
        raise NoIrreducibleFound(f"no irreducible quadratic over F_{q}")
    c, b, _ = top_modulus

    A, M, N = add_q.tolist(), mul_q.tolist(), neg_q.tolist()

    def mul_coords(x: int, y: int) -> int:
        x0, x1 = x % q, x // q
        y0, y1 = y % q, y // q
        high = M[x1][y1]
        lo = A[M[x0][y0]][N[M[c][high]]]
        hi = A[A[M[x0][y1]][M[x1][y0]]][N[M[b][high]]]
        return lo + q * hi

    def pow_coords(x: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = mul_coords(result, x)
            x = mul_coords(x, x)
            e >>= 1
        return result

    primes, _ = galois.factors(order - 1)
    generator = None
    for candidate in range(2, order):
        if pow_coords(candidate, order - 1) != 1:
            raise DefectError(f"x^(q^2-1) != 1 for x={candidate} in F_{order}")
        if all(pow_coords(candidate, (order - 1) // r) != 1 for r in primes):
            generator = candidate
            break
    if generator is None:
        raise DefectError(f"no generator found for F_{order}")

    exp = np.zeros(2 * (order - 1), dtype=np.int64)
    x = 1
    for i in range(order - 1):
        exp[i] = x
        x = mul_coords(x, generator)
    if x != 1 or np.unique(exp[:order - 1]).size != order - 1:
        raise DefectError(f"powers of {generator} do not enumerate F_{order}*")
    exp[order - 1:] = exp[:order - 1]
    log = np.zeros(order, dtype=np.int64)
    log[exp[:order - 1]] = np.arange(order - 1)

    tower = FieldTower(p, m, base_modulus, top_modulus, generator, add_q, mul_q, neg_q, exp, log)

    lo, hi = tower.coords(tower.elements())
    by_coords = add_q[lo, neg_q[mul_q[b, hi]]] + q * neg_q[hi]
    if not np.array_equal(by_coords, tower._frob):
        raise DefectError(f"Frobenius table disagrees with the coordinate formula in F_{order}")
    if not np.array_equal(tower._frob == tower.elements(), hi == 0):
        raise DefectError(f"fixed field of Frobenius is not the hi=0 slice in F_{order}")

    logger.info(f"Built F_{order} over F_{q}: base_modulus={base_modulus} top_modulus={top_modulus} generator={generator}")
    return tower


def frobenius(t: FieldTower, e: Elt) -> Elt:
    return t.frob(e)


def norm(t: FieldTower, e: Elt) -> Elt:
    return t.nrm(e)


def trace(t: FieldTower, e: Elt) -> Elt:
    return t.add(e, t.frob(e))


def solve_norm(t: FieldTower, c: Elt) -> list:
    """All v with v^(q+1) = c, ascending; empty when c lies outside F_q."""
    return [int(v) for v in np.flatnonzero(t._norm == c)]


def is_in_base_field(t: FieldTower, e: Elt) -> bool:
    by_frobenius = t.frob(e) == e
    by_coordinates = bool(t.in_base_field(e))
    if by_frobenius != by_coordinates:
        raise DefectError(f"membership tests disagree for {e} in {t}")
    return bool(by_frobenius)


def base_elements(t: FieldTower) -> list:
    return list(range(t.q))


def format_elt(t: FieldTower, e: Elt) -> str:
    lo, hi = e % t.q, e // t.q
    if hi == 0:
        return str(lo)
    theta = 'θ' if hi == 1 else f"{hi}θ"
    return theta if lo == 0 else f"{lo}+{theta}"
