"""Dense univariate polynomials over F_{q²}."""
from __future__ import annotations

import functools
import logging

import numpy as np

from hermgrs.errors import DivisionByZeroPoly, DuplicateNode, DuplicateRoot, ZeroPolynomial
from hermgrs.gf import Elt, FieldTower

logger = logging.getLogger(__name__)


@functools.total_ordering
class _NegativeInfinity:
    """Degree of the zero polynomial; sorts below every integer."""

    def __lt__(self, other) -> bool:
        return not isinstance(other, _NegativeInfinity)

    def __eq__(self, other) -> bool:
        return isinstance(other, _NegativeInfinity)

    def __hash__(self) -> int:
        return hash('-inf')

    def __repr__(self) -> str:
        return '-inf'


NEG_INF = _NegativeInfinity()


class Poly:
    """Immutable coefficient vector, index i holding the coefficient of x^i."""

    __slots__ = ('tower', 'coeffs')

    def __init__(self, tower: FieldTower, coeffs=()) -> None:
        coeffs = [int(c) for c in coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, 'tower', tower)
        object.__setattr__(self, 'coeffs', tuple(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def constant(cls, tower: FieldTower, c: Elt) -> Poly:
        return cls(tower, (c,))

    @property
    def degree(self):
        if not self.coeffs:
            return NEG_INF
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Elt:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.leading == 1

    def coefficient(self, i: int) -> Elt:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.tower == other.tower and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.tower, self.coeffs))

    def __repr__(self) -> str:
        return f"Poly({list(self.coeffs)})"

    def _array(self, length: int) -> np.ndarray:
        out = np.zeros(length, dtype=np.int64)
        out[:len(self.coeffs)] = self.coeffs
        return out

    def __add__(self, other: Poly) -> Poly:
        length = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.tower, self.tower.add(self._array(length), other._array(length)))

    def __neg__(self) -> Poly:
        return Poly(self.tower, self.tower.neg(self._array(len(self.coeffs))))

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def scale(self, c: Elt) -> Poly:
        return Poly(self.tower, self.tower.mul(c, self._array(len(self.coeffs))))

    def __mul__(self, other: Poly) -> Poly:
        if self.is_zero() or other.is_zero():
            return Poly(self.tower)
        t = self.tower
        out = np.zeros(len(self.coeffs) + len(other.coeffs) - 1, dtype=np.int64)
        right = other._array(len(other.coeffs))
        for i, a in enumerate(self.coeffs):
            if a:
                window = slice(i, i + len(right))
                out[window] = t.add(out[window], t.mul(a, right))
        return Poly(t, out)

    def __pow__(self, e: int) -> Poly:
        result = Poly.constant(self.tower, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, divisor: Poly):
        if divisor.is_zero():
            raise DivisionByZeroPoly("division by the zero polynomial")
        t = self.tower
        remainder = list(self.coeffs)
        d = len(divisor.coeffs) - 1
        lead_inv = t.inv(divisor.leading)
        quotient = [0] * max(len(remainder) - d, 0)
        body = np.array(divisor.coeffs, dtype=np.int64)
        for shift in range(len(remainder) - 1 - d, -1, -1):
            top = remainder[shift + d]
            if top == 0:
                continue
            factor = t.mul(top, lead_inv)
            quotient[shift] = factor
            window = np.array(remainder[shift:shift + d + 1], dtype=np.int64)
            remainder[shift:shift + d + 1] = [int(v) for v in t.sub(window, t.mul(factor, body))]
        return Poly(t, quotient), Poly(t, remainder[:d])

    def __mod__(self, divisor: Poly) -> Poly:
        return divmod(self, divisor)[1]

    def __call__(self, x):
        return evaluate(self, x)


def from_roots(t: FieldTower, roots) -> Poly:
    roots = [int(r) for r in roots]
    if len(set(roots)) != len(roots):
        raise DuplicateRoot(f"roots must be distinct, got {roots}")
    result = Poly.constant(t, 1)
    for r in roots:
        result = result * Poly(t, (t.neg(r), 1))
    return result


def evaluate(f: Poly, x):
    """Horner evaluation; ``x`` may be a scalar or a numpy array of elements."""
    t = f.tower
    acc = t.mul(x, 0)
    for c in reversed(f.coeffs):
        acc = t.add(t.mul(acc, x), c)
    return acc


def derivative(f: Poly) -> Poly:
    t = f.tower
    coeffs = [t.mul((i % t.p), c) for i, c in enumerate(f.coeffs) if i > 0]
    return Poly(t, coeffs)


def lagrange_basis(t: FieldTower, nodes, i: int) -> Poly:
    """f_i(x) = prod_{j != i} (x - a_j) / (a_i - a_j)."""
    nodes = [int(a) for a in nodes]
    numerator = from_roots(t, nodes[:i] + nodes[i + 1:])
    denominator = evaluate(numerator, nodes[i])
    return numerator.scale(t.inv(denominator))


def interpolate(t: FieldTower, points) -> Poly:
    points = [(int(a), int(y)) for a, y in points]
    nodes = [a for a, _ in points]
    if len(set(nodes)) != len(nodes):
        raise DuplicateNode(f"interpolation nodes must be distinct, got {nodes}")
    result = Poly(t)
    for i, (_, y) in enumerate(points):
        if y:
            result = result + lagrange_basis(t, nodes, i).scale(y)
    return result


def mod_reduce(f: Poly, G: Poly) -> Poly:
    return f % G


def roots_in_field(f: Poly) -> list:
    if f.is_zero():
        raise ZeroPolynomial("every element is a root of the zero polynomial")
    values = evaluate(f, f.tower.elements())
    return [int(e) for e in np.flatnonzero(values == 0)]
