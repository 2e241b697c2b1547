"""Generalized Reed-Solomon codes over F_{q²} and their Hermitian duality.

A code GRS_{n,k}(α, v) is the set of vectors (v_1 f(α_1), ..., v_n f(α_n)) for
every polynomial f of degree below k. Messages are the coefficient vectors of
f, lowest degree first.
"""
from __future__ import annotations

import functools
import logging
from dataclasses import dataclass, field

import numpy as np

from hermgrs.errors import DefectError, InvalidCode, LengthMismatch, TooLargeToEnumerate
from hermgrs.gf import Elt, FieldTower
from hermgrs.matrix import Mat, field_matmul, vandermonde
from hermgrs.poly import Poly, derivative, evaluate, from_roots
from hermgrs.settings import Caps, load_caps

logger = logging.getLogger(__name__)

CODEWORD_CHUNK = 2 ** 16


def _field_sum(t: FieldTower, values) -> Elt:
    return functools.reduce(t.add, [int(v) for v in values], 0)


@dataclass(frozen=True)
class GrsCode:
    tower: FieldTower
    k: int
    alpha: tuple
    v: tuple

    def __post_init__(self) -> None:
        object.__setattr__(self, 'alpha', tuple(int(a) for a in self.alpha))
        object.__setattr__(self, 'v', tuple(int(x) for x in self.v))
        t = self.tower
        if len(self.alpha) != len(self.v):
            raise LengthMismatch(f"alpha has {len(self.alpha)} entries but v has {len(self.v)}")
        if any(not 0 <= e < t.order for e in self.alpha + self.v):
            raise InvalidCode(f"element indices must lie in [0, {t.order})")
        if len(set(self.alpha)) != len(self.alpha):
            raise InvalidCode(f"evaluation points must be distinct, got {list(self.alpha)}")
        if 0 in self.v:
            raise InvalidCode(f"column multipliers must be nonzero, got {list(self.v)}")
        if not 1 <= self.k <= self.n <= t.order:
            raise InvalidCode(f"need 1 <= k <= n <= {t.order}, got k={self.k} n={self.n}")

    @property
    def n(self) -> int:
        return len(self.alpha)


@dataclass(frozen=True)
class Certificate:
    """Evidence attached to a constructed code.

    ``witness`` is the function whose values w(α_i) satisfy
    v_i^(q+1) = w(α_i)·u_i: a scalar λ or a polynomial g.
    """
    u: tuple
    witness: int | Poly | None
    gram_zero: bool
    theorem7_ok: bool
    mds_checked: int | None = field(default=None)

    @property
    def witness_kind(self) -> str:
        if isinstance(self.witness, Poly):
            return 'polynomial'
        if self.witness is None:
            return 'none'
        return 'scalar'

    def witness_values(self, code: GrsCode) -> tuple:
        if isinstance(self.witness, Poly):
            return tuple(int(w) for w in evaluate(self.witness, np.array(code.alpha, dtype=np.int64)))
        return (int(self.witness),) * code.n

    def check_consistent(self, code: GrsCode) -> str | None:
        """Returns a description of the first field that disagrees with ``code``, or None."""
        from hermgrs.construct import theorem7_check

        t = code.tower
        if tuple(self.u) != u_vector(code):
            return f"u {list(self.u)} does not match the evaluation points"
        if self.witness is not None:
            expected = t.mul(np.array(self.witness_values(code)), np.array(self.u))
            norms = t.nrm(np.array(code.v))
            if not np.array_equal(norms, expected):
                return "v^(q+1) does not equal witness(alpha)*u"
        if self.gram_zero != hermitian_gram(code).is_zero():
            return f"gram_zero={self.gram_zero} disagrees with the gram matrix"
        if code.n == 2 * code.k and self.theorem7_ok != theorem7_check(code):
            return f"theorem7_ok={self.theorem7_ok} disagrees with the degree criterion"
        if self.mds_checked is not None and self.mds_checked != code.n - code.k + 1:
            return f"mds_checked={self.mds_checked} but an MDS code has distance {code.n - code.k + 1}"
        return None


def u_from_alpha(t: FieldTower, alpha) -> tuple:
    """u_i = 1/G'(α_i) for G = prod (x - α_j), computed two ways."""
    alpha = [int(a) for a in alpha]
    slope = derivative(from_roots(t, alpha))
    values = np.atleast_1d(evaluate(slope, np.array(alpha, dtype=np.int64)))
    if np.any(values == 0):
        raise DefectError(f"G' vanishes on distinct evaluation points {alpha}")
    by_derivative = tuple(int(u) for u in np.atleast_1d(t.inv(values)))

    by_product = []
    for i, a in enumerate(alpha):
        differences = [t.sub(a, b) for j, b in enumerate(alpha) if j != i]
        by_product.append(t.inv(functools.reduce(t.mul, differences, 1)))
    if by_derivative != tuple(by_product):
        logger.error(f"u mismatch for alpha={alpha}: derivative={by_derivative} product={by_product}")
        raise DefectError("the two u-vector formulas disagree")
    return by_derivative


def u_vector(c: GrsCode) -> tuple:
    return u_from_alpha(c.tower, c.alpha)


def generator_matrix(c: GrsCode) -> Mat:
    t = c.tower
    V = vandermonde(t, c.alpha, c.k)
    return Mat(t, t.mul(V.data, np.array(c.v, dtype=np.int64)[None, :]))


def parity_check_matrix(c: GrsCode) -> Mat:
    t = c.tower
    multipliers = t.div(np.array(u_vector(c), dtype=np.int64), np.array(c.v, dtype=np.int64))
    V = vandermonde(t, c.alpha, c.n - c.k)
    return Mat(t, t.mul(V.data, np.atleast_1d(multipliers)[None, :]), cols=c.n)


def encode(c: GrsCode, message) -> tuple:
    message = [int(m) for m in message]
    if len(message) != c.k:
        raise LengthMismatch(f"message must have {c.k} symbols, got {len(message)}")
    t = c.tower
    f = Poly(t, message)
    values = evaluate(f, np.array(c.alpha, dtype=np.int64))
    return tuple(int(x) for x in np.atleast_1d(t.mul(np.array(c.v, dtype=np.int64), values)))


def hermitian_inner(t: FieldTower, x, y) -> Elt:
    x, y = list(x), list(y)
    if len(x) != len(y):
        raise LengthMismatch(f"vectors of length {len(x)} and {len(y)}")
    return _field_sum(t, np.atleast_1d(t.mul(np.array(x, dtype=np.int64), t.frob(np.array(y, dtype=np.int64)))))


def euclidean_inner(t: FieldTower, x, y) -> Elt:
    x, y = list(x), list(y)
    if len(x) != len(y):
        raise LengthMismatch(f"vectors of length {len(x)} and {len(y)}")
    return _field_sum(t, np.atleast_1d(t.mul(np.array(x, dtype=np.int64), np.array(y, dtype=np.int64))))


def hermitian_gram(c: GrsCode) -> Mat:
    """k×k matrix of Hermitian inner products between generator rows."""
    t = c.tower
    alpha = np.array(c.alpha, dtype=np.int64)
    norms = t.nrm(np.array(c.v, dtype=np.int64))
    by_entry = np.zeros((c.k, c.k), dtype=np.int64)
    for i in range(c.k):
        for j in range(c.k):
            terms = t.mul(t.pow(alpha, i + j * t.q), norms)
            by_entry[i, j] = _field_sum(t, np.atleast_1d(terms))

    G = generator_matrix(c)
    by_product = G @ G.conjugate().transpose()
    if not np.array_equal(by_entry, by_product.data):
        logger.error(f"gram routes disagree for alpha={c.alpha} v={c.v}: {by_entry.tolist()} vs {by_product.tolist()}")
        raise DefectError("gram entry formula and matrix product disagree")
    return by_product


def gram_nonzero_entry(c: GrsCode):
    return hermitian_gram(c).first_nonzero()


def is_hermitian_self_dual(c: GrsCode) -> bool:
    if c.n != 2 * c.k:
        return False
    return hermitian_gram(c).is_zero()


def conjugate_in_euclidean_dual(c: GrsCode) -> bool:
    """Checks C^q ⊆ C^⊥E via G^(q)·Gᵀ = 0.

    Holds for any k with a zero gram matrix, so it matches
    is_hermitian_self_dual only when n = 2k.
    """
    G = generator_matrix(c)
    return (G.conjugate() @ G.transpose()).is_zero()


def scale(c: GrsCode, mu: Elt) -> GrsCode:
    if mu == 0:
        raise InvalidCode("scaling factor must be nonzero")
    t = c.tower
    v = np.atleast_1d(t.mul(mu, np.array(c.v, dtype=np.int64)))
    return GrsCode(t, c.k, c.alpha, tuple(int(x) for x in v))


def dual_code(c: GrsCode) -> GrsCode:
    """Euclidean dual GRS_{n,n-k}(α, u/v)."""
    if c.k == c.n:
        raise InvalidCode("the dual of a full-length code is zero")
    t = c.tower
    multipliers = np.atleast_1d(t.div(np.array(u_vector(c), dtype=np.int64), np.array(c.v, dtype=np.int64)))
    return GrsCode(t, c.n - c.k, c.alpha, tuple(int(x) for x in multipliers))


def min_distance_bruteforce(c: GrsCode, caps: Caps | None = None) -> int:
    t = c.tower
    caps = caps or load_caps()
    total = t.order ** c.k
    if total > caps.max_codewords:
        raise TooLargeToEnumerate(f"{t.order}^{c.k} = {total} codewords exceeds the cap {caps.max_codewords}")

    G = generator_matrix(c).data
    place = t.order ** np.arange(c.k, dtype=np.int64)
    best = c.n
    for start in range(1, total, CODEWORD_CHUNK):
        index = np.arange(start, min(start + CODEWORD_CHUNK, total), dtype=np.int64)
        messages = (index[:, None] // place[None, :]) % t.order
        codewords = field_matmul(t, messages, G)
        best = min(best, int(np.count_nonzero(codewords, axis=1).min()))
    logger.debug(f"min distance of [{c.n},{c.k}] code over F_{t.order}: {best}")
    return best
