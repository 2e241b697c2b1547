"""Explicit Hermitian self-dual GRS constructions and the evaluation-point families.

Two families of point sets carry these codes:

* LINE: the roots of x^q = a·x + b, which has q roots exactly when
  a^(q+1) = 1 and b^q + a^q·b = 0 (``lemma2_holds``);
* NORM: the roots of (x + a)^(q+1) = b for b in F_q*, q + 1 points.

Both constructions pick v_i^(q+1) = w(α_i)·u_i for a witness w (a scalar λ on
LINE sets, a scaled (x + a)^(k-1) on NORM sets) and then verify the result.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np

from hermgrs.errors import (DefectError, NoFeasibleLambda, NormInfeasible, NotEven, NotInFamily,
                            TooLargeToEnumerate, VerificationFailed)
from hermgrs.gf import Elt, FieldTower, solve_norm
from hermgrs.grs import Certificate, GrsCode, is_hermitian_self_dual, min_distance_bruteforce, u_from_alpha
from hermgrs.poly import NEG_INF, Poly, evaluate, from_roots, interpolate
from hermgrs.settings import Caps

logger = logging.getLogger(__name__)


class FamilyKind(Enum):
    LINE = 'LINE'
    NORM = 'NORM'


@dataclass(frozen=True)
class FamilySpec:
    kind: FamilyKind
    a: Elt
    b: Elt

    def to_dict(self) -> dict:
        return {'kind': self.kind.value, 'a': self.a, 'b': self.b}


def lemma2_holds(t: FieldTower, a: Elt, b: Elt) -> bool:
    """True when x^q = ax + b has more than one root."""
    return t.nrm(a) == 1 and t.add(t.frob(b), t.mul(t.frob(a), b)) == 0


def s1_set(t: FieldTower, a: Elt, b: Elt) -> list:
    a, b = t.check(a, 'a'), t.check(b, 'b')
    e = t.elements()
    return [int(x) for x in np.flatnonzero(t.frob(e) == t.add(t.mul(a, e), b))]


def s2_set(t: FieldTower, a: Elt, b: Elt) -> list:
    a, b = t.check(a, 'a'), t.check(b, 'b')
    e = t.elements()
    return [int(x) for x in np.flatnonzero(t.nrm(t.add(e, a)) == b)]


def is_valid_family(t: FieldTower, spec: FamilySpec) -> bool:
    if spec.kind is FamilyKind.LINE:
        return lemma2_holds(t, spec.a, spec.b)
    return 0 < spec.b < t.q


def family_roots(t: FieldTower, spec: FamilySpec) -> list:
    if spec.kind is FamilyKind.LINE:
        return s1_set(t, spec.a, spec.b)
    return s2_set(t, spec.a, spec.b)


def family_specs(t: FieldTower, kind: FamilyKind | None = None) -> list:
    """Every valid family of the tower, LINE before NORM, each in ascending (a, b)."""
    specs = []
    if kind in (None, FamilyKind.LINE):
        for a in range(t.order):
            if t.nrm(a) != 1:
                continue
            specs.extend(FamilySpec(FamilyKind.LINE, a, b) for b in range(t.order) if lemma2_holds(t, a, b))
    if kind in (None, FamilyKind.NORM):
        specs.extend(FamilySpec(FamilyKind.NORM, a, b) for a in range(t.order) for b in range(1, t.q))
    return specs


def _require_even(alpha) -> int:
    n = len(alpha)
    if n < 2 or n % 2:
        raise NotEven(f"need an even number of evaluation points, got {n}")
    return n


def _lambda_works(t: FieldTower, lam: Elt, base: np.ndarray) -> bool:
    return lam != 0 and bool(np.all(np.atleast_1d(t.mul(lam, base)) < t.q))


def _norm_preimages(t: FieldTower, values) -> tuple:
    return tuple(solve_norm(t, int(value))[0] for value in values)


def _certify(code: GrsCode, u: tuple, witness, check_mds: bool, caps: Caps | None) -> Certificate:
    if not is_hermitian_self_dual(code):
        logger.error(f"Constructed code is not Hermitian self-dual: q={code.tower.q} alpha={list(code.alpha)} "
                     f"v={list(code.v)} u={list(u)} witness={witness}")
        raise VerificationFailed(f"gram matrix of the constructed [{code.n},{code.k}] code is nonzero")
    theorem7_ok = theorem7_check(code)
    if not theorem7_ok:
        logger.error(f"Degree criterion rejects a code with zero gram: alpha={list(code.alpha)} v={list(code.v)}")
        raise DefectError("degree criterion and gram matrix disagree")
    mds = None
    if check_mds:
        try:
            mds = min_distance_bruteforce(code, caps)
        except TooLargeToEnumerate as e:
            logger.warning(f"Skipping the distance check: {e}")
    return Certificate(u=u, witness=witness, gram_zero=True, theorem7_ok=theorem7_ok, mds_checked=mds)


def construction1(t: FieldTower, alpha, lam: Elt | None = None, family: FamilySpec | None = None,
                  check_mds: bool = False, caps: Caps | None = None):
    """Hermitian self-dual code on a subset of a LINE family with v_i^(q+1) = λ·u_i."""
    alpha = [t.check(a, 'alpha') for a in alpha]
    n = _require_even(alpha)
    if lam is not None:
        lam = t.check(lam, 'lambda')
    if family is None:
        from hermgrs.search import family_match
        lines = [spec for spec in family_match(t, alpha) if spec.kind is FamilyKind.LINE]
        if not lines:
            raise NotInFamily(f"{alpha} lies on no line x^q = ax + b with q roots")
        family = lines[0]
    elif family.kind is not FamilyKind.LINE or not is_valid_family(t, family) \
            or not set(alpha) <= set(family_roots(t, family)):
        raise NotInFamily(f"{alpha} is not a subset of the roots of {family}")

    u = u_from_alpha(t, alpha)
    base = np.array(u, dtype=np.int64)
    if lam is not None:
        if not _lambda_works(t, lam, base):
            raise NoFeasibleLambda(f"lambda={lam} does not put every lambda*u_i in F_{t.q}*")
    else:
        lam = next((c for c in range(1, t.order) if _lambda_works(t, c, base)), None)
        if lam is None:
            raise NoFeasibleLambda(f"no lambda puts every lambda*u_i in F_{t.q}* for alpha={alpha}")

    v = _norm_preimages(t, np.atleast_1d(t.mul(lam, base)))
    code = GrsCode(t, n // 2, alpha, v)
    certificate = _certify(code, u, lam, check_mds, caps)
    logger.info(f"construction1 on {family}: [{n},{n // 2}] code with lambda={lam}")
    return code, certificate


def construction2(t: FieldTower, a: Elt, b: Elt, alpha, lam: Elt | None = None, search_lambda: bool = False,
                  check_mds: bool = False, caps: Caps | None = None):
    """Hermitian self-dual code on a subset of a NORM family with v_i^(q+1) = λ·(α_i + a)^(k-1)·u_i.

    λ defaults to 1. A nonzero λ rescales the witness without changing the
    degree criterion, so ``search_lambda`` may scan for one when λ = 1 fails.
    """
    alpha = [t.check(x, 'alpha') for x in alpha]
    a, b = t.check(a, 'a'), t.check(b, 'b')
    if lam is not None:
        lam = t.check(lam, 'lambda')
    n = _require_even(alpha)
    k = n // 2
    if not 0 < b < t.q:
        raise NotInFamily(f"b={b} is not in F_{t.q}*, so (x+a)^(q+1) = b has fewer than two roots")
    if not set(alpha) <= set(s2_set(t, a, b)):
        raise NotInFamily(f"{alpha} is not a subset of the roots of (x+{a})^(q+1) = {b}")

    u = u_from_alpha(t, alpha)
    g = Poly(t, (a, 1)) ** (k - 1)
    base = np.atleast_1d(t.mul(evaluate(g, np.array(alpha, dtype=np.int64)), np.array(u, dtype=np.int64)))
    if lam is None and search_lambda:
        lam = next((c for c in range(1, t.order) if _lambda_works(t, c, base)), None)
        if lam is None:
            raise NormInfeasible(f"no lambda puts every lambda*g(alpha_i)*u_i in F_{t.q}*")
    lam = 1 if lam is None else lam
    if not _lambda_works(t, lam, base):
        scaled = np.atleast_1d(t.mul(lam, base))
        bad = int(np.flatnonzero(scaled >= t.q)[0]) if lam else 0
        raise NormInfeasible(f"lambda*g(alpha_{bad})*u_{bad} = {int(scaled[bad])} is not in F_{t.q}* "
                             f"for a={a} b={b} lambda={lam}")

    v = _norm_preimages(t, np.atleast_1d(t.mul(lam, base)))
    code = GrsCode(t, k, alpha, v)
    certificate = _certify(code, u, g.scale(lam), check_mds, caps)
    logger.info(f"construction2 on (x+{a})^(q+1) = {b}: [{n},{k}] code with lambda={lam}")
    return code, certificate


def theorem7_degrees(c: GrsCode) -> list:
    """Degrees of f·m^i mod G for i < k, with f(α_i) = v_i^(q+1)/u_i and m(α_i) = α_i^q."""
    if c.n != 2 * c.k:
        raise NotEven(f"the degree criterion needs n = 2k, got n={c.n} k={c.k}")
    t = c.tower
    alpha = np.array(c.alpha, dtype=np.int64)
    u = np.array(u_from_alpha(t, c.alpha), dtype=np.int64)
    f_values = np.atleast_1d(t.div(t.nrm(np.array(c.v, dtype=np.int64)), u))
    f = interpolate(t, zip(c.alpha, f_values))
    m = interpolate(t, zip(c.alpha, np.atleast_1d(t.frob(alpha))))
    G = from_roots(t, c.alpha)

    current = f % G
    degrees = [current.degree]
    for _ in range(1, c.k):
        current = (current * m) % G
        degrees.append(current.degree)
    return degrees


def theorem7_check(c: GrsCode) -> bool:
    return all(d == NEG_INF or d <= c.k - 1 for d in theorem7_degrees(c))
