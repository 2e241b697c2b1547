"""Brute-force verification layer.

Solves the linear system characterising admissible evaluation sets, matches
sets against the LINE/NORM families, classifies every n-subset of F_{q²}, and
checks the linear-recurrence identities of power sums Δ_i = Σ α_l^i·x_l.
"""
from __future__ import annotations

import itertools
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from hermgrs.construct import FamilyKind, FamilySpec, family_roots, family_specs, lemma2_holds
from hermgrs.errors import (DuplicateNode, InvalidCode, KernelTooLarge, LengthMismatch, NotEven, NotMonic,
                            TooManySubsets)
from hermgrs.gf import FieldTower, build_tower
from hermgrs.matrix import Mat, field_matmul, subfield_kernel
from hermgrs.poly import Poly, evaluate, from_roots
from hermgrs.settings import Caps, load_caps

logger = logging.getLogger(__name__)

WITNESS_CHUNK = 2 ** 14


def lemma1_system(t: FieldTower, alpha) -> Mat:
    """Rows (i, j) for 0 <= i, j < k holding α_l^(i + jq)."""
    alpha = np.array([t.check(a, 'alpha') for a in alpha], dtype=np.int64)
    if alpha.size < 2 or alpha.size % 2:
        raise NotEven(f"need an even number of evaluation points, got {alpha.size}")
    k = alpha.size // 2
    rows = [t.pow(alpha, i + j * t.q) for i in range(k) for j in range(k)]
    return Mat(t, np.array(rows, dtype=np.int64))


def lemma1_solve(t: FieldTower, alpha, caps: Caps | None = None):
    """First x in (F_q*)^n solving the system, in lexicographic order of kernel coordinates, or None."""
    caps = caps or load_caps()
    system = lemma1_system(t, alpha)
    basis = subfield_kernel(system)
    dim = len(basis)
    if dim == 0:
        return None
    total = t.q ** dim
    if total > caps.max_kernel:
        raise KernelTooLarge(f"{t.q}^{dim} = {total} kernel combinations exceeds the cap {caps.max_kernel}")

    B = np.array(basis, dtype=np.int64)
    place = t.q ** np.arange(dim - 1, -1, -1, dtype=np.int64)
    for start in range(0, total, WITNESS_CHUNK):
        index = np.arange(start, min(start + WITNESS_CHUNK, total), dtype=np.int64)
        coefficients = (index[:, None] // place[None, :]) % t.q
        candidates = field_matmul(t, coefficients, B)
        hits = np.flatnonzero(np.all(candidates != 0, axis=1))
        if hits.size:
            return tuple(int(x) for x in candidates[hits[0]])
    return None


def family_match(t: FieldTower, alpha) -> list:
    """Every valid family whose root set contains alpha, LINE first then NORM by ascending a.

    Fewer than two points determine no family and give an empty list.
    """
    alpha = np.array([t.check(a, 'alpha') for a in alpha], dtype=np.int64)
    if alpha.size < 2:
        return []
    matches = []

    a1, a2 = int(alpha[0]), int(alpha[1])
    slope = t.div(t.sub(t.frob(a1), t.frob(a2)), t.sub(a1, a2))
    offset = t.sub(t.frob(a1), t.mul(slope, a1))
    on_line = np.all(t.frob(alpha) == t.add(t.mul(slope, alpha), offset))
    if on_line and lemma2_holds(t, slope, offset):
        matches.append(FamilySpec(FamilyKind.LINE, slope, offset))

    shifts = t.elements()
    norms = t.nrm(t.add(alpha[None, :], shifts[:, None]))
    constant = np.all(norms == norms[:, :1], axis=1) & (norms[:, 0] > 0) & (norms[:, 0] < t.q)
    for a in np.flatnonzero(constant):
        matches.append(FamilySpec(FamilyKind.NORM, int(a), int(norms[a, 0])))
    return matches


def _colex(limit: int, size: int):
    if size == 0:
        yield ()
        return
    for last in range(size - 1, limit):
        for head in _colex(last, size - 1):
            yield head + (last,)


def colex_subsets(limit: int, size: int):
    """All size-subsets of range(limit) in colexicographic order."""
    return _colex(limit, size)


@dataclass(frozen=True)
class Admissible:
    alpha: tuple
    witness: tuple
    families: tuple

    def to_dict(self) -> dict:
        return {'alpha': list(self.alpha), 'witness': list(self.witness),
                'families': [spec.to_dict() for spec in self.families]}


@dataclass
class ClassReport:
    q: int
    n: int
    total: int
    admissible: list = field(default_factory=list)
    violations: list = field(default_factory=list)
    counts: dict = field(default_factory=dict)
    rejected_family_subsets: list = field(default_factory=list)

    @property
    def clean(self) -> bool:
        return not self.violations

    def admissible_sets(self) -> set:
        return {entry.alpha for entry in self.admissible}


def _scan_block(p: int, m: int, n: int, last: int, caps: Caps) -> list:
    """Admissible n-subsets whose largest element is ``last``."""
    t = build_tower(p, m, max_field=(p ** m) ** 2)
    found = []
    for head in _colex(last, n - 1):
        alpha = head + (last,)
        witness = lemma1_solve(t, alpha, caps)
        if witness is not None:
            found.append(Admissible(alpha, witness, tuple(family_match(t, alpha))))
    logger.debug(f"block last={last}: {len(found)} admissible")
    return found


def family_subsets(t: FieldTower, n: int, kind: FamilyKind) -> list:
    """Distinct n-subsets of the root sets of every valid family of ``kind``, colex sorted."""
    subsets = set()
    for spec in family_specs(t, kind):
        roots = family_roots(t, spec)
        subsets.update(itertools.combinations(roots, n))
    return sorted(subsets, key=lambda s: s[::-1])


def norm_family_sets(t: FieldTower, n: int) -> list:
    return family_subsets(t, n, FamilyKind.NORM)


def line_family_sets(t: FieldTower, n: int) -> list:
    return family_subsets(t, n, FamilyKind.LINE)


def classify(t: FieldTower, n: int, jobs: int = 1, caps: Caps | None = None) -> ClassReport:
    caps = caps or load_caps()
    if n < 2 or n % 2:
        raise NotEven(f"classification needs an even n >= 2, got {n}")
    total = math.comb(t.order, n)
    if total > caps.max_subsets:
        raise TooManySubsets(f"C({t.order}, {n}) = {total} subsets exceeds the cap {caps.max_subsets}")

    lasts = list(range(n - 1, t.order))
    logger.info(f"Classifying {total} subsets of F_{t.order} of size {n} in {len(lasts)} blocks, jobs={jobs}")
    if jobs > 1 and len(lasts) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            blocks = list(pool.map(_scan_block, itertools.repeat(t.p), itertools.repeat(t.m),
                                   itertools.repeat(n), lasts, itertools.repeat(caps)))
    else:
        blocks = [_scan_block(t.p, t.m, n, last, caps) for last in lasts]

    report = ClassReport(q=t.q, n=n, total=total, admissible=[entry for block in blocks for entry in block])
    k = n // 2
    report.counts = {kind.value: 0 for kind in FamilyKind}
    report.counts['NONE'] = 0
    for entry in report.admissible:
        kinds = {spec.kind for spec in entry.families}
        for kind in kinds:
            report.counts[kind.value] += 1
        if not kinds:
            report.counts['NONE'] += 1
            report.violations.append({'reason': 'no_family', 'alpha': list(entry.alpha)})
        if k >= t.q:
            report.violations.append({'reason': 'k_ge_q', 'alpha': list(entry.alpha)})
        if n > t.q + 1:
            report.violations.append({'reason': 'n_gt_q_plus_1', 'alpha': list(entry.alpha)})
    for violation in report.violations:
        logger.error(f"Classification violation ({violation['reason']}) for alpha={violation['alpha']}")

    admissible = report.admissible_sets()
    candidates = set(line_family_sets(t, n)) | set(norm_family_sets(t, n))
    report.rejected_family_subsets = sorted(candidates - admissible, key=lambda s: s[::-1])
    for subset in report.rejected_family_subsets:
        logger.warning(f"Family subset {list(subset)} admits no solution in (F_{t.q}*)^{n}")

    logger.info(f"Classified q={t.q} n={n}: {len(report.admissible)} admissible, counts={report.counts}, "
                f"{len(report.violations)} violations")
    return report


@dataclass(frozen=True)
class DeltaSeq:
    tower: FieldTower
    alpha: tuple
    x: tuple
    values: tuple

    def at(self, i: int) -> int:
        """Δ_i recomputed from the definition."""
        t = self.tower
        terms = t.mul(t.pow(np.array(self.alpha, dtype=np.int64), i), np.array(self.x, dtype=np.int64))
        return int(_field_total(t, terms))


def _field_total(t: FieldTower, values) -> int:
    total = 0
    for v in np.atleast_1d(values):
        total = t.add(total, int(v))
    return total


def delta_sequence(t: FieldTower, alpha, x, length: int) -> DeltaSeq:
    alpha = tuple(int(a) for a in alpha)
    x = tuple(int(v) for v in x)
    if len(alpha) != len(x):
        raise LengthMismatch(f"alpha has {len(alpha)} entries but x has {len(x)}")
    if len(set(alpha)) != len(alpha):
        raise DuplicateNode(f"alpha must be distinct, got {list(alpha)}")
    a = np.array(alpha, dtype=np.int64)
    weights = np.array(x, dtype=np.int64)
    values = []
    power = np.ones_like(a)
    for _ in range(length):
        values.append(_field_total(t, t.mul(power, weights)))
        power = np.atleast_1d(t.mul(power, a))
    return DeltaSeq(t, alpha, x, tuple(values))


def companion_matrix(G: Poly) -> Mat:
    """Superdiagonal ones, last row c_i where G = x^n - Σ c_i x^i."""
    t = G.tower
    if G.is_zero() or G.degree < 1 or not G.is_monic():
        raise NotMonic(f"companion matrix needs a monic polynomial of degree >= 1, got {G}")
    n = G.degree
    T = np.zeros((n, n), dtype=np.int64)
    T[np.arange(n - 1), np.arange(1, n)] = 1
    T[n - 1] = np.atleast_1d(t.neg(np.array(G.coeffs[:n], dtype=np.int64)))
    return Mat(t, T)


def companion_eigen_holds(T: Mat, root: int) -> bool:
    """T·(1, r, ..., r^(n-1))ᵀ = r·(1, r, ..., r^(n-1))ᵀ."""
    t = T.tower
    powers = np.array([t.pow(root, i) for i in range(T.rows)], dtype=np.int64)
    return T.matvec(powers) == tuple(int(v) for v in np.atleast_1d(t.mul(root, powers)))


def recurrence_holds(t: FieldTower, alpha, x, horizon: int) -> bool:
    """Companion matrix of prod (x - α_l) shifts every window of the Δ-sequence by one."""
    n = len(alpha)
    T = companion_matrix(from_roots(t, alpha))
    seq = delta_sequence(t, alpha, x, horizon + n).values
    return all(T.matvec(seq[i:i + n]) == tuple(seq[i + 1:i + n + 1]) for i in range(horizon))


def annihilation_holds(t: FieldTower, alpha, x, h: Poly, horizon: int) -> bool:
    """Δ_{m+i} + Σ_j h_j Δ_{j+i} = 0 for a monic h of degree m vanishing on every α_l."""
    if h.is_zero() or not h.is_monic():
        raise NotMonic(f"annihilator must be monic, got {h}")
    if np.any(evaluate(h, np.array(list(alpha), dtype=np.int64)) != 0):
        raise InvalidCode(f"{h} does not vanish on every evaluation point")
    m = h.degree
    seq = delta_sequence(t, alpha, x, horizon + m + 1).values
    for i in range(horizon):
        window = np.array(seq[i:i + m + 1], dtype=np.int64)
        if _field_total(t, t.mul(np.array(h.coeffs, dtype=np.int64), window)) != 0:
            return False
    return True


def theorem3_rank(t: FieldTower, alpha, x) -> int:
    """Rank of the k vectors (Δ_{lq+k}, ..., Δ_{lq+n-1}) for l < k."""
    n = len(alpha)
    if n < 2 or n % 2:
        raise NotEven(f"need an even number of evaluation points, got {n}")
    k = n // 2
    seq = delta_sequence(t, alpha, x, (k - 1) * t.q + n).values
    rows = [seq[l * t.q + k:l * t.q + n] for l in range(k)]
    return Mat(t, rows).rank()
