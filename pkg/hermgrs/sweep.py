"""Exhaustive and randomised property sweeps driven by a YAML file.

Example ``sweeps.yml``::

    seed: 7
    sweeps:
      construction:
        fields: [[3, 1], [2, 2]]
      lemma2:
        fields: [[3, 1]]
      theorem7:
        fields: [[3, 1]]
        n: [2, 4]
      recurrence:
        fields: [[3, 1]]
        instances: 1000
      classify:
        runs:
          - {p: 3, m: 1, n: 4}
"""
import itertools
import logging
import os
from dataclasses import dataclass, field

import numpy as np
import yaml

from hermgrs.construct import FamilyKind, construction1, construction2, family_roots, family_specs, theorem7_check
from hermgrs.errors import NoFeasibleLambda, NormInfeasible, VerificationFailed
from hermgrs.gf import FieldTower, build_tower, solve_norm
from hermgrs.grs import GrsCode, is_hermitian_self_dual
from hermgrs.poly import Poly, from_roots
from hermgrs.search import (annihilation_holds, classify, companion_eigen_holds, companion_matrix,
                            norm_family_sets, recurrence_holds)
from hermgrs.settings import Caps, load_caps

logger = logging.getLogger(__name__)

SECTIONS = ('construction', 'lemma2', 'theorem7', 'recurrence', 'classify')


@dataclass
class SweepResult:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def note(self, key: str, amount: int = 1) -> None:
        self.notes[key] = self.notes.get(key, 0) + amount

    def to_dict(self) -> dict:
        return {'name': self.name, 'checked': self.checked, 'passed': self.passed,
                'failures': self.failures, 'notes': dict(sorted(self.notes.items()))}


def load_sweep_config(path: str) -> dict:
    if not os.path.exists(path):
        raise ValueError(f"Sweep file not found: {path}")
    with open(path, "r") as f:
        config = yaml.safe_load(f) or {}
    if not isinstance(config, dict) or not isinstance(config.get('sweeps'), dict):
        raise ValueError(f"{path} must contain a 'sweeps' mapping")
    unknown = [name for name in config['sweeps'] if name not in SECTIONS]
    if unknown:
        raise ValueError(f"Unknown sweep section(s) in {path}: {unknown}")
    return config


def construction_sweep(t: FieldTower, all_subsets: bool = False, caps: Caps | None = None) -> SweepResult:
    """Runs both constructions on every family and even length, on the leading points or every subset."""
    result = SweepResult(f"construction[q={t.q}]")
    for spec in family_specs(t):
        roots = family_roots(t, spec)
        for n in range(2, len(roots) + 1, 2):
            subsets = itertools.combinations(roots, n) if all_subsets else [tuple(roots[:n])]
            for alpha in subsets:
                result.checked += 1
                try:
                    if spec.kind is FamilyKind.LINE:
                        code, certificate = construction1(t, alpha, family=spec, check_mds=True, caps=caps)
                    else:
                        try:
                            code, certificate = construction2(t, spec.a, spec.b, alpha, check_mds=True, caps=caps)
                        except NormInfeasible as e:
                            logger.warning(f"{spec} alpha={list(alpha)}: {e}")
                            result.note('norm_infeasible')
                            code, certificate = construction2(t, spec.a, spec.b, alpha, search_lambda=True,
                                                              check_mds=True, caps=caps)
                            result.note('recovered_by_lambda')
                except NoFeasibleLambda as e:
                    logger.warning(f"{spec} alpha={list(alpha)}: {e}")
                    result.note('no_feasible_lambda')
                    continue
                except NormInfeasible as e:
                    logger.warning(f"{spec} alpha={list(alpha)} has no feasible scaling either: {e}")
                    result.note('norm_infeasible_after_search')
                    continue
                except VerificationFailed as e:
                    result.failures.append({'family': spec.to_dict(), 'alpha': list(alpha), 'error': str(e)})
                    continue
                if certificate.mds_checked is None:
                    result.note('distance_skipped')
                elif certificate.mds_checked != code.n - code.k + 1:
                    result.failures.append({'family': spec.to_dict(), 'alpha': list(alpha),
                                            'error': f"distance {certificate.mds_checked}"})
    return result


def lemma2_sweep(t: FieldTower) -> SweepResult:
    """|S1(a, b)| > 1 exactly when the line condition holds, and then |S1| = q."""
    result = SweepResult(f"lemma2[q={t.q}]")
    e = t.elements()
    conjugates = t.frob(e)
    for a in range(t.order):
        offsets = t.sub(conjugates, t.mul(a, e))
        sizes = np.bincount(offsets, minlength=t.order)
        holds = (t.nrm(a) == 1) & (t.add(conjugates, t.mul(t.frob(a), e)) == 0)
        result.checked += t.order
        bad = np.flatnonzero(((sizes > 1) != holds) | (holds & (sizes != t.q)))
        for b in bad:
            result.failures.append({'a': a, 'b': int(b), 'size': int(sizes[b])})
    return result


def theorem7_sweep(t: FieldTower, n: int, caps: Caps | None = None) -> SweepResult:
    """Degree criterion against the gram matrix on admissible sets and every norm class of v."""
    result = SweepResult(f"theorem7[q={t.q},n={n}]")
    representatives = [solve_norm(t, c)[0] for c in range(1, t.q)]
    for entry in classify(t, n, caps=caps).admissible:
        for v in itertools.product(representatives, repeat=n):
            code = GrsCode(t, n // 2, entry.alpha, v)
            by_gram = is_hermitian_self_dual(code)
            result.checked += 1
            if by_gram:
                result.note('self_dual')
            if theorem7_check(code) != by_gram:
                result.failures.append({'alpha': list(entry.alpha), 'v': list(v), 'gram_zero': by_gram})
    return result


def recurrence_sweep(t: FieldTower, instances: int, rng: np.random.Generator) -> SweepResult:
    result = SweepResult(f"recurrence[q={t.q}]")
    largest = min(t.order - 1, 6)
    for _ in range(instances):
        n = int(rng.integers(1, largest + 1))
        alpha = [int(a) for a in rng.choice(t.order, size=n, replace=False)]
        x = [int(v) for v in rng.integers(0, t.order, size=n)]
        extra = int(rng.integers(0, t.order))
        T = companion_matrix(from_roots(t, alpha))
        h = from_roots(t, alpha) * Poly(t, (t.neg(extra), 1))
        result.checked += 1
        checks = {
            'eigen': all(companion_eigen_holds(T, a) for a in alpha),
            'recurrence': recurrence_holds(t, alpha, x, horizon=n + 2),
            'annihilation': annihilation_holds(t, alpha, x, h, horizon=n + 2),
        }
        for name, ok in checks.items():
            if not ok:
                result.failures.append({'check': name, 'alpha': alpha, 'x': x})
    return result


def classify_sweep(t: FieldTower, n: int, jobs: int = 1, caps: Caps | None = None) -> SweepResult:
    result = SweepResult(f"classify[q={t.q},n={n}]")
    report = classify(t, n, jobs=jobs, caps=caps)
    result.checked = report.total
    result.notes.update({'admissible': len(report.admissible),
                         'rejected_family_subsets': len(report.rejected_family_subsets)})
    result.failures.extend(report.violations)
    if n == t.q + 1 and report.admissible_sets() != set(norm_family_sets(t, n)):
        result.failures.append({'reason': 'norm_sets_differ'})
    return result


def _towers(section: dict):
    for p, m in section.get('fields', []):
        yield build_tower(int(p), int(m))


def run_sweeps(config: dict, seed: int | None = None, caps: Caps | None = None, jobs: int = 1) -> dict:
    caps = caps or load_caps()
    seed = config.get('seed', 0) if seed is None else seed
    rng = np.random.default_rng(seed)
    sections = config['sweeps']
    results = {}

    def record(result: SweepResult) -> None:
        level = logging.INFO if result.passed else logging.ERROR
        logger.log(level, f"{result.name}: checked={result.checked} failures={len(result.failures)} notes={result.notes}")
        results[result.name] = result

    for name in SECTIONS:
        section = sections.get(name)
        if section is None:
            continue
        if name == 'construction':
            for t in _towers(section):
                record(construction_sweep(t, bool(section.get('all_subsets', False)), caps))
        elif name == 'lemma2':
            for t in _towers(section):
                record(lemma2_sweep(t))
        elif name == 'theorem7':
            for t in _towers(section):
                for n in section.get('n', [2, 4]):
                    record(theorem7_sweep(t, int(n), caps))
        elif name == 'recurrence':
            for t in _towers(section):
                record(recurrence_sweep(t, int(section.get('instances', 1000)), rng))
        elif name == 'classify':
            for run in section.get('runs', []):
                t = build_tower(int(run['p']), int(run['m']))
                record(classify_sweep(t, int(run['n']), jobs, caps))
    return results
