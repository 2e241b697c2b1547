import itertools

import numpy as np
import pytest

from hermgrs.construct import FamilyKind, FamilySpec, construction2
from hermgrs.errors import KernelTooLarge, LengthMismatch, NotEven, NotMonic, TooManySubsets
from hermgrs.gf import solve_norm
from hermgrs.grs import GrsCode, is_hermitian_self_dual
from hermgrs.poly import Poly, from_roots
from hermgrs.search import (annihilation_holds, classify, colex_subsets, companion_eigen_holds, companion_matrix,
                            delta_sequence, family_match, lemma1_solve, lemma1_system, line_family_sets,
                            norm_family_sets, recurrence_holds, theorem3_rank)
from hermgrs.settings import Caps

THETA = 3
UNIT_CIRCLE = (1, 2, THETA, 6)


def test_lemma1_system_shape(f9):
    M = lemma1_system(f9, UNIT_CIRCLE)
    assert (M.rows, M.cols) == (4, 4)
    assert M.tolist()[0] == [1, 1, 1, 1]
    with pytest.raises(NotEven):
        lemma1_system(f9, (0, 1, 2))


def test_lemma1_solve_pairs(f9):
    for alpha in itertools.combinations(range(9), 2):
        assert lemma1_solve(f9, alpha) == (1, 2)


def test_lemma1_solve_unit_circle_witness(f9):
    witness = lemma1_solve(f9, UNIT_CIRCLE)
    assert witness is not None
    assert all(0 < x < f9.q for x in witness)
    assert lemma1_system(f9, UNIT_CIRCLE).matvec(witness) == (0, 0, 0, 0)
    code, _ = construction2(f9, 0, 1, UNIT_CIRCLE)
    construction_norms = tuple(f9.nrm(v) for v in code.v)
    assert lemma1_system(f9, UNIT_CIRCLE).matvec(construction_norms) == (0, 0, 0, 0)


def test_lemma1_solve_kernel_cap(f9):
    with pytest.raises(KernelTooLarge):
        lemma1_solve(f9, (0, 1), Caps(max_kernel=2))


def test_family_match_examples(f9):
    assert family_match(f9, (0, 1))[0] == FamilySpec(FamilyKind.LINE, 1, 0)
    assert FamilySpec(FamilyKind.NORM, 0, 1) in family_match(f9, UNIT_CIRCLE)
    assert family_match(f9, (5,)) == []


def test_family_match_orders_line_before_norm(f16):
    matches = family_match(f16, (0, 1))
    kinds = [spec.kind for spec in matches]
    assert kinds == sorted(kinds, key=lambda kind: kind is FamilyKind.NORM)
    norm_shifts = [spec.a for spec in matches if spec.kind is FamilyKind.NORM]
    assert norm_shifts == sorted(norm_shifts)


def test_colex_order():
    assert list(colex_subsets(4, 2)) == [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)]


def test_classify_pairs(f9):
    report = classify(f9, 2)
    assert report.total == 36
    assert len(report.admissible) == 36
    assert report.counts['LINE'] == 36
    assert report.counts['NONE'] == 0
    assert report.clean
    assert report.rejected_family_subsets == []


def test_classify_four_points_is_exactly_the_norm_circles(f9):
    report = classify(f9, 4)
    assert report.clean
    assert report.total == 126
    assert report.admissible_sets() == set(norm_family_sets(f9, 4))
    assert len(report.admissible) == 18
    assert all(any(s.kind is FamilyKind.NORM for s in entry.families) for entry in report.admissible)


def test_classify_six_points_f9_is_empty(f9):
    report = classify(f9, 6)
    assert report.total == 84
    assert report.admissible == []
    assert report.clean


def test_classify_six_points_f16_is_empty(f16):
    report = classify(f16, 6)
    assert report.total == 8008
    assert report.admissible == []


def test_classify_parallel_matches_serial(f9):
    serial = classify(f9, 4)
    parallel = classify(f9, 4, jobs=2)
    assert [e.alpha for e in parallel.admissible] == [e.alpha for e in serial.admissible]
    assert parallel.counts == serial.counts


def test_classify_guards(f9):
    with pytest.raises(NotEven):
        classify(f9, 3)
    with pytest.raises(TooManySubsets):
        classify(f9, 4, caps=Caps(max_subsets=100))


def test_classify_reports_missing_family(f9, mocker):
    mocker.patch('hermgrs.search.family_match', return_value=[])
    report = classify(f9, 2)
    assert not report.clean
    assert report.counts['NONE'] == 36
    assert {v['reason'] for v in report.violations} == {'no_family'}


def test_line_family_sets_cover_pairs(f9):
    assert len(line_family_sets(f9, 2)) == 36
    assert len(line_family_sets(f9, 3)) == 12


def test_admissible_witnesses_lift_to_self_dual_codes(f9):
    for entry in classify(f9, 4).admissible:
        fibers = [solve_norm(f9, x)[:2] for x in entry.witness]
        for v in itertools.product(*fibers):
            assert is_hermitian_self_dual(GrsCode(f9, 2, entry.alpha, v))


def test_theorem3_rank_on_admissible_sets(f9):
    for entry in classify(f9, 4).admissible:
        assert theorem3_rank(f9, entry.alpha, entry.witness) == 2


def test_delta_sequence_examples(f9):
    assert delta_sequence(f9, (1, 2), (1, 1), 4).values == (2, 0, 2, 0)
    assert delta_sequence(f9, (1, 2), (0, 0), 3).values == (0, 0, 0)
    seq = delta_sequence(f9, (THETA,), (1,), 5)
    assert seq.values == tuple(f9.pow(THETA, i) for i in range(5))
    assert seq.at(7) == f9.pow(THETA, 7)
    with pytest.raises(LengthMismatch):
        delta_sequence(f9, (1, 2), (1,), 3)


def test_companion_matrix_examples(f9):
    assert companion_matrix(Poly(f9, (2, 0, 1))).tolist() == [[0, 1], [1, 0]]
    assert companion_matrix(Poly(f9, (f9.neg(5), 1))).tolist() == [[5]]
    T = companion_matrix(from_roots(f9, UNIT_CIRCLE))
    assert T.tolist()[3] == [1, 0, 0, 0]
    assert all(companion_eigen_holds(T, a) for a in UNIT_CIRCLE)
    with pytest.raises(NotMonic):
        companion_matrix(Poly(f9, (1, 2)))
    with pytest.raises(NotMonic):
        companion_matrix(Poly(f9, (1,)))


@pytest.mark.parametrize("tower", ["f9", "f16", "f25"])
def test_recurrence_identities_random(tower, request):
    t = request.getfixturevalue(tower)
    rng = np.random.default_rng(2024)
    for _ in range(1000):
        n = int(rng.integers(1, 6))
        alpha = [int(a) for a in rng.choice(t.order, size=n, replace=False)]
        x = [int(v) for v in rng.integers(0, t.order, size=n)]
        G = from_roots(t, alpha)
        T = companion_matrix(G)
        assert all(companion_eigen_holds(T, a) for a in alpha)
        assert recurrence_holds(t, alpha, x, horizon=n + 2)
        h = G * Poly(t, (t.neg(int(rng.integers(0, t.order))), 1))
        assert annihilation_holds(t, alpha, x, h, horizon=n + 2)
