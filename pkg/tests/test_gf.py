import pickle

import numpy as np
import pytest

from hermgrs.errors import DivisionByZero, InputError, InvalidCode, NotPrime, TooLarge
from hermgrs.gf import (base_elements, build_tower, format_elt, frobenius, is_in_base_field, norm, solve_norm,
                        trace)

THETA, TWO_THETA, ONE_PLUS_THETA = 3, 6, 4


def test_build_tower_f9_layout(f9):
    assert (f9.p, f9.m, f9.q, f9.order) == (3, 1, 3, 9)
    assert f9.theta == 3
    assert f9.top_modulus == (1, 0, 1)
    assert f9.base_modulus == (0, 1)
    assert f9.generator == ONE_PLUS_THETA


def test_build_tower_f16_base_modulus(f16):
    assert f16.q == 4
    assert f16.base_modulus == (1, 1, 1)
    assert f16.top_modulus[2] == 1


def test_build_tower_rejects_composite_characteristic():
    with pytest.raises(NotPrime):
        build_tower(4, 1)


def test_build_tower_rejects_bad_degree():
    with pytest.raises(InputError):
        build_tower(3, 0)


def test_build_tower_respects_field_bound():
    with pytest.raises(TooLarge):
        build_tower(3, 2, max_field=80)


def test_build_tower_reads_field_bound_from_env(monkeypatch):
    monkeypatch.setenv('HERMGRS_MAX_FIELD', '20')
    with pytest.raises(TooLarge, match="25"):
        build_tower(5, 1)


def test_frobenius_and_norm_values(f9):
    assert frobenius(f9, THETA) == TWO_THETA
    assert norm(f9, THETA) == 1
    assert norm(f9, ONE_PLUS_THETA) == 2
    assert norm(f9, 0) == 0


def test_solve_norm_fibers(f9):
    assert solve_norm(f9, 1) == [1, 2, 3, 6]
    assert solve_norm(f9, 2) == [4, 5, 7, 8]
    assert solve_norm(f9, THETA) == []
    assert solve_norm(f9, 0) == [0]


@pytest.mark.parametrize("tower", ["f4", "f9", "f16", "f25"])
def test_norm_fibers_have_q_plus_one_points(tower, request):
    t = request.getfixturevalue(tower)
    for c in range(1, t.q):
        assert len(solve_norm(t, c)) == t.q + 1


@pytest.mark.parametrize("tower", ["f4", "f9", "f16", "f25"])
def test_base_field_is_frobenius_fixed(tower, request):
    t = request.getfixturevalue(tower)
    for e in range(t.order):
        assert is_in_base_field(t, e) == (e < t.q)
        assert trace(t, e) < t.q
        assert norm(t, e) < t.q
    assert base_elements(t) == list(range(t.q))


SMALL_FIELDS = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1), (2, 4)]


@pytest.fixture(params=SMALL_FIELDS, ids=lambda pm: f"p{pm[0]}m{pm[1]}")
def small_tower(request):
    return build_tower(*request.param)


def test_small_fields_cover_every_order_up_to_256():
    assert sorted(build_tower(p, m).order for p, m in SMALL_FIELDS) == [4, 9, 16, 25, 49, 64, 81, 121, 169, 256]


def test_field_axioms_exhaustive(small_tower):
    t = small_tower
    e = t.elements()
    b, c = np.meshgrid(e, e, indexing='ij')
    assert np.array_equal(t.add(b, c), t.add(c, b))
    assert np.array_equal(t.mul(b, c), t.mul(c, b))
    assert np.array_equal(t.add(e, 0), e)
    assert np.array_equal(t.mul(e, 1), e)
    assert np.all(t.add(e, t.neg(e)) == 0)
    nonzero = e[1:]
    assert np.all(t.mul(nonzero, t.inv(nonzero)) == 1)
    # triples, one slice per first operand
    for a in e:
        a = int(a)
        assert np.array_equal(t.add(t.add(a, b), c), t.add(a, t.add(b, c)))
        assert np.array_equal(t.mul(t.mul(a, b), c), t.mul(a, t.mul(b, c)))
        assert np.array_equal(t.mul(a, t.add(b, c)), t.add(t.mul(a, b), t.mul(a, c)))


def test_frobenius_is_an_automorphism(small_tower):
    t = small_tower
    e = t.elements()
    a, b = np.meshgrid(e, e, indexing='ij')
    assert np.array_equal(t.frob(t.add(a, b)), t.add(t.frob(a), t.frob(b)))
    assert np.array_equal(t.frob(t.mul(a, b)), t.mul(t.frob(a), t.frob(b)))
    assert np.array_equal(t.frob(t.frob(e)), e)
    assert np.unique(t.frob(e)).size == t.order


def test_check_accepts_only_element_indices(f9):
    assert f9.check(np.int64(8)) == 8
    for bad in (9, -1, 1.0, True, '3', None):
        with pytest.raises(InvalidCode, match="not an element index"):
            f9.check(bad, '--a')


def test_pow_conventions(f9):
    assert f9.pow(0, 0) == 1
    assert f9.pow(THETA, 2) == 2
    assert f9.pow(THETA, -1) == f9.inv(THETA)
    assert f9.pow(f9.generator, 8) == 1


def test_inverse_of_zero_raises(f9):
    with pytest.raises(DivisionByZero):
        f9.inv(0)
    with pytest.raises(ZeroDivisionError):
        f9.div(1, 0)


def test_scalar_ops_return_python_ints(f9):
    assert isinstance(f9.mul(THETA, THETA), int)
    assert isinstance(f9.add(1, 2), int)


def test_tower_pickles_by_parameters(f9):
    clone = pickle.loads(pickle.dumps(f9))
    assert clone == f9
    assert clone is f9


def test_tables_are_read_only(f9):
    with pytest.raises(ValueError):
        f9._norm[0] = 1


def test_format_elt(f9):
    assert format_elt(f9, 2) == "2"
    assert format_elt(f9, THETA) == "θ"
    assert format_elt(f9, TWO_THETA) == "2θ"
    assert format_elt(f9, 7) == "1+2θ"
