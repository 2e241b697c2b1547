import numpy as np
import pytest

from hermgrs.sweep import (classify_sweep, construction_sweep, lemma2_sweep, load_sweep_config, recurrence_sweep,
                           run_sweeps, theorem7_sweep)

SMALL_CONFIG = """
seed: 3
sweeps:
  lemma2:
    fields: [[3, 1]]
  recurrence:
    fields: [[3, 1]]
    instances: 20
  classify:
    runs:
      - {p: 3, m: 1, n: 6}
"""


def test_load_sweep_config(tmp_path):
    path = tmp_path / "sweeps.yml"
    path.write_text(SMALL_CONFIG)
    config = load_sweep_config(str(path))
    assert config['seed'] == 3
    assert list(config['sweeps']) == ['lemma2', 'recurrence', 'classify']


def test_load_sweep_config_errors(tmp_path):
    with pytest.raises(ValueError, match="not found"):
        load_sweep_config(str(tmp_path / "missing.yml"))
    path = tmp_path / "bad.yml"
    path.write_text("sweeps:\n  decoding: {}\n")
    with pytest.raises(ValueError, match="decoding"):
        load_sweep_config(str(path))
    path.write_text("seed: 1\n")
    with pytest.raises(ValueError, match="'sweeps'"):
        load_sweep_config(str(path))


@pytest.mark.parametrize("tower", ["f9", "f16", "f25"])
def test_lemma2_cardinalities_exhaustive(tower, request):
    t = request.getfixturevalue(tower)
    result = lemma2_sweep(t)
    assert result.checked == t.order ** 2
    assert result.passed, result.failures[:5]


@pytest.mark.parametrize("n", [2, 4])
def test_degree_criterion_agrees_with_gram(f9, n):
    result = theorem7_sweep(f9, n)
    assert result.passed, result.failures[:5]
    assert result.checked > 0
    assert result.notes['self_dual'] > 0


@pytest.mark.parametrize("tower", ["f4", "f9", "f16"])
def test_construction_sweep_is_sound(tower, request):
    t = request.getfixturevalue(tower)
    result = construction_sweep(t)
    assert result.passed, result.failures[:5]
    assert result.notes.get('no_feasible_lambda', 0) == 0


def test_construction_sweep_counts_strict_lambda_failures(f9):
    result = construction_sweep(f9)
    assert result.notes['norm_infeasible'] == result.notes['recovered_by_lambda']
    assert result.notes['norm_infeasible'] > 0


def test_recurrence_sweep(f16):
    result = recurrence_sweep(f16, 50, np.random.default_rng(0))
    assert result.checked == 50
    assert result.passed


def test_classify_sweep_for_circles(f9):
    result = classify_sweep(f9, 4)
    assert result.passed
    assert result.notes['admissible'] == 18


def test_run_sweeps_is_reproducible(tmp_path):
    path = tmp_path / "sweeps.yml"
    path.write_text(SMALL_CONFIG)
    config = load_sweep_config(str(path))
    first = {name: r.to_dict() for name, r in run_sweeps(config).items()}
    second = {name: r.to_dict() for name, r in run_sweeps(config, seed=3).items()}
    assert first == second
    assert list(first) == ['lemma2[q=3]', 'recurrence[q=3]', 'classify[q=3,n=6]']
    assert all(r['passed'] for r in first.values())
