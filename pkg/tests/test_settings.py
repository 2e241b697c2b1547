import os

import pytest

from environment import load_env
from hermgrs.settings import Caps, default_jobs, load_caps, log_level, sweep_file


def test_default_caps():
    caps = load_caps()
    assert caps == Caps()
    assert caps.max_codewords == 2 ** 20
    assert caps.max_subsets == 10 ** 7


def test_max_enum_overrides_every_enumeration_cap(monkeypatch):
    monkeypatch.setenv('HERMGRS_MAX_ENUM', '500')
    caps = load_caps()
    assert (caps.max_codewords, caps.max_kernel, caps.max_subsets) == (500, 500, 500)
    assert caps.max_field == 2 ** 16


def test_bad_values_name_the_variable(monkeypatch):
    monkeypatch.setenv('HERMGRS_MAX_FIELD', 'big')
    with pytest.raises(ValueError, match="HERMGRS_MAX_FIELD"):
        load_caps()
    monkeypatch.setenv('HERMGRS_MAX_FIELD', '0')
    with pytest.raises(ValueError, match="positive"):
        load_caps()


def test_misc_settings(monkeypatch):
    assert log_level() == 'INFO'
    assert sweep_file() == 'sweeps.yml'
    assert default_jobs() == 1
    monkeypatch.setenv('HERMGRS_LOG_LEVEL', 'debug')
    monkeypatch.setenv('HERMGRS_JOBS', '4')
    assert log_level() == 'DEBUG'
    assert default_jobs() == 4


def test_load_env_reads_first_existing_file(tmp_path, monkeypatch):
    env_file = tmp_path / ".env"
    env_file.write_text("HERMGRS_JOBS=3\n")
    monkeypatch.delenv('HERMGRS_JOBS', raising=False)
    loaded = load_env(locations=(str(tmp_path / "missing.env"), str(env_file)))
    assert loaded == str(env_file)
    assert os.environ['HERMGRS_JOBS'] == '3'
    monkeypatch.delenv('HERMGRS_JOBS')


def test_load_env_keeps_existing_variables(tmp_path, monkeypatch):
    env_file = tmp_path / ".env"
    env_file.write_text("HERMGRS_LOG_LEVEL=DEBUG\n")
    monkeypatch.setenv('HERMGRS_LOG_LEVEL', 'WARNING')
    load_env(locations=(str(env_file),))
    assert os.environ['HERMGRS_LOG_LEVEL'] == 'WARNING'


def test_load_env_without_files(tmp_path):
    assert load_env(locations=(str(tmp_path / "nope.env"),)) is None
