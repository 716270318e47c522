"""
Tests for run configuration loading and validation.

Tests cover:
- Default merging and environment overrides (run_config.py)
- Debug session directories and artifacts
- RunConfigSchema and BAESystemSchema rules (validation_schemas.py)
- File validation and exit codes (validate_config.py)
"""

import json
import sys
from pathlib import Path

import pytest
import yaml

sys.path.insert(0, str(Path(__file__).parent.parent / "scripts"))

import run_config
from run_config import DEFAULTS, deep_merge, finite_json, init_debug_session, load_config, save_debug_artifact
from validate_config import load_yaml_file, print_summary, run_validation, validate_input_file
from validation_schemas import BAESystemSchema, RunConfigSchema, ValidationError


def _errors(results):
    return [e for e in results if e.severity == ValidationError.ERROR]


def _warnings(results):
    return [e for e in results if e.severity == ValidationError.WARNING]


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    monkeypatch.delenv("BETHE_SEED", raising=False)
    monkeypatch.delenv("BETHE_DEBUG", raising=False)


@pytest.fixture
def reset_debug():
    yield
    run_config.DEBUG_CONFIG = None
    run_config.DEBUG_SESSION_DIR = None


@pytest.mark.deterministic
@pytest.mark.unit
class TestLoadConfig:
    """Tests for load_config() and deep_merge()."""

    def test_deep_merge_keeps_siblings(self):
        merged = deep_merge(DEFAULTS, {"tolerances": {"bae": 1e-6}})
        assert merged["tolerances"]["bae"] == 1e-6
        assert merged["tolerances"]["residue"] == DEFAULTS["tolerances"]["residue"]
        assert DEFAULTS["tolerances"]["bae"] == 1e-10

    def test_missing_file_uses_defaults(self, tmp_path):
        config = load_config(tmp_path / "absent.yml")
        assert config == DEFAULTS

    def test_file_overrides(self, tmp_path, sample_run_config):
        path = tmp_path / "config.yml"
        path.write_text(yaml.safe_dump(sample_run_config))
        config = load_config(path)
        assert config["grading"] == "+-+"
        assert config["solver"]["seeds"] == 16
        assert config["solver"]["max_iterations"] == 200

    def test_top_level_must_be_mapping(self, tmp_path):
        path = tmp_path / "config.yml"
        path.write_text("- 1\n- 2\n")
        with pytest.raises(ValueError, match="mapping"):
            load_config(path)

    def test_environment_overrides(self, tmp_path, monkeypatch):
        monkeypatch.setenv("BETHE_SEED", "42")
        monkeypatch.setenv("BETHE_DEBUG", "yes")
        config = load_config(tmp_path / "absent.yml")
        assert config["seed"] == 42
        assert config["debug_mode"]["enabled"] is True


@pytest.mark.deterministic
@pytest.mark.unit
class TestDebugSession:
    """Tests for init_debug_session() and save_debug_artifact()."""

    def test_disabled(self, reset_debug):
        assert init_debug_session(DEFAULTS) is None
        assert save_debug_artifact("x", {"a": 1}) is None

    def test_enabled_writes_artifacts(self, tmp_path, reset_debug):
        config = deep_merge(DEFAULTS, {"debug_mode": {"enabled": True, "output_dir": str(tmp_path)}})
        session = init_debug_session(config, "verify")
        assert session.parent == tmp_path
        assert session.name.endswith("_verify")
        target = save_debug_artifact("certs", {"passed": True})
        assert json.loads(target.read_text()) == {"passed": True}

    def test_infinite_condition_written_as_null(self, tmp_path, reset_debug):
        config = deep_merge(DEFAULTS, {"debug_mode": {"enabled": True, "output_dir": str(tmp_path)}})
        init_debug_session(config, "solve")
        target = save_debug_artifact("seeds", [{"index": 0, "condition": float("inf")}], kind="seed_reports")
        assert "Infinity" not in target.read_text()
        assert json.loads(target.read_text()) == [{"index": 0, "condition": None}]

    def test_finite_json_nested(self):
        data = {"a": [1.0, float("nan")], "b": (float("-inf"), "x"), "c": {"d": 2}}
        assert finite_json(data) == {"a": [1.0, None], "b": [None, "x"], "c": {"d": 2}}

    def test_switch_disables_kind(self, tmp_path, reset_debug):
        config = deep_merge(DEFAULTS, {"debug_mode": {
            "enabled": True, "output_dir": str(tmp_path), "save_seed_reports": False,
        }})
        init_debug_session(config)
        assert save_debug_artifact("seeds", [], kind="seed_reports") is None


@pytest.mark.deterministic
@pytest.mark.unit
class TestRunConfigSchema:
    """Tests for RunConfigSchema.validate()."""

    def test_valid(self, sample_run_config):
        assert RunConfigSchema.validate(sample_run_config) == []

    def test_defaults_valid(self):
        assert _errors(RunConfigSchema.validate(DEFAULTS)) == []

    def test_unknown_key_warns(self):
        results = RunConfigSchema.validate({"colour": 1})
        assert _errors(results) == []
        assert "unknown top-level key 'colour'" in _warnings(results)[0].message

    @pytest.mark.parametrize("override,fragment", [
        ({"r": -1}, "'r' must be >= 0"),
        ({"s": -2}, "'s' must be >= -1"),
        ({"r": "one"}, "'r' must be an integer"),
        ({"seed": -3}, "'seed' must be a non-negative integer"),
        ({"backend": "interval"}, "unknown backend"),
        ({"grading": [1, 2]}, "entries other than +1/-1"),
        ({"grading": [-1, -1]}, "at least one +1"),
        ({"n_roots": [1, -1]}, "non-negative integers"),
        ({"tolerances": {"bae": 0}}, "must be a positive number"),
        ({"solver": {"seeds": 0}}, "'solver.seeds' must be a positive integer"),
        ({"solver": {"box": [1, 0, -1, 1]}}, "empty range"),
        ({"solver": {"box": [1, 2]}}, "re_min"),
        ({"verify": {"method": "guess"}}, "unknown method"),
        ({"verify": {"max_sites": 0}}, "'verify.max_sites' must be a positive integer"),
        ({"debug_mode": {"enabled": "yes"}}, "true or false"),
    ])
    def test_errors(self, override, fragment):
        errors = _errors(RunConfigSchema.validate(override))
        assert any(fragment in e.message for e in errors), [e.message for e in errors]

    def test_large_bound_warns(self):
        results = RunConfigSchema.validate({"verify": {"max_shape_side": 6}})
        assert _errors(results) == []
        assert "is large" in _warnings(results)[0].message


@pytest.mark.deterministic
@pytest.mark.unit
class TestBAESystemSchema:
    """Tests for BAESystemSchema.validate()."""

    def test_valid_system(self):
        assert BAESystemSchema.validate({"grading": [1, 1], "n_roots": [1], "inhomogeneities": [0, 0]}) == []

    def test_valid_data_with_grading_dict(self):
        data = {"grading": {"r": 1, "s": 0, "p": [1, -1, 1]}, "roots": [["1/3"], []], "inhomogeneities": [0]}
        assert BAESystemSchema.validate(data) == []

    def test_missing_grading(self):
        errors = _errors(BAESystemSchema.validate({"n_roots": [1]}))
        assert "'grading' is required" in errors[0].message

    def test_missing_roots(self):
        errors = _errors(BAESystemSchema.validate({"grading": "+-", "inhomogeneities": [0]}))
        assert "one of 'n_roots' or 'roots'" in errors[0].message

    def test_count_mismatch(self):
        errors = _errors(BAESystemSchema.validate({"grading": [1, -1, 1], "n_roots": [1], "inhomogeneities": [0]}))
        assert "needs 2 entries" in errors[0].message

    def test_missing_sites_warns(self):
        results = BAESystemSchema.validate({"grading": "+-", "n_roots": [0]})
        assert _errors(results) == []
        assert "P = 1" in _warnings(results)[0].message


@pytest.mark.deterministic
@pytest.mark.unit
class TestValidateConfig:
    """Tests for file-level validation and exit codes."""

    def test_load_yaml_syntax_error(self, tmp_path):
        path = tmp_path / "bad.yml"
        path.write_text("grading: [1, 1\n")
        data, errors = load_yaml_file(path)
        assert data == {}
        assert "YAML syntax error" in errors[0].message

    def test_load_empty_file(self, tmp_path):
        path = tmp_path / "empty.yml"
        path.write_text("# nothing\n")
        _, errors = load_yaml_file(path)
        assert "empty" in errors[0].message

    def test_input_file(self, sl2_system_file):
        assert validate_input_file(sl2_system_file) == []

    def test_exit_codes(self, tmp_path, sample_run_config, sl2_system_file, capsys):
        good = tmp_path / "config.yml"
        good.write_text(yaml.safe_dump(sample_run_config))
        assert run_validation(good, [sl2_system_file]) == 0

        bad = tmp_path / "bad.yml"
        bad.write_text("grading: [1, 1\n")
        assert run_validation(bad) == 1

        schema = tmp_path / "schema.yml"
        schema.write_text("backend: interval\n")
        assert run_validation(schema) == 2

        warned = tmp_path / "warned.yml"
        warned.write_text("colour: blue\n")
        assert run_validation(warned) == 0
        assert run_validation(warned, strict=True) == 3
        assert "VALIDATION RESULTS" in capsys.readouterr().out

    def test_missing_file_is_syntax_class(self, tmp_path):
        assert run_validation(tmp_path / "absent.yml") == 1

    def test_print_summary_all_valid(self, capsys):
        assert print_summary({"config.yml": []}) == 0
        assert "All configuration files are valid" in capsys.readouterr().out
