"""Tests for benchmark configuration loading."""

import tempfile
from pathlib import Path

import pytest

from zerobench.core.config import ConfigError, load_config, parse_config, validate_config
from zerobench.methods.base import Task

MINIMAL = {
    "task": "denoising",
    "signals": ["LinearChirp"],
    "snr_db": [10],
    "methods": {"t_hard": None},
}


def write_yaml(content: str) -> Path:
    with tempfile.NamedTemporaryFile(suffix=".yml", delete=False, mode="w") as f:
        f.write(content)
        return Path(f.name)


class TestParseConfig:
    """Tests for parse_config function."""

    def test_parse_minimal_config(self) -> None:
        """Defaults fill in everything that is not given."""
        cfg = parse_config(MINIMAL)
        assert cfg.task == Task.DENOISING
        assert cfg.signal_names == ["LinearChirp"]
        assert cfg.N == 512
        assert cfg.repetitions == 1
        assert cfg.workers == 1
        assert cfg.methods == {"t_hard": [{}]}
        assert cfg.metric_names() == ["qrf"]

    def test_parse_full_config(self) -> None:
        """Signal parameters, parameter lists and metrics are kept."""
        raw = {
            "task": "denoising",
            "signals": [{"name": "McMultiLinear", "params": {"count": 2}}, "CosChirp"],
            "N": 256,
            "snr_db": 5,
            "repetitions": 3,
            "base_seed": 7,
            "methods": {"t_hard": [{"c": 2.0}, {"c": 3.0}], "sst_rd": {"mu": 0.1}},
            "metrics": ["qrf", "cc"],
            "output": "results/out.csv",
        }
        cfg = parse_config(raw)
        assert cfg.signals[0].params == {"count": 2}
        assert cfg.snr_db == [5.0]
        assert cfg.methods["t_hard"] == [{"c": 2.0}, {"c": 3.0}]
        assert cfg.methods["sst_rd"] == [{"mu": 0.1}]
        assert cfg.metric_names() == ["qrf", "cc"]
        assert cfg.output == Path("results/out.csv")

    def test_method_list_uses_defaults(self) -> None:
        """A plain list of method names runs each with its defaults."""
        cfg = parse_config({**MINIMAL, "methods": ["t_hard", "t_soft"]})
        assert cfg.methods == {"t_hard": [{}], "t_soft": [{}]}

    def test_parse_missing_task(self) -> None:
        """Test that a missing task raises ConfigError."""
        raw = {k: v for k, v in MINIMAL.items() if k != "task"}
        with pytest.raises(ConfigError, match="task"):
            parse_config(raw)

    def test_parse_invalid_parameter_sets(self) -> None:
        """Method parameters must be mappings."""
        with pytest.raises(ConfigError, match="must be a mapping"):
            parse_config({**MINIMAL, "methods": {"t_hard": [1, 2]}})

    def test_parse_out_of_range(self) -> None:
        """Pydantic bounds are reported as ConfigError."""
        with pytest.raises(ConfigError, match="Invalid config"):
            parse_config({**MINIMAL, "N": 16})
        with pytest.raises(ConfigError, match="Invalid config"):
            parse_config({**MINIMAL, "workers": 0})


class TestLoadConfig:
    """Tests for load_config function."""

    def test_load_valid_yaml(self) -> None:
        """Test loading a valid YAML file."""
        path = write_yaml(
            """
task: detection
signals: [HermiteFunction]
N: 256
snr_db: [0, 5]
repetitions: 4
methods:
  rank_test:
    m: 19
"""
        )
        try:
            cfg = load_config(path, environ={})
            assert cfg.task == Task.DETECTION
            assert cfg.snr_db == [0.0, 5.0]
            assert cfg.methods == {"rank_test": [{"m": 19}]}
        finally:
            path.unlink()

    def test_load_invalid_yaml(self) -> None:
        """Test loading invalid YAML raises error."""
        path = write_yaml("task: [unclosed")
        try:
            with pytest.raises(ConfigError, match="Invalid YAML"):
                load_config(path, environ={})
        finally:
            path.unlink()

    def test_load_nonexistent_file(self) -> None:
        """Test loading nonexistent file raises error."""
        with pytest.raises(ConfigError, match="File not found"):
            load_config(Path("/nonexistent/bench.yml"))

    def test_load_non_mapping(self) -> None:
        """A YAML list is not a config."""
        path = write_yaml("- a\n- b\n")
        try:
            with pytest.raises(ConfigError, match="YAML mapping"):
                load_config(path, environ={})
        finally:
            path.unlink()

    def test_workers_environment_override(self) -> None:
        """ZEROBENCH_WORKERS replaces the workers key."""
        path = write_yaml("task: denoising\nsignals: [LinearChirp]\nsnr_db: 10\nmethods: [t_hard]")
        try:
            assert load_config(path, environ={"ZEROBENCH_WORKERS": "3"}).workers == 3
            assert load_config(path, environ={}).workers == 1
            with pytest.raises(ConfigError, match="must be an integer"):
                load_config(path, environ={"ZEROBENCH_WORKERS": "many"})
        finally:
            path.unlink()

    def test_demo_benchmark_loads(self) -> None:
        """The bundled demo benchmark is valid."""
        path = Path(__file__).parent.parent / "benchmarks" / "demo.yml"
        cfg = load_config(path, environ={})
        assert validate_config(cfg) == []


class TestValidateConfig:
    """Tests for validate_config function."""

    def test_validate_valid_config(self) -> None:
        """Test validation of a valid config."""
        assert validate_config(parse_config(MINIMAL)) == []

    def test_validate_unknown_names(self) -> None:
        """Unknown signals, methods and metrics are all reported."""
        raw = {
            **MINIMAL,
            "signals": ["Nope"],
            "methods": {"nope": None},
            "metrics": ["snr"],
        }
        errors = validate_config(parse_config(raw))
        assert len(errors) == 3
        assert any("Unknown signal 'Nope'" in e for e in errors)
        assert any("Unknown method 'nope'" in e for e in errors)
        assert any("Unknown metric 'snr'" in e for e in errors)

    def test_validate_task_mismatch(self) -> None:
        """Methods and metrics must match the task."""
        raw = {**MINIMAL, "methods": {"rank_test": None}, "metrics": ["detected"]}
        errors = validate_config(parse_config(raw))
        assert any("is a detection method" in e for e in errors)
        assert any("does not apply to denoising" in e for e in errors)

    def test_validate_bad_parameters(self) -> None:
        """Unknown method and signal parameters are reported."""
        raw = {
            **MINIMAL,
            "signals": [{"name": "LinearChirp", "params": {"slope": 1}}],
            "methods": {"t_hard": {"lam": 1.0}},
        }
        errors = validate_config(parse_config(raw))
        assert any("Unknown parameters for LinearChirp" in e for e in errors)
        assert any("Unknown parameters for method 't_hard'" in e for e in errors)
