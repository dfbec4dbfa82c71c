"""CLI entrypoint for zerobench."""

import json
import logging
import math
import sys
from pathlib import Path
from typing import Any

import click

from zerobench.core.config import ConfigError, load_config, validate_config
from zerobench.core.errors import InvalidParameterError, UnknownNameError, ZerobenchError
from zerobench.core.runner import run_benchmark
from zerobench.detection.adaptive import run_test
from zerobench.methods.base import Task
from zerobench.methods.denoising import ensemble_seed
from zerobench.methods.detection import COMMON_DEFAULTS, build_test_config
from zerobench.methods.loader import available_methods, load_method
from zerobench.report.csv_io import CsvFormatError, read_csv, write_csv
from zerobench.report.render import ReportFormat, render_report
from zerobench.report.summary import GroupField, ReportSpec, summarize
from zerobench.signals.bank import list_signals as catalog_listing
from zerobench.signals.base import Signal
from zerobench.signals.wav import load_wav, write_wav

DEFAULT_OUTPUT = Path("results.csv")
TEST_PARAMETERS = {"r_min", "r_mc", "p_norm", "k_rank", "interval"}
# The transforms hold N x N grids.
MAX_SAMPLES = 8192


@click.group()
@click.version_option(package_name="zerobench")
@click.option("--verbose", "-v", count=True, help="Log progress (-vv for debug output)")
def cli(verbose: int) -> None:
    """zerobench - time-frequency denoising and detection benchmarks."""
    if verbose:
        logging.basicConfig(
            level=logging.DEBUG if verbose > 1 else logging.INFO,
            format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        )


def _parse_params(values: tuple[str, ...]) -> dict[str, Any]:
    """Parse name=value pairs; values are JSON when they parse, strings otherwise."""
    params: dict[str, Any] = {}
    for v in values:
        if "=" not in v:
            raise click.BadParameter(f"expected name=value, got '{v}'", param_hint="--param")
        name, value = v.split("=", 1)
        try:
            params[name] = json.loads(value)
        except json.JSONDecodeError:
            params[name] = value
    return params


def _load_input(path: str) -> Signal:
    try:
        signal = load_wav(Path(path))
    except ZerobenchError as e:
        click.echo(f"Error loading signal: {e}", err=True)
        sys.exit(1)
    if signal.N > MAX_SAMPLES:
        click.echo(f"Error: {path} has {signal.N} samples, at most {MAX_SAMPLES} allowed", err=True)
        sys.exit(1)
    return signal


@cli.command()
@click.argument("config_path", type=click.Path())
@click.option("--output", "-o", type=click.Path(), default=None, help="Output CSV file")
@click.option("--workers", "-w", type=int, default=None, help="Worker threads")
def run(config_path: str, output: str | None, workers: int | None) -> None:
    """Run a benchmark and write its results table.

    CONFIG_PATH is the path to a benchmark YAML file.
    """
    try:
        cfg = load_config(Path(config_path))
    except ConfigError as e:
        click.echo(f"Error loading config: {e}", err=True)
        sys.exit(1)

    errors = validate_config(cfg)
    if errors:
        click.echo("Config validation failed:", err=True)
        for error in errors:
            click.echo(f"  - {error}", err=True)
        sys.exit(1)

    if workers is not None:
        if workers < 1:
            click.echo("Error: --workers must be >= 1", err=True)
            sys.exit(1)
        cfg = cfg.model_copy(update={"workers": workers})

    destination = Path(output) if output else (cfg.output or DEFAULT_OUTPUT)
    click.echo(
        f"Running {cfg.task.value} benchmark: {len(cfg.signals)} signals, "
        f"{len(cfg.snr_db)} SNRs, {cfg.repetitions} repetitions, {len(cfg.methods)} methods"
    )
    table = run_benchmark(cfg)
    write_csv(table, destination)

    click.echo(f"Rows: {len(table)}")
    if table.errors:
        click.echo(f"Failed calls recorded as NaN: {len(table.errors)}", err=True)
    click.echo(f"Results saved to: {destination}")


@cli.command()
@click.argument("config_path", type=click.Path())
def validate(config_path: str) -> None:
    """Validate a benchmark config.

    CONFIG_PATH is the path to a benchmark YAML file.
    """
    try:
        errors = validate_config(load_config(Path(config_path)))
    except ConfigError as e:
        errors = [str(e)]

    if errors:
        click.echo("Config validation failed:", err=True)
        for error in errors:
            click.echo(f"  - {error}", err=True)
        sys.exit(1)

    click.echo("Config is valid.")


@cli.command()
@click.argument("csv_path", type=click.Path())
@click.option(
    "--format",
    "-f",
    "formats",
    type=click.Choice([f.value for f in ReportFormat]),
    multiple=True,
    default=[ReportFormat.MARKDOWN.value],
    help="Output format (repeatable)",
)
@click.option("--out-dir", "-d", type=click.Path(), default=None, help="Report directory")
@click.option(
    "--group-by",
    "-g",
    type=click.Choice([g.value for g in GroupField]),
    multiple=True,
    help="Grouping fields (default: method, signal, snr)",
)
@click.option("--confidence", type=float, default=0.95, help="Family-wise confidence level")
@click.option("--comparisons", type=int, default=None, help="Bonferroni comparisons")
@click.option("--runtime", is_flag=True, help="Summarize execution time instead of metrics")
def report(
    csv_path: str,
    formats: tuple[str, ...],
    out_dir: str | None,
    group_by: tuple[str, ...],
    confidence: float,
    comparisons: int | None,
    runtime: bool,
) -> None:
    """Summarize a results CSV into tables and charts.

    CSV_PATH is a file written by `zerobench run`.
    """
    try:
        table = read_csv(Path(csv_path))
    except CsvFormatError as e:
        click.echo(f"Error loading results: {e}", err=True)
        sys.exit(1)

    fields: dict[str, Any] = {"confidence": confidence, "runtime": runtime}
    if group_by:
        fields["group_by"] = [GroupField(g) for g in group_by]
    if comparisons is not None:
        fields["bonferroni_comparisons"] = comparisons
    try:
        spec = ReportSpec(**fields)
    except ValueError as e:
        click.echo(f"Invalid report options: {e}", err=True)
        sys.exit(1)

    summary = summarize(table, spec)
    directory = Path(out_dir) if out_dir else Path(csv_path).parent
    for path in render_report(summary, directory, formats):
        click.echo(f"Wrote {path}")


@cli.command("list-signals")
@click.option("--json", "as_json", is_flag=True, help="Machine-readable output")
def list_signals(as_json: bool) -> None:
    """List the signal catalog."""
    listing = catalog_listing()
    if as_json:
        click.echo(json.dumps(listing, indent=2))
        return

    click.echo("Available signals:")
    for entry in listing:
        click.echo(f"  {entry['name']} (J={entry['J']})")
        click.echo(f"    {entry['description']}")
        params = ", ".join(f"{k}={v}" for k, v in entry["parameters"].items())
        click.echo(f"    Parameters: {params}")


@cli.command("list-methods")
@click.option("--json", "as_json", is_flag=True, help="Machine-readable output")
def list_methods(as_json: bool) -> None:
    """List registered methods."""
    adapters = available_methods()
    if as_json:
        listing = [
            {
                "name": a.name,
                "task": a.task.value,
                "defaults": a.defaults,
                "description": a.description,
            }
            for a in adapters
        ]
        click.echo(json.dumps(listing, indent=2))
        return

    for task in Task:
        click.echo(f"{task.value.capitalize()} methods:")
        for adapter in (a for a in adapters if a.task == task):
            click.echo(f"  {adapter.name}")
            click.echo(f"    {adapter.description}")
            defaults = ", ".join(f"{k}={v}" for k, v in adapter.defaults.items())
            click.echo(f"    Defaults: {defaults}")
        click.echo("")


@cli.command()
@click.argument("wav_path", type=click.Path())
@click.option("--method", "-m", required=True, help="Denoising method name")
@click.option("--out", "-o", "out_path", required=True, type=click.Path(), help="Output WAV")
@click.option("--param", "-p", multiple=True, help="Method parameter in name=value format")
@click.option("--seed", type=int, default=0, help="Seed passed to the method")
def denoise(wav_path: str, method: str, out_path: str, param: tuple[str, ...], seed: int) -> None:
    """Denoise a mono WAV file.

    WAV_PATH is a 16-bit PCM or float32 mono file.
    """
    try:
        adapter = load_method(method)
        if adapter.task != Task.DENOISING:
            raise UnknownNameError(
                "denoising method",
                method,
                [a.name for a in available_methods() if a.task == Task.DENOISING],
            )
        params = adapter.resolve(_parse_params(param))
    except (UnknownNameError, InvalidParameterError) as e:
        click.echo(f"Error: {e}", err=True)
        sys.exit(1)

    signal = _load_input(wav_path)
    estimate = adapter(signal.samples, signal, params, seed)
    write_wav(Path(out_path), estimate, int(signal.params["sample_rate"]))
    click.echo(f"Denoised with {method}; output saved to: {out_path}")


@cli.command()
@click.argument("wav_path", type=click.Path())
@click.option(
    "--test",
    "-t",
    "test_name",
    type=click.Choice(["envelope", "mad", "rank"]),
    default="rank",
    help="Global test",
)
@click.option("--param", "-p", multiple=True, help="Test parameter in name=value format")
@click.option("--json", "as_json", is_flag=True, help="Machine-readable output")
def detect(wav_path: str, test_name: str, param: tuple[str, ...], as_json: bool) -> None:
    """Test a mono WAV file for signal presence.

    WAV_PATH is a 16-bit PCM or float32 mono file.
    """
    overrides = _parse_params(param)
    unknown = set(overrides) - set(COMMON_DEFAULTS) - TEST_PARAMETERS
    if unknown:
        click.echo(f"Unknown test parameters: {sorted(unknown)}", err=True)
        sys.exit(1)
    params = {**COMMON_DEFAULTS, **overrides}
    try:
        cfg = build_test_config(params)
    except (ValueError, TypeError) as e:
        click.echo(f"Invalid test parameters: {e}", err=True)
        sys.exit(1)

    signal = _load_input(wav_path)
    outcome = run_test(
        signal.samples, test_name, cfg, m=int(params["m"]), seed=ensemble_seed(params, 0)
    )
    if as_json:
        click.echo(json.dumps({"test": test_name, **outcome.to_dict()}, indent=2))
        return

    click.echo(f"Test: {test_name}")
    click.echo(f"Signal detected: {'yes' if outcome.reject else 'no'}")
    if math.isclose(outcome.p_minus, outcome.p_plus):
        click.echo(f"p-value: {outcome.p_plus:.4f}")
    else:
        click.echo(f"p-value interval: [{outcome.p_minus:.4f}, {outcome.p_plus:.4f}]")


def main(argv: list[str] | None = None) -> int:
    """Run the CLI and return its exit code.

    Usage errors exit with 1, failures inside the toolbox with 2.
    """
    try:
        rv = cli.main(args=argv, prog_name="zerobench", standalone_mode=False)
    except click.exceptions.Abort:
        click.echo("Aborted!", err=True)
        return 1
    except click.ClickException as e:
        e.show()
        return 1
    except ZerobenchError as e:
        click.echo(f"Error: {e}", err=True)
        return 2
    except SystemExit as e:
        if e.code is None:
            return 0
        return e.code if isinstance(e.code, int) else 1
    return rv if isinstance(rv, int) else 0


def run_cli() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run_cli()
