"""Command-line tool for local-hidden-variable feasibility of qubit steering scenarios.

usage:
    steerlhv [--verbose] [--config FILE] COMMAND [OPTIONS]

example:
    steerlhv check --builder two_orthogonal --alpha 0.5
    steerlhv check --builder nonorthogonal_pair --theta 1.0471976 --deficiency
    steerlhv check --scenario my_scenario.json --exact
    steerlhv scan --step 0.05 --out scan.csv --jobs 8
    steerlhv werner --ensembles 3 --tol 1e-3
    steerlhv steer singlet.json ensemble.json

Exit codes: 0 feasible / report written, 2 infeasible or not steerable,
3 ambiguous or internal failure, 4 malformed input.
"""

from __future__ import annotations

import logging
import sys
from argparse import ArgumentParser
from pathlib import Path
from types import SimpleNamespace
from typing import Any, NoReturn

import typer

try:  # typer >= 0.2x vendors its own click; its exceptions are not click's
    from typer import _click as click
except ImportError:
    import click

from steerlhv.cli.config_merge import apply_config, merge_config_json_files
from steerlhv.cli.constants import (
    DEFAULT_SCAN_STEP,
    DEFAULT_WERNER_TOL,
    EXIT_AMBIGUOUS,
    EXIT_FEASIBLE,
    EXIT_INFEASIBLE,
    EXIT_MALFORMED,
)
from steerlhv.cli.logging_setup import setup_logging
from steerlhv.cli.progress_bar import start_progress, stop_progress, update_progress
from steerlhv.cli.reports import check_report, dumps, error_report, steer_report
from steerlhv.cli.scenario_file import load_json, parse_bipartite_state, parse_ensemble_file, parse_scenario
from steerlhv.log import timed
from steerlhv.model.constants import DEFAULT_HULL_MARGIN, MAX_SCAN_STEP, MIN_SCAN_STEP
from steerlhv.model.exceptions import (
    AntipodalInputError,
    InconsistentEnsemblesError,
    InvalidParameterError,
    InvalidStateError,
    NotRealizableError,
    NotSteerableError,
    NumericallyAmbiguousError,
    ScenarioFileError,
    SteerlhvError,
    UnsupportedScenarioError,
)
from steerlhv.structured_log import NullEventLogger, StructuredEventLogger

logger: logging.Logger = logging.getLogger("steerlhv.cli")

MALFORMED_INPUT_ERRORS = (
    AntipodalInputError,
    InconsistentEnsemblesError,
    InvalidParameterError,
    InvalidStateError,
    NotRealizableError,
    ScenarioFileError,
    UnsupportedScenarioError,
)

app = typer.Typer(
    help="steerlhv - decide local-hidden-variable feasibility for qubit steering scenarios",
    no_args_is_help=True,
    add_completion=False,
)


def exit_code_for(error: SteerlhvError) -> int:
    if isinstance(error, MALFORMED_INPUT_ERRORS):
        return EXIT_MALFORMED
    if isinstance(error, NotSteerableError):
        return EXIT_INFEASIBLE
    return EXIT_AMBIGUOUS


def _run(ctx: typer.Context) -> SimpleNamespace:
    return ctx.obj if ctx.obj is not None else SimpleNamespace(events=NullEventLogger(), progress=False)


def _emit(document: dict[str, Any]) -> None:
    typer.echo(dumps(document))


def _fail(run: SimpleNamespace, error: SteerlhvError) -> NoReturn:
    code = exit_code_for(error)
    log = logger.warning if error.severity == "warning" else logger.error
    log(f"{error.code}: {error}")
    run.events.log_event("error", code=error.code, message=error.message, exit_code=code)
    _emit(error_report(error))
    raise typer.Exit(code=code)


def _status_exit(status: str) -> int:
    return {"feasible": EXIT_FEASIBLE, "infeasible": EXIT_INFEASIBLE}.get(status, EXIT_AMBIGUOUS)


@app.callback()
def configure(
    ctx: typer.Context,
    config: list[str] | None = typer.Option(
        None,
        "--config",
        help="JSON configuration file(s) of option defaults. Can be specified multiple times; later files override earlier ones.",
        rich_help_panel="Configuration Options",
    ),
    verbose: bool = typer.Option(
        False,
        "-v",
        "--verbose",
        help="Enable detailed debug-level logging output (DEBUG level).",
        rich_help_panel="Output & Logging Options",
    ),
    quiet: bool = typer.Option(
        False,
        "-q",
        "--quiet",
        help="Log warnings and errors only (WARNING level).",
        rich_help_panel="Output & Logging Options",
    ),
    log_file: str | None = typer.Option(
        None,
        "--log-file",
        help="Path to a file where all log output will be appended in addition to the console.",
        rich_help_panel="Output & Logging Options",
    ),
    structured_log: str | None = typer.Option(
        None,
        "--structured-log",
        help="Path to a JSONL file receiving one event per solve, mismatch, probe and error.",
        rich_help_panel="Output & Logging Options",
    ),
    no_progress: bool = typer.Option(
        False,
        "--no-progress",
        help="Disable the progress display of scan and werner.",
        rich_help_panel="Output & Logging Options",
    ),
) -> None:
    """Shared options; they go before the command name."""
    global logger
    if verbose:
        level = logging.DEBUG
    elif quiet:
        level = logging.WARNING
    else:
        level = logging.INFO
    logger = setup_logging(level=level, log_file=log_file)
    logger.debug(f"Python version: {sys.version}")
    logger.debug(f"Config files: {config or []}")

    events: StructuredEventLogger = StructuredEventLogger.open(structured_log) if structured_log else NullEventLogger()
    ctx.call_on_close(events.close)
    ctx.obj = SimpleNamespace(events=events, progress=not no_progress)


def _parse_bases(bases: list[str]) -> list[list[float]]:
    vectors = []
    for text in bases:
        try:
            vectors.append([float(v) for v in text.split(",")])
        except ValueError as e:
            raise InvalidParameterError("bases", text, "comma-separated numbers 'x,y,z'", original_error=e) from e
    return vectors


@app.command(help="Assemble and solve the feasibility system of one scenario.")
def check(
    ctx: typer.Context,
    scenario_file: str | None = typer.Option(None, "--scenario", help="Scenario JSON file ('-' for stdin).", rich_help_panel="Scenario"),
    builder: str | None = typer.Option(None, "--builder", help="Canned scenario name (see README).", rich_help_panel="Scenario"),
    alpha: float | None = typer.Option(None, "--alpha", help="Overlap alpha (two_orthogonal, three_orthogonal, bisecting).", rich_help_panel="Builder Parameters"),
    beta: float | None = typer.Option(None, "--beta", help="Overlap beta (three_orthogonal).", rich_help_panel="Builder Parameters"),
    gamma: float | None = typer.Option(None, "--gamma", help="Overlap gamma (three_orthogonal).", rich_help_panel="Builder Parameters"),
    theta: float | None = typer.Option(None, "--theta", help="Angle in radians (nonorthogonal_pair).", rich_help_panel="Builder Parameters"),
    q: float | None = typer.Option(None, "--q", help="Schmidt weight (gpr).", rich_help_panel="Builder Parameters"),
    w: float | None = typer.Option(None, "--w", help="Werner weight (werner).", rich_help_panel="Builder Parameters"),
    bases: list[str] | None = typer.Option(None, "--bases", help="Measurement direction 'x,y,z' (werner); repeat 2-4 times.", rich_help_panel="Builder Parameters"),
    deficiency: bool | None = typer.Option(None, "--deficiency/--no-deficiency", help="Allow outcome responses outside the support.", rich_help_panel="Assembly Options"),
    mixture_mode: str | None = typer.Option(None, "--mixture-mode", help="'full' or 'support_only'.", rich_help_panel="Assembly Options"),
    constraint_set: str | None = typer.Option(None, "--constraint-set", help="'paper_strict' or 'all_pairs'.", rich_help_panel="Assembly Options"),
    werner_w: float | None = typer.Option(None, "--werner-w", help="Werner weight in [0, 1] applied to a custom scenario.", rich_help_panel="Assembly Options"),
    orth_eps: float | None = typer.Option(None, "--orth-eps", help="Overlap below which two states count as orthogonal.", rich_help_panel="Assembly Options"),
    exact: bool = typer.Option(False, "--exact", help="Also solve in exact rational arithmetic and report its verdict.", rich_help_panel="Solver Options"),
    marginal: bool = typer.Option(False, "--marginal", help="Also solve the hand-derived marginal system of a canned scenario.", rich_help_panel="Solver Options"),
    emit_system: bool = typer.Option(False, "--emit-system", help="Include the assembled rows in the report.", rich_help_panel="Solver Options"),
) -> None:
    from steerlhv.lp import solve_exact, solve_feasibility
    from steerlhv.model.assembly import assemble
    from steerlhv.model.marginal import marginal_system

    run = _run(ctx)
    overrides = {
        key: value
        for key, value in {
            "deficiency": deficiency,
            "mixture_mode": mixture_mode,
            "constraint_set": constraint_set,
            "werner_w": werner_w,
            "orth_eps": orth_eps,
        }.items()
        if value is not None
    }
    try:
        if (scenario_file is None) == (builder is None):
            raise ScenarioFileError("<arguments>", "give exactly one of --scenario or --builder")
        if builder is not None:
            given = {"alpha": alpha, "beta": beta, "gamma": gamma, "theta": theta, "q": q, "w": w, "bases": _parse_bases(bases) if bases else None}
            document: Any = {"builder": builder, "params": {k: v for k, v in given.items() if v is not None}}
        else:
            document = load_json(scenario_file or "-")
        scenario = parse_scenario(document, overrides)
        system = assemble(scenario)
        logger.info(f"Assembled {system.shape[0]} rows over {system.shape[1]} variables")

        try:
            with timed(logger, "Floating-point solve"):
                report = solve_feasibility(system)
        except NumericallyAmbiguousError as e:
            if not exact:
                raise
            logger.warning(f"{e}; deciding in exact arithmetic")
            report = None
        exact_result = None
        if exact:
            with timed(logger, "Exact solve"):
                exact_result = solve_exact(system)
        result = check_report(scenario, system, report, exact_result)
        if emit_system:
            result["system"] = system.to_dict()
        if marginal:
            reduced = marginal_system(scenario)
            result["marginal"] = solve_feasibility(reduced).to_dict()
        if exact_result is not None and report is not None and exact_result.status is not report.status:
            logger.error(f"Floating-point verdict {report.status.value} disagrees with exact verdict {exact_result.status.value}")
            result["status"] = "ambiguous"
    except SteerlhvError as e:
        _fail(run, e)

    run.events.log_event("check", status=result["status"], scenario=result["scenario"], shape=result["shape"])
    logger.info(f"Verdict: {result['status']}")
    _emit(result)
    raise typer.Exit(code=_status_exit(result["status"]))


@app.command(help="Compare LP feasibility with tetrahedron membership over a grid of overlap triples.")
def scan(
    ctx: typer.Context,
    step: float = typer.Option(DEFAULT_SCAN_STEP, "--step", help="Grid spacing in [0.01, 0.25].", rich_help_panel="Grid"),
    margin: float = typer.Option(DEFAULT_HULL_MARGIN, "--margin", help="Hull boundary exclusion band (>= 1e-6).", rich_help_panel="Grid"),
    jobs: int = typer.Option(1, "--jobs", help="Worker processes.", rich_help_panel="Execution"),
    out: str | None = typer.Option(None, "--out", help="Write per-point records to this CSV file.", rich_help_panel="Output"),
) -> None:
    from steerlhv.analysis.scan import conjecture_scan, grid_values

    run = _run(ctx)

    def on_record(record: Any) -> None:
        update_progress(status=f"{record.alpha:g},{record.beta:g},{record.gamma:g}")
        if record.is_mismatch:
            run.events.log_event("mismatch", triple=list(record.triple), lp_status=record.lp_status, hull=record.hull)

    try:
        total = len(grid_values(step)) ** 3 if MIN_SCAN_STEP <= step <= MAX_SCAN_STEP else None
        start_progress("Scanning", total=total, enabled=run.progress)
        try:
            report = conjecture_scan(step, margin=margin, jobs=jobs, on_record=on_record)
        finally:
            stop_progress()
        if out:
            report.write_csv(out)
            logger.info(f"Wrote {len(report.records)} records to {Path(out)}")
    except SteerlhvError as e:
        _fail(run, e)

    run.events.log_event("scan", points_tested=report.points_tested, mismatches=len(report.mismatches), runtime=report.runtime)
    _emit(report.to_dict(include_runtime=False))
    raise typer.Exit(code=EXIT_FEASIBLE)


@app.command(help="Bisect the smallest Werner weight that still rules out a local-hidden-variable model.")
def werner(
    ctx: typer.Context,
    ensembles: int = typer.Option(3, "--ensembles", help="Number of measurement bases: 3 or 4.", rich_help_panel="Search"),
    tol: float = typer.Option(DEFAULT_WERNER_TOL, "--tol", help="Bisection tolerance (>= 1e-4).", rich_help_panel="Search"),
    families_file: str | None = typer.Option(None, "--families", help="YAML file of basis configurations (default: packaged families).", rich_help_panel="Search"),
) -> None:
    from steerlhv.analysis.families import load_families
    from steerlhv.analysis.werner import werner_threshold

    run = _run(ctx)

    def on_probe(config: Any, w: float, status: str) -> None:
        update_progress(status=f"{config.name} w={w:.4f} {status}")
        run.events.log_event("werner_probe", config=config.name, w=w, status=status)

    try:
        families = load_families(families_file)
        start_progress(f"Werner search ({ensembles} ensembles)", total=None, enabled=run.progress)
        try:
            result = werner_threshold(ensembles, families, tol=tol, on_probe=on_probe)
        finally:
            stop_progress()
    except SteerlhvError as e:
        _fail(run, e)

    run.events.log_event("werner", ensembles=ensembles, threshold=result.threshold, config=result.config.name)
    _emit(result.to_dict())
    raise typer.Exit(code=EXIT_FEASIBLE)


@app.command(help="Decide each Schmidt weight with the two-ensemble construction.")
def gpr(
    ctx: typer.Context,
    q_values: list[float] = typer.Option(..., "--q", help="Schmidt weight in (0, 1); repeat for a sweep.", rich_help_panel="Sweep"),
    fallback: bool = typer.Option(False, "--fallback", help="Decide q = 1/2 with the bisecting three-ensemble construction.", rich_help_panel="Sweep"),
) -> None:
    from steerlhv.analysis.gpr import gpr_sweep

    run = _run(ctx)
    try:
        points = gpr_sweep(q_values, fallback=fallback)
    except SteerlhvError as e:
        _fail(run, e)
    run.events.log_event("gpr", points=[p._asdict() for p in points])
    _emit({"points": [p._asdict() for p in points]})
    raise typer.Exit(code=EXIT_FEASIBLE)


@app.command(help="Build the measurement on A that steers B to a target ensemble, and verify it.")
def steer(
    ctx: typer.Context,
    state_file: str = typer.Argument(..., help="Bipartite state JSON: {'state': 'singlet'}, {'schmidt': q} or {'coeffs': [...]}."),
    ensemble_file: str = typer.Argument(..., help="Target ensemble JSON: a member list or {'ensemble': [...]}."),
) -> None:
    from steerlhv.model.steering import construct_steering_measurement, steered_ensemble

    run = _run(ctx)
    try:
        psi = parse_bipartite_state(load_json(state_file))
        target = parse_ensemble_file(load_json(ensemble_file))
        measurement = construct_steering_measurement(psi, target)
        result = steer_report(psi, target, measurement, steered_ensemble(psi, measurement))
    except NotSteerableError as e:
        logger.error(str(e))
        run.events.log_event("steer", status="not_steerable", deviation=e.deviation)
        _emit({"status": "not_steerable", "code": e.code, "deviation": e.deviation, "message": e.message})
        raise typer.Exit(code=EXIT_INFEASIBLE) from e
    except SteerlhvError as e:
        _fail(run, e)

    run.events.log_event("steer", status="steerable", elements=len(measurement), residuals=result["residuals"])
    _emit(result)
    raise typer.Exit(code=EXIT_FEASIBLE)


def main() -> None:
    """Main entry point for the steerlhv CLI."""
    conf_parser = ArgumentParser(add_help=False)
    conf_parser.add_argument(
        "--config",
        action="append",
        default=None,
        dest="config_files",
        metavar="PATH",
    )
    conf_args, _ = conf_parser.parse_known_args()
    config_paths = conf_args.config_files or []

    cli_args = sys.argv[1:]
    if not cli_args:
        cli_args = ["--help"]
    if config_paths:
        for path in config_paths:
            if not Path(path).exists():
                print(f"Config file not found: {path}", file=sys.stderr)
                sys.exit(EXIT_MALFORMED)
        try:
            cli_args = apply_config(cli_args, merge_config_json_files(config_paths))
        except (OSError, ValueError) as e:
            print(f"Error loading config file(s): {e}", file=sys.stderr)
            sys.exit(EXIT_MALFORMED)

    try:
        code = app(args=cli_args, prog_name="steerlhv", standalone_mode=False)
    except click.ClickException as e:
        # usage errors would otherwise exit 2, which means "infeasible" here
        e.show()
        sys.exit(EXIT_MALFORMED)
    except click.Abort:
        print("Aborted!", file=sys.stderr)
        sys.exit(EXIT_AMBIGUOUS)
    sys.exit(code if isinstance(code, int) else EXIT_FEASIBLE)


if __name__ == "__main__":
    main()
