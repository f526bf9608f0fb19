# adiabat: entropy from the adiabatic accessibility order.
# Licensed under the GPL-3.0; see pyproject.toml.

import click
import json
import logging
import numpy as np
import sys

from pathlib import Path
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator
from typing import Callable, Sequence

from . import __version__
from .axioms import check_comparison, run_axiom_suite
from .config import config
from .derived import PathSpec, loop_report, temperature
from .entropy import EntropyMeter, affine_match, build_meter, build_table, entropy
from .errors import AdiabatError, ComparisonError, DomainError
from .existence import dump_relation, entropy_feasible, load_relation, relation_from_oracle, verify_assignment
from .gas import (
    GAS_SYSTEM,
    GasOracle,
    GasSampler,
    GasSpec,
    compound_gas_entropy,
    gas_compound,
    gas_state,
    gas_temperature,
)
from .oracles import AccessibilityOracle, StateSampler, precedes
from .reports import (
    render_axiom_reports,
    render_comparison,
    render_entropy_table,
    render_feasibility,
    render_loop,
    render_reachable_set,
    render_temperature_table,
    render_water_table,
)
from .rubbing import GridBox, RubbingOracle, RubbingSampler, TwoBodyState, rubbing_compound, rubbing_reachable_grid
from .schemas import axiom_report_validator
from .states import CompoundState, SimpleState, SystemSpec, encode_state
from .types import (
    MODEL_IDEAL_GAS,
    MODEL_RUBBING,
    MODEL_WATER,
    MODEL_NAMES,
    OUTPUT_FORMATS,
    ModelName,
    OutputFormat,
)
from .utils import derive_rng, get_file_hash_hex
from .water import (
    WATER_SYSTEM,
    PhaseConstants,
    WaterOracle,
    WaterSampler,
    WaterState,
    compound_water_entropy,
    water_compound,
    water_table,
    water_temperature,
)

__all__ = [
    "EXIT_OK",
    "EXIT_USAGE",
    "EXIT_VIOLATION",
    "EXIT_INFEASIBLE",
    "EXIT_MODEL_ERROR",
    "RunConfig",
    "cli",
    "run",
    "main",
]

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VIOLATION = 2
EXIT_INFEASIBLE = 3
EXIT_MODEL_ERROR = 4

# The rubbing-world pair which is accessible in neither direction
RUBBING_WITNESS = ((1.0, 4.0), (0.5, 5.2))
RUBBING_GRID_STEP = 0.5
RUBBING_GRID_BOX = GridBox(0.0, 6.0)

GAS_U_RANGE = (50.0, 400.0)
GAS_V_RANGE = (0.5, 4.0)

LOOP_VERTICES = ((100.0, 1.0), (200.0, 1.0), (200.0, 2.0), (100.0, 2.0), (100.0, 1.0))
LOOP_REL_TOL = 1e-8


class RunConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    command: str
    model: ModelName = MODEL_IDEAL_GAS
    samples: int = Field(default=1000, gt=0)
    seed: int = Field(default=0, ge=0)
    tol: float = Field(default=1e-9, gt=0)
    margin: float = Field(default=1.0, gt=0)
    grid: tuple[int, int] = (20, 20)
    relation: Path | None = None
    out: Path | None = None
    format: OutputFormat | None = None
    parallel: bool = False

    @field_validator("grid", mode="before")
    @classmethod
    def _parse_grid(cls, v):
        if isinstance(v, str):
            w, sep, h = v.lower().partition("x")
            if not sep or not w.isdigit() or not h.isdigit():
                raise ValueError(f"grid must look like WxH, got '{v}'")
            v = (int(w), int(h))
        if min(v) <= 0:
            raise ValueError(f"grid dimensions must be positive, got {v}")
        return v

    def fmt(self, default: OutputFormat) -> OutputFormat:
        return self.format or default


def _options(fn: Callable) -> Callable:
    options = [
        click.option("--model", type=click.Choice(sorted(MODEL_NAMES)), default=MODEL_IDEAL_GAS, show_default=True),
        click.option("--samples", type=int, default=1000, show_default=True, help="Sample count."),
        click.option("--seed", type=int, default=config["SEED"], show_default=True),
        click.option("--tol", type=float, default=config["LAMBDA_TOL"], show_default=True, help="lambda_tol."),
        click.option("--margin", type=float, default=config["EXISTENCE_MARGIN"], show_default=True),
        click.option("--grid", type=str, default="20x20", show_default=True, help="Grid size WxH."),
        click.option("--relation", type=click.Path(exists=True, dir_okay=False), default=None),
        click.option("--out", type=click.Path(dir_okay=False), default=None, help="Output file (default stdout)."),
        click.option("--format", "fmt", type=click.Choice(sorted(OUTPUT_FORMATS)), default=None),
        click.option("--parallel", is_flag=True, default=False),
    ]
    fn = click.pass_context(fn)
    for option in reversed(options):
        fn = option(fn)
    return fn


def _run_config(ctx: click.Context, fmt: OutputFormat | None = None, **kwargs) -> RunConfig:
    try:
        return RunConfig(command=ctx.info_name, format=fmt, **kwargs)
    except ValidationError as e:
        raise click.UsageError("; ".join(f"{'.'.join(map(str, err['loc']))}: {err['msg']}" for err in e.errors()), ctx)


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.out is None:
        click.echo(text, nl=False)
        return
    with open(cfg.out, "w", newline="") as fh:
        fh.write(text)
    logger.info(f"wrote {cfg.out} (sha1 {get_file_hash_hex(cfg.out)})")


# Model wiring ---------------------------------------------------------------------------------------------------------

def _oracle(model: ModelName) -> AccessibilityOracle:
    match model:
        case "ideal-gas":
            return GasOracle()
        case "rubbing":
            return RubbingOracle()
        case _:
            return WaterOracle()


def _sampler(model: ModelName) -> StateSampler:
    match model:
        case "ideal-gas":
            return GasSampler(u_range=GAS_U_RANGE, v_range=GAS_V_RANGE)
        case "rubbing":
            return RubbingSampler()
        case _:
            return WaterSampler()


def _system(model: ModelName) -> SystemSpec:
    if model == MODEL_WATER:
        return WATER_SYSTEM
    return GAS_SYSTEM


def _rubbing_witness() -> tuple[CompoundState, CompoundState]:
    (a1, a2), (b1, b2) = RUBBING_WITNESS
    return rubbing_compound(a1, a2), rubbing_compound(b1, b2)


def _require_comparison(cfg: RunConfig) -> None:
    extra = [_rubbing_witness()] if cfg.model == MODEL_RUBBING else []
    report = check_comparison(_oracle(cfg.model), _sampler(cfg.model), cfg.samples, cfg.seed, extra_pairs=extra)
    if report.comparable_fraction < 1:
        raise ComparisonError(
            f"the {cfg.model} model has incomparable states in one class; no entropy function exists",
            [f"{len(report.incomparable_witnesses)} incomparable pairs out of {report.pairs_tested}"])


def _meter(cfg: RunConfig) -> EntropyMeter:
    _require_comparison(cfg)
    if cfg.model == MODEL_WATER:
        k = PhaseConstants()
        return build_meter(WaterOracle(k), water_compound(1.0, 0.0), water_compound(1.0, k.h_vapor), cfg.tol)
    return build_meter(GasOracle(), gas_compound(1.0, 100.0, 1.0), gas_compound(1.0, 200.0, 1.0), cfg.tol)


def _grid_states(cfg: RunConfig) -> list[CompoundState]:
    w, h = cfg.grid
    if cfg.model == MODEL_WATER:
        k = PhaseConstants()
        return [water_compound(1.0, float(e)) for e in np.linspace(k.h_min, k.h_max, w * h)]
    return [
        gas_compound(1.0, float(u), float(v))
        for u in np.linspace(*GAS_U_RANGE, w)
        for v in np.linspace(*GAS_V_RANGE, h)
    ]


def _analytic_entropy(model: ModelName) -> Callable[[CompoundState], float]:
    if model == MODEL_WATER:
        k = PhaseConstants()
        return lambda x: compound_water_entropy(k, x)
    spec = GasSpec()
    return lambda x: compound_gas_entropy(spec, x)


# Commands -------------------------------------------------------------------------------------------------------------

@click.group()
@click.version_option(__version__, prog_name="adiabat")
def cli():
    """Entropy from the adiabatic accessibility order."""


@cli.command("axioms")
@_options
def axioms(ctx, **kwargs) -> int:
    """Run the six-axiom property suite against a model oracle."""
    cfg = _run_config(ctx, **kwargs)
    reports = run_axiom_suite(_oracle(cfg.model), _sampler(cfg.model), cfg.samples, cfg.seed, parallel=cfg.parallel)

    for r in reports:
        if errs := list(axiom_report_validator.iter_errors(r.to_dict())):
            raise DomainError(f"malformed report for axiom {r.axiom}", [e.message for e in errs])

    _emit(cfg, render_axiom_reports(reports, cfg.fmt("json")))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_VIOLATION


@cli.command("compare")
@_options
def compare(ctx, **kwargs) -> int:
    """Check the comparison hypothesis on sampled pairs of one class."""
    cfg = _run_config(ctx, **kwargs)
    extra = [_rubbing_witness()] if cfg.model == MODEL_RUBBING else []
    report = check_comparison(
        _oracle(cfg.model), _sampler(cfg.model), cfg.samples, cfg.seed, extra_pairs=extra, parallel=cfg.parallel)

    _emit(cfg, render_comparison(report, cfg.fmt("json")))
    return EXIT_OK if report.comparable_fraction == 1.0 else EXIT_VIOLATION


@cli.command("construct")
@_options
def construct(ctx, **kwargs) -> int:
    """Reconstruct entropy on a state grid from the oracle alone."""
    cfg = _run_config(ctx, **kwargs)
    meter = _meter(cfg)
    table = build_table(meter, _grid_states(cfg), parallel=cfg.parallel)

    fit = affine_match(table, _analytic_entropy(cfg.model))
    logger.info(f"affine match to analytic entropy: slope {fit.slope}, max residual {fit.max_abs_residual}")

    _emit(cfg, render_entropy_table(table, _system(cfg.model), cfg.fmt("csv")))
    return EXIT_OK


@cli.command("existence")
@_options
def existence(ctx, **kwargs) -> int:
    """Decide whether a relation file admits an additive entropy."""
    cfg = _run_config(ctx, **kwargs)
    if cfg.relation is None:
        raise click.UsageError("existence needs --relation PATH", ctx)

    rel = load_relation(cfg.relation)
    result = entropy_feasible(rel, cfg.margin)
    if result.feasible and not verify_assignment(rel, result.assignment, cfg.margin):
        raise DomainError("solver returned an assignment which does not satisfy the relation")

    _emit(cfg, render_feasibility(result, cfg.fmt("json")))
    return EXIT_OK if result.feasible else EXIT_INFEASIBLE


def _rubbing_relation_states(cfg: RunConfig) -> list[CompoundState]:
    sampler = RubbingSampler()
    rng = derive_rng(cfg.seed, 300)
    return [*(sampler.draw(rng) for _ in range(max(cfg.samples - 2, 0))), *_rubbing_witness()]


@cli.command("counterexample")
@_options
def counterexample(ctx, **kwargs) -> int:
    """Reproduce the rubbing-world failure of comparison and of entropy existence."""
    cfg = _run_config(ctx, **kwargs)
    oracle = RubbingOracle()
    x, y = _rubbing_witness()

    if cfg.fmt("json") == "csv":
        (u1, u2), _ = RUBBING_WITNESS
        _emit(cfg, render_reachable_set(
            rubbing_reachable_grid(TwoBodyState(u1, u2), RUBBING_GRID_STEP, RUBBING_GRID_BOX), "csv"))
        return EXIT_OK

    x_to_y, y_to_x = precedes(oracle, x, y), precedes(oracle, y, x)
    result = entropy_feasible(relation_from_oracle(oracle, _rubbing_relation_states(cfg)), cfg.margin)

    _emit(cfg, json.dumps({
        "X": encode_state(x),
        "Y": encode_state(y),
        "X_precedes_Y": x_to_y,
        "Y_precedes_X": y_to_x,
        "existence": result.to_dict(),
    }, indent=2) + "\n")

    return EXIT_OK if not (x_to_y or y_to_x or result.feasible) else EXIT_VIOLATION


@cli.command("water-table")
@_options
def water_table_cmd(ctx, **kwargs) -> int:
    """Tabulate temperature, phase and entropy along the heating curve of water."""
    cfg = _run_config(ctx, **kwargs)
    _emit(cfg, render_water_table(water_table(PhaseConstants(), max(cfg.samples, 2)), cfg.fmt("csv")))
    return EXIT_OK


def _temperature_points(cfg: RunConfig) -> list[tuple[SimpleState, float]]:
    """(state, model temperature) pairs along the energy axis."""
    w, _ = cfg.grid
    if cfg.model == MODEL_WATER:
        k = PhaseConstants()
        span = k.h_max - k.h_min
        hs = np.linspace(k.h_min + 0.01 * span, k.h_max - 0.01 * span, w)
        return [(water_compound(1.0, float(h)).parts[0], water_temperature(k, WaterState(mass=1.0, h=float(h))))
                for h in hs]

    spec = GasSpec()
    states = [gas_state(1.0, float(u), 1.0) for u in np.linspace(*GAS_U_RANGE, w)]
    return [(s, gas_temperature(spec, s)) for s in states]


@cli.command("temperature")
@_options
def temperature_cmd(ctx, **kwargs) -> int:
    """Absolute temperature from the reconstructed entropy, next to the model's own."""
    cfg = _run_config(ctx, **kwargs)
    meter = _meter(cfg)
    fit = affine_match(build_table(meter, _grid_states(cfg), parallel=cfg.parallel), _analytic_entropy(cfg.model))

    def _meter_entropy(s: SimpleState) -> float:
        return entropy(meter, CompoundState.of(s))

    rows = [
        (f"s{i}", x.coords[0], t_model, temperature(_meter_entropy, x, entropy_unit=1 / fit.slope))
        for i, (x, t_model) in enumerate(_temperature_points(cfg))
    ]
    _emit(cfg, render_temperature_table(rows, cfg.fmt("csv")))
    return EXIT_OK


@cli.command("loop")
@_options
def loop(ctx, **kwargs) -> int:
    """Integrate (dU + P dV)/T around a closed rectangle in the gas (U, V) plane."""
    cfg = _run_config(ctx, **kwargs)
    if cfg.model != MODEL_IDEAL_GAS:
        raise DomainError(f"loop integration is defined for the ideal gas model, not {cfg.model}")

    report = loop_report(GasSpec(), PathSpec(vertices=LOOP_VERTICES, steps_per_segment=cfg.samples))
    _emit(cfg, render_loop(report, cfg.fmt("csv")))

    bound = LOOP_REL_TOL * sum(abs(s) for s in report.segments)
    return EXIT_OK if abs(report.total) <= bound else EXIT_VIOLATION


@cli.command("relation")
@_options
def relation(ctx, **kwargs) -> int:
    """Write a relation file generated from a model oracle on sampled states."""
    cfg = _run_config(ctx, **kwargs)

    if cfg.model == MODEL_RUBBING:
        # Always includes the incomparable pair
        states = _rubbing_relation_states(cfg)
    else:
        sampler = _sampler(cfg.model)
        rng = derive_rng(cfg.seed, 300)
        states = [sampler.draw(rng) for _ in range(cfg.samples)]

    _emit(cfg, json.dumps(dump_relation(relation_from_oracle(_oracle(cfg.model), states)), indent=2) + "\n")
    return EXIT_OK


def run(args: Sequence[str]) -> int:
    logging.basicConfig(level=config["LOG_LEVEL"], stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    try:
        rv = cli.main(args=list(args), prog_name="adiabat", standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return EXIT_USAGE
    except click.Abort:
        return EXIT_USAGE
    except AdiabatError as e:
        click.echo(json.dumps(dict(e), indent=2), err=True)
        return EXIT_MODEL_ERROR

    return EXIT_OK if rv is None else int(rv)


def main() -> None:  # pragma: no cover
    sys.exit(run(sys.argv[1:]))
