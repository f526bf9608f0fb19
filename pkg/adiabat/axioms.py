# adiabat: entropy from the adiabatic accessibility order.
# Licensed under the GPL-3.0; see pyproject.toml.

"""
Property suites for the accessibility axioms and the comparison hypothesis, run against any oracle on
seeded samples. Each sampled instance draws from its own generator derived from (seed, axiom, index), so any
witness can be replayed from those three numbers.
"""

import itertools
import logging

from pydantic import BaseModel, ConfigDict, Field, computed_field
from typing import Callable, Sequence

from .config import config
from .errors import ClassError
from .oracles import AccessibilityOracle, StateSampler, precedes
from .states import CompoundState, compose, encode_state, scale
from .types import AxiomReportDict
from .utils import derive_rng, parallel_map

__all__ = [
    "AXIOMS",
    "SCALING_FACTORS",
    "AxiomReport",
    "ComparisonReport",
    "epsilon_ladder",
    "run_axiom_suite",
    "check_comparison",
]

logger = logging.getLogger(__name__)

AXIOMS: tuple[str, ...] = (
    "reflexivity",
    "transitivity",
    "composition",
    "scaling",
    "split_recombine",
    "stability",
)

SCALING_FACTORS: tuple[float, ...] = (0.25, 0.5, 2.0, 3.0)

COMPARISON_STREAM = len(AXIOMS)


class AxiomReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    axiom: str
    instances_tested: int
    witnesses: list[list[CompoundState]] = Field(default_factory=list)
    skipped: list[str] = Field(default_factory=list)

    @computed_field
    @property
    def passed(self) -> bool:
        return not self.witnesses

    def to_dict(self) -> AxiomReportDict:
        return {
            "axiom": self.axiom,
            "instances_tested": self.instances_tested,
            "passed": self.passed,
            "witnesses": [[encode_state(s) for s in w] for w in self.witnesses],
        }


class ComparisonReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    class_key: str
    pairs_tested: int
    comparable: int
    incomparable_witnesses: list[tuple[CompoundState, CompoundState]] = Field(default_factory=list)

    @computed_field
    @property
    def comparable_fraction(self) -> float:
        return self.comparable / self.pairs_tested if self.pairs_tested else 1.0

    def to_dict(self) -> dict:
        return {
            "class": self.class_key,
            "pairs_tested": self.pairs_tested,
            "comparable_fraction": self.comparable_fraction,
            "incomparable_witnesses": [[encode_state(x), encode_state(y)] for x, y in self.incomparable_witnesses],
        }


def epsilon_ladder(eps_min: float | None = None) -> tuple[float, ...]:
    """1e-1, 1e-2, ... down to eps_min: the finite stand-in for "arbitrarily small"."""
    eps_min = config["STABILITY_EPS_MIN"] if eps_min is None else eps_min
    ladder = []
    e = 0.1
    while e >= eps_min * (1 - 1e-9):
        ladder.append(e)
        e /= 10
    return tuple(ladder)


# Instance checkers: each returns None when the instance passes, or the list of violating states.

Instance = Callable[[AccessibilityOracle, StateSampler, int, int], list[CompoundState] | None]


def _check_reflexivity(oracle, sampler, seed, i):
    x = sampler.draw(derive_rng(seed, 0, i))
    return None if precedes(oracle, x, x) else [x]


def _check_transitivity(oracle, sampler, seed, i):
    rng = derive_rng(seed, 1, i)
    states = [sampler.draw(rng) for _ in range(3)]
    for a, b, c in itertools.permutations(states):
        if precedes(oracle, a, b) and precedes(oracle, b, c) and not precedes(oracle, a, c):
            return [a, b, c]
    return None


def _orient(oracle, a, b) -> tuple[CompoundState, CompoundState] | None:
    if precedes(oracle, a, b):
        return a, b
    if precedes(oracle, b, a):
        return b, a
    return None


def _check_composition(oracle, sampler, seed, i):
    rng = derive_rng(seed, 2, i)
    first = _orient(oracle, sampler.draw(rng), sampler.draw(rng))
    second = _orient(oracle, sampler.draw(rng), sampler.draw(rng))
    if first is None or second is None:
        return None  # premise cannot hold for an incomparable pair

    (x, y), (z, w) = first, second
    return None if precedes(oracle, compose(x, z), compose(y, w)) else [x, y, z, w]


def _check_scaling(oracle, sampler, seed, i):
    rng = derive_rng(seed, 3, i)
    x, y = sampler.draw(rng), sampler.draw(rng)
    lam = float(rng.choice(SCALING_FACTORS))
    lx, ly = scale(x, lam), scale(y, lam)
    return None if oracle.decide(x, y) == oracle.decide(lx, ly) else [x, y, lx, ly]


def _check_split_recombine(oracle, sampler, seed, i):
    rng = derive_rng(seed, 4, i)
    x = sampler.draw(rng)
    lam = float(rng.uniform(0.05, 0.95))
    split = compose(scale(x, 1 - lam), scale(x, lam))
    return None if precedes(oracle, x, split) and precedes(oracle, split, x) else [x, split]


def _make_stability_check(ladder: Sequence[float]) -> Instance:
    def _check_stability(oracle, sampler, seed, i):
        rng = derive_rng(seed, 5, i)
        x, y, z, w = (sampler.draw(rng) for _ in range(4))
        if precedes(oracle, x, y):
            return None
        if all(precedes(oracle, compose(x, scale(z, e)), compose(y, scale(w, e))) for e in ladder):
            return [x, y, z, w]
        return None

    return _check_stability


def _run_axiom(
    axiom: str,
    check: Instance,
    oracle: AccessibilityOracle,
    sampler: StateSampler,
    n: int,
    seed: int,
    parallel: bool,
) -> AxiomReport:
    def _one(i: int) -> tuple[list[CompoundState] | None, str | None]:
        try:
            return check(oracle, sampler, seed, i), None
        except Exception as e:  # oracle failure on a sampled state
            return None, f"instance {i} (seed {seed}): {type(e).__name__}: {e}"

    results = parallel_map(_one, range(n), parallel=parallel)

    witnesses = [w for w, _ in results if w is not None]
    skipped = [s for _, s in results if s is not None]
    for s in skipped:
        logger.warning(f"{axiom}: skipped {s}")

    return AxiomReport(
        axiom=axiom,
        instances_tested=n - len(skipped),
        witnesses=witnesses,
        skipped=skipped,
    )


def run_axiom_suite(
    oracle: AccessibilityOracle,
    sampler: StateSampler,
    n: int,
    seed: int | None = None,
    eps_min: float | None = None,
    parallel: bool = False,
) -> list[AxiomReport]:
    """Six reports, in the order of AXIOMS."""
    seed = config["SEED"] if seed is None else seed
    checks: dict[str, Instance] = {
        "reflexivity": _check_reflexivity,
        "transitivity": _check_transitivity,
        "composition": _check_composition,
        "scaling": _check_scaling,
        "split_recombine": _check_split_recombine,
        "stability": _make_stability_check(epsilon_ladder(eps_min)),
    }

    reports = [_run_axiom(a, checks[a], oracle, sampler, n, seed, parallel) for a in AXIOMS]

    for r in reports:
        logger.info(
            f"{oracle.name}: {r.axiom} {'passed' if r.passed else 'FAILED'} "
            f"({r.instances_tested} instances, {len(r.witnesses)} witnesses)")

    return reports


def check_comparison(
    oracle: AccessibilityOracle,
    class_sampler: StateSampler,
    n: int,
    seed: int | None = None,
    extra_pairs: Sequence[tuple[CompoundState, CompoundState]] = (),
    parallel: bool = False,
) -> ComparisonReport:
    """
    Fraction of sampled pairs (plus any extra pairs given) for which at least one direction is accessible.
    Every incomparable pair is kept verbatim.
    """
    seed = config["SEED"] if seed is None else seed

    def _draw(i: int) -> tuple[CompoundState, CompoundState]:
        rng = derive_rng(seed, COMPARISON_STREAM, i)
        return class_sampler.draw(rng), class_sampler.draw(rng)

    pairs = [*(_draw(i) for i in range(n)), *extra_pairs]

    keys = {oracle.class_of(s) for pair in pairs for s in pair}
    if len(keys) > 1:
        raise ClassError("comparison pairs span more than one comparability class", sorted(keys))

    def _comparable(pair: tuple[CompoundState, CompoundState]) -> bool:
        x, y = pair
        return precedes(oracle, x, y) or precedes(oracle, y, x)

    verdicts = parallel_map(_comparable, pairs, parallel=parallel)
    witnesses = [p for p, ok in zip(pairs, verdicts) if not ok]

    report = ComparisonReport(
        class_key=next(iter(keys)) if keys else "",
        pairs_tested=len(pairs),
        comparable=len(pairs) - len(witnesses),
        incomparable_witnesses=witnesses,
    )
    logger.info(f"{oracle.name}: comparable fraction {report.comparable_fraction} over {len(pairs)} pairs")
    return report
