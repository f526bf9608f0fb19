# adiabat: entropy from the adiabatic accessibility order.
# Licensed under the GPL-3.0; see pyproject.toml.

"""
Quantities that follow from an entropy function: temperature, concavity, the path integral of (dU + P dV)/T,
and irreversible changes.
"""

import logging
import math
import numpy as np

from pydantic import BaseModel, ConfigDict, Field, computed_field, field_validator
from typing import Callable, NamedTuple

from .config import config
from .errors import DomainError, ExhaustedSearchError, NonMonotoneEntropyError
from .gas import GasSpec
from .oracles import AccessibilityOracle, StateSampler, precedes
from .states import CompoundState, SimpleState, compose, convex_combination, scale, shift_energy
from .utils import derive_rng

__all__ = [
    "EntropyFn",
    "temperature",
    "ConcavityReport",
    "concavity_check",
    "convex_combination_check",
    "PathSpec",
    "LoopReport",
    "path_delta_S",
    "loop_report",
    "SearchBox",
    "irreversibility_witness",
]

logger = logging.getLogger(__name__)

EntropyFn = Callable[[SimpleState], float]

CONCAVITY_STREAM = 200
CONVEX_COMBINATION_STREAM = 201


def temperature(
    entropy_fn: EntropyFn,
    x: SimpleState,
    dU: float | None = None,
    entropy_unit: float = 1.0,
) -> float:
    """
    1/T = dS/dU at fixed work coordinates, by central difference. entropy_unit converts entropy_fn's unit to
    J/K (e.g. the reciprocal of an affine-fit slope for meter-unit entropy).
    """
    U = x.coords[0]
    dU = 1e-4 * abs(U) if dU is None else dU
    if not dU > 0:
        raise DomainError(f"energy step must be positive, got {dU}")

    dS = (entropy_fn(shift_energy(x, dU)) - entropy_fn(shift_energy(x, -dU))) * entropy_unit
    if not dS > 0:
        raise NonMonotoneEntropyError(f"entropy does not increase with energy at U={U} (ΔS = {dS})")

    return 2 * dU / dS


class ConcavityReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    check: str
    samples: int
    violations: int
    max_violation: float

    @computed_field
    @property
    def passed(self) -> bool:
        return self.violations == 0


def _draw_pair(sampler: StateSampler, rng: np.random.Generator) -> tuple[SimpleState, SimpleState, float]:
    x, z = sampler.draw(rng), sampler.draw(rng)
    if len(x) != 1 or len(z) != 1:
        raise DomainError("convex combinations need single-part states")
    return x.parts[0], z.parts[0], float(rng.uniform(0.0, 1.0))


def concavity_check(
    entropy_fn: EntropyFn,
    sampler: StateSampler,
    n: int,
    tol: float | None = None,
    seed: int | None = None,
) -> ConcavityReport:
    """Counts triples (X, Z, λ) with S(λX + (1-λ)Z) < λS(X) + (1-λ)S(Z) - tol."""
    tol = 3 * config["LAMBDA_TOL"] if tol is None else tol
    seed = config["SEED"] if seed is None else seed

    violations = 0
    worst = 0.0
    for i in range(n):
        x, z, lam = _draw_pair(sampler, derive_rng(seed, CONCAVITY_STREAM, i))
        gap = lam * entropy_fn(x) + (1 - lam) * entropy_fn(z) - entropy_fn(convex_combination(x, z, lam))
        worst = max(worst, gap)
        if gap > tol:
            violations += 1

    return ConcavityReport(check="concavity", samples=n, violations=violations, max_violation=worst)


def convex_combination_check(
    oracle: AccessibilityOracle,
    sampler: StateSampler,
    n: int,
    seed: int | None = None,
) -> ConcavityReport:
    """
    The operational form of concavity: removing the partition between λX and (1-λ)Z, i.e. letting the compound
    (λX, (1-λ)Z) become the convex combination, is always adiabatically possible.
    """
    seed = config["SEED"] if seed is None else seed

    violations = 0
    for i in range(n):
        x, z, lam = _draw_pair(sampler, derive_rng(seed, CONVEX_COMBINATION_STREAM, i))
        lam = min(max(lam, 1e-6), 1 - 1e-6)
        pair = compose(scale(CompoundState.of(x), lam), scale(CompoundState.of(z), 1 - lam))
        if not precedes(oracle, pair, CompoundState.of(convex_combination(x, z, lam))):
            violations += 1

    return ConcavityReport(check="convex_combination", samples=n, violations=violations, max_violation=0.0)


class PathSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    vertices: tuple[tuple[float, float], ...] = Field(min_length=2)  # (U in J, V in m3)
    steps_per_segment: int = Field(gt=0)
    amount: float = Field(default=1.0, gt=0)

    @field_validator("vertices")
    @classmethod
    def _positive_quadrant(cls, v: tuple[tuple[float, float], ...]) -> tuple[tuple[float, float], ...]:
        if bad := [p for p in v if not (p[0] > 0 and p[1] > 0)]:
            raise ValueError(f"path vertices must have U > 0 and V > 0, got {bad}")
        return v


class LoopReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    total: float  # J/K
    steps: int
    max_segment: float
    segments: list[float]


def _segment_delta_S(spec: GasSpec, n: float, a: tuple[float, float], b: tuple[float, float], steps: int) -> float:
    t = np.linspace(0.0, 1.0, steps + 1)
    U = a[0] + t * (b[0] - a[0])
    V = a[1] + t * (b[1] - a[1])

    P = (spec.gamma - 1) * U / V
    T = U / (n * spec.Cv)
    integrand = ((b[0] - a[0]) + P * (b[1] - a[1])) / T

    return float(np.trapezoid(integrand, t))


def _segments(spec: GasSpec, path: PathSpec) -> list[float]:
    return [
        _segment_delta_S(spec, path.amount, a, b, path.steps_per_segment)
        for a, b in zip(path.vertices, path.vertices[1:])
    ]


def path_delta_S(spec: GasSpec, path: PathSpec) -> float:
    """ΔS along a polygonal path in the (U, V) plane, integrating (dU + P dV)/T by the trapezoidal rule."""
    return math.fsum(_segments(spec, path))


def loop_report(spec: GasSpec, path: PathSpec) -> LoopReport:
    segments = _segments(spec, path)
    return LoopReport(
        total=math.fsum(segments),
        steps=path.steps_per_segment * len(segments),
        max_segment=max(abs(s) for s in segments),
        segments=segments,
    )


class SearchBox(NamedTuple):
    step: float
    limit: float
    energy_indices: tuple[int, ...] = (0,)


def irreversibility_witness(oracle: AccessibilityOracle, x: CompoundState, box: SearchBox) -> CompoundState:
    """
    Raises the energy of one part at a time by step, 2 step, ... up to limit, and returns the first state y
    with x ≺ y but not y ≺ x.
    """
    if box.step <= 0 or box.limit < box.step:
        raise DomainError(f"invalid search box {box}")

    k = 1
    while (delta := k * box.step) <= box.limit * (1 + 1e-12):
        for p in range(len(x)):
            for idx in box.energy_indices:
                parts = list(x.parts)
                try:
                    parts[p] = shift_energy(parts[p], delta, idx)
                    y = CompoundState(parts=tuple(parts))
                    if precedes(oracle, x, y) and not precedes(oracle, y, x):
                        logger.info(f"irreversible change found with energy increase {delta} on part {p}")
                        return y
                except (DomainError, IndexError):
                    continue
        k += 1

    raise ExhaustedSearchError(f"no irreversible change from this state within energy increase {box.limit}")
