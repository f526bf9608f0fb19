# adiabat: entropy from the adiabatic accessibility order.
# Licensed under the GPL-3.0; see pyproject.toml.

"""
Entropy reconstructed from an accessibility oracle alone.

With a strict reference pair X0 < X1, the entropy of X in reference units is the largest λ such that the
compound ((1-λ)X0, λX1) can be turned into X. Outside [0, 1] the negatively-scaled reference moves to the
other side of the relation:

    λ < 0:  (1-λ)X0          ≺  (X, -λ X1)
    λ > 1:  λX1              ≺  (X, (λ-1) X0)

A state holding s times the reference amount is read against the references scaled by s, and its entropy is
s times the resulting λ_max.
"""

import logging
import math
import numpy as np

from pydantic import BaseModel, ConfigDict, Field, computed_field
from typing import Any, Callable, Sequence

from .config import config
from .errors import (
    ClassError,
    DegenerateReferenceError,
    DomainError,
    FitError,
    IncomparableReferenceError,
    OracleViolationError,
    ReversedReferenceError,
    UnboundedEntropyError,
)
from .oracles import AccessibilityOracle, StateSampler, precedes
from .states import CompoundState, amounts, compose, encode_state, scale
from .utils import derive_rng, parallel_map

__all__ = [
    "EntropyMeter",
    "LambdaSearch",
    "EntropyTable",
    "AffineFitReport",
    "ConsistencyReport",
    "ReversibilityBracket",
    "build_meter",
    "lambda_search",
    "lambda_max",
    "entropy",
    "reversibility_bracket",
    "additivity_check",
    "extensivity_check",
    "build_table",
    "affine_match",
]

logger = logging.getLogger(__name__)

ADDITIVITY_STREAM = 100
EXTENSIVITY_STREAM = 101


class EntropyMeter(BaseModel):
    model_config = ConfigDict(frozen=True)

    oracle: Any = Field(exclude=True)
    X0: CompoundState
    X1: CompoundState
    lambda_tol: float
    bracket_limit: float

    @property
    def oracle_name(self) -> str:
        return self.oracle.name

    def metadata(self) -> dict:
        return {
            "oracle": self.oracle_name,
            "X0": encode_state(self.X0),
            "X1": encode_state(self.X1),
            "lambda_tol": self.lambda_tol,
            "bracket_limit": self.bracket_limit,
        }


class LambdaSearch(BaseModel):
    model_config = ConfigDict(frozen=True)

    value: float  # largest λ found to satisfy the predicate
    upper: float  # smallest λ found to violate it
    iterations: int
    expansions: int
    evaluations: int


class EntropyTable(BaseModel):
    model_config = ConfigDict(frozen=True)

    rows: list[tuple[CompoundState, float]]
    meta: dict


class AffineFitReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    slope: float
    offset: float
    max_abs_residual: float
    rows: int


class ConsistencyReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    check: str
    samples: int
    max_deviation: float
    bound: float

    @computed_field
    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.bound


class ReversibilityBracket(BaseModel):
    model_config = ConfigDict(frozen=True)

    lower: float
    upper: float
    forward: bool  # ((1-λ)X0, λX1) ≺ X at the lower end
    backward: bool  # X ≺ ((1-λ)X0, λX1) at the upper end

    @computed_field
    @property
    def reversible(self) -> bool:
        return self.forward and self.backward


def build_meter(
    oracle: AccessibilityOracle,
    X0: CompoundState,
    X1: CompoundState,
    lambda_tol: float | None = None,
    bracket_limit: float | None = None,
) -> EntropyMeter:
    lambda_tol = config["LAMBDA_TOL"] if lambda_tol is None else lambda_tol
    bracket_limit = config["BRACKET_LIMIT"] if bracket_limit is None else bracket_limit

    if lambda_tol <= 0 or bracket_limit <= 1:
        raise DomainError(f"invalid meter tolerances: lambda_tol={lambda_tol}, bracket_limit={bracket_limit}")

    if (c0 := oracle.class_of(X0)) != (c1 := oracle.class_of(X1)):
        raise ClassError("reference states lie in different comparability classes", [c0, c1])

    forward = precedes(oracle, X0, X1)
    backward = precedes(oracle, X1, X0)

    if forward and backward:
        raise DegenerateReferenceError("reference states have equal entropy (each is accessible from the other)")
    if not forward and backward:
        raise ReversedReferenceError("reference states are reversed: X0 is accessible from X1 but not vice versa")
    if not forward:
        raise IncomparableReferenceError("reference states are incomparable")

    meter = EntropyMeter(oracle=oracle, X0=X0, X1=X1, lambda_tol=lambda_tol, bracket_limit=bracket_limit)
    logger.info(f"built entropy meter on oracle {oracle.name} (lambda_tol={lambda_tol})")
    return meter


def _amount_ratio(meter: EntropyMeter, X: CompoundState) -> float:
    ref, got = amounts(meter.X0), amounts(X)
    if ref.keys() != got.keys():
        raise ClassError("state is not made of the meter's reference systems", [str(sorted(got)), str(sorted(ref))])
    ratios = [got[k] / ref[k] for k in ref]
    if not all(math.isclose(r, ratios[0], rel_tol=1e-12) for r in ratios):
        raise ClassError("state composition is not proportional to the reference composition", [str(got)])
    return ratios[0]


def _lambda_sides(meter: EntropyMeter, X: CompoundState, lam: float, s: float) -> tuple[CompoundState, CompoundState]:
    """(left, right) such that the λ_max predicate at λ reads "left ≺ right"."""
    if lam < 0:
        return scale(meter.X0, s * (1 - lam)), compose(X, scale(meter.X1, -s * lam))
    if lam > 1:
        return scale(meter.X1, s * lam), compose(X, scale(meter.X0, s * (lam - 1)))
    if lam == 0:
        return scale(meter.X0, s), X
    if lam == 1:
        return scale(meter.X1, s), X
    return compose(scale(meter.X0, s * (1 - lam)), scale(meter.X1, s * lam)), X


def lambda_search(meter: EntropyMeter, X: CompoundState) -> LambdaSearch:
    s = _amount_ratio(meter, X)
    oracle = meter.oracle
    tol = meter.lambda_tol
    limit = meter.bracket_limit

    evaluated: dict[float, bool] = {}

    def _p(lam: float) -> bool:
        if lam not in evaluated:
            left, right = _lambda_sides(meter, X, lam, s)
            evaluated[lam] = precedes(oracle, left, right)
        return evaluated[lam]

    def _violation(msg: str) -> OracleViolationError:
        return OracleViolationError(
            f"oracle {oracle.name} violates monotonicity of the λ_max predicate: {msg}",
            [f"{k!r}: {v}" for k, v in sorted(evaluated.items())])

    expansions = 0
    at_zero, at_one = _p(0.0), _p(1.0)

    if at_one and not at_zero:
        raise _violation("holds at λ=1 but not at λ=0")

    if at_one:
        lo, hi = 1.0, 2.0
        expansions = 1
        while _p(hi):
            lo, hi = hi, 2 * hi
            expansions += 1
            if hi > limit:
                raise UnboundedEntropyError(f"no upper bracket for λ_max below {limit} (oracle {oracle.name})")
    elif at_zero:
        lo, hi = 0.0, 1.0
    else:
        lo, hi = -1.0, 0.0
        expansions = 1
        while not _p(lo):
            lo, hi = 2 * lo, lo
            expansions += 1
            if -lo > limit:
                raise UnboundedEntropyError(f"no lower bracket for λ_max above {-limit} (oracle {oracle.name})")

    logger.debug(f"λ_max bracket [{lo}, {hi}] after {expansions} expansions")

    iterations = 0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break  # float resolution reached
        iterations += 1
        if _p(mid):
            lo = mid
        else:
            hi = mid

    # Spot-assert monotonicity one unit beyond each end of the final bracket
    if lo - 1 >= -limit and not _p(lo - 1):
        raise _violation(f"fails at λ={lo - 1} below a point where it holds")
    if hi + 1 <= limit and _p(hi + 1):
        raise _violation(f"holds at λ={hi + 1} above a point where it fails")

    holds = [k for k, v in evaluated.items() if v]
    fails = [k for k, v in evaluated.items() if not v]
    if holds and fails and max(holds) > min(fails):
        raise _violation(f"holds at λ={max(holds)} but fails at λ={min(fails)}")

    return LambdaSearch(
        value=lo,
        upper=hi,
        iterations=iterations,
        expansions=expansions,
        evaluations=len(evaluated),
    )


def lambda_max(meter: EntropyMeter, X: CompoundState) -> float:
    return lambda_search(meter, X).value


def entropy(meter: EntropyMeter, X: CompoundState) -> float:
    """Entropy of X in meter units (S(X0) = 0, S(X1) = 1 for the reference amount)."""
    return _amount_ratio(meter, X) * lambda_max(meter, X)


def reversibility_bracket(meter: EntropyMeter, X: CompoundState) -> ReversibilityBracket:
    """
    λ_max is pinned down by adiabatic equivalence: X is reached from the reference mixture at the lower end of
    the final bracket, and the reference mixture at the upper end is reached from X.
    """
    s = _amount_ratio(meter, X)
    search = lambda_search(meter, X)

    left_lo, right_lo = _lambda_sides(meter, X, search.value, s)
    left_hi, right_hi = _lambda_sides(meter, X, search.upper, s)

    return ReversibilityBracket(
        lower=search.value,
        upper=search.upper,
        forward=precedes(meter.oracle, left_lo, right_lo),
        backward=precedes(meter.oracle, right_hi, left_hi),
    )


def additivity_check(
    meter: EntropyMeter,
    sampler: StateSampler,
    n: int,
    seed: int | None = None,
    parallel: bool = False,
) -> ConsistencyReport:
    """max |S((X, X')) - S(X) - S(X')| over sampled pairs, against a bound of 3 * lambda_tol."""
    seed = config["SEED"] if seed is None else seed

    def _deviation(i: int) -> float:
        rng = derive_rng(seed, ADDITIVITY_STREAM, i)
        x, xp = sampler.draw(rng), sampler.draw(rng)
        return abs(entropy(meter, compose(x, xp)) - entropy(meter, x) - entropy(meter, xp))

    devs = parallel_map(_deviation, range(n), parallel=parallel)
    return ConsistencyReport(
        check="additivity",
        samples=n,
        max_deviation=max(devs, default=0.0),
        bound=3 * meter.lambda_tol,
    )


def extensivity_check(
    meter: EntropyMeter,
    sampler: StateSampler,
    n: int,
    factors: Sequence[float] = (0.25, 0.5, 2.0),
    seed: int | None = None,
    parallel: bool = False,
) -> ConsistencyReport:
    """max |S(λX) - λ S(X)| over sampled X and the given factors, against a bound of 3 * lambda_tol."""
    seed = config["SEED"] if seed is None else seed

    def _deviation(i: int) -> float:
        x = sampler.draw(derive_rng(seed, EXTENSIVITY_STREAM, i))
        sx = entropy(meter, x)
        return max(abs(entropy(meter, scale(x, f)) - f * sx) for f in factors)

    devs = parallel_map(_deviation, range(n), parallel=parallel)
    return ConsistencyReport(
        check="extensivity",
        samples=n,
        max_deviation=max(devs, default=0.0),
        bound=3 * meter.lambda_tol,
    )


def build_table(meter: EntropyMeter, states: Sequence[CompoundState], parallel: bool = False) -> EntropyTable:
    values = parallel_map(lambda x: entropy(meter, x), states, parallel=parallel)
    logger.info(f"entropy table of {len(states)} states built on oracle {meter.oracle_name}")
    return EntropyTable(rows=list(zip(states, values)), meta=meter.metadata())


def affine_match(table: EntropyTable, analytic: Callable[[CompoundState], float]) -> AffineFitReport:
    """
    Least-squares map analytic -> meter units. Entropy is unique up to such a map, so a faithful
    reconstruction leaves residuals at the level of the bisection tolerance.
    """
    if len({s for s, _ in table.rows}) < 3:
        raise FitError(f"need at least 3 distinct states, got {len(table.rows)} rows")

    a = np.array([analytic(s) for s, _ in table.rows], dtype=float)
    m = np.array([v for _, v in table.rows], dtype=float)

    if np.ptp(a) == 0:
        raise FitError("analytic entropy is constant over the table")

    slope, offset = np.polyfit(a, m, 1)
    if slope <= 0:
        raise FitError(f"meter values decrease with analytic entropy (slope {slope})")

    residual = float(np.max(np.abs(m - (slope * a + offset))))
    return AffineFitReport(slope=float(slope), offset=float(offset), max_abs_residual=residual, rows=len(a))
