# adiabat: entropy from the adiabatic accessibility order.
# Licensed under the GPL-3.0; see pyproject.toml.

"""
The rubbing world: two identical incompressible bodies whose only adiabatic operations are rubbing one body
(raising its energy) and bringing the two into thermal contact (both end at the mean energy).

The closure of these two moves is: (U1, U2) -> (V1, V2) iff V is componentwise at least U, or both V1 and V2
are at least the mean (U1 + U2) / 2. Comparison fails in this world, e.g. (1, 4) and (0.5, 5.2) are
accessible from each other in neither direction.
"""

import itertools
import math
import numpy as np

from collections import deque
from typing import NamedTuple

from .errors import ClassError, DomainError
from .oracles import decision, require_equal_amounts
from .states import CompoundState, SimpleState, SystemSpec
from .types import Decision
from .utils import leq_within

__all__ = [
    "RUBBING_SYSTEM",
    "TwoBodyState",
    "GridBox",
    "rubbing_state",
    "rubbing_compound",
    "two_body_of",
    "rubbing_precedes",
    "rubbing_reachable_grid",
    "sample_incomparable_pattern",
    "RubbingOracle",
    "RubbingSampler",
]

RUBBING_SYSTEM = SystemSpec(
    id="rubbing-pair",
    substance="incompressible solid",
    coordinate_names=("U1", "U2"),
    coordinate_units=("J", "J"),
    amount_unit="kg",
    comparability_class="rubbing",
)

MAX_TRANSPORT_PARTS = 16


class TwoBodyState(NamedTuple):
    U1: float
    U2: float
    C: float = 1.0  # heat capacity of each body, J/K


class GridBox(NamedTuple):
    lo: float
    hi: float


def rubbing_state(U1: float, U2: float, amount: float = 1.0) -> SimpleState:
    return SimpleState(system=RUBBING_SYSTEM.id, amount=amount, coords=(amount * U1, amount * U2))


def rubbing_compound(U1: float, U2: float, amount: float = 1.0) -> CompoundState:
    return CompoundState.of(rubbing_state(U1, U2, amount))


def two_body_of(x: SimpleState, C: float = 1.0) -> TwoBodyState:
    """Per-amount energies of a stored (extensive) rubbing-world part."""
    if x.system != RUBBING_SYSTEM.id:
        raise ClassError(f"expected {RUBBING_SYSTEM.substance}, got a state of system {x.system}")
    u1, u2 = x.intensive()
    return TwoBodyState(u1, u2, C)


def rubbing_precedes(x: TwoBodyState, y: TwoBodyState) -> Decision:
    componentwise = leq_within(x.U1, y.U1) and leq_within(x.U2, y.U2)
    return decision(componentwise or leq_within((x.U1 + x.U2) / 2, min(y.U1, y.U2)))


def _grid_index(u: float, step: float, box: GridBox) -> int:
    k = (u - box.lo) / step
    i = round(k)
    if not math.isclose(k, i, abs_tol=1e-9):
        raise DomainError(f"energy {u} is not on the grid with origin {box.lo} and step {step}")
    return i


def rubbing_reachable_grid(x: TwoBodyState, step: float, box: GridBox) -> set[TwoBodyState]:
    """
    Breadth-first closure of x on the grid box.lo + k * step (both bodies share the box) under the discretized
    moves: rub one body by +step, or equilibrate both to the mean rounded up to the grid.
    """
    if step <= 0:
        raise DomainError(f"grid step must be positive, got {step}")
    eps = 1e-9 * step
    if not (box.lo - eps <= x.U1 <= box.hi + eps and box.lo - eps <= x.U2 <= box.hi + eps):
        raise DomainError(f"box [{box.lo}, {box.hi}] does not contain ({x.U1}, {x.U2})")

    span = (box.hi - box.lo) / step
    top = round(span) if math.isclose(span, round(span), abs_tol=1e-9) else math.floor(span)
    start = (_grid_index(x.U1, step, box), _grid_index(x.U2, step, box))

    seen = {start}
    queue = deque([start])

    while queue:
        i, j = queue.popleft()
        mean_up = (i + j + 1) // 2
        for nxt in ((i + 1, j), (i, j + 1), (mean_up, mean_up)):
            if nxt[0] > top or nxt[1] > top or nxt in seen:
                continue
            seen.add(nxt)
            queue.append(nxt)

    return {TwoBodyState(box.lo + i * step, box.lo + j * step, x.C) for i, j in seen}


def sample_incomparable_pattern(
    rng: np.random.Generator,
    box: GridBox = GridBox(0.0, 6.0),
) -> tuple[TwoBodyState, TwoBodyState]:
    """
    Draws X = (U1, U2), Y = (U1', U2') with U1' < U1 < U2 < U2' and U1 + U2 < U1' + U2', the configuration
    in which neither state is accessible from the other.
    """
    width = box.hi - box.lo
    while True:
        a, b, c, d = np.sort(rng.uniform(box.lo, box.hi, size=4))
        # a = U1', b = U1, c = U2, d = U2'
        if b + c < a + d and min(b - a, c - b, d - c) > 1e-6 * width:
            return TwoBodyState(float(b), float(c)), TwoBodyState(float(a), float(d))


class RubbingOracle:
    """
    Decides accessibility between compounds of two-body systems. Single parts of equal amount are decided by
    the closure formula. For compounds, matter of each part may be cut, each piece transformed on its own, and
    pieces in identical states recombined; y is then accessible from x iff the amounts of x can be routed onto
    the parts of y along "part precedes part" edges (Hall's condition).
    """

    def __init__(self, C: float = 1.0):
        self.C = C
        self.name = "rubbing"

    def decide(self, x: CompoundState, y: CompoundState) -> Decision:
        require_equal_amounts(x, y)

        if len(x) == 1 and len(y) == 1:
            return rubbing_precedes(two_body_of(x.parts[0], self.C), two_body_of(y.parts[0], self.C))

        if len(x) > MAX_TRANSPORT_PARTS or len(y) > MAX_TRANSPORT_PARTS:
            raise DomainError(f"rubbing oracle handles at most {MAX_TRANSPORT_PARTS} parts per side")

        xs = [two_body_of(p, self.C) for p in x.parts]
        ys = [two_body_of(p, self.C) for p in y.parts]
        allowed = [
            {j for j, yj in enumerate(ys) if rubbing_precedes(xi, yj) == "precedes"}
            for xi in xs
        ]

        # Hall's condition for a bipartite transport with supplies on x and demands on y
        for k in range(1, len(xs) + 1):
            for subset in itertools.combinations(range(len(xs)), k):
                supply = math.fsum(x.parts[i].amount for i in subset)
                reach = set().union(*(allowed[i] for i in subset))
                capacity = math.fsum(y.parts[j].amount for j in reach)
                if not leq_within(supply, capacity, 1e-9):
                    return decision(False)

        return decision(True)

    def class_of(self, state: CompoundState) -> str:
        return RUBBING_SYSTEM.class_key(state)


class RubbingSampler:
    def __init__(self, box: GridBox = GridBox(0.5, 6.0), amount: float = 1.0):
        self.box = box
        self.amount = amount

    def draw(self, rng: np.random.Generator) -> CompoundState:
        u1, u2 = rng.uniform(self.box.lo, self.box.hi, size=2)
        return rubbing_compound(float(u1), float(u2), self.amount)
