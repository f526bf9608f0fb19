# adiabat: entropy from the adiabatic accessibility order.
# Licensed under the GPL-3.0; see pyproject.toml.

import math
import numpy as np

from typing import Protocol, runtime_checkable

from .errors import ClassError
from .states import CompoundState, amounts
from .types import Decision, NOT_PRECEDES, PRECEDES

__all__ = [
    "AccessibilityOracle",
    "StateSampler",
    "decision",
    "precedes",
    "class_key",
    "require_equal_amounts",
    "NeverOracle",
    "MutualOracle",
    "FixedSampler",
]


@runtime_checkable
class AccessibilityOracle(Protocol):
    """
    Deterministic decision procedure for "y is adiabatically accessible from x". Implementations are pure and
    may be called concurrently; decide(x, x) is always "precedes".
    """

    name: str

    def decide(self, x: CompoundState, y: CompoundState) -> Decision: ...

    def class_of(self, state: CompoundState) -> str: ...


class StateSampler(Protocol):
    def draw(self, rng: np.random.Generator) -> CompoundState: ...


def decision(holds: bool) -> Decision:
    return PRECEDES if holds else NOT_PRECEDES


def precedes(oracle: AccessibilityOracle, x: CompoundState, y: CompoundState) -> bool:
    return oracle.decide(x, y) == PRECEDES


def class_key(prefix: str, state: CompoundState) -> str:
    """Comparability class key: the same systems in the same amounts."""
    return prefix + ":" + ",".join(f"{s}={a:.9g}" for s, a in sorted(amounts(state).items()))


def require_equal_amounts(x: CompoundState, y: CompoundState, rel_tol: float = 1e-12) -> None:
    ax, ay = amounts(x), amounts(y)
    if ax.keys() != ay.keys() or not all(math.isclose(ax[k], ay[k], rel_tol=rel_tol) for k in ax):
        raise ClassError(
            "states are not in one comparability class",
            [f"amounts {ax} vs {ay}"])


class NeverOracle:
    """Adversarial oracle which never finds anything accessible, not even a state from itself."""

    name = "never"

    def decide(self, x: CompoundState, y: CompoundState) -> Decision:
        return NOT_PRECEDES

    def class_of(self, state: CompoundState) -> str:
        return class_key(self.name, state)


class MutualOracle:
    """Synthetic oracle under which every state of a class is accessible from every other one."""

    name = "mutual"

    def decide(self, x: CompoundState, y: CompoundState) -> Decision:
        return decision(self.class_of(x) == self.class_of(y))

    def class_of(self, state: CompoundState) -> str:
        return class_key(self.name, state)


class FixedSampler:
    def __init__(self, state: CompoundState):
        self.state = state

    def draw(self, rng: np.random.Generator) -> CompoundState:
        return self.state
