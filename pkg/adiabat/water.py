# adiabat: entropy from the adiabatic accessibility order.
# Licensed under the GPL-3.0; see pyproject.toml.

"""
Water at one bar along its heating curve: ice, melting plateau, liquid, boiling plateau, vapor.

States are parametrized by the specific thermal energy h (J/kg), zero for ice at the melting point. Entropy
is the piecewise integral of dh/T along the curve (the P dV term is neglected; the vapor segment uses the
constant-pressure heat capacity so that dQ = dh throughout), with S = 0 for ice at the melting point.
"""

import math
import numpy as np

from pydantic import BaseModel, ConfigDict, field_validator, model_validator
from typing import Literal

from .errors import ClassError, DomainError
from .oracles import decision, require_equal_amounts
from .states import CompoundState, SimpleState, SystemSpec
from .types import Decision
from .utils import leq_within

__all__ = [
    "WATER_SYSTEM",
    "PhaseConstants",
    "WaterState",
    "WaterPhase",
    "water_state",
    "water_compound",
    "water_of",
    "water_temperature",
    "water_phase",
    "water_entropy",
    "compound_water_entropy",
    "water_precedes",
    "water_direct_contact",
    "water_table",
    "WaterOracle",
    "WaterSampler",
]

WATER_SYSTEM = SystemSpec(
    id="water",
    substance="water (1 bar)",
    coordinate_names=("U",),
    coordinate_units=("J",),
    amount_unit="kg",
    comparability_class="water",
)

WaterPhase = Literal["ice", "ice+liquid", "liquid", "liquid+vapor", "vapor"]


class PhaseConstants(BaseModel):
    # Handbook values at one bar
    model_config = ConfigDict(frozen=True)

    c_ice: float = 2060.0  # J/(kg K)
    c_liq: float = 4180.0
    c_vap: float = 1996.0
    L_fus: float = 334000.0  # J/kg
    T_fus: float = 273.15  # K
    L_vap: float = 2260000.0
    T_vap: float = 373.15

    T_min: float = 200.0
    T_max: float = 500.0

    @field_validator("*")
    @classmethod
    def _positive(cls, v: float) -> float:
        if not v > 0:
            raise ValueError(f"phase constants must be positive, got {v}")
        return v

    @model_validator(mode="after")
    def _ordered(self) -> "PhaseConstants":
        if not (self.T_min < self.T_fus < self.T_vap < self.T_max):
            raise ValueError("need T_min < T_fus < T_vap < T_max")
        return self

    # Breakpoints of the heating curve, in J/kg

    @property
    def h_min(self) -> float:
        return self.c_ice * (self.T_min - self.T_fus)

    @property
    def h_liquid(self) -> float:
        return self.L_fus

    @property
    def h_boil(self) -> float:
        return self.L_fus + self.c_liq * (self.T_vap - self.T_fus)

    @property
    def h_vapor(self) -> float:
        return self.h_boil + self.L_vap

    @property
    def h_max(self) -> float:
        return self.h_vapor + self.c_vap * (self.T_max - self.T_vap)


class WaterState(BaseModel):
    model_config = ConfigDict(frozen=True)

    mass: float
    h: float

    @field_validator("mass")
    @classmethod
    def _mass_positive(cls, v: float) -> float:
        if not v > 0:
            raise ValueError(f"mass must be positive, got {v}")
        return v


def water_state(mass: float, h: float) -> SimpleState:
    return SimpleState(system=WATER_SYSTEM.id, amount=mass, coords=(mass * h,))


def water_compound(mass: float, h: float) -> CompoundState:
    return CompoundState.of(water_state(mass, h))


def water_of(x: SimpleState) -> WaterState:
    if x.system != WATER_SYSTEM.id:
        raise ClassError(f"expected {WATER_SYSTEM.substance}, got a state of system {x.system}")
    return WaterState(mass=x.amount, h=x.coords[0] / x.amount)


def _check_h(k: PhaseConstants, h: float) -> None:
    slack = 1e-12 * (k.h_max - k.h_min)
    if not (k.h_min - slack <= h <= k.h_max + slack):
        raise DomainError(f"h = {h} J/kg is outside [{k.h_min}, {k.h_max}]")


def water_temperature(k: PhaseConstants, w: WaterState) -> float:
    h = w.h
    _check_h(k, h)
    if h < 0:
        return k.T_fus + h / k.c_ice
    if h <= k.h_liquid:
        return k.T_fus
    if h <= k.h_boil:
        return k.T_fus + (h - k.h_liquid) / k.c_liq
    if h <= k.h_vapor:
        return k.T_vap
    return k.T_vap + (h - k.h_vapor) / k.c_vap


def water_phase(k: PhaseConstants, w: WaterState) -> WaterPhase:
    h = w.h
    _check_h(k, h)
    if h <= 0:
        return "ice"
    if h < k.h_liquid:
        return "ice+liquid"
    if h <= k.h_boil:
        return "liquid"
    if h < k.h_vapor:
        return "liquid+vapor"
    return "vapor"


def _specific_entropy(k: PhaseConstants, h: float) -> float:
    _check_h(k, h)

    if h < 0:
        return k.c_ice * math.log((k.T_fus + h / k.c_ice) / k.T_fus)

    s = min(h, k.h_liquid) / k.T_fus
    if h <= k.h_liquid:
        return s

    s += k.c_liq * math.log((k.T_fus + (min(h, k.h_boil) - k.h_liquid) / k.c_liq) / k.T_fus)
    if h <= k.h_boil:
        return s

    s += (min(h, k.h_vapor) - k.h_boil) / k.T_vap
    if h <= k.h_vapor:
        return s

    return s + k.c_vap * math.log((k.T_vap + (h - k.h_vapor) / k.c_vap) / k.T_vap)


def water_entropy(k: PhaseConstants, w: WaterState) -> float:
    """Entropy in J/K, extensive in the mass."""
    return w.mass * _specific_entropy(k, w.h)


def compound_water_entropy(k: PhaseConstants, x: CompoundState) -> float:
    return math.fsum(water_entropy(k, water_of(p)) for p in x.parts)


def water_precedes(k: PhaseConstants, x: CompoundState, y: CompoundState) -> Decision:
    require_equal_amounts(x, y)
    return decision(leq_within(compound_water_entropy(k, x), compound_water_entropy(k, y)))


def water_direct_contact(k: PhaseConstants, a: WaterState, b: WaterState) -> WaterState:
    """
    Two portions brought straight into contact at one bar (e.g. ice exposed to vapor): the enthalpy is shared
    and the result is a single portion at the mass-weighted mean h. This is irreversible whenever the two
    portions were at different temperatures.
    """
    _check_h(k, a.h)
    _check_h(k, b.h)
    mass = a.mass + b.mass
    return WaterState(mass=mass, h=(a.mass * a.h + b.mass * b.h) / mass)


def water_table(k: PhaseConstants, points: int) -> list[tuple[float, float, WaterPhase, float]]:
    """Rows (h, T, phase, specific entropy) on an even h-grid over the model's domain."""
    if points < 2:
        raise DomainError(f"need at least 2 table points, got {points}")

    rows = []
    for h in np.linspace(k.h_min, k.h_max, points):
        w = WaterState(mass=1.0, h=float(h))
        rows.append((w.h, water_temperature(k, w), water_phase(k, w), _specific_entropy(k, w.h)))
    return rows


class WaterOracle:
    def __init__(self, k: PhaseConstants | None = None):
        self.k = k or PhaseConstants()
        self.name = "water"

    def decide(self, x: CompoundState, y: CompoundState) -> Decision:
        return water_precedes(self.k, x, y)

    def class_of(self, state: CompoundState) -> str:
        return WATER_SYSTEM.class_key(state)


class WaterSampler:
    def __init__(self, k: PhaseConstants | None = None, mass: float = 1.0):
        self.k = k or PhaseConstants()
        self.mass = mass

    def draw(self, rng: np.random.Generator) -> CompoundState:
        return water_compound(self.mass, float(rng.uniform(self.k.h_min, self.k.h_max)))
