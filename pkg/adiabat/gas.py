# adiabat: entropy from the adiabatic accessibility order.
# Licensed under the GPL-3.0; see pyproject.toml.

"""
Ideal gas model. Adiabatic accessibility for one sample is the forward closure of quasi-static adiabatic
volume changes (which keep U·V^(γ-1) fixed) and rubbing (which raises U): y is accessible from x exactly when
the adiabat invariant does not decrease.
"""

import math
import numpy as np

from pydantic import BaseModel, ConfigDict, model_validator

from .errors import ClassError, DomainError
from .oracles import decision, require_equal_amounts
from .states import CompoundState, SimpleState, SystemSpec
from .types import Decision
from .utils import close_within, leq_within

__all__ = [
    "GAS_SYSTEM",
    "GasSpec",
    "gas_state",
    "gas_compound",
    "gas_precedes",
    "gas_entropy",
    "compound_gas_entropy",
    "compound_gas_precedes",
    "gas_temperature",
    "thermal_equilibrate",
    "in_thermal_equilibrium",
    "zeroth_law_holds",
    "GasOracle",
    "GasSampler",
]

GAS_SYSTEM = SystemSpec(
    id="ideal-gas",
    substance="monatomic ideal gas",
    coordinate_names=("U", "V"),
    coordinate_units=("J", "m3"),
    amount_unit="mol",
    comparability_class="ideal-gas",
)

R_GAS = 8.314  # J/(mol K)


class GasSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    R: float = R_GAS
    Cv: float = 1.5 * R_GAS
    gamma: float = 1 + R_GAS / (1.5 * R_GAS)
    s0: float = 0.0

    @model_validator(mode="after")
    def _check_constants(self) -> "GasSpec":
        if self.Cv <= 0:
            raise ValueError(f"Cv must be positive, got {self.Cv}")
        if self.gamma <= 1:
            raise ValueError(f"gamma must exceed 1, got {self.gamma}")
        if not math.isclose(self.gamma * self.Cv, self.Cv + self.R, rel_tol=1e-12):
            raise ValueError(f"gamma*Cv must equal Cv+R (gamma={self.gamma}, Cv={self.Cv}, R={self.R})")
        return self

    @classmethod
    def with_cv(cls, Cv: float, R: float = R_GAS, s0: float = 0.0) -> "GasSpec":
        return cls(R=R, Cv=Cv, gamma=1 + R / Cv, s0=s0)


def gas_state(n: float, U: float, V: float) -> SimpleState:
    return SimpleState(system=GAS_SYSTEM.id, amount=n, coords=(U, V))


def gas_compound(n: float, U: float, V: float) -> CompoundState:
    return CompoundState.of(gas_state(n, U, V))


def _check_gas(x: SimpleState) -> tuple[float, float, float]:
    if x.system != GAS_SYSTEM.id:
        raise ClassError(f"expected {GAS_SYSTEM.substance}, got a state of system {x.system}")
    U, V = x.coords
    if U <= 0 or V <= 0:
        raise DomainError(f"ideal gas needs U > 0 and V > 0, got U={U}, V={V}")
    return x.amount, U, V


def _adiabat_invariant(spec: GasSpec, x: SimpleState) -> float:
    n, U, V = _check_gas(x)
    return (U / n) * (V / n) ** (spec.gamma - 1)


def gas_precedes(spec: GasSpec, x: SimpleState, y: SimpleState) -> Decision:
    _check_gas(x)
    _check_gas(y)
    if not math.isclose(x.amount, y.amount, rel_tol=1e-12):
        raise ClassError(f"gas states of unequal amounts are not comparable: {x.amount} vs {y.amount} mol")
    return decision(leq_within(_adiabat_invariant(spec, x), _adiabat_invariant(spec, y)))


def gas_entropy(spec: GasSpec, x: SimpleState) -> float:
    """Analytic entropy in J/K: S = n (Cv ln(U/n) + R ln(V/n) + s0)."""
    n, U, V = _check_gas(x)
    return n * (spec.Cv * math.log(U / n) + spec.R * math.log(V / n) + spec.s0)


def compound_gas_entropy(spec: GasSpec, x: CompoundState) -> float:
    return math.fsum(gas_entropy(spec, p) for p in x.parts)


def compound_gas_precedes(spec: GasSpec, x: CompoundState, y: CompoundState) -> Decision:
    require_equal_amounts(x, y)
    return decision(leq_within(compound_gas_entropy(spec, x), compound_gas_entropy(spec, y)))


def gas_temperature(spec: GasSpec, x: SimpleState) -> float:
    n, U, _ = _check_gas(x)
    return U / (n * spec.Cv)


def thermal_equilibrate(spec: GasSpec, a: SimpleState, b: SimpleState) -> tuple[SimpleState, SimpleState]:
    """
    Let two samples exchange energy at fixed volumes until their temperatures agree. Total energy is conserved;
    samples already at one temperature are returned unchanged.
    """
    na, Ua, Va = _check_gas(a)
    nb, Ub, Vb = _check_gas(b)

    ta, tb = gas_temperature(spec, a), gas_temperature(spec, b)
    if close_within(ta, tb):
        return a, b

    tf = (na * ta + nb * tb) / (na + nb)
    ua_f = na * spec.Cv * tf
    ub_f = (Ua + Ub) - ua_f

    return (
        SimpleState(system=a.system, amount=na, coords=(ua_f, Va)),
        SimpleState(system=b.system, amount=nb, coords=(ub_f, Vb)),
    )


def in_thermal_equilibrium(spec: GasSpec, a: SimpleState, b: SimpleState) -> bool:
    return thermal_equilibrate(spec, a, b) == (a, b)


def zeroth_law_holds(spec: GasSpec, a: SimpleState, b: SimpleState, c: SimpleState) -> bool:
    if in_thermal_equilibrium(spec, a, c) and in_thermal_equilibrium(spec, b, c):
        return in_thermal_equilibrium(spec, a, b)
    return True


class GasOracle:
    def __init__(self, spec: GasSpec | None = None):
        self.spec = spec or GasSpec()
        self.name = "ideal-gas"

    def decide(self, x: CompoundState, y: CompoundState) -> Decision:
        if len(x) == 1 and len(y) == 1:
            return gas_precedes(self.spec, x.parts[0], y.parts[0])
        return compound_gas_precedes(self.spec, x, y)

    def class_of(self, state: CompoundState) -> str:
        return GAS_SYSTEM.class_key(state)


class GasSampler:
    def __init__(
        self,
        amount: float = 1.0,
        u_range: tuple[float, float] = (50.0, 400.0),
        v_range: tuple[float, float] = (0.5, 4.0),
    ):
        self.amount = amount
        self.u_range = u_range
        self.v_range = v_range

    def draw(self, rng: np.random.Generator) -> CompoundState:
        return gas_compound(
            self.amount,
            self.amount * float(rng.uniform(*self.u_range)),
            self.amount * float(rng.uniform(*self.v_range)))
