# adiabat: entropy from the adiabatic accessibility order.
# Licensed under the GPL-3.0; see pyproject.toml.

"""
The state algebra: simple states of a system, side-by-side compounds of them, and scaling.

Coordinates are stored extensively (already multiplied by the amount of substance), so scaling is a
pure data transform and needs no knowledge of the physics. Identical parts are never merged; the
equivalence of ((1-λ)X, λX) with X is left for the oracles to express.
"""

import math

from collections import Counter
from pydantic import BaseModel, ConfigDict, Field, field_validator

from .errors import ClassError, DomainError
from .types import StateEncoding

__all__ = [
    "SystemSpec",
    "SimpleState",
    "CompoundState",
    "compose",
    "scale",
    "amounts",
    "total_amount",
    "shift_energy",
    "convex_combination",
    "encode_state",
    "decode_state",
]


class SystemSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    id: str
    substance: str
    coordinate_names: tuple[str, ...] = Field(min_length=1)
    coordinate_units: tuple[str, ...] = Field(min_length=1)
    amount_unit: str
    comparability_class: str = Field(min_length=1)

    @field_validator("coordinate_names")
    @classmethod
    def _energy_first(cls, v: tuple[str, ...]) -> tuple[str, ...]:
        if not v[0].startswith("U"):
            raise ValueError(f"first coordinate must be the energy U, got '{v[0]}'")
        return v

    @field_validator("amount_unit")
    @classmethod
    def _known_amount_unit(cls, v: str) -> str:
        if v not in ("mol", "kg"):
            raise ValueError(f"amount unit must be mol or kg, got '{v}'")
        return v

    @property
    def column_names(self) -> tuple[str, ...]:
        return tuple(f"{n}_{u}" for n, u in zip(self.coordinate_names, self.coordinate_units))

    def class_key(self, x: "CompoundState") -> str:
        """Comparability class of x: this system's class together with the amount held of each system."""
        return self.comparability_class + ":" + ",".join(
            f"{s}={a:.9g}{self.amount_unit}" for s, a in sorted(amounts(x).items()))


class SimpleState(BaseModel):
    model_config = ConfigDict(frozen=True)

    system: str
    amount: float
    coords: tuple[float, ...] = Field(min_length=1)

    @field_validator("amount")
    @classmethod
    def _amount_positive(cls, v: float) -> float:
        if not (math.isfinite(v) and v > 0):
            raise ValueError(f"amount must be a positive real, got {v}")
        return v

    @field_validator("coords")
    @classmethod
    def _coords_finite(cls, v: tuple[float, ...]) -> tuple[float, ...]:
        if not all(math.isfinite(c) for c in v):
            raise ValueError(f"coordinates must be finite, got {v}")
        return v

    def intensive(self) -> tuple[float, ...]:
        """Coordinates per unit amount."""
        return tuple(c / self.amount for c in self.coords)


class CompoundState(BaseModel):
    model_config = ConfigDict(frozen=True)

    parts: tuple[SimpleState, ...] = Field(min_length=1)

    @classmethod
    def of(cls, *parts: SimpleState) -> "CompoundState":
        return cls(parts=parts)

    def __eq__(self, other) -> bool:
        # Multiset equality: part order does not matter
        if not isinstance(other, CompoundState):
            return NotImplemented
        return Counter(self.parts) == Counter(other.parts)

    def __hash__(self) -> int:
        return hash(frozenset(Counter(self.parts).items()))

    def __len__(self) -> int:
        return len(self.parts)


def compose(a: CompoundState, b: CompoundState) -> CompoundState:
    return CompoundState(parts=(*a.parts, *b.parts))


def _scale_part(p: SimpleState, lam: float) -> SimpleState:
    return SimpleState(system=p.system, amount=p.amount * lam, coords=tuple(c * lam for c in p.coords))


def scale(x: CompoundState, lam: float) -> CompoundState:
    if not (math.isfinite(lam) and lam > 0):
        raise DomainError(f"scale factor must be a positive real, got {lam}")
    if lam == 1:
        return x
    return CompoundState(parts=tuple(_scale_part(p, lam) for p in x.parts))


def amounts(x: CompoundState) -> dict[str, float]:
    """Total amount of substance per system, over all parts."""
    res: dict[str, float] = {}
    for p in x.parts:
        res[p.system] = res.get(p.system, 0.0) + p.amount
    return res


def total_amount(x: CompoundState) -> float:
    return math.fsum(p.amount for p in x.parts)


def shift_energy(x: SimpleState, dU: float, index: int = 0) -> SimpleState:
    """The same state with the energy coordinate at `index` moved by dU (work coordinates fixed)."""
    coords = list(x.coords)
    coords[index] += dU
    return SimpleState(system=x.system, amount=x.amount, coords=tuple(coords))


def convex_combination(x: SimpleState, z: SimpleState, lam: float) -> SimpleState:
    """
    The state on the line between x and z in coordinate space, i.e. what the pair (λx, (1-λ)z) becomes when
    the partition between the two fractions is removed.
    """
    if x.system != z.system:
        raise ClassError(f"cannot combine states of systems {x.system} and {z.system}")
    if not math.isclose(x.amount, z.amount, rel_tol=1e-12):
        raise ClassError(f"cannot combine states of unequal amounts {x.amount} and {z.amount}")
    if not (0 <= lam <= 1):
        raise DomainError(f"combination weight must lie in [0, 1], got {lam}")
    return SimpleState(
        system=x.system,
        amount=lam * x.amount + (1 - lam) * z.amount,
        coords=tuple(lam * a + (1 - lam) * b for a, b in zip(x.coords, z.coords)),
    )


def encode_state(x: CompoundState) -> StateEncoding:
    return [{"system": p.system, "amount": p.amount, "coords": list(p.coords)} for p in x.parts]


def decode_state(enc: StateEncoding) -> CompoundState:
    return CompoundState(parts=tuple(
        SimpleState(system=p["system"], amount=p["amount"], coords=tuple(p["coords"])) for p in enc))
