# adiabat: entropy from the adiabatic accessibility order.
# Licensed under the GPL-3.0; see pyproject.toml.

from typing import Literal, TypedDict

__all__ = [
    "Decision",
    "PRECEDES",
    "NOT_PRECEDES",

    "ModelName",
    "MODEL_IDEAL_GAS",
    "MODEL_RUBBING",
    "MODEL_WATER",
    "MODEL_NAMES",

    "OutputFormat",
    "OUTPUT_FORMATS",

    "PartEncoding",
    "StateEncoding",
    "AxiomReportDict",
    "RelationPartDict",
    "RelationStateDict",
    "RelationDict",
]


Decision = Literal["precedes", "not_precedes"]

PRECEDES: Literal["precedes"] = "precedes"
NOT_PRECEDES: Literal["not_precedes"] = "not_precedes"


ModelName = Literal["ideal-gas", "rubbing", "water"]

MODEL_IDEAL_GAS: Literal["ideal-gas"] = "ideal-gas"
MODEL_RUBBING: Literal["rubbing"] = "rubbing"
MODEL_WATER: Literal["water"] = "water"

MODEL_NAMES: frozenset[ModelName] = frozenset({
    MODEL_IDEAL_GAS,
    MODEL_RUBBING,
    MODEL_WATER,
})


OutputFormat = Literal["csv", "json"]

OUTPUT_FORMATS: frozenset[OutputFormat] = frozenset({"csv", "json"})


class PartEncoding(TypedDict):
    system: str
    amount: float
    coords: list[float]


# A compound state is written out as the list of its parts
StateEncoding = list[PartEncoding]


class AxiomReportDict(TypedDict):
    axiom: str
    instances_tested: int
    passed: bool
    witnesses: list[list[StateEncoding]]


class RelationPartDict(TypedDict):
    atom: str
    weight: float


class RelationStateDict(TypedDict):
    id: str
    parts: list[RelationPartDict]


class RelationDict(TypedDict):
    atoms: list[dict[str, str]]
    states: list[RelationStateDict]
    precedes: list[list[str]]
    absent: list[list[str]]
    classes: list[list[str]]
