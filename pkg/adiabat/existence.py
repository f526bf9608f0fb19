# adiabat: entropy from the adiabatic accessibility order.
# Licensed under the GPL-3.0; see pyproject.toml.

"""
Does a finite accessibility relation admit an additive entropy encoding it?

Each atom (an abstract simple state) gets one unknown S_a; a state's entropy is the weighted sum over its atoms.
Every X ≺ Y asks for S(X) <= S(Y), and every asserted X ⊀ Y inside one comparability class asks for
S(X) >= S(Y) + margin. Pairs listed in neither edge list are unknown and carry no constraint.
"""

import json
import logging
import math
import networkx as nx
import numpy as np

from pathlib import Path
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator
from typing import Callable, Sequence

from .config import config
from .errors import DomainError, InconsistentRelationError
from .oracles import AccessibilityOracle, precedes
from .schemas import relation_validator
from .simplex import linprog_dense
from .states import CompoundState, SimpleState
from .types import RelationDict
from .utils import get_bytes_hash_hex

__all__ = [
    "BOUND_FACTOR",
    "RelationAtom",
    "RelationPart",
    "RelationState",
    "FiniteRelation",
    "FeasibilityResult",
    "transitive_closure",
    "entropy_feasible",
    "verify_assignment",
    "load_relation",
    "dump_relation",
    "relation_from_oracle",
]

logger = logging.getLogger(__name__)

Edge = tuple[str, str]

BOUND_FACTOR = 1e6


class RelationAtom(BaseModel):
    model_config = ConfigDict(frozen=True)

    id: str
    system: str | None = None


class RelationPart(BaseModel):
    model_config = ConfigDict(frozen=True)

    atom: str
    weight: float

    @field_validator("weight")
    @classmethod
    def _weight_positive(cls, v: float) -> float:
        if not (math.isfinite(v) and v > 0):
            raise ValueError(f"atom weights must be positive, got {v}")
        return v


class RelationState(BaseModel):
    model_config = ConfigDict(frozen=True)

    id: str
    parts: tuple[RelationPart, ...] = Field(min_length=1)


class FiniteRelation(BaseModel):
    model_config = ConfigDict(frozen=True)

    atoms: tuple[RelationAtom, ...]
    states: tuple[RelationState, ...]
    precedes: tuple[Edge, ...] = ()
    absent: tuple[Edge, ...] = ()
    classes: tuple[tuple[str, ...], ...] = ()

    @model_validator(mode="after")
    def _check_references(self) -> "FiniteRelation":
        atom_ids = [a.id for a in self.atoms]
        state_ids = [s.id for s in self.states]

        if len(set(atom_ids)) != len(atom_ids):
            raise ValueError("duplicate atom ids")
        if len(set(state_ids)) != len(state_ids):
            raise ValueError("duplicate state ids")

        atoms = set(atom_ids)
        for s in self.states:
            if bad := [p.atom for p in s.parts if p.atom not in atoms]:
                raise ValueError(f"state {s.id} references undefined atoms {bad}")

        states = set(state_ids)
        for kind, edges in (("precedes", self.precedes), ("absent", self.absent)):
            if bad_edges := [e for e in edges if e[0] not in states or e[1] not in states]:
                raise ValueError(f"{kind} edges reference undefined states: {bad_edges}")

        if both := sorted(set(self.precedes) & set(self.absent)):
            raise ValueError(f"pairs listed as both precedes and absent: {both}")

        if self.classes:
            members = [s for c in self.classes for s in c]
            if sorted(members) != sorted(state_ids):
                raise ValueError("classes must partition the states")

        return self

    @property
    def class_of(self) -> dict[str, int]:
        """State id -> class index. Without explicit classes, all states form one class."""
        if not self.classes:
            return {s.id: 0 for s in self.states}
        return {s: i for i, c in enumerate(self.classes) for s in c}


class FeasibilityResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    feasible: bool
    assignment: dict[str, float] = Field(default_factory=dict)
    # Contradictory edges when found directly; otherwise the id of the failed program
    certificate: list[Edge] | str | None = None

    def to_dict(self) -> dict:
        return {
            "feasible": self.feasible,
            "assignment": self.assignment,
            "certificate": [list(e) for e in self.certificate] if isinstance(self.certificate, list)
            else self.certificate,
        }


def _precedes_graph(rel: FiniteRelation) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(s.id for s in rel.states)
    g.add_edges_from(rel.precedes)
    return g


def transitive_closure(rel: FiniteRelation) -> FiniteRelation:
    g = _precedes_graph(rel)
    closure = nx.transitive_closure(g, reflexive=True)

    for x, y in rel.absent:
        if closure.has_edge(x, y):
            chain = [x] if x == y else nx.shortest_path(g, x, y)
            raise InconsistentRelationError(
                f"{x} ≺ {y} follows from the precedes edges but is asserted absent",
                chain=chain,
                errors=[f"{a} ≺ {b}" for a, b in zip(chain, chain[1:])])

    return rel.model_copy(update={"precedes": tuple(sorted(closure.edges()))})


def _state_vector(state: RelationState, atom_index: dict[str, int]) -> np.ndarray:
    v = np.zeros(len(atom_index))
    for p in state.parts:
        v[atom_index[p.atom]] += p.weight
    return v


def _symmetric_absence(rel: FiniteRelation) -> list[Edge] | None:
    classes = rel.class_of
    absent = set(rel.absent)
    for x, y in rel.absent:
        if x != y and (y, x) in absent and classes[x] == classes[y]:
            return [(x, y), (y, x)]
    return None


def entropy_feasible(rel: FiniteRelation, margin: float | None = None) -> FeasibilityResult:
    margin = config["EXISTENCE_MARGIN"] if margin is None else margin
    if not (math.isfinite(margin) and margin > 0):
        raise DomainError(f"margin must be a positive real, got {margin}")

    if pair := _symmetric_absence(rel):
        logger.info(f"relation is infeasible: {pair[0][0]} and {pair[0][1]} are incomparable")
        return FeasibilityResult(feasible=False, certificate=pair)

    try:
        rel = transitive_closure(rel)
    except InconsistentRelationError as e:
        logger.info(f"relation is infeasible: {e.message}")
        # The precedes chain plus the absent edge it contradicts
        chain_edges = [*zip(e.chain, e.chain[1:]), (e.chain[0], e.chain[-1])]
        return FeasibilityResult(feasible=False, certificate=chain_edges)

    atom_index = {a.id: i for i, a in enumerate(rel.atoms)}
    states = {s.id: _state_vector(s, atom_index) for s in rel.states}
    classes = rel.class_of
    k = len(atom_index)

    rows: list[np.ndarray] = []
    rhs: list[float] = []

    for x, y in rel.precedes:
        if x != y:
            rows.append(states[x] - states[y])  # S(X) - S(Y) <= 0
            rhs.append(0.0)

    for x, y in rel.absent:
        if classes[x] != classes[y]:
            logger.warning(f"ignoring absent edge {x} ⊀ {y} across comparability classes")
            continue
        rows.append(states[y] - states[x])  # S(Y) - S(X) <= -margin
        rhs.append(-margin)

    # S = p - q with 0 <= p, q <= B; minimizing sum(p + q) picks the L1-smallest assignment
    bound = BOUND_FACTOR * margin
    A = np.array([np.concatenate([r, -r]) for r in rows]).reshape(-1, 2 * k)
    A = np.vstack([A, np.eye(2 * k)])
    b = np.concatenate([np.array(rhs), np.full(2 * k, bound)])
    c = np.ones(2 * k)

    res = linprog_dense(c, A, b)
    logger.info(f"existence program: {res.status} after {res.iterations} pivots ({len(rhs)} constraints, {k} atoms)")

    if res.status != "optimal":
        program_id = "lp:" + get_bytes_hash_hex(A.tobytes() + b.tobytes())
        return FeasibilityResult(feasible=False, certificate=program_id)

    p, q = res.x[:k], res.x[k:]
    assignment = {a.id: float(p[i] - q[i]) for i, a in enumerate(rel.atoms)}
    return FeasibilityResult(feasible=True, assignment=assignment)


def verify_assignment(rel: FiniteRelation, assignment: dict[str, float], margin: float | None = None) -> bool:
    """Checks an assignment against every edge directly, without the solver."""
    margin = config["EXISTENCE_MARGIN"] if margin is None else margin

    if missing := sorted({a.id for a in rel.atoms} - assignment.keys()):
        raise DomainError("assignment does not cover every atom", [f"missing {a}" for a in missing])

    by_id = {s.id: s for s in rel.states}

    def _s(state_id: str) -> float:
        return math.fsum(p.weight * assignment[p.atom] for p in by_id[state_id].parts)

    tol = 1e-9 * max(margin, *(abs(v) for v in assignment.values()), 0.0)
    classes = rel.class_of

    if any(_s(x) > _s(y) + tol for x, y in rel.precedes):
        return False
    return all(_s(x) >= _s(y) + margin - tol for x, y in rel.absent if classes[x] == classes[y])


def load_relation(path: str | Path) -> FiniteRelation:
    with open(path, "r") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as e:
            raise DomainError(f"relation file {path} is not valid JSON", [str(e)])

    if errs := list(relation_validator.iter_errors(data)):
        raise DomainError(f"relation file {path} is invalid", [e.message for e in errs])

    try:
        rel = FiniteRelation.model_validate(data)
    except ValidationError as e:
        raise DomainError(f"relation file {path} is invalid", [err["msg"] for err in e.errors()])

    logger.info(f"loaded relation from {path}: {len(rel.states)} states, {len(rel.precedes)} precedes edges")
    return rel


def dump_relation(rel: FiniteRelation) -> RelationDict:
    return {
        "atoms": [{"id": a.id, **({"system": a.system} if a.system else {})} for a in rel.atoms],
        "states": [
            {"id": s.id, "parts": [{"atom": p.atom, "weight": p.weight} for p in s.parts]}
            for s in rel.states
        ],
        "precedes": [list(e) for e in rel.precedes],
        "absent": [list(e) for e in rel.absent],
        "classes": [list(c) for c in rel.classes],
    }


def relation_from_oracle(
    oracle: AccessibilityOracle,
    states: Sequence[CompoundState],
    state_id: Callable[[int], str] = lambda i: f"x{i}",
) -> FiniteRelation:
    """
    Asks the oracle about every ordered pair of distinct states in one class: "precedes" becomes a precedes edge
    and "not precedes" an asserted absence. Each distinct simple part becomes one atom.
    """
    atom_ids: dict[SimpleState, str] = {}
    rel_states = []
    for i, x in enumerate(states):
        weights: dict[str, float] = {}
        for p in x.parts:
            a = atom_ids.setdefault(p, f"a{len(atom_ids)}")
            weights[a] = weights.get(a, 0.0) + 1.0
        rel_states.append(RelationState(
            id=state_id(i),
            parts=tuple(RelationPart(atom=a, weight=w) for a, w in weights.items())))

    ids = [s.id for s in rel_states]
    keys = [oracle.class_of(x) for x in states]

    classes: dict[str, list[str]] = {}
    for sid, key in zip(ids, keys):
        classes.setdefault(key, []).append(sid)

    prec: list[Edge] = []
    absent: list[Edge] = []
    for i, j in ((i, j) for i in range(len(states)) for j in range(len(states))):
        if i == j or keys[i] != keys[j]:
            continue
        (prec if precedes(oracle, states[i], states[j]) else absent).append((ids[i], ids[j]))

    logger.info(f"relation from oracle {oracle.name}: {len(ids)} states, {len(prec)} precedes, {len(absent)} absent")

    return FiniteRelation(
        atoms=tuple(RelationAtom(id=a, system=p.system) for p, a in atom_ids.items()),
        states=tuple(rel_states),
        precedes=tuple(prec),
        absent=tuple(absent),
        classes=tuple(tuple(c) for c in classes.values()),
    )
