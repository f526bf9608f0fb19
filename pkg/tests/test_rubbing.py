import itertools
import pytest

from adiabat.errors import DomainError
from adiabat.rubbing import (
    GridBox,
    RubbingOracle,
    TwoBodyState,
    rubbing_compound,
    rubbing_precedes,
    rubbing_reachable_grid,
    rubbing_state,
    sample_incomparable_pattern,
)
from adiabat.states import CompoundState, compose
from adiabat.types import NOT_PRECEDES, PRECEDES
from adiabat.utils import derive_rng


@pytest.mark.parametrize("x,y,res", [
    ((1, 4), (3, 4), PRECEDES),
    ((1, 4), (2.5, 2.5), PRECEDES),
    ((1, 4), (1, 4), PRECEDES),
    ((1, 4), (0.5, 5.2), NOT_PRECEDES),
    ((0.5, 5.2), (1, 4), NOT_PRECEDES),
    ((3, 4), (1, 4), NOT_PRECEDES),
    ((1, 4), (2.4, 2.6), NOT_PRECEDES),
])
def test_rubbing_precedes(x: tuple[float, float], y: tuple[float, float], res: str):
    assert rubbing_precedes(TwoBodyState(*x), TwoBodyState(*y)) == res


def test_reachable_grid_examples():
    reach = rubbing_reachable_grid(TwoBodyState(1.0, 4.0), 0.5, GridBox(0.0, 6.0))
    assert TwoBodyState(1.0, 4.0) in reach
    assert TwoBodyState(3.0, 4.0) in reach
    assert TwoBodyState(2.5, 2.5) in reach
    assert TwoBodyState(6.0, 6.0) in reach
    assert TwoBodyState(0.5, 5.5) not in reach
    assert TwoBodyState(0.5, 6.0) not in reach


def test_reachable_grid_errors():
    with pytest.raises(DomainError):
        rubbing_reachable_grid(TwoBodyState(1.0, 4.0), 0.5, GridBox(0.0, 3.0))
    with pytest.raises(DomainError):
        rubbing_reachable_grid(TwoBodyState(1.1, 4.0), 0.5, GridBox(0.0, 6.0))
    with pytest.raises(DomainError):
        rubbing_reachable_grid(TwoBodyState(1.0, 4.0), 0.0, GridBox(0.0, 6.0))


def test_closure_formula_matches_search():
    step, n = 0.25, 50
    box = GridBox(0.0, (n - 1) * step)
    grid = [TwoBodyState(i * step, j * step) for i in range(n) for j in range(n)]

    for x in grid:
        reach = rubbing_reachable_grid(x, step, box)
        for y in grid:
            assert (rubbing_precedes(x, y) == PRECEDES) == (y in reach), f"{x} -> {y}"


def test_incomparable_pattern():
    for i in range(500):
        x, y = sample_incomparable_pattern(derive_rng(0, i))
        assert y.U1 < x.U1 < x.U2 < y.U2
        assert x.U1 + x.U2 < y.U1 + y.U2
        assert rubbing_precedes(x, y) == NOT_PRECEDES
        assert rubbing_precedes(y, x) == NOT_PRECEDES


def test_oracle_single_parts(rubbing_oracle: RubbingOracle):
    assert rubbing_oracle.decide(rubbing_compound(1, 4), rubbing_compound(3, 4)) == PRECEDES
    assert rubbing_oracle.decide(rubbing_compound(1, 4), rubbing_compound(0.5, 5.2)) == NOT_PRECEDES
    # Coordinates are extensive, decisions use per-amount energies
    assert rubbing_oracle.decide(rubbing_compound(1, 4, 2.0), rubbing_compound(3, 4, 2.0)) == PRECEDES


def test_oracle_compounds(rubbing_oracle: RubbingOracle):
    x = compose(rubbing_compound(1, 4, 0.5), rubbing_compound(3, 3, 0.5))
    y = compose(rubbing_compound(2.5, 2.5, 0.5), rubbing_compound(3, 4, 0.5))
    assert rubbing_oracle.decide(x, y) == PRECEDES
    assert rubbing_oracle.decide(y, x) == NOT_PRECEDES


def test_oracle_compound_amount_routing(rubbing_oracle: RubbingOracle):
    # Both halves of x can only reach the part of y holding a quarter of the matter
    x = compose(rubbing_compound(2, 2, 0.5), rubbing_compound(2, 2, 0.5))
    y = compose(rubbing_compound(3, 3, 0.25), rubbing_compound(0, 0, 0.75))
    assert rubbing_oracle.decide(x, y) == NOT_PRECEDES

    # Splitting one part is allowed
    z = compose(rubbing_compound(3, 3, 0.25), rubbing_compound(2, 2, 0.75))
    assert rubbing_oracle.decide(x, z) == PRECEDES


def test_oracle_part_limit(rubbing_oracle: RubbingOracle):
    many = CompoundState(parts=tuple(rubbing_state(1, 1, 1 / 17) for _ in range(17)))
    with pytest.raises(DomainError):
        rubbing_oracle.decide(many, many)


def test_grid_search_small_boxes():
    for lo, step in itertools.product((0.0, 1.0), (0.5, 1.0)):
        box = GridBox(lo, lo + 4 * step)
        assert TwoBodyState(lo, lo) in rubbing_reachable_grid(TwoBodyState(lo, lo), step, box)
