import math
import pytest

from hypothesis import given, strategies as st
from pydantic import ValidationError

from adiabat.errors import ClassError, DomainError
from adiabat.states import (
    CompoundState,
    SimpleState,
    SystemSpec,
    amounts,
    compose,
    convex_combination,
    decode_state,
    encode_state,
    scale,
    shift_energy,
    total_amount,
)

finite = st.floats(min_value=-1e6, max_value=1e6).filter(lambda c: c == 0 or abs(c) > 1e-100)
amount = st.floats(min_value=1e-3, max_value=1e3)
factor = st.floats(min_value=1e-3, max_value=1e3)

# Scaling twice rounds twice; parts agree with a single scaling to a few ulps
SCALE_REL_TOL = 1e-14

simple_states = st.builds(
    SimpleState,
    system=st.sampled_from(["ideal-gas", "water"]),
    amount=amount,
    coords=st.tuples(finite, finite),
)
compound_states = st.lists(simple_states, min_size=1, max_size=4).map(lambda ps: CompoundState(parts=tuple(ps)))


@given(compound_states, compound_states)
def test_compose_commutative(a: CompoundState, b: CompoundState):
    assert compose(a, b) == compose(b, a)
    assert hash(compose(a, b)) == hash(compose(b, a))


@given(compound_states, compound_states, compound_states)
def test_compose_associative(a: CompoundState, b: CompoundState, c: CompoundState):
    assert compose(compose(a, b), c) == compose(a, compose(b, c))


def _assert_parts_close(x: CompoundState, y: CompoundState, rel: float):
    assert len(x) == len(y)
    for p, q in zip(x.parts, y.parts):
        assert p.system == q.system
        assert p.amount == pytest.approx(q.amount, rel=rel)
        assert p.coords == pytest.approx(q.coords, rel=rel)


@given(compound_states, factor, factor)
def test_scale_composition(x: CompoundState, a: float, b: float):
    _assert_parts_close(scale(scale(x, a), b), scale(x, a * b), SCALE_REL_TOL)


def test_scale_composition_rounding():
    x = CompoundState.of(SimpleState(system="ideal-gas", amount=1.0, coords=(100.0, 1.0)))
    twice, once = scale(scale(x, 0.1), 3.0), scale(x, 0.3)
    _assert_parts_close(twice, once, SCALE_REL_TOL)


@given(compound_states, factor)
def test_scale_amounts(x: CompoundState, a: float):
    sx = scale(x, a)
    assert total_amount(sx) == pytest.approx(a * total_amount(x), rel=1e-12)
    assert sx.parts[0].intensive() == pytest.approx(x.parts[0].intensive(), rel=1e-12, abs=1e-12)


def test_scale_identity():
    x = CompoundState.of(SimpleState(system="ideal-gas", amount=1.0, coords=(100.0, 1.0)))
    assert scale(x, 1.0) is x


@pytest.mark.parametrize("lam", [0.0, -1.0, math.inf, math.nan])
def test_scale_invalid(lam: float):
    x = CompoundState.of(SimpleState(system="ideal-gas", amount=1.0, coords=(100.0, 1.0)))
    with pytest.raises(DomainError):
        scale(x, lam)


@pytest.mark.parametrize("amt,coords", [
    (0.0, (1.0,)),
    (-1.0, (1.0,)),
    (math.inf, (1.0,)),
    (1.0, (math.nan,)),
    (1.0, ()),
])
def test_simple_state_invalid(amt: float, coords: tuple[float, ...]):
    with pytest.raises(ValidationError):
        SimpleState(system="water", amount=amt, coords=coords)


def test_compound_needs_parts():
    with pytest.raises(ValidationError):
        CompoundState(parts=())


def test_identical_parts_not_merged():
    p = SimpleState(system="water", amount=0.5, coords=(1.0,))
    x = CompoundState.of(p, p)
    assert len(x) == 2
    assert x != CompoundState.of(SimpleState(system="water", amount=1.0, coords=(2.0,)))
    assert amounts(x) == {"water": 1.0}


def test_amounts_per_system():
    x = CompoundState.of(
        SimpleState(system="ideal-gas", amount=1.0, coords=(100.0, 1.0)),
        SimpleState(system="water", amount=2.0, coords=(0.0,)),
        SimpleState(system="ideal-gas", amount=0.5, coords=(50.0, 0.5)),
    )
    assert amounts(x) == {"ideal-gas": 1.5, "water": 2.0}
    assert total_amount(x) == 3.5


def test_shift_energy():
    x = SimpleState(system="rubbing-pair", amount=1.0, coords=(1.0, 4.0))
    assert shift_energy(x, 0.5).coords == (1.5, 4.0)
    assert shift_energy(x, 0.5, 1).coords == (1.0, 4.5)


def test_convex_combination():
    x = SimpleState(system="ideal-gas", amount=1.0, coords=(100.0, 1.0))
    z = SimpleState(system="ideal-gas", amount=1.0, coords=(300.0, 3.0))
    y = convex_combination(x, z, 0.25)
    assert y.amount == pytest.approx(1.0)
    assert y.coords == pytest.approx((250.0, 2.5))


def test_convex_combination_errors():
    x = SimpleState(system="ideal-gas", amount=1.0, coords=(100.0, 1.0))
    with pytest.raises(ClassError):
        convex_combination(x, SimpleState(system="ideal-gas", amount=2.0, coords=(100.0, 1.0)), 0.5)
    with pytest.raises(ClassError):
        convex_combination(x, SimpleState(system="water", amount=1.0, coords=(100.0, 1.0)), 0.5)
    with pytest.raises(DomainError):
        convex_combination(x, x, 1.5)


def test_state_encoding():
    x = CompoundState.of(
        SimpleState(system="ideal-gas", amount=1.0, coords=(100.0, 1.0)),
        SimpleState(system="ideal-gas", amount=0.5, coords=(20.0, 0.25)),
    )
    enc = encode_state(x)
    assert enc[0] == {"system": "ideal-gas", "amount": 1.0, "coords": [100.0, 1.0]}
    assert decode_state(enc) == x


def test_system_spec():
    spec = SystemSpec(
        id="g", substance="gas", coordinate_names=("U", "V"), coordinate_units=("J", "m3"), amount_unit="mol",
        comparability_class="g")
    assert spec.column_names == ("U_J", "V_m3")
    assert spec.class_key(CompoundState.of(
        SimpleState(system="g", amount=1.0, coords=(1.0, 1.0)),
        SimpleState(system="g", amount=0.5, coords=(1.0, 1.0)),
    )) == "g:g=1.5mol"

    with pytest.raises(ValidationError):
        SystemSpec(
            id="g", substance="gas", coordinate_names=("V", "U"), coordinate_units=("m3", "J"), amount_unit="mol",
            comparability_class="g")

    with pytest.raises(ValidationError):
        SystemSpec(
            id="g", substance="gas", coordinate_names=("U",), coordinate_units=("J",), amount_unit="lb",
            comparability_class="g")
