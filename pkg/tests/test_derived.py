import math
import numpy as np
import pytest

from pydantic import ValidationError

from adiabat.derived import (
    PathSpec,
    SearchBox,
    concavity_check,
    convex_combination_check,
    irreversibility_witness,
    loop_report,
    path_delta_S,
    temperature,
)
from adiabat.entropy import EntropyMeter, affine_match, build_table, entropy
from adiabat.errors import DomainError, ExhaustedSearchError, NonMonotoneEntropyError
from adiabat.gas import GasOracle, GasSampler, GasSpec, compound_gas_entropy, gas_compound, gas_entropy, gas_state
from adiabat.oracles import FixedSampler, MutualOracle
from adiabat.rubbing import RubbingOracle, rubbing_compound
from adiabat.states import CompoundState
from adiabat.water import (
    PhaseConstants,
    WaterOracle,
    WaterSampler,
    compound_water_entropy,
    water_compound,
    water_entropy,
    water_of,
    water_state,
)

RECTANGLE = ((100.0, 1.0), (200.0, 1.0), (200.0, 2.0), (100.0, 2.0), (100.0, 1.0))


def _meter_fn(meter: EntropyMeter):
    return lambda s: entropy(meter, CompoundState.of(s))


def test_gas_temperature_analytic(gas_spec: GasSpec):
    x = gas_state(1.0, 3741.3, 1.0)
    t = temperature(lambda s: gas_entropy(gas_spec, s), x)
    assert t == pytest.approx(300.0, rel=5e-3)
    assert t == pytest.approx(3741.3 / gas_spec.Cv, rel=1e-6)

    t2 = temperature(lambda s: gas_entropy(gas_spec, s), gas_state(1.0, 2 * 3741.3, 1.0))
    assert t2 == pytest.approx(2 * t, rel=1e-6)


def test_gas_temperature_reconstructed(gas_meter: EntropyMeter, gas_spec: GasSpec):
    states = [gas_compound(1.0, float(u), float(v)) for u in np.linspace(50, 400, 5) for v in np.linspace(0.5, 4, 5)]
    fit = affine_match(build_table(gas_meter, states), lambda s: compound_gas_entropy(gas_spec, s))

    t = temperature(_meter_fn(gas_meter), gas_state(1.0, 3741.3, 1.0), entropy_unit=1 / fit.slope)
    assert t == pytest.approx(300.0, rel=5e-3)


def test_water_melting_plateau(phase_constants: PhaseConstants, water_meter: EntropyMeter):
    x = water_state(1.0, 167000.0)

    analytic = temperature(lambda s: water_entropy(phase_constants, water_of(s)), x)
    assert analytic == pytest.approx(273.15, rel=1e-3)

    unit = compound_water_entropy(phase_constants, water_compound(1.0, phase_constants.h_vapor))
    reconstructed = temperature(_meter_fn(water_meter), x, entropy_unit=unit)
    assert reconstructed == pytest.approx(273.15, rel=1e-3)


def test_temperature_errors():
    x = gas_state(1.0, 100.0, 1.0)
    with pytest.raises(NonMonotoneEntropyError):
        temperature(lambda s: -s.coords[0], x)
    with pytest.raises(NonMonotoneEntropyError):
        temperature(lambda s: 1.0, x)
    with pytest.raises(DomainError):
        temperature(lambda s: s.coords[0], x, dU=0.0)


def test_concavity_analytic(gas_spec: GasSpec, gas_sampler: GasSampler):
    report = concavity_check(lambda s: gas_entropy(gas_spec, s), gas_sampler, 1000, seed=0)
    assert report.samples == 1000
    assert report.passed
    assert report.max_violation <= 1e-9


def test_concavity_linear_and_convex(gas_sampler: GasSampler):
    assert concavity_check(lambda s: s.coords[0] + s.coords[1], gas_sampler, 200, seed=0).passed

    convex = concavity_check(lambda s: s.coords[0] ** 2, gas_sampler, 200, seed=0)
    assert not convex.passed
    assert convex.violations > 0
    assert convex.max_violation > 0


def test_concavity_fixed_sampler(gas_spec: GasSpec):
    sampler = FixedSampler(gas_compound(1.0, 100.0, 1.0))
    report = concavity_check(lambda s: gas_entropy(gas_spec, s), sampler, 10, seed=0)
    assert report.passed
    assert report.max_violation == pytest.approx(0.0, abs=1e-12)


def test_concavity_reconstructed(gas_meter: EntropyMeter, gas_sampler: GasSampler):
    assert concavity_check(_meter_fn(gas_meter), gas_sampler, 1000, seed=1).passed


def test_concavity_water(phase_constants: PhaseConstants, water_sampler: WaterSampler):
    report = concavity_check(lambda s: water_entropy(phase_constants, water_of(s)), water_sampler, 500, seed=0)
    assert report.passed


def test_convex_combination_check(gas_oracle: GasOracle, gas_sampler: GasSampler, water_oracle: WaterOracle,
                                  water_sampler: WaterSampler):
    assert convex_combination_check(gas_oracle, gas_sampler, 200, seed=0).passed
    assert convex_combination_check(water_oracle, water_sampler, 200, seed=0).passed


def test_path_constant_volume(gas_spec: GasSpec):
    path = PathSpec(vertices=((100.0, 1.0), (200.0, 1.0)), steps_per_segment=10_000)
    assert path_delta_S(gas_spec, path) == pytest.approx(gas_spec.Cv * math.log(2), rel=1e-6)


def test_path_closed_loop(gas_spec: GasSpec):
    report = loop_report(gas_spec, PathSpec(vertices=RECTANGLE, steps_per_segment=1000))

    assert report.steps == 4000
    assert len(report.segments) == 4
    assert report.max_segment == pytest.approx(gas_spec.Cv * math.log(2), rel=1e-5)
    assert abs(report.total) <= 1e-8 * sum(abs(s) for s in report.segments)


def test_path_independence(gas_spec: GasSpec):
    steps = 10_000
    a = path_delta_S(gas_spec, PathSpec(vertices=((100.0, 1.0), (200.0, 1.0), (200.0, 2.0)), steps_per_segment=steps))
    b = path_delta_S(gas_spec, PathSpec(vertices=((100.0, 1.0), (100.0, 2.0), (200.0, 2.0)), steps_per_segment=steps))
    diagonal = path_delta_S(gas_spec, PathSpec(vertices=((100.0, 1.0), (200.0, 2.0)), steps_per_segment=steps))

    assert a == pytest.approx(b, rel=1e-8)
    assert diagonal == pytest.approx(a, rel=1e-6)
    assert a == pytest.approx(compound_gas_entropy(gas_spec, gas_compound(1.0, 200.0, 2.0))
                              - compound_gas_entropy(gas_spec, gas_compound(1.0, 100.0, 1.0)), rel=1e-6)


def test_path_convergence(gas_spec: GasSpec):
    exact = gas_spec.Cv * math.log(2)

    def _error(steps: int) -> float:
        return abs(path_delta_S(gas_spec, PathSpec(vertices=((100.0, 1.0), (200.0, 1.0)), steps_per_segment=steps))
                   - exact)

    assert _error(10) / _error(20) >= 3


@pytest.mark.parametrize("kwargs", [
    {"vertices": ((100.0, 1.0),), "steps_per_segment": 10},
    {"vertices": ((100.0, 1.0), (-1.0, 1.0)), "steps_per_segment": 10},
    {"vertices": ((100.0, 1.0), (200.0, 0.0)), "steps_per_segment": 10},
    {"vertices": ((100.0, 1.0), (200.0, 1.0)), "steps_per_segment": 0},
])
def test_path_spec_invalid(kwargs: dict):
    with pytest.raises(ValidationError):
        PathSpec(**kwargs)


def test_irreversibility_gas(gas_oracle: GasOracle):
    y = irreversibility_witness(gas_oracle, gas_compound(1.0, 100.0, 1.0), SearchBox(step=1.0, limit=10.0))
    assert y == gas_compound(1.0, 101.0, 1.0)


def test_irreversibility_rubbing(rubbing_oracle: RubbingOracle):
    y = irreversibility_witness(rubbing_oracle, rubbing_compound(1.0, 4.0), SearchBox(step=0.5, limit=2.0))
    assert y == rubbing_compound(1.5, 4.0)


def test_irreversibility_exhausted():
    with pytest.raises(ExhaustedSearchError):
        irreversibility_witness(MutualOracle(), gas_compound(1.0, 100.0, 1.0), SearchBox(step=1.0, limit=5.0))
    with pytest.raises(DomainError):
        irreversibility_witness(MutualOracle(), gas_compound(1.0, 100.0, 1.0), SearchBox(step=0.0, limit=5.0))
