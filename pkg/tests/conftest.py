import pytest

from adiabat.entropy import EntropyMeter, build_meter
from adiabat.gas import GasOracle, GasSampler, GasSpec, gas_compound
from adiabat.rubbing import RubbingOracle, RubbingSampler
from adiabat.water import PhaseConstants, WaterOracle, WaterSampler, water_compound


@pytest.fixture
def gas_spec() -> GasSpec:
    return GasSpec()


@pytest.fixture
def gas_oracle(gas_spec: GasSpec) -> GasOracle:
    return GasOracle(gas_spec)


@pytest.fixture
def gas_sampler() -> GasSampler:
    return GasSampler()


@pytest.fixture
def gas_meter(gas_oracle: GasOracle) -> EntropyMeter:
    return build_meter(gas_oracle, gas_compound(1.0, 100.0, 1.0), gas_compound(1.0, 200.0, 1.0))


@pytest.fixture
def rubbing_oracle() -> RubbingOracle:
    return RubbingOracle()


@pytest.fixture
def rubbing_sampler() -> RubbingSampler:
    return RubbingSampler()


@pytest.fixture
def phase_constants() -> PhaseConstants:
    return PhaseConstants()


@pytest.fixture
def water_oracle(phase_constants: PhaseConstants) -> WaterOracle:
    return WaterOracle(phase_constants)


@pytest.fixture
def water_sampler(phase_constants: PhaseConstants) -> WaterSampler:
    return WaterSampler(phase_constants)


@pytest.fixture
def water_meter(water_oracle: WaterOracle, phase_constants: PhaseConstants) -> EntropyMeter:
    return build_meter(water_oracle, water_compound(1.0, 0.0), water_compound(1.0, phase_constants.h_vapor))
