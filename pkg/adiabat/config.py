# adiabat: entropy from the adiabatic accessibility order.
# Licensed under the GPL-3.0; see pyproject.toml.

import os
from dotenv import load_dotenv

__all__ = [
    "config",
]

ENV_PREFIX = "ADIABAT_"

load_dotenv()

_config_vars_and_defaults = {
    # Entropy meter
    "LAMBDA_TOL": (float, 1e-9),
    "BRACKET_LIMIT": (float, 2.0 ** 20),

    # Oracles: ties within this relative tolerance resolve to "precedes"
    "ORACLE_REL_TOL": (float, 1e-12),

    # Axiom suite
    "STABILITY_EPS_MIN": (float, 1e-6),

    # Existence checker
    "EXISTENCE_MARGIN": (float, 1.0),
    "SIMPLEX_MAX_ITER": (int, 100_000),

    "SEED": (int, 0),
    "MAX_WORKERS": (int, 4),

    "LOG_LEVEL": (str, "WARNING"),
}


def _cast_env(key: str, cast: type, default):
    if (v := os.environ.get(f"{ENV_PREFIX}{key}")) is None:
        return cast(default)
    return cast(v)


config = {
    k: _cast_env(k, v[0], v[1])
    for k, v in _config_vars_and_defaults.items()
}
