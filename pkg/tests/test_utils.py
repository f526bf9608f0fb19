import numpy as np
import pytest

from adiabat.config import _cast_env
from adiabat.utils import close_within, derive_rng, get_bytes_hash_hex, get_file_hash_hex, leq_within, parallel_map


def test_cast_env(monkeypatch):
    monkeypatch.delenv("ADIABAT_LAMBDA_TOL", raising=False)
    assert _cast_env("LAMBDA_TOL", float, 1e-9) == 1e-9

    monkeypatch.setenv("ADIABAT_LAMBDA_TOL", "1e-6")
    assert _cast_env("LAMBDA_TOL", float, 1e-9) == 1e-6

    monkeypatch.setenv("ADIABAT_SEED", "12")
    assert _cast_env("SEED", int, 0) == 12


def test_leq_within():
    assert leq_within(1.0, 2.0)
    assert not leq_within(2.0, 1.0)
    # Ties resolve to "less than or equal"
    assert leq_within(1.0 + 1e-14, 1.0)
    assert not leq_within(1.0 + 1e-6, 1.0)
    assert leq_within(1.0 + 1e-6, 1.0, rel_tol=1e-5)
    assert close_within(100.0, 100.0 * (1 + 1e-13))
    assert not close_within(100.0, 101.0)


def test_derive_rng():
    a = derive_rng(0, 1, 2).uniform(size=4)
    b = derive_rng(0, 1, 2).uniform(size=4)
    c = derive_rng(0, 1, 3).uniform(size=4)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)


def test_parallel_map_keeps_order():
    items = list(range(50))
    assert parallel_map(lambda i: i * i, items, parallel=True) == [i * i for i in items]
    assert parallel_map(lambda i: i * i, items) == [i * i for i in items]
    assert parallel_map(lambda i: i, [], parallel=True) == []


def test_hashes(tmp_path):
    path = tmp_path / "data.bin"
    data = b"adiabat" * 1000
    path.write_bytes(data)

    assert get_file_hash_hex(path) == get_bytes_hash_hex(data)
    assert get_bytes_hash_hex(b"") == "da39a3ee5e6b4b0d3255bfef95601890afd80709"
    assert len(get_bytes_hash_hex(b"x")) == 40


@pytest.mark.parametrize("a,b", [(0.0, 0.0), (-1.0, -1.0)])
def test_leq_within_zero_and_negative(a: float, b: float):
    assert leq_within(a, b)
