# adiabat: entropy from the adiabatic accessibility order.
# Licensed under the GPL-3.0; see pyproject.toml.

import hashlib
import numpy as np

from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Callable, Iterable, TypeVar

from .config import config

__all__ = [
    "leq_within",
    "close_within",
    "derive_rng",
    "parallel_map",
    "get_file_hash_hex",
    "get_bytes_hash_hex",
]

T = TypeVar("T")
R = TypeVar("R")


def leq_within(a: float, b: float, rel_tol: float | None = None) -> bool:
    """
    a <= b, where values equal up to a relative tolerance count as "less than or equal".
    Ties therefore resolve in favour of accessibility.
    """
    rel_tol = config["ORACLE_REL_TOL"] if rel_tol is None else rel_tol
    return a <= b + rel_tol * max(abs(a), abs(b))


def close_within(a: float, b: float, rel_tol: float | None = None) -> bool:
    return leq_within(a, b, rel_tol) and leq_within(b, a, rel_tol)


def derive_rng(seed: int, *stream: int) -> np.random.Generator:
    """
    Deterministic generator for one sampled instance. The (seed, *stream) tuple is all that is needed
    to replay the instance, e.g. (seed, axiom number, instance index).
    """
    return np.random.default_rng(np.random.SeedSequence([seed, *stream]))


def parallel_map(fn: Callable[[T], R], items: Iterable[T], parallel: bool = False) -> list[R]:
    # Result order always matches input order, so output does not depend on scheduling
    if not parallel:
        return [fn(i) for i in items]
    with ThreadPoolExecutor(max_workers=config["MAX_WORKERS"]) as ex:
        return list(ex.map(fn, items))


def get_bytes_hash_hex(data: bytes) -> str:
    return hashlib.new("sha1", data, usedforsecurity=False).hexdigest()


def get_file_hash_hex(path: str | Path, chunk_size: int = 1 << 16) -> str:
    """Fingerprint of a written report; identical seeds give identical fingerprints."""
    digest = hashlib.new("sha1", usedforsecurity=False)
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(chunk_size), b""):
            digest.update(chunk)
    return digest.hexdigest()
