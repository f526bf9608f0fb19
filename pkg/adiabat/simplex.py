# adiabat: entropy from the adiabatic accessibility order.
# Licensed under the GPL-3.0; see pyproject.toml.

"""
Dense two-phase simplex for small linear programs of the form

    minimize c·x  subject to  A x <= b,  x >= 0

Pivoting follows Bland's rule (lowest eligible column enters, lowest basic index leaves on ratio ties), which
cannot cycle. Problem sizes here are a few hundred rows, where a dense numpy tableau is adequate.
"""

import logging
import numpy as np

from typing import Literal, NamedTuple

from .config import config

__all__ = [
    "LinprogStatus",
    "LinprogResult",
    "linprog_dense",
]

logger = logging.getLogger(__name__)

EPS = 1e-9

LinprogStatus = Literal["optimal", "infeasible", "unbounded", "iteration_limit"]


class LinprogResult(NamedTuple):
    status: LinprogStatus
    x: np.ndarray | None
    objective: float | None
    iterations: int


class _IterationLimit(Exception):
    pass


class _Unbounded(Exception):
    pass


def _pivot(T: np.ndarray, basis: list[int], row: int, col: int) -> None:
    T[row] /= T[row, col]
    factors = T[:, col].copy()
    factors[row] = 0.0
    T -= np.outer(factors, T[row])
    basis[row] = col


def _iterate(T: np.ndarray, basis: list[int], n_cols: int, budget: list[int]) -> None:
    """Runs pivots on the tableau until the objective row (last) has no negative reduced cost in [0, n_cols)."""
    m = T.shape[0] - 1
    while True:
        candidates = np.flatnonzero(T[-1, :n_cols] < -EPS)
        if candidates.size == 0:
            return
        col = int(candidates[0])

        column = T[:m, col]
        rows = np.flatnonzero(column > EPS)
        if rows.size == 0:
            raise _Unbounded()

        ratios = T[rows, -1] / column[rows]
        best = ratios.min()
        tied = rows[ratios <= best + EPS * max(1.0, abs(best))]
        row = int(min(tied, key=lambda r: basis[r]))

        if budget[0] <= 0:
            raise _IterationLimit()
        budget[0] -= 1

        _pivot(T, basis, row, col)


def linprog_dense(
    c: np.ndarray,
    A_ub: np.ndarray,
    b_ub: np.ndarray,
    max_iter: int | None = None,
) -> LinprogResult:
    max_iter = config["SIMPLEX_MAX_ITER"] if max_iter is None else max_iter

    c = np.asarray(c, dtype=float)
    A = np.asarray(A_ub, dtype=float).reshape(-1, c.size)
    b = np.asarray(b_ub, dtype=float)

    m, n = A.shape
    if b.shape != (m,):
        raise ValueError(f"b_ub has shape {b.shape}, expected ({m},)")

    # Standard form with one slack per row; rows with b < 0 are negated and given an artificial variable
    flip = b < 0
    art_rows = np.flatnonzero(flip)
    n_art = art_rows.size
    n_std = n + m

    T = np.zeros((m + 1, n_std + n_art + 1))
    T[:m, :n] = A
    T[:m, n:n_std] = np.eye(m)
    T[:m, -1] = b
    T[art_rows, :] *= -1

    basis = list(range(n, n_std))
    for k, r in enumerate(art_rows):
        T[r, n_std + k] = 1.0
        basis[r] = n_std + k

    budget = [max_iter]
    # Infeasibility is judged against the artificial rows only
    scale = float(max(np.abs(A[art_rows]).max(initial=0.0), np.abs(b[art_rows]).max(initial=0.0)))

    try:
        # Phase 1: minimize the sum of artificials
        if n_art:
            T[-1, :] = -T[art_rows, :].sum(axis=0)
            T[-1, n_std:n_std + n_art] = 0.0
            _iterate(T, basis, n_std + n_art, budget)

            if -T[-1, -1] > EPS * scale:
                logger.debug(f"phase 1 ended with infeasibility {-T[-1, -1]}")
                return LinprogResult("infeasible", None, None, max_iter - budget[0])

            # Drive artificials out of the basis; rows where that is impossible are redundant
            keep = []
            for r in range(m):
                if basis[r] >= n_std:
                    cols = np.flatnonzero(np.abs(T[r, :n_std]) > EPS)
                    if cols.size == 0:
                        continue
                    _pivot(T, basis, r, int(cols[0]))
                keep.append(r)

            T = np.vstack([T[keep][:, np.r_[0:n_std, -1]], np.zeros((1, n_std + 1))])
            basis = [basis[r] for r in keep]

        # Phase 2
        T[-1, :] = 0.0
        T[-1, :n] = c
        for r, j in enumerate(basis):
            if j < n and c[j] != 0:
                T[-1] -= c[j] * T[r]
        _iterate(T, basis, n_std, budget)

    except _Unbounded:
        return LinprogResult("unbounded", None, None, max_iter - budget[0])
    except _IterationLimit:
        logger.warning(f"simplex stopped at the iteration limit ({max_iter})")
        return LinprogResult("iteration_limit", None, None, max_iter)

    x = np.zeros(n_std)
    for r, j in enumerate(basis):
        x[j] = T[r, -1]

    iterations = max_iter - budget[0]
    logger.debug(f"simplex optimal after {iterations} pivots ({m} rows, {n} variables)")
    return LinprogResult("optimal", x[:n], float(c @ x[:n]), iterations)
