"""Maximal spectral norms over submatrix shapes of a unitary.

For an N x N unitary the coefficient s_k is the largest spectral norm
among all submatrices whose shape (m, n) has semiperimeter m + n = k + 1.
The derived r_k = ((1 + s_k) / 2)^2 feed the bound construction.

Two independent routes are kept on purpose:

* ``max_norm_over_shape`` enumerates index pairs one by one through
  ``largest_singular_value`` and is the slow reference oracle;
* ``s_coefficients`` enumerates the same blocks shape by shape but
  vectorized (batched Grams, closed-form 2x2 eigenvalues).

``s_coefficients_batch`` additionally uses two exact reductions that are
cross-checked against the reference route in the tests: every shape with
m + n > N contains a full row or column of some unitary completion and
has norm exactly 1, and at m + n = N a block and its complementary block
share their largest singular value.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .matrices import UNITARITY_TOL, largest_singular_value, require_unitary

# Exhaustive enumeration scales as sum over shapes of C(N,m) C(N,n);
# beyond this size the caller must opt in explicitly.
MAX_ENUMERATION_DIM = 12

# Cap on gathered block tensor elements per chunk (memory guard).
_CHUNK_ELEMENTS = 4_000_000


@dataclass(frozen=True)
class SubmatrixCoefficients:
    """The vectors s_1..s_N and r_k = ((1+s_k)/2)^2 for one unitary."""

    n: int
    s: np.ndarray
    r: np.ndarray


def max_norm_over_shape(u: np.ndarray, m: int, n: int) -> float:
    """Largest spectral norm over every m x n submatrix of u.

    Exhaustive over all C(N,m) * C(N,n) row/column selections; this is
    the reference oracle the vectorized path is tested against.
    """
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {u.shape}")
    dim = u.shape[0]
    if not (1 <= m <= dim and 1 <= n <= dim):
        raise ValueError(f"shape ({m}, {n}) out of range for dimension {dim}")
    best = 0.0
    for rows in itertools.combinations(range(dim), m):
        sel = u[rows, :]
        for cols in itertools.combinations(range(dim), n):
            best = max(best, largest_singular_value(sel[:, cols]))
    return best


def _row_col_cumsums(u3: np.ndarray):
    # Descending cumulative sums of squared moduli along rows and columns;
    # the norm of a 1 x n strip is the root of the top-n row entries.
    absq = np.abs(u3) ** 2
    row_cum = np.cumsum(np.sort(absq, axis=2)[:, :, ::-1], axis=2)
    col_cum = np.cumsum(np.sort(absq.transpose(0, 2, 1), axis=2)[:, :, ::-1], axis=2)
    return row_cum, col_cum


def _block_max(u3: np.ndarray, m: int, n: int, rows: np.ndarray | None = None) -> np.ndarray:
    """Max spectral norm over m x n blocks for a stack of matrices.

    min(m, n) >= 2 required. ``rows`` restricts the row selections
    (used by the complement reduction); columns always range over all
    C(N, n) subsets.
    """
    batch, dim = u3.shape[0], u3.shape[1]
    if rows is None:
        rows = np.array(list(itertools.combinations(range(dim), m)), dtype=int)
    cols = np.array(list(itertools.combinations(range(dim), n)), dtype=int)
    best = np.zeros(batch)
    step = max(1, _CHUNK_ELEMENTS // max(1, batch * cols.shape[0] * m * n))
    for lo in range(0, rows.shape[0], step):
        rsel = rows[lo : lo + step]
        blocks = u3[:, rsel[:, None, :, None], cols[None, :, None, :]]
        if m <= n:
            g = blocks @ np.conj(np.swapaxes(blocks, -1, -2))
        else:
            g = np.conj(np.swapaxes(blocks, -1, -2)) @ blocks
        if min(m, n) == 2:
            a = g[..., 0, 0].real
            d = g[..., 1, 1].real
            off = np.abs(g[..., 0, 1]) ** 2
            lam = 0.5 * (a + d) + np.sqrt(0.25 * (a - d) ** 2 + off)
        else:
            lam = np.linalg.eigvalsh(g)[..., -1]
        vals = np.sqrt(np.maximum(lam, 0.0)).max(axis=(1, 2))
        best = np.maximum(best, vals)
    return best


def _shape_max(u3, m, n, row_cum, col_cum) -> np.ndarray:
    # Vector strips reduce to sorted cumulative sums; blocks need Grams.
    if m == 1:
        return np.sqrt(row_cum[:, :, n - 1].max(axis=1))
    if n == 1:
        return np.sqrt(col_cum[:, :, m - 1].max(axis=1))
    return _block_max(u3, m, n)


def _finalize(s: np.ndarray) -> np.ndarray:
    # Rounding may break monotonicity or push past 1 by an ulp or two.
    s = np.minimum(s, 1.0)
    s = np.maximum.accumulate(s, axis=-1)
    s[..., -1] = 1.0
    return s


def s_coefficients(u: np.ndarray, allow_large: bool = False) -> SubmatrixCoefficients:
    """Compute (s_1..s_N) and (r_1..r_N) for a unitary u.

    s_k maximizes the spectral norm over all submatrices with
    semiperimeter m + n = k + 1. The input must be unitary within
    UNITARITY_TOL: s_N = 1 is relied on downstream, so near-unitary
    matrices are rejected rather than accepted with degraded guarantees.

    Parameters
    ----------
    u : array_like
        Square unitary matrix.
    allow_large : bool
        Permit dimensions above MAX_ENUMERATION_DIM (combinatorial cost).
    """
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {u.shape}")
    dim = u.shape[0]
    if dim > MAX_ENUMERATION_DIM and not allow_large:
        raise ValueError(
            f"dimension {dim} exceeds the enumeration guard "
            f"({MAX_ENUMERATION_DIM}); pass allow_large=True to force"
        )
    u = require_unitary(u, UNITARITY_TOL)
    u3 = u[None, :, :]
    row_cum, col_cum = _row_col_cumsums(u3)
    s = np.empty(dim)
    for k in range(1, dim + 1):
        vals = []
        for m in range(max(1, k + 1 - dim), min(k, dim) + 1):
            n = k + 1 - m
            vals.append(float(_shape_max(u3, m, n, row_cum, col_cum)[0]))
        s[k - 1] = max(vals)
    if abs(s[-1] - 1.0) > UNITARITY_TOL:
        raise ValueError(f"s_N deviates from 1 by {abs(s[-1] - 1.0):.3e}")
    s = _finalize(s)
    r = ((1.0 + s) / 2.0) ** 2
    return SubmatrixCoefficients(n=dim, s=s, r=r)


def s_coefficients_batch(u_batch: np.ndarray) -> np.ndarray:
    """Vectorized s vectors, shape (batch, N), for a stack of unitaries.

    Trusted-input fast path for ensemble work: no unitarity validation
    (the Haar sampler feeds it), semiperimeter class N + 1 is pinned to
    exactly 1, and class N enumerates only one block of each
    complementary pair.
    """
    u_batch = np.asarray(u_batch, dtype=complex)
    if u_batch.ndim != 3 or u_batch.shape[1] != u_batch.shape[2]:
        raise ValueError("expected a stack of square matrices")
    batch, dim = u_batch.shape[0], u_batch.shape[1]
    row_cum, col_cum = _row_col_cumsums(u_batch)
    s = np.zeros((batch, dim))
    s[:, dim - 1] = 1.0
    for k in range(1, dim):
        best = np.zeros(batch)
        for m in range(max(1, k + 1 - dim), min(k, dim) + 1):
            n = k + 1 - m
            if k + 1 == dim:
                if m > n:
                    continue  # complement of the (n, m) pass
                if m == n and m >= 2:
                    # self-complementary shape: row sets containing index 0
                    # meet every complementary pair exactly once
                    half = np.array(
                        [(0,) + rest for rest in itertools.combinations(range(1, dim), m - 1)],
                        dtype=int,
                    )
                    best = np.maximum(best, _block_max(u_batch, m, n, rows=half))
                    continue
            best = np.maximum(best, _shape_max(u_batch, m, n, row_cum, col_cum))
        s[:, k - 1] = best
    return _finalize(s)
