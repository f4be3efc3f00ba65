"""Dense complex matrix helpers: unitarity checks, spectral norms, Haar sampling, JSON I/O.

Everything here works on plain numpy arrays (complex128). Matrices stay
small (dimension about 12 or less), so robustness is preferred over
asymptotic speed: singular values go through full Hermitian eigensolves
of the smaller Gram matrix rather than iterative methods.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

# Central tolerance constants. Tests and downstream modules import these
# so there is a single source of truth.
UNITARITY_TOL = 1e-10
EIG_REL_TOL = 1e-12
PROB_SUM_TOL = 1e-10

_UINT64 = 2**64


@dataclass(frozen=True)
class RngSeed:
    """Seed for the counter-based generator family used throughout.

    The pair (seed, stream) fixes the sample sequence completely. Derived
    per-sample streams (see ``sample_generator``) depend only on the pair
    and the sample index, never on worker scheduling.
    """

    seed: int
    stream: int = 0

    def __post_init__(self):
        if not (0 <= int(self.seed) < _UINT64 and 0 <= int(self.stream) < _UINT64):
            raise ValueError("seed and stream must be unsigned 64-bit integers")

    def to_json(self) -> dict:
        return {"seed": int(self.seed), "stream": int(self.stream)}


def philox_key(rng: RngSeed) -> int:
    return (int(rng.stream) << 64) | int(rng.seed)


def generator(rng: RngSeed) -> np.random.Generator:
    """Generator for the run identified by (seed, stream)."""
    return np.random.Generator(np.random.Philox(key=philox_key(rng)))


def sample_generator(rng: RngSeed, index: int) -> np.random.Generator:
    """Independent generator for one sample index.

    Jumping the base counter gives non-overlapping streams, so parallel
    workers may partition the index range arbitrarily and still reproduce
    the exact per-sample draws.
    """
    return np.random.Generator(np.random.Philox(key=philox_key(rng)).jumped(index))


def _as_generator(source) -> np.random.Generator:
    if isinstance(source, RngSeed):
        return generator(source)
    if isinstance(source, np.random.Generator):
        return source
    raise TypeError("expected an RngSeed or numpy Generator")


def unitarity_residual(m: np.ndarray) -> float:
    """Max-norm of M M^dag - I; raises on non-square input."""
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    resid = m @ m.conj().T - np.eye(m.shape[0])
    return float(np.abs(resid).max())


def is_unitary(m: np.ndarray, tol: float = UNITARITY_TOL) -> bool:
    """True iff the max-norm of M M^dag - I is at most tol."""
    return unitarity_residual(m) <= tol


def require_unitary(m: np.ndarray, tol: float = UNITARITY_TOL) -> np.ndarray:
    """Return m as a complex array, or raise naming the violated invariant."""
    m = np.asarray(m, dtype=complex)
    resid = unitarity_residual(m)
    if resid > tol:
        raise ValueError(f"unitarity residual {resid:.3e} exceeds tolerance {tol:g}")
    return m


def largest_singular_value(a: np.ndarray) -> float:
    """Spectral norm of a, via eigendecomposition of the smaller Gram matrix.

    Parameters
    ----------
    a : array_like
        Any complex m x n matrix.

    Returns
    -------
    float
        sigma_max(a) = sqrt(lambda_max(a a^dag)), nonnegative.
    """
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2:
        raise ValueError("expected a 2d array")
    if a.shape[0] <= a.shape[1]:
        g = a @ a.conj().T
    else:
        g = a.conj().T @ a
    w = np.linalg.eigvalsh(g)
    return math.sqrt(max(float(w[-1]), 0.0))


def _haar_from_ginibre(z: np.ndarray) -> np.ndarray:
    # QR alone is not Haar-distributed; the R-diagonal phase correction is
    # required. Works on a single matrix or a stack.
    q, r = np.linalg.qr(z)
    d = np.diagonal(r, axis1=-2, axis2=-1)
    return q * (d / np.abs(d))[..., None, :]


def haar_unitary(n: int, rng: RngSeed) -> np.ndarray:
    """Draw an n x n unitary from the Haar measure.

    Ginibre matrix -> QR -> multiply Q on the right by the phases of the
    R diagonal. Deterministic given the seed.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    g = generator(rng)
    z = (g.standard_normal((n, n)) + 1j * g.standard_normal((n, n))) / math.sqrt(2.0)
    return _haar_from_ginibre(z)


def _check_index_set(idx, bound: int, label: str) -> np.ndarray:
    arr = np.asarray(idx, dtype=int)
    if arr.ndim != 1 or arr.size == 0:
        raise IndexError(f"{label} index set must be a nonempty 1d sequence")
    if arr.min() < 0 or arr.max() >= bound:
        raise IndexError(f"{label} index out of range for bound {bound}")
    if arr.size > 1 and np.any(np.diff(arr) <= 0):
        raise IndexError(f"{label} indices must be strictly increasing")
    return arr


def submatrix(m: np.ndarray, row_idx, col_idx) -> np.ndarray:
    """Block of m selected by strictly increasing row/column index sets."""
    m = np.asarray(m)
    rows = _check_index_set(row_idx, m.shape[0], "row")
    cols = _check_index_set(col_idx, m.shape[1], "col")
    return m[np.ix_(rows, cols)].copy()


# --- file format ------------------------------------------------------------
#
# Shared matrix format: {"rows": n, "cols": n, "re": [[...]], "im": [[...]]},
# row-major decimal floats. Readers reject NaN/Inf.


def matrix_to_json(m: np.ndarray) -> dict:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2:
        raise ValueError("expected a 2d array")
    return {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "re": m.real.tolist(),
        "im": m.imag.tolist(),
    }


def matrix_from_json(obj: dict) -> np.ndarray:
    if not isinstance(obj, dict):
        raise ValueError("matrix json must be an object")
    for key in ("rows", "cols", "re", "im"):
        if key not in obj:
            raise ValueError(f"matrix json missing key {key!r}")
    rows, cols = obj["rows"], obj["cols"]
    if not isinstance(rows, int) or not isinstance(cols, int) or rows < 1 or cols < 1:
        raise ValueError("rows and cols must be positive integers")
    re = np.asarray(obj["re"], dtype=float)
    im = np.asarray(obj["im"], dtype=float)
    if re.shape != (rows, cols) or im.shape != (rows, cols):
        raise ValueError("re/im arrays do not match rows x cols")
    if not (np.isfinite(re).all() and np.isfinite(im).all()):
        raise ValueError("matrix entries must be finite (NaN/Inf rejected)")
    return re + 1j * im


def _reject_nonfinite(token: str):
    raise ValueError(f"non-finite constant {token!r} rejected in matrix file")


def load_matrix(path) -> np.ndarray:
    with open(path, "r", encoding="utf-8") as fh:
        obj = json.load(fh, parse_constant=_reject_nonfinite)
    return matrix_from_json(obj)


def save_matrix(path, m: np.ndarray) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(matrix_to_json(m), fh)
        fh.write("\n")
