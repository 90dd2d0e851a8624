"""Shared numerical kernel: tolerance policy, linear solves, kernels, norms.

Everything downstream works with numpy complex128 arrays.  The JSON casing
used by the CLI lives here too so each module serializes the same way:
a complex scalar is ``[re, im]``, a matrix is ``{"rows", "cols", "data"}``
with row-major data.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "Tolerance",
    "DEFAULT_TOL",
    "solve_linear",
    "kernel_basis",
    "operator_norm_estimate",
    "approx_zero",
    "require_finite",
    "as_cvector",
    "as_cmatrix",
    "scalar_to_json",
    "scalar_from_json",
    "vector_to_json",
    "vector_from_json",
    "matrix_to_json",
    "matrix_from_json",
]


@dataclass(frozen=True)
class Tolerance:
    """Single knob for all tolerance-based equality in the package."""

    abs_eps: float = 1e-9
    norm_trials: int = 2000

    def __post_init__(self):
        if not self.abs_eps > 0:
            raise ValueError("abs_eps must be positive")
        if self.norm_trials < 1:
            raise ValueError("norm_trials must be a positive integer")


DEFAULT_TOL = Tolerance()


def require_finite(arr: np.ndarray) -> np.ndarray:
    """Reject NaN/Inf on construction paths; returns the array unchanged."""
    if not np.all(np.isfinite(arr)):
        raise ValueError("non-finite entry in numeric data")
    return arr


def as_cvector(entries) -> np.ndarray:
    v = np.asarray(entries, dtype=np.complex128)
    if v.ndim != 1:
        raise ValueError("expected a 1-d vector")
    return require_finite(v)


def as_cmatrix(entries) -> np.ndarray:
    m = np.asarray(entries, dtype=np.complex128)
    if m.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    return require_finite(m)


def solve_linear(A, b, tol: Tolerance = DEFAULT_TOL):
    """Least-norm solution of Ax = b, or None when no solution meets the bound.

    The accepted solution satisfies ||Ax - b||_inf <= abs_eps * (1 + ||b||_inf).
    Least-norm convention keeps downstream extractions deterministic.
    """
    A = np.asarray(A, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    if A.ndim != 2 or b.ndim != 1 or A.shape[0] != b.shape[0]:
        raise ValueError("dimension mismatch in solve_linear")
    # lstsq with rcond tied to abs_eps gives the minimum-norm LS solution
    x, *_ = np.linalg.lstsq(A, b, rcond=tol.abs_eps)
    resid = np.abs(A @ x - b).max() if b.size else 0.0
    if resid <= tol.abs_eps * (1.0 + (np.abs(b).max() if b.size else 0.0)):
        return x
    return None


def kernel_basis(A, tol: Tolerance = DEFAULT_TOL) -> list:
    """Orthonormal basis of the numerical null space of A.

    Singular values below abs_eps * sigma_max count as zero.  Empty list for
    numerically injective A.
    """
    A = np.asarray(A, dtype=np.complex128)
    if A.ndim != 2:
        raise ValueError("kernel_basis expects a matrix")
    if A.shape[0] == 0:
        # no constraints: the whole space is the kernel
        return [np.eye(A.shape[1], dtype=np.complex128)[i] for i in range(A.shape[1])]
    # economy SVD for tall stacks keeps memory linear in the column count;
    # the right factor still carries all of C^cols either way
    _, s, vh = np.linalg.svd(A, full_matrices=A.shape[0] < A.shape[1])
    smax = s[0] if s.size else 0.0
    cut = tol.abs_eps * smax
    ncols = A.shape[1]
    rank = int(np.sum(s > cut))
    return [vh[i].conj() for i in range(rank, ncols)]


def operator_norm_estimate(A, trials: int = None, seed: int = 0,
                           tol: Tolerance = DEFAULT_TOL) -> float:
    """Lower estimate of the spectral norm by seeded power iteration.

    Deterministic given (trials, seed); monotone nondecreasing in trials
    because every restart can only raise the running maximum.
    """
    A = np.asarray(A, dtype=np.complex128)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("operator_norm_estimate expects a square matrix")
    n = A.shape[0]
    if n == 0:
        return 0.0
    if trials is None:
        trials = tol.norm_trials
    rng = np.random.default_rng(seed)
    H = A.conj().T @ A
    best = 0.0
    # Restart vectors drawn per-trial from one stream so an estimate with
    # more trials extends (never reshuffles) the smaller one: monotonicity
    # in `trials` then holds exactly, not just statistically.
    draws = rng.standard_normal((trials, 2 * n))
    batch = (draws[:, :n] + 1j * draws[:, n:]).T
    batch = batch / np.linalg.norm(batch, axis=0)
    for _ in range(25):
        batch = H @ batch
        norms = np.linalg.norm(batch, axis=0)
        norms[norms == 0.0] = 1.0
        batch /= norms
    Av = A @ batch
    # Rayleigh-quotient style estimate ||Av||/||v|| with unit v: a lower bound
    est = np.linalg.norm(Av, axis=0).max()
    best = max(best, float(est))
    return best


def approx_zero(v, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff every entry of the vector/matrix has modulus <= abs_eps."""
    v = np.asarray(v, dtype=np.complex128)
    if v.size == 0:
        return True
    return bool(np.abs(v).max() <= tol.abs_eps)


# ---------------------------------------------------------------------------
# JSON casing


def scalar_to_json(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def scalar_from_json(pair) -> complex:
    re, im = pair
    return complex(float(re), float(im))


def vector_to_json(v) -> list:
    return [scalar_to_json(z) for z in np.asarray(v, dtype=np.complex128)]


def vector_from_json(pairs) -> np.ndarray:
    return as_cvector([scalar_from_json(p) for p in pairs])


def matrix_to_json(M) -> dict:
    M = np.asarray(M, dtype=np.complex128)
    return {
        "rows": int(M.shape[0]),
        "cols": int(M.shape[1]),
        "data": [scalar_to_json(z) for z in M.reshape(-1)],
    }


def matrix_from_json(obj) -> np.ndarray:
    rows, cols = int(obj["rows"]), int(obj["cols"])
    data = [scalar_from_json(p) for p in obj["data"]]
    if len(data) != rows * cols:
        raise ValueError("matrix data length does not match rows*cols")
    return as_cmatrix(np.array(data, dtype=np.complex128).reshape(rows, cols))
