"""Capelli polynomials and linear-independence testing in M_m(C).

c_n(xi; eta) = sum_{sigma in S_n} sign(sigma) *
               xi_{sigma(1)} eta_1 xi_{sigma(2)} ... eta_{n-1} xi_{sigma(n)}

A tuple of matrices is linearly dependent over C exactly when c_n
vanishes for every plug-in choice; a few random plug-ins witness
independence with probability 1, and a Gram-rank oracle certifies the
dependent direction deterministically.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .numerics import DEFAULT_TOL, Tolerance, as_cmatrix

__all__ = [
    "MAX_TUPLE",
    "CapelliInput",
    "perm_sign",
    "capelli_eval",
    "independence_capelli",
    "independence_gram",
]

# n! <= 10^6
MAX_TUPLE = 9


@dataclass
class CapelliInput:
    a: list    # the n tested matrices (xi slots)
    x: list    # the n-1 plug-ins (eta slots)


def perm_sign(perm) -> int:
    inv = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm))
              if perm[i] > perm[j])
    return -1 if inv % 2 else 1


def _checked_tuple(mats):
    if len(mats) > MAX_TUPLE:
        raise ValueError(f"capelli size guard: tuple length {len(mats)} > {MAX_TUPLE}")
    out = [as_cmatrix(m) for m in mats]
    if out and any(m.shape != out[0].shape or m.shape[0] != m.shape[1] for m in out):
        raise ValueError("capelli needs square matrices of equal size")
    return out


def capelli_eval(inp: CapelliInput) -> np.ndarray:
    xi = _checked_tuple(inp.a)
    eta = [as_cmatrix(m) for m in inp.x]
    n = len(xi)
    if n < 1:
        raise ValueError("capelli needs at least one xi slot")
    if len(eta) != n - 1:
        raise ValueError(f"capelli needs {n - 1} plug-ins, got {len(eta)}")
    m = xi[0].shape[0]
    acc = np.zeros((m, m), dtype=np.complex128)
    for perm in permutations(range(n)):
        term = xi[perm[0]]
        for k in range(1, n):
            term = term @ eta[k - 1] @ xi[perm[k]]
        acc += perm_sign(perm) * term
    return acc


def independence_capelli(a, trials: int = 8, seed: int = 0,
                         tol: Tolerance = DEFAULT_TOL) -> bool:
    """Independent as soon as one random plug-in tuple gives |c_n| > eps."""
    mats = _checked_tuple(a)
    n = len(mats)
    if n == 0:
        return True
    m = mats[0].shape[0]
    for t in range(trials):
        rng = np.random.default_rng([seed, t])
        eta = [rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
               for _ in range(n - 1)]
        val = capelli_eval(CapelliInput(mats, eta))
        if np.abs(val).max() > tol.abs_eps:
            return True
    return False


def independence_gram(a, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Deterministic oracle: rank of the vectorized tuple equals its length."""
    mats = _checked_tuple(a)
    if not mats:
        return True
    V = np.stack([m.reshape(-1) for m in mats])
    sv = np.linalg.svd(V, compute_uv=False)
    smax = float(sv[0])
    rank = int(np.sum(sv > tol.abs_eps * smax)) if smax > 0 else 0
    return rank == len(mats)
