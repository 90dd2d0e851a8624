"""Standard-form extraction.

Associating linear maps decompose as T(x) = lambda o x + mu(x), associating
traces as B(x,x) = lambda o x^2 + mu(x) o x + nu(x,x), and bijections
preserving operator commutativity as Phi(x) = z0 o J(x) + beta(x), with
lambda/z0 central, mu/nu/beta center-valued, and J a Jordan isomorphism.
The extraction formulas evaluate elementary-kit operators at kit elements;
every output is re-checked against its defining identity.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .elementary_ops import ElementaryKit
from .jordan_core import (
    JordanAlgebra,
    center_matrix,
    center_projector,
    element_power,
    jordan_homomorphism_residual,
    jordan_inverse,
    linop_to_json,
    mult_operator,
    product,
    star_map_residual,
)
from .numerics import DEFAULT_TOL, Tolerance, as_cmatrix, vector_to_json

__all__ = [
    "DecomposeError",
    "NotAssociating",
    "NotBijective",
    "LambdaNotInvertible",
    "ResidualExceeded",
    "JNotMultiplicative",
    "KitMissing",
    "BilinearMap",
    "LinMapStandardForm",
    "TraceStandardForm",
    "PreserverDecomposition",
    "associator_tensor",
    "associating_linear_residual",
    "is_associating_linear",
    "trace_associating_residual",
    "trace_is_associating",
    "bresar_residual",
    "decompose_linear",
    "decompose_trace",
    "decompose_preserver",
    "sharp",
    "is_symmetric_map",
    "symmetric_preserver_check",
    "opcomm_preservation_sampled",
    "central_annihilator_check",
    "cross_block_residual",
    "mixed_products_check",
    "bilinear_to_json",
    "bilinear_from_json",
]


class DecomposeError(Exception):
    pass


class NotAssociating(DecomposeError):
    """Input map/trace fails the associating precondition."""


class NotBijective(DecomposeError):
    """Preserver input is not an invertible matrix."""


class LambdaNotInvertible(DecomposeError):
    """Extracted lambda has no Jordan inverse."""


class ResidualExceeded(DecomposeError):
    """Decomposition formulas evaluated but the output fails its identity."""


class JNotMultiplicative(DecomposeError):
    """Candidate J is not a bijective Jordan homomorphism."""


class KitMissing(DecomposeError):
    """No kit, wrong-algebra kit, or a kit without the needed operators."""


@dataclass
class BilinearMap:
    """Symmetric bilinear map stored as B[i][j][.] = coords of B(b_i, b_j)."""
    algebra: JordanAlgebra
    tensor: np.ndarray

    def __post_init__(self):
        self.tensor = np.asarray(self.tensor, dtype=np.complex128)
        n = self.algebra.dim
        if self.tensor.shape != (n, n, n):
            raise ValueError("bilinear tensor shape mismatch")

    def apply(self, x, y) -> np.ndarray:
        return np.einsum("i,j,ijl->l", np.asarray(x, dtype=np.complex128),
                         np.asarray(y, dtype=np.complex128), self.tensor,
                         optimize=True)

    def symmetry_residual(self) -> float:
        return float(np.abs(self.tensor - self.tensor.transpose(1, 0, 2)).max())


@dataclass
class LinMapStandardForm:
    lam: np.ndarray
    mu: np.ndarray
    residual: float


@dataclass
class TraceStandardForm:
    lam: np.ndarray
    mu: np.ndarray
    nu: BilinearMap
    residual: float


@dataclass
class PreserverDecomposition:
    z0: np.ndarray
    J: np.ndarray
    beta: np.ndarray
    residual: float
    mu1: np.ndarray = None
    nu1: BilinearMap = None
    alpha: np.ndarray = None   # images of the domain center basis under J


# ---------------------------------------------------------------------------
# associating certificates (full basis sweeps, not sampling)


def associator_tensor(A: JordanAlgebra) -> np.ndarray:
    """ASSOC[a,m,y,l] = l-th coord of [b_a, b_m, b_y]; cached per algebra."""
    key = ("assoc",)
    if key not in A._caches:
        c = A.structure
        W = np.einsum("amc,cyl->amyl", c, c, optimize=True)
        A._caches[key] = W - W.transpose(2, 1, 0, 3)
    return A._caches[key]


def associating_linear_residual(A: JordanAlgebra, T) -> float:
    """max over basis triples of |[T(b_i), b_m, b_j] + [T(b_j), b_m, b_i]|."""
    T = as_cmatrix(T)
    R = np.tensordot(T, associator_tensor(A), axes=([0], [0]))  # (i, m, j, l)
    return float(np.abs(R + R.transpose(2, 1, 0, 3)).max())


def is_associating_linear(A: JordanAlgebra, T,
                          tol: Tolerance = DEFAULT_TOL) -> bool:
    return associating_linear_residual(A, T) <= tol.abs_eps


def trace_associating_residual(A: JordanAlgebra, B: BilinearMap) -> float:
    """Cyclic certificate: max residual of
    [B(x,y),m,z] + [B(x,z),m,y] + [B(y,z),m,x] over basis (x,y,z,m)."""
    n = A.dim
    assoc = associator_tensor(A)
    Bflat = B.tensor.reshape(n * n, n)
    worst = 0.0
    for m in range(n):
        # V[i,j,k,l] = [B(b_i,b_j), b_m, b_k]_l
        V = (Bflat @ assoc[:, m, :, :].reshape(n, n * n)).reshape(n, n, n, n)
        cyc = V + V.transpose(0, 2, 1, 3) + V.transpose(2, 0, 1, 3)
        worst = max(worst, float(np.abs(cyc).max()))
    return worst


def trace_is_associating(A: JordanAlgebra, B: BilinearMap,
                         tol: Tolerance = DEFAULT_TOL) -> bool:
    if B.symmetry_residual() > tol.abs_eps:
        raise ValueError("bilinear map is not symmetric")
    return trace_associating_residual(A, B) <= tol.abs_eps


def bresar_residual(A: JordanAlgebra, B: BilinearMap) -> float:
    """max over basis triples of |2[B(x,y),a,y] + [B(y,y),a,x]|."""
    n = A.dim
    assoc = associator_tensor(A)
    Bflat = B.tensor.reshape(n * n, n)
    worst = 0.0
    for m in range(n):
        V = (Bflat @ assoc[:, m, :, :].reshape(n, n * n)).reshape(n, n, n, n)
        two = 2.0 * np.einsum("ijjl->ijl", V)
        anchor = np.einsum("jjil->ijl", V)
        worst = max(worst, float(np.abs(two + anchor).max()))
    return worst


# ---------------------------------------------------------------------------
# decompositions


def _kit_for(A: JordanAlgebra, kit: ElementaryKit):
    if kit is None:
        raise KitMissing("no elementary kit supplied")
    if kit.algebra.dim != A.dim:
        raise KitMissing("kit built over a different algebra")
    if 0 not in kit.e_ops or 1 not in kit.e_ops:
        raise KitMissing("kit lacks E0/E1")
    return kit


def _center_column_residual(A: JordanAlgebra, M, tol) -> float:
    """How far the columns of M stray from span(center)."""
    P = center_projector(A, tol)
    M = as_cmatrix(M)
    return float(np.abs(M - P @ M).max())


def decompose_linear(A: JordanAlgebra, T, kit: ElementaryKit,
                     tol: Tolerance = DEFAULT_TOL,
                     check: bool = True) -> LinMapStandardForm:
    """T(x) = lambda o x + mu(x) with lambda = E1(T(u)),
    mu = E0 T - M_lambda E0."""
    kit = _kit_for(A, kit)
    T = as_cmatrix(T)
    if check and not is_associating_linear(A, T, tol):
        raise NotAssociating("map fails the polarized associator certificate")
    lam = kit.apply(1, T @ kit.u)
    mu = kit.e_ops[0] @ T - mult_operator(A, lam) @ kit.e_ops[0]
    recon = float(np.abs(T - mult_operator(A, lam) - mu).max())
    central = _center_column_residual(A, lam.reshape(-1, 1), tol)
    mu_central = _center_column_residual(A, mu, tol)
    residual = max(recon, central, mu_central)
    if residual > tol.abs_eps:
        raise ResidualExceeded(
            f"standard-form residual {residual:.3e} exceeds {tol.abs_eps:.1e}")
    return LinMapStandardForm(lam, mu, residual)


def _trace_mu_nu(A: JordanAlgebra, B: BilinearMap, kit: ElementaryKit,
                 lam: np.ndarray, tol: Tolerance):
    """Shared tail of the trace extraction once lambda is fixed."""
    w = kit.u
    n = A.dim
    # BW[l,j] = l-th coord of B(w, b_j)
    BW = np.einsum("i,ijl->lj", w, B.tensor, optimize=True)
    e1 = kit.e_ops[1]
    e0 = kit.e_ops[0]
    m_lam = mult_operator(A, lam)
    head = kit.apply(1, B.apply(w, w))
    mu = 2.0 * e1 @ BW \
        - 2.0 * m_lam @ e1 @ mult_operator(A, w) \
        - mult_operator(A, head) @ e1

    def nu_diag(x):
        out = kit.apply(0, B.apply(x, x))
        out = out - product(A, lam, kit.apply(0, product(A, x, x)))
        return out - product(A, mu @ x, kit.apply(0, x))

    eye = np.eye(n)
    diag = np.stack([nu_diag(eye[:, i]) for i in range(n)])
    nu_t = np.empty((n, n, n), dtype=np.complex128)
    for i in range(n):
        nu_t[i, i] = diag[i]
        for j in range(i + 1, n):
            nu_t[i, j] = 0.5 * (nu_diag(eye[:, i] + eye[:, j]) - diag[i] - diag[j])
            nu_t[j, i] = nu_t[i, j]
    return mu, BilinearMap(A, nu_t)


def _trace_reconstruction_residual(A, B, lam, mu, nu) -> float:
    c = A.structure
    m_lam = mult_operator(A, lam)
    t_lam = np.einsum("ijm,lm->ijl", c, m_lam, optimize=True)
    half = np.einsum("mi,mjl->ijl", mu, c, optimize=True)
    t_mu = 0.5 * (half + half.transpose(1, 0, 2))
    return float(np.abs(B.tensor - t_lam - t_mu - nu.tensor).max())


def _extract_trace(A: JordanAlgebra, B: BilinearMap, kit: ElementaryKit,
                   tol: Tolerance):
    """Run the extraction formulas without asserting the outcome."""
    w = kit.u
    if kit.has_e2():
        lam = kit.apply(2, B.apply(w, w))
    else:
        if not A.name.startswith("spin:"):
            raise KitMissing("kit has no E2 and the algebra is not a spin factor")
        lam = np.zeros(A.dim, dtype=np.complex128)
    mu, nu = _trace_mu_nu(A, B, kit, lam, tol)
    return lam, mu, nu


def decompose_trace(A: JordanAlgebra, B: BilinearMap, kit: ElementaryKit,
                    tol: Tolerance = DEFAULT_TOL,
                    check: bool = True) -> TraceStandardForm:
    """Full kits: lambda = E2(B(w,w)),
    mu(x) = 2E1(B(w,x)) - 2 lambda o E1(w o x) - E1(B(w,w)) o E1(x),
    nu by polarizing nu(x,x) = E0(B(x,x)) - lambda o E0(x^2) - mu(x) o E0(x).
    Kits without E2 serve spin factors only; lambda is identically zero
    there, and the lambda terms drop out.
    """
    kit = _kit_for(A, kit)
    if check and not trace_is_associating(A, B, tol):
        raise NotAssociating("trace fails the cyclic associator certificate")
    lam, mu, nu = _extract_trace(A, B, kit, tol)
    recon = _trace_reconstruction_residual(A, B, lam, mu, nu)
    central = _center_column_residual(A, lam.reshape(-1, 1), tol)
    mu_central = _center_column_residual(A, mu, tol)
    nu_central = _center_column_residual(
        A, nu.tensor.reshape(A.dim * A.dim, A.dim).T, tol)
    residual = max(recon, central, mu_central, nu_central)
    if residual > tol.abs_eps:
        raise ResidualExceeded(
            f"trace standard-form residual {residual:.3e} exceeds {tol.abs_eps:.1e}")
    return TraceStandardForm(lam, mu, nu, residual)


def _inverse_or_raise(phi) -> np.ndarray:
    phi = as_cmatrix(phi)
    if phi.shape[0] != phi.shape[1]:
        raise NotBijective("map is not square")
    sv = np.linalg.svd(phi, compute_uv=False)
    if sv[-1] <= 1e-12 * sv[0]:
        raise NotBijective("map is numerically singular")
    return np.linalg.inv(phi)


def induced_trace(A: JordanAlgebra, B_alg: JordanAlgebra, phi) -> BilinearMap:
    """B(x,y) = Phi(Phi^{-1}(x) o Phi^{-1}(y)) on the codomain."""
    phi = as_cmatrix(phi)
    inv = _inverse_or_raise(phi)
    tmp = np.einsum("ai,abm->ibm", inv, A.structure, optimize=True)
    prod = np.einsum("bj,ibm->ijm", inv, tmp, optimize=True)
    return BilinearMap(B_alg, np.einsum("ijm,lm->ijl", prod, phi, optimize=True))


def decompose_preserver(A: JordanAlgebra, B_alg: JordanAlgebra, phi,
                        kit: ElementaryKit, tol: Tolerance = DEFAULT_TOL,
                        require_e2: bool = True,
                        check: bool = True) -> PreserverDecomposition:
    """Phi = M_z0 J + beta via the induced trace on the codomain:
    J = (M_lambda + mu1/2) Phi and z0 = lambda^{-1}.

    require_e2=False is the dedicated test mode that walks spin factors
    into the constructive argument; generic bijections then fail with
    JNotMultiplicative, which is the point of the counterexample.
    """
    kit = _kit_for(B_alg, kit)
    if require_e2 and not kit.has_e2():
        raise KitMissing("preserver decomposition needs an E2-bearing kit")
    phi = as_cmatrix(phi)
    if phi.shape != (B_alg.dim, A.dim):
        raise NotBijective("map shape does not match the algebras")
    _inverse_or_raise(phi)
    B = induced_trace(A, B_alg, phi)
    if check and not trace_is_associating(B_alg, B, tol):
        raise NotAssociating("induced trace is not associating")
    lam, mu1, nu1 = _extract_trace(B_alg, B, kit, tol)
    J = (mult_operator(B_alg, lam) + 0.5 * mu1) @ phi
    hom_res = jordan_homomorphism_residual(A, B_alg, J)
    sv = np.linalg.svd(J, compute_uv=False)
    if hom_res > tol.abs_eps or sv[-1] <= 1e-12 * sv[0]:
        raise JNotMultiplicative(
            f"candidate J residual {hom_res:.3e}, min sv ratio {sv[-1] / sv[0]:.3e}")
    z0 = jordan_inverse(B_alg, lam, tol)
    if z0 is None:
        raise LambdaNotInvertible("extracted lambda has no Jordan inverse")
    beta = phi - mult_operator(B_alg, z0) @ J
    beta_central = _center_column_residual(B_alg, beta, tol)
    if beta_central > tol.abs_eps:
        raise ResidualExceeded(
            f"beta strays from the center by {beta_central:.3e}")
    alpha = J @ center_matrix(A, tol)
    return PreserverDecomposition(z0, J, beta, max(hom_res, beta_central),
                                  mu1=mu1, nu1=nu1, alpha=alpha)


# ---------------------------------------------------------------------------
# sharp conjugation and the symmetric corollary


def sharp(phi, A: JordanAlgebra, B_alg: JordanAlgebra) -> np.ndarray:
    """phi_sharp(x) = phi(x*)*; as matrices S_B conj(phi) conj(S_A)."""
    phi = as_cmatrix(phi)
    return B_alg.star @ np.conj(phi) @ np.conj(A.star)


def is_symmetric_map(phi, A: JordanAlgebra, B_alg: JordanAlgebra,
                     tol: Tolerance = DEFAULT_TOL) -> bool:
    phi = as_cmatrix(phi)
    return bool(np.abs(sharp(phi, A, B_alg) - phi).max() <= tol.abs_eps)


def symmetric_preserver_check(A: JordanAlgebra, B_alg: JordanAlgebra,
                              decomp: PreserverDecomposition,
                              tol: Tolerance = DEFAULT_TOL) -> dict:
    """For sharp-symmetric Phi: z0 self-adjoint, J a star map, beta
    sharp-symmetric."""
    from .jordan_core import star_apply
    z0_res = float(np.abs(star_apply(B_alg, decomp.z0) - decomp.z0).max())
    j_res = star_map_residual(A, B_alg, decomp.J)
    beta_res = float(np.abs(sharp(decomp.beta, A, B_alg) - decomp.beta).max())
    worst = max(z0_res, j_res, beta_res)
    return {
        "z0_selfadjoint": z0_res,
        "J_star_map": j_res,
        "beta_symmetric": beta_res,
        "residual": worst,
        "passed": bool(worst <= tol.abs_eps),
    }


# ---------------------------------------------------------------------------
# sampled preservation of operator commutativity


def _commuting_pairs(A: JordanAlgebra, samples: int, seed: int, summands=None):
    rng = np.random.default_rng([seed, A.dim])
    n = A.dim
    Z = center_matrix(A)
    kinds = ["poly", "central"] + (["blocks"] if summands and len(summands) > 1 else [])
    for k in range(samples):
        kind = kinds[k % len(kinds)]
        x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        if kind == "poly":
            coeff = rng.standard_normal(4) + 1j * rng.standard_normal(4)
            y = sum(c * element_power(A, x, d) for d, c in enumerate(coeff))
        elif kind == "central":
            t = rng.standard_normal(Z.shape[1]) + 1j * rng.standard_normal(Z.shape[1])
            y = Z @ t
        else:
            i, j = rng.choice(len(summands), size=2, replace=False)
            si, sj = summands[i], summands[j]
            x2 = np.zeros(n, dtype=np.complex128)
            y2 = np.zeros(n, dtype=np.complex128)
            x2[si.offset:si.offset + si.dim] = x[si.offset:si.offset + si.dim]
            y2[sj.offset:sj.offset + sj.dim] = rng.standard_normal(sj.dim) \
                + 1j * rng.standard_normal(sj.dim)
            x, y = x2, y2
        yield x, y


def _opcomm_residual(A: JordanAlgebra, x, y) -> float:
    mx = mult_operator(A, x)
    my = mult_operator(A, y)
    return float(np.abs(mx @ my - my @ mx).max())


def opcomm_preservation_sampled(A: JordanAlgebra, B_alg: JordanAlgebra, phi,
                                samples: int = 50, seed: int = 0,
                                tol: Tolerance = DEFAULT_TOL,
                                summands=None) -> dict:
    """Push sampled commuting pairs through phi (and pulled-back pairs
    through phi^{-1}); count how many stay operator-commuting."""
    phi = as_cmatrix(phi)
    inv = _inverse_or_raise(phi)
    fwd_pass = bwd_pass = 0
    fwd_max = bwd_max = 0.0
    for x, y in _commuting_pairs(A, samples, seed, summands):
        r = _opcomm_residual(B_alg, phi @ x, phi @ y)
        fwd_max = max(fwd_max, r)
        fwd_pass += r <= tol.abs_eps
    for x, y in _commuting_pairs(B_alg, samples, seed + 1):
        r = _opcomm_residual(A, inv @ x, inv @ y)
        bwd_max = max(bwd_max, r)
        bwd_pass += r <= tol.abs_eps
    return {
        "samples": samples,
        "forward_pass": int(fwd_pass),
        "inverse_pass": int(bwd_pass),
        "forward_max_residual": fwd_max,
        "inverse_max_residual": bwd_max,
        "passed": bool(fwd_pass == samples and bwd_pass == samples),
    }


# ---------------------------------------------------------------------------
# structure probes used by the negative controls and the direct-sum suites


def central_annihilator_check(A: JordanAlgebra,
                              tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff no nonzero central c keeps c o x central for every x."""
    from .numerics import kernel_basis
    Z = center_matrix(A, tol)
    P = center_projector(A, tol)
    n = A.dim
    G = np.einsum("ijk,jd->ikd", A.structure, Z, optimize=True)
    G = np.einsum("lk,ikd->ild", np.eye(n) - P, G, optimize=True)
    ker = kernel_basis(G.reshape(n * n, Z.shape[1]), tol)
    return len(ker) == 0


def cross_block_residual(A: JordanAlgebra, T, p,
                         tol: Tolerance = DEFAULT_TOL) -> float:
    """How far the compression M_p T M_q (q = 1-p) is from center-valued."""
    T = as_cmatrix(T)
    mp = mult_operator(A, p)
    mq = mult_operator(A, A.unit - np.asarray(p, dtype=np.complex128))
    return _center_column_residual(A, mp @ T @ mq, tol)


def mixed_products_check(A: JordanAlgebra, B: BilinearMap, kit: ElementaryKit,
                         p, tol: Tolerance = DEFAULT_TOL) -> dict:
    """Mixed-block structure of an associating trace over a central
    projection p: with q = 1-p and mu_t(z) = p o E1(B(p o u, z)),

        p o B(y, z) - mu_t(z) o y   is center-valued  (y in pJ, z in qJ)
        p o B(z, z')                is center-valued  (z, z' in qJ)
    """
    kit = _kit_for(A, kit)
    p = np.asarray(p, dtype=np.complex128)
    q = A.unit - p
    mp = mult_operator(A, p)
    mq = mult_operator(A, q)
    n = A.dim
    pu = mp @ kit.u
    # mu_t[l,z] = coords of p o E1(B(p o u, b_z)), z restricted by M_q below
    BW = np.einsum("i,ijl->lj", pu, B.tensor, optimize=True)
    mu_t = mp @ kit.e_ops[1] @ BW @ mq

    # G[y,z,l] = p o B(M_p b_y, M_q b_z) - mu_t(M_q b_z) o b_y
    Bt = np.einsum("ai,bj,abm,lm->ijl", mp, mq, B.tensor, mp, optimize=True)
    c = A.structure
    corr = np.einsum("mj,iml->ijl", mu_t, c, optimize=True)
    G = Bt - corr
    form_res = _center_column_residual(A, G.reshape(n * n, n).T, tol)

    # q-q block compressed by p
    qq = np.einsum("ai,bj,abm,lm->ijl", mq, mq, B.tensor, mp, optimize=True)
    qq_res = _center_column_residual(A, qq.reshape(n * n, n).T, tol)
    mu_res = _center_column_residual(A, mu_t, tol)
    worst = max(form_res, qq_res, mu_res)
    return {
        "standard_form": form_res,
        "cross_center": qq_res,
        "mu_center": mu_res,
        "residual": worst,
        "passed": bool(worst <= tol.abs_eps),
    }


# ---------------------------------------------------------------------------
# JSON casing


def bilinear_to_json(B: BilinearMap) -> dict:
    entries = []
    t = B.tensor
    for i, j, k in zip(*np.nonzero(np.abs(t) > 0)):
        z = t[i, j, k]
        entries.append([int(i), int(j), int(k), float(z.real), float(z.imag)])
    return {"algebra": B.algebra.name, "tensor": entries}


def bilinear_from_json(obj: dict, A: JordanAlgebra) -> BilinearMap:
    t = np.zeros((A.dim, A.dim, A.dim), dtype=np.complex128)
    for i, j, k, re, im in obj["tensor"]:
        t[int(i), int(j), int(k)] = complex(re, im)
    return BilinearMap(A, t)


def linmap_form_to_json(A: JordanAlgebra, form: LinMapStandardForm) -> dict:
    return {
        "lambda": vector_to_json(form.lam),
        "mu": linop_to_json(A, form.mu)["matrix"],
        "residual": form.residual,
    }


def trace_form_to_json(A: JordanAlgebra, form: TraceStandardForm) -> dict:
    return {
        "lambda": vector_to_json(form.lam),
        "mu": linop_to_json(A, form.mu)["matrix"],
        "nu": bilinear_to_json(form.nu)["tensor"],
        "residual": form.residual,
    }


def preserver_to_json(A: JordanAlgebra, B_alg: JordanAlgebra,
                      dec: PreserverDecomposition) -> dict:
    return {
        "z0": vector_to_json(dec.z0),
        "J": linop_to_json(B_alg, dec.J)["matrix"],
        "beta": linop_to_json(B_alg, dec.beta)["matrix"],
        "residual": dec.residual,
    }
