#!/usr/bin/env python3
"""Generate the Albert-algebra structure-constant fixture.

Builds hermitian 3x3 matrices over the complex octonions from an
independent Cayley-Dickson doubling (not the frozen table in
jordanlab.octonion), computes all pairwise symmetrized products, reads the
structure constants off in the 27-element basis, and writes the canonical
algebra JSON to src/jordanlab/fixtures/albert27.json.

Run from the repository root:  python scripts/gen_albert_fixture.py
Prints the SHA-256 of the file it wrote; algebra_zoo pins that hash.
"""

import hashlib
import json
import pathlib
import sys

import numpy as np

ROOT = pathlib.Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from jordanlab.octonion import IDX, SIGN  # noqa: E402


# --- independent Cayley-Dickson construction -------------------------------

def cd_mul(a, b):
    # (a1,a2)(b1,b2) = (a1 b1 - conj(b2) a2, b2 a1 + a2 conj(b1))
    n = len(a)
    if n == 1:
        return [a[0] * b[0]]
    h = n // 2
    a1, a2, b1, b2 = a[:h], a[h:], b[:h], b[h:]
    left = [x - y for x, y in zip(cd_mul(a1, b1), cd_mul(cd_conj(b2), a2))]
    right = [x + y for x, y in zip(cd_mul(b2, a1), cd_mul(a2, cd_conj(b1)))]
    return left + right


def cd_conj(a):
    return [a[0]] + [-x for x in a[1:]]


def check_table_against_cd():
    for i in range(8):
        for j in range(8):
            a = [0] * 8
            b = [0] * 8
            a[i] = 1
            b[j] = 1
            prod = cd_mul(a, b)
            nz = [(k, v) for k, v in enumerate(prod) if v != 0]
            assert len(nz) == 1
            k, v = nz[0]
            assert (v, k) == (SIGN[i][j], IDX[i][j]), (i, j, v, k)


# --- hermitian 3x3 octonionic matrices -------------------------------------

POSITIONS = ((0, 1), (0, 2), (1, 2))


def oct_mul_vec(a, b):
    out = np.zeros(8, dtype=np.complex128)
    for i in np.nonzero(a)[0]:
        for j in np.nonzero(b)[0]:
            out[IDX[i][j]] += SIGN[i][j] * a[i] * b[j]
    return out


def oct_conj_vec(a):
    out = -a.copy()
    out[0] = a[0]
    return out


def basis_matrix(idx):
    """27 basis elements as (3,3,8) arrays of octonion coefficients."""
    M = np.zeros((3, 3, 8), dtype=np.complex128)
    if idx < 3:
        M[idx, idx, 0] = 1.0
        return M
    t, c = divmod(idx - 3, 8)
    i, j = POSITIONS[t]
    unit = np.zeros(8, dtype=np.complex128)
    unit[c] = 1.0
    M[i, j] = unit
    M[j, i] = oct_conj_vec(unit)
    return M


def mat_mul(X, Y):
    out = np.zeros((3, 3, 8), dtype=np.complex128)
    for i in range(3):
        for j in range(3):
            acc = np.zeros(8, dtype=np.complex128)
            for k in range(3):
                acc += oct_mul_vec(X[i, k], Y[k, j])
            out[i, j] = acc
    return out


def coords_of(M):
    """Read coordinates of a hermitian matrix in the 27-element basis."""
    v = np.zeros(27, dtype=np.complex128)
    for i in range(3):
        assert abs(M[i, i, 1:]).max() < 1e-12, "non-scalar diagonal"
        v[i] = M[i, i, 0]
    for t, (i, j) in enumerate(POSITIONS):
        v[3 + 8 * t: 3 + 8 * (t + 1)] = M[i, j]
        assert abs(M[j, i] - oct_conj_vec(M[i, j])).max() < 1e-12, "not hermitian"
    return v


def main():
    check_table_against_cd()
    basis = [basis_matrix(k) for k in range(27)]
    c = np.zeros((27, 27, 27), dtype=np.complex128)
    for a in range(27):
        for b in range(a, 27):
            P = mat_mul(basis[a], basis[b])
            Q = mat_mul(basis[b], basis[a])
            sym = 0.5 * (P + Q)
            v = coords_of(sym)
            c[a, b] = v
            c[b, a] = v
    assert abs(c.imag).max() == 0.0, "structure constants must be real"

    unit = np.zeros(27)
    unit[0] = unit[1] = unit[2] = 1.0
    nz = np.argwhere(c != 0)
    structure = [[int(i), int(j), int(k), float(c[i, j, k].real), 0.0]
                 for i, j, k in nz]
    obj = {
        "name": "albert",
        "dim": 27,
        "unit": [[float(x), 0.0] for x in unit],
        "structure": structure,
        "star": {"rows": 27, "cols": 27,
                 "data": [[1.0 if r == col else 0.0, 0.0]
                          for r in range(27) for col in range(27)]},
    }
    out_path = ROOT / "src" / "jordanlab" / "fixtures" / "albert27.json"
    text = json.dumps(obj, sort_keys=True, separators=(",", ":"))
    out_path.write_text(text)
    digest = hashlib.sha256(text.encode()).hexdigest()
    print(f"wrote {out_path} ({len(text)} bytes)")
    print(f"sha256 {digest}")


if __name__ == "__main__":
    main()
