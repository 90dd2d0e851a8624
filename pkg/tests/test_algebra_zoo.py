import hashlib
from importlib import resources

import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from jordanlab.algebra_zoo import (
    ALBERT_FIXTURE_SHA256,
    albert_algebra,
    albert_diag_index,
    albert_offdiag_index,
    albert_symmetry_catalog,
    algebra_by_name,
    direct_sum,
    function_algebra,
    matrix_coords,
    matrix_element,
    matrix_jordan,
    matrix_unit_index,
    one_dim,
    permutation_symmetry,
    registry_names,
    spin_bar,
    spin_factor,
    spin_frame,
    spin_norm,
    spin_quadratic_form,
    verify_frame,
)
from jordanlab.jordan_core import (
    center_basis,
    check_axioms,
    element_power,
    is_jordan_homomorphism,
    is_symmetry,
    product,
)


def test_matrix_unit_products():
    A, _ = matrix_jordan(3)
    e12 = np.zeros(9, dtype=complex)
    e12[matrix_unit_index(3, 0, 1)] = 1.0
    e23 = np.zeros(9, dtype=complex)
    e23[matrix_unit_index(3, 1, 2)] = 1.0
    got = product(A, e12, e23)
    want = np.zeros(9, dtype=complex)
    want[matrix_unit_index(3, 0, 2)] = 0.5
    assert np.array_equal(got, want)


def test_matrix_frames_verify():
    for n in range(2, 6):
        A, frame = matrix_jordan(n)
        assert verify_frame(A, frame)
        assert len(frame.projections) == n


def test_permutation_symmetry_is_symmetry():
    A, _ = matrix_jordan(4)
    s = permutation_symmetry(4, {0: 1, 2: 3})
    assert is_symmetry(A, s)


real8 = arrays(np.float64, 6, elements=st.floats(-3, 3))


@given(real8, real8)
def test_spin_square_law(re, im):
    V = spin_factor(6)
    a = re + 1j * im
    # a^2 = 2 a0 a - B(a, a) 1
    sq = product(V, a, a)
    want = 2.0 * a[0] * a - spin_quadratic_form(a, a) * V.unit
    assert np.abs(sq - want).max() < 1e-9


def test_spin_unit_products():
    V = spin_factor(4)
    f1 = np.zeros(4, dtype=complex)
    f1[1] = 1.0
    f2 = np.zeros(4, dtype=complex)
    f2[2] = 1.0
    assert np.allclose(product(V, f1, f1), V.unit)
    assert np.abs(product(V, f1, f2)).max() == 0.0


def test_spin_bar_and_quadratic_form():
    V = spin_factor(4)
    a = np.array([2.0, 1.0, 0.0, 3.0], dtype=complex)
    bar = spin_bar(a)
    assert bar[0] == 2.0 and np.array_equal(bar[1:], -a[1:])
    # B(a, a) = a0^2 - sum a_i^2
    assert spin_quadratic_form(a, a) == pytest.approx(4.0 - 10.0)


def test_spin_norms():
    V = spin_factor(5)
    f1 = np.zeros(5, dtype=complex)
    f1[1] = 1.0
    assert spin_norm(V, V.unit) == pytest.approx(1.0)
    assert spin_norm(V, f1) == pytest.approx(1.0)
    assert spin_norm(V, V.unit + f1) == pytest.approx(2.0)
    assert spin_norm(V, 2.0 * f1) == pytest.approx(2.0)


def test_spin_frame_verifies():
    V = spin_factor(6)
    frame = spin_frame(V)
    assert verify_frame(V, frame)
    p1, p2 = frame.projections
    assert np.allclose(p1 + p2, V.unit)


def test_spin_axioms():
    V = spin_factor(4)
    assert max(check_axioms(V, samples=30, seed=1).values()) < 1e-10


def test_one_dim():
    A = one_dim()
    assert A.dim == 1
    assert np.allclose(product(A, A.unit, A.unit), A.unit)


def test_albert_fixture_checksum():
    data = resources.files("jordanlab.fixtures").joinpath(
        "albert27.json").read_bytes()
    assert hashlib.sha256(data).hexdigest() == ALBERT_FIXTURE_SHA256


def test_albert_axioms_and_center():
    A, frame = albert_algebra()
    assert A.dim == 27
    assert max(check_axioms(A, samples=20, seed=2).values()) < 1e-10
    assert len(center_basis(A)) == 1
    assert verify_frame(A, frame)


def test_albert_diagonal_products():
    A, _ = albert_algebra()
    e = []
    for i in range(3):
        v = np.zeros(27, dtype=complex)
        v[albert_diag_index(i)] = 1.0
        e.append(v)
    assert np.allclose(product(A, e[0], e[0]), e[0])
    assert np.abs(product(A, e[0], e[1])).max() == 0.0
    assert np.allclose(e[0] + e[1] + e[2], A.unit)


def test_albert_offdiagonal_square():
    # the (0,1) octonion-unit cell squares onto e_11 + e_22
    A, _ = albert_algebra()
    x = np.zeros(27, dtype=complex)
    x[albert_offdiag_index(0, 0)] = 1.0
    sq = product(A, x, x)
    want = np.zeros(27, dtype=complex)
    want[albert_diag_index(0)] = 1.0
    want[albert_diag_index(1)] = 1.0
    assert np.abs(sq - want).max() < 1e-12


def test_albert_power_associativity():
    # octonions are not associative, the Albert algebra still is
    # power-associative; this is where a wrong fixture shows up first
    A, _ = albert_algebra()
    rng = np.random.default_rng(3)
    x = rng.standard_normal(27) + 1j * rng.standard_normal(27)
    x /= np.abs(x).max()
    x2 = element_power(A, x, 2)
    x3 = element_power(A, x, 3)
    assert np.abs(product(A, x2, x2) - product(A, x3, x)).max() < 1e-10


def test_albert_symmetry_catalog():
    A, _ = albert_algebra()
    catalog = albert_symmetry_catalog()
    assert len(catalog) >= 4
    for s in catalog:
        assert is_symmetry(A, s)


def test_direct_sum_structure():
    A3, _ = matrix_jordan(3)
    S, summands = direct_sum([A3, spin_factor(4)])
    assert S.dim == 13
    assert len(center_basis(S)) == 2
    for sm in summands:
        assert is_jordan_homomorphism(S, algebra_by_name(sm.name).algebra, sm.proj)
        assert np.allclose(sm.proj @ S.unit,
                           algebra_by_name(sm.name).algebra.unit)


def test_function_algebra_two_points():
    A, summands = function_algebra(matrix_jordan(2)[0], 2)
    assert A.dim == 8
    assert A.name == "func:matrix:2:2"
    assert len(summands) == 2
    assert len(center_basis(A)) == 2


def test_registry_by_name():
    entry = algebra_by_name("sum:matrix:3+matrix:4")
    assert entry.kind == "sum"
    assert [sm.name for sm in entry.summands] == ["matrix:3", "matrix:4"]
    assert entry.algebra.dim == 25
    f = algebra_by_name("func:albert:2")
    assert f.algebra.dim == 54
    with pytest.raises(KeyError):
        algebra_by_name("fancy:7")
    with pytest.raises(ValueError):
        algebra_by_name("matrix:1")
    with pytest.raises(ValueError):
        algebra_by_name("spin:2")
    assert any(n.startswith("matrix") for n in registry_names())
