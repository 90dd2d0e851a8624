"""Kit construction across the zoo plus the worked examples: exact
Kronecker relations, the mid-construction identities, the perturbation
counterexample, gluing, and JSON round-trips."""

import numpy as np
import pytest

from jordanlab.algebra_zoo import (
    algebra_by_name,
    matrix_jordan,
    matrix_unit_index,
    spin_factor,
)
from jordanlab.elementary_ops import (
    FrameInvalid,
    build_kit,
    build_kit_spin,
    glue_kits,
    kit_from_json,
    kit_to_json,
    verify_kit,
)
from jordanlab.jordan_core import element_power, product, u_operator
from jordanlab.numerics import DEFAULT_TOL, vector_from_json

TOL = DEFAULT_TOL


def kronecker_table(kit):
    # j ranges over the kit's own indices: without E2 the powers of u stop
    # spanning anything new at u^2 (u^2 = 1 in a spin factor)
    A = kit.algebra
    out = {}
    for i in sorted(kit.e_ops):
        for j in sorted(kit.e_ops):
            got = kit.apply(i, element_power(A, kit.u, j))
            out[i, j] = float(np.abs(got - (A.unit if i == j else 0)).max())
    return out


@pytest.mark.parametrize("name", ["matrix:2", "matrix:3", "matrix:4",
                                  "matrix:5", "spin:4", "spin:6", "albert"])
def test_kit_kronecker_exact(name):
    kit = build_kit(algebra_by_name(name))
    table = kronecker_table(kit)
    assert max(table.values()) < 1e-12, table


def test_matrix3_kit_u_is_offdiagonal_symmetry_part():
    kit = build_kit(algebra_by_name("matrix:3"))
    want = np.zeros(9, dtype=complex)
    want[matrix_unit_index(3, 0, 1)] = 1.0
    want[matrix_unit_index(3, 1, 0)] = 1.0
    assert np.abs(kit.u - want).max() < 1e-12


def test_case2_mid_identities():
    # U_{p3}(u) = 0 and U_{p3}(u^2) = 0: the block p3 never sees u
    for name in ["matrix:3", "matrix:5", "albert"]:
        entry = algebra_by_name(name)
        kit = build_kit(entry)
        A = entry.algebra
        roles = {d["role"]: vector_from_json(d["coords"])
                 for d in kit.construction_log if "role" in d}
        p3 = roles["p3"]
        up3 = u_operator(A, p3)
        assert np.abs(up3 @ kit.u).max() < 1e-12
        assert np.abs(up3 @ product(A, kit.u, kit.u)).max() < 1e-12


def test_verify_kit_full_report():
    kit = build_kit(algebra_by_name("matrix:4"))
    rep = verify_kit(kit, TOL, seed=0)
    assert rep["passed"]
    assert rep["kronecker_max"] < 1e-12
    assert rep["norm_max"] <= 10.0 + 1e-6
    assert rep["star_symmetry"] < 1e-9
    assert rep["central_linearity"] < 1e-9
    assert set(rep["norm_estimates"]) == {"E0", "E1", "E2"}


def test_perturbed_kit_fails_verification():
    kit = build_kit(algebra_by_name("matrix:3"))
    kit.e_ops[1] = 1.01 * kit.e_ops[1]
    rep = verify_kit(kit, TOL, seed=0)
    assert not rep["passed"]
    assert abs(rep["kronecker"]["1,1"] - 0.01) < 1e-9


def test_spin_kit_has_no_e2():
    kit = build_kit(algebra_by_name("spin:4"))
    assert not kit.has_e2()
    assert set(kit.e_ops) == {0, 1}
    assert verify_kit(kit, TOL)["passed"]


def test_spin_kit_rejects_tiny_factor():
    with pytest.raises(ValueError):
        spin_factor(2)


def test_one_dimensional_summand_rejected():
    with pytest.raises(FrameInvalid):
        build_kit(algebra_by_name("one"))
    with pytest.raises(FrameInvalid):
        build_kit(algebra_by_name("sum:one+matrix:2"))


def test_glued_kit_over_direct_sum():
    entry = algebra_by_name("sum:matrix:3+matrix:4")
    kit = build_kit(entry)
    assert kit.has_e2()
    rep = verify_kit(kit, TOL)
    assert rep["passed"], rep
    # the glued u restricts to each summand's u
    k3 = build_kit(algebra_by_name("matrix:3"))
    assert np.allclose(kit.u[:9], k3.u)


def test_gluing_matrix_with_spin_drops_e2():
    entry = algebra_by_name("sum:matrix:3+spin:4")
    kit = build_kit(entry)
    assert not kit.has_e2()       # spin summand has no E2 to contribute
    assert verify_kit(kit, TOL)["passed"]


def test_glue_kits_direct():
    k3 = build_kit(algebra_by_name("matrix:3"))
    k4 = build_kit(algebra_by_name("matrix:4"))
    kit = glue_kits(k3, k4)
    assert kit.algebra.dim == 25
    assert verify_kit(kit, TOL)["passed"]
    E0 = kit.e_ops[0]
    assert np.abs(E0[:9, 9:]).max() == 0.0    # block diagonal


def test_function_power_kit():
    kit = build_kit(algebra_by_name("func:albert:2"))
    assert kit.algebra.dim == 54
    table = kronecker_table(kit)
    assert max(table.values()) < 1e-12


def test_alternate_kit_is_distinct_and_valid():
    entry = algebra_by_name("matrix:3")
    kit = build_kit(entry)
    alt = build_kit(entry, alternate=True)
    assert np.abs(kit.u - alt.u).max() > 0.5
    assert verify_kit(alt, TOL)["passed"]
    entry4 = algebra_by_name("matrix:4")
    alt4 = build_kit(entry4, alternate=True)
    assert verify_kit(alt4, TOL)["passed"]
    assert np.abs(build_kit(entry4).u - alt4.u).max() > 0.5


def test_alternate_spin_kit():
    entry = algebra_by_name("spin:6")
    kit = build_kit(entry)
    alt = build_kit(entry, alternate=True)
    assert np.abs(kit.u - alt.u).max() > 0.5
    assert verify_kit(alt, TOL)["passed"]


def test_kit_json_roundtrip():
    kit = build_kit(algebra_by_name("matrix:3"))
    obj = kit_to_json(kit)
    back = kit_from_json(obj, kit.algebra)
    assert np.array_equal(back.u, kit.u)
    for i in kit.e_ops:
        assert np.array_equal(back.e_ops[i], kit.e_ops[i])
    assert back.construction_log == kit.construction_log


def test_kit_json_dimension_check():
    kit = build_kit(algebra_by_name("matrix:3"))
    with pytest.raises(ValueError):
        kit_from_json(kit_to_json(kit), algebra_by_name("matrix:4").algebra)


def test_construction_log_roles():
    kit = build_kit(algebra_by_name("matrix:4"))
    roles = [d["role"] for d in kit.construction_log if "role" in d]
    for want in ("p1", "p2", "p3", "p4", "s", "s'", "s''", "u", "v"):
        assert want in roles
