from fractions import Fraction

import pytest

from g2forms.catalog import (build_entry, candidate_module, catalog_hash,
                             compute_g2_algebra, compute_su3_in_g2,
                             generator_compatibility_report, load_catalog,
                             so3_irrep, verify_entry)
from g2forms.liealg import ScanConfig, invariant_dims
from g2forms.linalg import charpoly, commutator, identity, mat_mul

SMALL_SCAN = ScanConfig(grid=400, random=100)

KNOWN_CASES = {
    "1", "2ai", "2ci", "2cii", "2aiii", "3bii", "3biii", "3aiii",
    "4i", "4ii", "5i", "5ii", "2d", "7", "8-su4", "8-g2xR",
    "6i", "6ii", "6iii", "so3_7",
}


def test_catalog_case_ids_are_closed():
    entries = load_catalog()
    assert {e["case"] for e in entries} == KNOWN_CASES
    assert len(entries) == 23


def test_catalog_hash_is_stable_len():
    assert len(catalog_hash()) == 16


def test_unknown_case_raises():
    with pytest.raises(ValueError):
        build_entry("nonsense")


def test_g2_algebra_closure():
    g2 = compute_g2_algebra()
    assert g2.dim == 14
    g2.structure_constants()  # closure under the bracket, exact
    for a in g2.basis:
        assert all(a[i][j] == -a[j][i] for i in range(7) for j in range(7))


def test_su3_block_intersection():
    su3 = compute_su3_in_g2()
    assert len(su3) == 8
    for x in su3:
        assert all(x[i][0] == 0 and x[0][i] == 0 for i in range(7))
    # closed under the bracket inside the annihilator
    from g2forms.liealg import MatrixLieAlgebra

    alg = MatrixLieAlgebra("su3-block", su3)
    alg.structure_constants()


def test_so3_irreps():
    for dim in (5, 7):
        acts = so3_irrep(dim)
        assert len(acts) == 3 and len(acts[0]) == dim
        # representation property: [a0, a1] proportional to a2Z-direction
        br = commutator(acts[0], acts[1])
        from g2forms.liealg import MatrixLieAlgebra

        alg = MatrixLieAlgebra(f"so3-{dim}", acts)
        alg.structure_constants()


@pytest.mark.parametrize("entry", load_catalog(),
                         ids=lambda e: f"{e['case']}{tuple(e.get('params', ()))}")
def test_verify_catalog_entry(entry):
    report = verify_entry(entry, SMALL_SCAN)
    failed = [c for c in report.checks if not c[3]]
    assert not failed, failed


def test_tables_partition():
    entries = load_catalog()
    both = {e["case"] for e in entries if e["table"] == "both"}
    defonly = {e["case"] for e in entries if e["table"] == "definite-only"}
    assert {"1", "2ai", "2ci", "2cii", "2aiii", "3bii", "3biii", "3aiii",
            "4i", "4ii", "5i", "5ii"} == both
    assert {"2d", "7", "8-su4", "8-g2xR"} == defonly


def test_d3_extremes():
    entries = load_catalog()
    for e in entries:
        full = e["expected"]["d3"] == 35
        trivial = e["recipe"].get("kind") == "trivial-isotropy"
        assert full == trivial


def test_d14_generator_is_accepted_for_2ai():
    mod = build_entry("2ai")
    assert [name for name, _ in mod.generators] == ["D14"]
    dims = invariant_dims(mod)
    assert (dims.d1, dims.d2, dims.d3) == (0, 3, 3)


def test_a12_triple_matches_the_diagonal_involution():
    mod = build_entry("4i")
    name, vmat = mod.generators[0]
    assert mat_mul(vmat, vmat) == identity(7)
    cp = charpoly(vmat)
    # eigenvalues -1 with multiplicity 4, +1 with multiplicity 3
    from g2forms.catalog import _rational_spectrum

    assert _rational_spectrum(cp) == [Fraction(-1)] * 4 + [Fraction(1)] * 3


def test_sigma3_swap_is_rejected():
    mod = build_entry("4ii", (0, 0))
    name, fmat, expect = mod.pending_generators[0]
    assert expect == "rejected"
    rep = generator_compatibility_report(mod, name, fmat, SMALL_SCAN)
    assert not rep["has_indefinite"]
    assert Fraction(rep["det_on_V"]) == -1
    vmat = candidate_module(mod, name, fmat).generators[-1][1]
    from g2forms.catalog import _rational_spectrum

    assert _rational_spectrum(charpoly(vmat)) == \
        [Fraction(-1)] * 3 + [Fraction(1)] * 4


def test_d7_shadow_determinant_negative():
    mod = build_entry("8-g2xR")
    name, fmat, expect = mod.pending_generators[0]
    assert expect == "detneg"
    rep = generator_compatibility_report(mod, name, fmat, SMALL_SCAN)
    assert Fraction(rep["det_on_V"]) < 0


def test_rotation_generator_shadows_for_trivial_isotropy():
    mod = build_entry("6ii")
    name, fmat, _ = mod.pending_generators[0]
    rep = generator_compatibility_report(mod, name, fmat, SMALL_SCAN)
    assert not rep["has_definite"] and not rep["has_indefinite"]
    mod3 = build_entry("6iii")
    for name, fmat, expect in mod3.pending_generators:
        rep = generator_compatibility_report(mod3, name, fmat, SMALL_SCAN)
        assert rep["has_indefinite"]


def test_auxiliary_entry_is_not_a_table_row():
    entries = load_catalog()
    aux = [e for e in entries if e["table"] == "auxiliary"]
    assert [e["case"] for e in aux] == ["so3_7"]
    dims = invariant_dims(build_entry("so3_7"))
    assert (dims.d1, dims.d2, dims.d3) == (0, 1, 1)
