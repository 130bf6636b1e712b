from fractions import Fraction

import pytest

from g2forms import section5
from g2forms.catalog import build_entry
from g2forms.homogeneous import (bare_complex, build_complex, cartan_3form,
                                 cartan_3form_restricted, ce_differential,
                                 coclosed_check, coclosed_stable_family_dim,
                                 complex_ranks, closed_stable_scan,
                                 exact_primitive, invariant_2form_analysis,
                                 invariant_kforms,
                                 nearly_parallel_check, nearly_parallel_rays)
from g2forms.liealg import build_algebra, invariant_3forms
from g2forms.linalg import rank
from g2forms.multilinear import KForm, pullback
from g2forms.stable_forms import PHI, star_euclidean

w = KForm.basis


@pytest.fixture(scope="module")
def su2t4():
    return build_complex(bare_complex(section5.su2_t4_compact()))


@pytest.fixture(scope="module")
def t7():
    return build_complex(bare_complex(build_algebra("t(7)")))


def test_torus_complex_is_flat(t7):
    assert all(r == 0 for _, r, _ in complex_ranks(t7))
    assert t7.dims == [1, 7, 21, 35, 35, 21, 7, 1]


def test_top_degree_differential_vanishes(su2t4):
    top = su2t4.bases[7][0]
    assert ce_differential(su2t4.module, top).is_zero()


def test_closed_one_forms(su2t4):
    m = su2t4.module
    for i in range(4, 8):
        assert ce_differential(m, w(7, i)).is_zero()
    ranks = complex_ranks(su2t4)
    assert ranks[1] == (7, 3, 4)


def test_cartan_3form_closed_and_alternating():
    for name in ("su(2)", "su(3)"):
        alg = build_algebra(name)
        om = cartan_3form(alg)
        assert not om.is_zero()
        comp = build_complex(bare_complex(alg)) if alg.dim <= 8 else None
        mod = bare_complex(alg)
        assert ce_differential(mod, om).is_zero()
    t4 = build_algebra("t(4)")
    assert cartan_3form(t4).is_zero()


def test_su2_cartan_is_volume_multiple():
    om = cartan_3form(build_algebra("su(2)"))
    assert list(om.terms) == [(1, 2, 3)]


def test_case1_cartan_restriction_nonzero():
    mod = build_entry("1")
    assert not cartan_3form_restricted(mod).is_zero()


def test_rank_chain_exact(su2t4):
    ranks = complex_ranks(su2t4)
    chain = (ranks[1][1], ranks[2][2], ranks[2][1], ranks[3][2], ranks[3][1])
    assert chain == (3, 9, 12, 17, 18)
    # rank-nullity audit in every degree
    for dim, r, ker in ranks:
        assert r + ker == dim


def test_rank_chain_published_values():
    # the published chain asserts ker d|O^2 = 5, dim d(O^3) = 14, family 19;
    # exact ranks give 9, 18, 23, and the Kunneth cross-check (oracle)
    # confirms the exact values in every degree
    report = section5.rank_chain_report()
    claims = {c["name"]: c for c in report["claims"]}
    assert claims["cohomology matches the product formula"]["pass"]
    assert claims["exact chain"]["pass"]
    assert not claims["published dim ker d|Omega^2"]["pass"]
    assert claims["published dim ker d|Omega^2"]["computed"] == 9
    assert not claims["published coclosed family dimension"]["pass"]
    assert claims["published coclosed family dimension"]["computed"] == 23


def test_identical_ranks_for_printed_bracket_convention():
    split = build_complex(bare_complex(section5.su2_t4_printed_constants()))
    compact = build_complex(bare_complex(section5.su2_t4_compact()))
    assert complex_ranks(split) == complex_ranks(compact)


def test_coclosed_family_dims(su2t4, t7):
    assert coclosed_check(su2t4.module, PHI)
    phim = PHI - 2 * w(7, 1, 2, 3)
    assert coclosed_check(su2t4.module, phim)
    assert coclosed_stable_family_dim(su2t4, PHI) == 23
    assert coclosed_stable_family_dim(su2t4, phim) == 23
    assert coclosed_stable_family_dim(t7, PHI) == 35
    with pytest.raises(ValueError):
        coclosed_stable_family_dim(su2t4, w(7, 1, 2, 3))


def test_star_duals_of_references_are_closed_exactly(su2t4):
    m = su2t4.module
    for t in (PHI, PHI - 2 * w(7, 1, 2, 3)):
        dual = star_euclidean(t)
        assert ce_differential(m, dual).is_zero()


def test_exact_primitive_of_dual(su2t4):
    target = star_euclidean(PHI) - w(7, 4, 5, 6, 7)
    prim = exact_primitive(su2t4, target)
    assert prim is not None
    assert ce_differential(su2t4.module, prim) == target
    # the corrected primitive: -(reference - w123)/2
    assert prim == Fraction(-1, 2) * (PHI - w(7, 1, 2, 3))


def test_closed_stable_scan(su2t4, t7):
    rep = closed_stable_scan(su2t4, samples=800, seed=0)
    assert rep["closed_dim"] == 17
    assert not rep["stable_found"]
    rep7 = closed_stable_scan(t7, samples=50, seed=0)
    assert rep7["closed_dim"] == 35
    assert rep7["stable_found"]


def test_exploratory_scan_regression():
    comp = build_complex(bare_complex(section5.two_su2_u1()))
    rep = closed_stable_scan(comp, samples=500, seed=0)
    # baseline recorded from the first run: this closed family does contain
    # stable members, all of them indefinite on this sample
    assert rep["closed_dim"] == 17
    assert rep["stable_found"]
    assert rep["counts"]["indefinite"] > 0
    assert rep["counts"]["definite"] == 0


def test_nearly_parallel_d3_one_cases():
    for case in ("2d", "7"):
        mod = build_entry(case)
        ray = invariant_3forms(mod)[0]
        res = nearly_parallel_check(mod, ray)
        assert res.is_nearly_parallel
        assert abs(res.lam) > 1e-9
        assert res.residual <= 1e-9
        dim2, closed = invariant_2form_analysis(mod)
        assert dim2 == 0


def test_nearly_parallel_torus_is_torsion_free():
    mod = bare_complex(build_algebra("t(7)"))
    res = nearly_parallel_check(mod, PHI)
    assert res.torsion_free and not res.is_nearly_parallel
    with pytest.raises(ValueError):
        nearly_parallel_check(mod, w(7, 1, 2, 3))


def test_case1_unique_nearly_parallel_ray():
    rays = nearly_parallel_rays(build_entry("1"), grid=240)
    assert len(rays) == 1
    assert abs(rays[0]["lambda"]) > 1e-9
    assert rays[0]["residual"] <= 1e-9
    # the ray is rational: proportional to (-5, 4) in the invariant basis
    a, b = rays[0]["coeffs"]
    assert abs(a / b + 1.25) < 1e-8


def test_invariant_2form_analysis_cases():
    assert invariant_2form_analysis(build_entry("1")) == (0, True)
    dim, closed = invariant_2form_analysis(build_entry("3aiii"))
    assert (dim, closed) == (1, True)
    mod7 = bare_complex(build_algebra("t(7)"))
    assert invariant_2form_analysis(mod7) == (21, True)


def test_d_image_of_the_family_is_two_dimensional():
    # the published uniqueness argument asserts a 1-dimensional image; the
    # exact value is 2 on every d3 = 2 entry (the bi-invariant 3-form does
    # not restrict to a closed form of the quotient complex)
    mod = build_entry("1")
    basis = invariant_3forms(mod)
    assert rank([ce_differential(mod, f).coefficient_vector()
                 for f in basis]) == 2
    om = cartan_3form_restricted(mod)
    assert not ce_differential(mod, om).is_zero()


def test_ce_differential_rejects_noninvariant_input():
    mod = build_entry("7")
    with pytest.raises(ValueError):
        ce_differential(mod, w(7, 1, 2, 3))


def test_ce_differential_commutes_with_generator_pullback():
    # h-only module of the 2ai pair; the component generator acts on the
    # h-invariant complex and commutes with d
    from g2forms.catalog import _case_2ai
    from g2forms.liealg import reductive_complement, generator_v_matrix

    g, h, gens = _case_2ai()
    mod = reductive_complement(g, h)
    hmat = [g.coords(x) for x in h]
    vvecs = mod.V_coords
    fmat = generator_v_matrix(g, hmat, vvecs, gens[0][1])
    for f in invariant_kforms(mod, 2):
        lhs = ce_differential(mod, pullback(fmat, f))
        rhs = pullback(fmat, ce_differential(mod, f))
        assert lhs == rhs


def test_d_squared_zero_on_case_complexes():
    for case in ("1", "3aiii", "2d"):
        build_complex(build_entry(case))  # asserts d^2 = 0 internally
