"""Regularity certificate tests.

Hand-worked singular point for sl(3): the functional that is 3 on the
second diagonal coweight and 0 elsewhere.  Only [e13, f31] and
[e23, f32] have a component there, so the skew form has exactly two
symmetric pairs of nonzero entries and rank 4 < 6.
"""

import pytest

from fractions import Fraction

from argshift.liealg import AlgebraProfile, LieAlgebraData, make_classical, \
    make_sl2_so2_contraction, make_vinberg
from argshift.mpoly import MPoly
from argshift.poisson import CasimirSet, classical_casimirs, estimate_index
from argshift.regcert import (Codim2Certificate, FalsificationError, PlaneSpec,
                              certify_codim2, certify_regular_plane,
                              find_regular_plane, generic_kirillov, is_regular,
                              jacobian_rank, kostant_criterion, verify_bols,
                              verify_compl)
from argshift.sampling import integer_point, rng_stream

SL2 = make_classical("sl", 2)
SL2_PROFILE = estimate_index(SL2)
X_E = MPoly.variable(3, 0)
X_H = MPoly.variable(3, 1)
X_F = MPoly.variable(3, 2)
CAS = X_H * X_H + 4 * X_E * X_F
SL2_CASIMIRS = CasimirSet.verified(SL2, [CAS])


def heisenberg() -> LieAlgebraData:
    return LieAlgebraData(3, ["e", "f", "z"], {(0, 1): {2: Fraction(1)}})


def test_generic_kirillov_sl2():
    K = generic_kirillov(SL2)
    assert K[0][1] == -2 * X_E
    assert K[0][2] == X_H
    assert K[1][2] == -2 * X_F
    assert K[1][0] == 2 * X_E
    assert K[0][0].is_zero()


def test_is_regular_sl2():
    assert is_regular(SL2, SL2_PROFILE, (0, 1, 0))
    assert is_regular(SL2, SL2_PROFILE, (1, 0, 0))
    assert not is_regular(SL2, SL2_PROFILE, (0, 0, 0))


def test_profile_mismatch_rejected():
    with pytest.raises(ValueError):
        is_regular(SL2, AlgebraProfile.declared(4, 2), (0, 1, 0))
    with pytest.raises(ValueError):
        is_regular(SL2, AlgebraProfile.declared(3, 2), (0, 1, 0))


def test_jacobian_rank():
    assert jacobian_rank([CAS], (0, 1, 0)) == 1
    assert jacobian_rank([CAS], (0, 0, 0)) == 0
    assert jacobian_rank([], (0, 1, 0)) == 0


def test_kostant_agreement_sl2():
    v = kostant_criterion(SL2, SL2_CASIMIRS, SL2_PROFILE, (0, 1, 0))
    assert v.regular and v.independent
    assert v.kirillov_rank == 2 and v.jacobian_rank == 1
    v0 = kostant_criterion(SL2, SL2_CASIMIRS, SL2_PROFILE, (0, 0, 0))
    assert not v0.regular and not v0.independent


def test_kostant_premise_errors():
    empty = CasimirSet.verified(SL2, [])
    with pytest.raises(ValueError, match="needs ind"):
        kostant_criterion(SL2, empty, SL2_PROFILE, (0, 1, 0))
    squared = CasimirSet.verified(SL2, [CAS * CAS])
    with pytest.raises(ValueError, match="degree sum"):
        kostant_criterion(SL2, squared, SL2_PROFILE, (0, 1, 0))


def test_kostant_falsification_on_bogus_generators():
    # x_e^2 is not central; smuggle it past verification to show the
    # dual routes really are compared
    bogus = CasimirSet(3, (X_E * X_E,), (2,), None)
    with pytest.raises(FalsificationError) as exc:
        kostant_criterion(SL2, bogus, SL2_PROFILE, (0, 1, 0))
    bundle = exc.value.bundle
    assert bundle["kirillov_rank"] == 2
    assert bundle["jacobian_rank"] == 0


def test_sl3_singular_point_oracle():
    sl3 = make_classical("sl", 3)
    prof = estimate_index(sl3)
    assert (prof.dim, prof.ind) == (8, 2)
    pt = (0, 0, 0, 0, 3, 0, 0, 0)
    from argshift.poisson import kirillov
    assert kirillov(sl3, pt).rank == 4
    assert not is_regular(sl3, prof, pt)
    cs = classical_casimirs("sl", 3)
    v = kostant_criterion(sl3, cs, prof, pt)
    assert not v.regular and not v.independent


def test_kostant_many_points_never_disagrees():
    heis = heisenberg()
    # sl(2) is singular only at the origin; the nilpotent algebra is
    # singular on the whole plane x_z = 0, so the sweep must hit both
    # verdicts there without ever raising
    cases = [
        (SL2, SL2_CASIMIRS, SL2_PROFILE, False),
        (heis, CasimirSet.verified(
            heis, [MPoly.variable(3, 2) * MPoly.variable(3, 2)]),
         estimate_index(heis), True),
    ]
    for L, cs, prof, expect_singular in cases:
        rng = rng_stream(5, "criterion-sweep", L.dim)
        saw_singular = False
        for _ in range(200):
            pt = integer_point(rng, L.dim, 3)
            v = kostant_criterion(L, cs, prof, pt)
            saw_singular = saw_singular or not v.regular
        assert saw_singular == expect_singular
        kostant_criterion(L, cs, prof, (0,) * L.dim)


def test_certify_regular_plane_sl2():
    cert = certify_regular_plane(SL2, SL2_PROFILE, (1, 0, 0), (0, 0, 1))
    assert cert.ok
    assert cert.m == 2
    assert cert.singular_directions == ()
    assert cert.total_minors == 9


def test_certify_regular_plane_rejects_dependent():
    with pytest.raises(ValueError, match="dependent"):
        certify_regular_plane(SL2, SL2_PROFILE, (1, 0, 0), (-2, 0, 0))


def test_contraction_plane_singular_direction():
    q = make_sl2_so2_contraction()
    prof = estimate_index(q)
    # plane through the p-axis and the torus axis: the torus direction
    # (0 : 1) is singular because the form vanishes on it entirely
    cert = certify_regular_plane(q, prof, (0, 1, 0), (1, 0, 0))
    assert not cert.ok
    assert cert.gcd_degree == 2
    assert cert.singular_directions == ((Fraction(0), Fraction(1)),)
    assert cert.residual_degree == 0
    good = certify_regular_plane(q, prof, (0, 1, 0), (0, 0, 1))
    assert good.ok


def test_vinberg_plane_rational_direction():
    vin = make_vinberg((1,))
    prof = estimate_index(vin)
    assert prof.ind == 0
    cert = certify_regular_plane(vin, prof, (1, 0), (0, 1))
    assert not cert.ok
    # det of the pencil is b^2: the singular direction is (1 : 0)
    assert cert.singular_directions == ((Fraction(1), Fraction(0)),)


def test_abelian_everything_trivially_regular():
    ab = LieAlgebraData(2, ["a", "b"], {})
    prof = estimate_index(ab)
    assert is_regular(ab, prof, (1, 1))
    assert certify_regular_plane(ab, prof, (1, 0), (0, 1)).ok
    assert certify_codim2(ab, prof).ok
    cs = CasimirSet.verified(ab, [MPoly.variable(2, 0), MPoly.variable(2, 1)])
    v = kostant_criterion(ab, cs, prof, (3, 4))
    assert v.regular and v.independent


def test_certify_codim2_pass_cases():
    assert certify_codim2(SL2, SL2_PROFILE).ok
    q = make_sl2_so2_contraction()
    assert certify_codim2(q, estimate_index(q)).ok
    sl3 = make_classical("sl", 3)
    cert = certify_codim2(sl3, estimate_index(sl3))
    assert cert.ok
    assert cert.total_minors == 784


def test_certify_codim2_vinberg_witness():
    vin = make_vinberg((1,))
    cert = certify_codim2(vin, estimate_index(vin))
    assert not cert.ok
    assert cert.method == "symbolic"
    assert cert.witness_pretty == "x_v1^2"


def test_certify_codim2_heisenberg_witness():
    heis = heisenberg()
    cert = certify_codim2(heis, estimate_index(heis))
    assert not cert.ok
    assert cert.witness_pretty == "x_z^2"


def test_certify_codim2_deterministic():
    sl3 = make_classical("sl", 3)
    prof = estimate_index(sl3)
    a = certify_codim2(sl3, prof, seed=3)
    b = certify_codim2(sl3, prof, seed=3)
    assert a.as_dict() == b.as_dict()
    c = certify_codim2(sl3, prof, seed=4)
    assert c.ok == a.ok


def test_find_regular_plane():
    res = find_regular_plane(SL2, SL2_PROFILE)
    assert res.found
    assert res.certificate.ok
    assert res.spec is not None
    heis = heisenberg()
    bad = find_regular_plane(heis, estimate_index(heis), attempts=5)
    assert not bad.found
    assert bad.attempts_used == 5
    assert bad.certificate is not None and not bad.certificate.ok


def test_verify_compl_sl2():
    res = find_regular_plane(SL2, SL2_PROFILE)
    verdict = verify_compl(SL2, SL2_CASIMIRS, SL2_PROFILE, res.spec,
                           certificate=res.certificate)
    assert verdict.ok
    assert verdict.pairs_checked == 8
    assert verdict.required_rank == 2
    assert all(rank == 2 for _, _, rank in verdict.rows)
    assert verdict.star_rank == 1
    # every recorded pair is genuinely non-proportional
    for r1, r2, _ in verdict.rows:
        assert r1[0] * r2[1] - r1[1] * r2[0] != 0


def test_verify_compl_recomputes_certificate():
    spec = PlaneSpec(tuple(map(Fraction, (1, 0, 0))),
                     tuple(map(Fraction, (0, 0, 1))))
    assert verify_compl(SL2, SL2_CASIMIRS, SL2_PROFILE, spec).ok


def test_verify_compl_premises():
    spec = PlaneSpec(tuple(map(Fraction, (1, 0, 0))),
                     tuple(map(Fraction, (0, 0, 1))))
    with pytest.raises(ValueError, match="need ind"):
        verify_compl(SL2, CasimirSet.verified(SL2, []), SL2_PROFILE, spec)
    q = make_sl2_so2_contraction()
    x_p, x_r = MPoly.variable(3, 1), MPoly.variable(3, 2)
    qcs = CasimirSet.verified(q, [x_p * x_p + x_r * x_r])
    bad_spec = PlaneSpec(tuple(map(Fraction, (0, 1, 0))),
                         tuple(map(Fraction, (1, 0, 0))))
    with pytest.raises(ValueError, match="not certified regular"):
        verify_compl(q, qcs, estimate_index(q), bad_spec)


def test_verify_compl_falsifies_bogus_generators():
    # x_e^2 is not central; every family built from it stays rank <= 1
    spec = PlaneSpec(tuple(map(Fraction, (1, 0, 0))),
                     tuple(map(Fraction, (0, 0, 1))))
    bogus = CasimirSet(3, (X_E * X_E,), (2,), None)
    with pytest.raises(FalsificationError) as exc:
        verify_compl(SL2, bogus, SL2_PROFILE, spec)
    assert exc.value.bundle["required_rank"] == 2
    assert exc.value.bundle["jacobian_rank"] < 2


def test_verify_bols_pass():
    verdict = verify_bols(SL2, SL2_CASIMIRS, SL2_PROFILE, (1, 0, 0))
    assert verdict.ok
    assert verdict.codim2.ok
    q = make_sl2_so2_contraction()
    x_p, x_r = MPoly.variable(3, 1), MPoly.variable(3, 2)
    qcs = CasimirSet.verified(q, [x_p * x_p + x_r * x_r])
    assert verify_bols(q, qcs, estimate_index(q), (0, 1, 0)).ok


def test_verify_bols_failure_branches():
    vin = make_vinberg((1,))
    vd = verify_bols(vin, CasimirSet.verified(vin, []), estimate_index(vin),
                     (1, 1))
    assert not vd.ok and vd.degree_classification == "DEFICIT"
    heis = heisenberg()
    z2 = MPoly.variable(3, 2) * MPoly.variable(3, 2)
    hv = verify_bols(heis, CasimirSet.verified(heis, [z2]),
                     estimate_index(heis), (0, 0, 1))
    assert not hv.ok and hv.degree_classification == "EXACT"
    assert not hv.codim2_ok
    assert hv.codim2.witness_pretty == "x_z^2"
    sl2_bad_point = verify_bols(SL2, SL2_CASIMIRS, SL2_PROFILE, (0, 0, 0))
    assert not sl2_bad_point.ok and sl2_bad_point.codim2_ok
    assert not sl2_bad_point.xi_regular


def test_verify_bols_accepts_precomputed_certificate():
    cert = certify_codim2(SL2, SL2_PROFILE)
    verdict = verify_bols(SL2, SL2_CASIMIRS, SL2_PROFILE, (0, 1, 0),
                          codim2=cert)
    assert verdict.ok
    assert verdict.codim2 is cert
