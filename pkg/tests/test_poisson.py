"""Poisson layer tests with hand-checked oracles.

sl(2) in basis order (e, h, f) with [e, f] = h, [h, e] = 2e,
[h, f] = -2f is the main worked example; its quadratic Casimir is
C = x_h^2 + 4 x_e x_f:
    {x_e, C} = 2 x_h {x_e, x_h} + 4 x_e {x_e, x_f}
             = 2 x_h (-2 x_e) + 4 x_e x_h = 0,
and symmetrically for the other coordinates.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from argshift.exactlin import MatQ
from argshift.liealg import make_classical, make_takiff, make_vinberg
from argshift.mpoly import MPoly
from argshift.poisson import (CasimirSet, bracket, classical_casimirs,
                              coordinate_bracket, estimate_index,
                              frozen_bracket, is_casimir, kirillov,
                              takiff_lift)
from argshift.sampling import integer_point, rng_stream

SL2 = make_classical("sl", 2)
X_E = MPoly.variable(3, 0)
X_H = MPoly.variable(3, 1)
X_F = MPoly.variable(3, 2)
CAS = X_H * X_H + 4 * X_E * X_F


def abelian(n: int):
    from argshift.liealg import LieAlgebraData
    return LieAlgebraData(n, [f"a{i}" for i in range(n)], {})


def random_poly(rng, nvars: int, max_deg: int = 2, nterms: int = 3) -> MPoly:
    terms = {}
    for _ in range(nterms):
        exps = [0] * nvars
        for _ in range(rng.randint(0, max_deg)):
            exps[rng.randrange(nvars)] += 1
        terms[tuple(exps)] = Fraction(rng.randint(-4, 4))
    return MPoly(nvars, terms)


def test_bracket_coordinates_oracle():
    # {x_e, x_f} = x_h, {x_h, x_e} = 2 x_e, {x_h, x_f} = -2 x_f
    assert bracket(SL2, X_E, X_F) == X_H
    assert bracket(SL2, X_H, X_E) == 2 * X_E
    assert bracket(SL2, X_H, X_F) == -2 * X_F
    assert bracket(SL2, X_F, X_E) == -X_H


def test_bracket_casimir_annihilates():
    for v in (X_E, X_H, X_F, X_E * X_H + X_F):
        assert bracket(SL2, CAS, v).is_zero()
    chk = is_casimir(SL2, CAS)
    assert chk.ok and chk.witness is None


def test_non_casimir_witness():
    chk = is_casimir(SL2, X_E)
    # first failing coordinate is x_h: {x_h, x_e} = 2 x_e
    assert not chk.ok
    assert chk.witness_index == 1
    assert chk.witness == 2 * X_E


def test_coordinate_bracket_matches_bracket():
    f = X_E * X_F + X_H * X_H
    for i, v in enumerate((X_E, X_H, X_F)):
        assert coordinate_bracket(SL2, i, f) == bracket(SL2, v, f)


def test_frozen_bracket_constants():
    # at xi = (0, 1, 0): {x_e, x_f}_xi = <xi, h> = 1
    one = MPoly.const(3, 1)
    assert frozen_bracket(SL2, (0, 1, 0), X_E, X_F) == one
    assert frozen_bracket(SL2, (0, 1, 0), X_F, X_E) == -one
    assert frozen_bracket(SL2, (0, 0, 0), X_E, X_F).is_zero()


def test_kirillov_matrix_oracle():
    # K[e][h] = <xi, [e, h]> = -2 xi_e, K[e][f] = xi_h, K[h][f] = -2 xi_f
    K = kirillov(SL2, (0, 1, 0))
    assert K.matrix == MatQ([[0, 0, 1], [0, 0, 0], [-1, 0, 0]])
    assert K.rank == 2
    K2 = kirillov(SL2, (1, 2, 3))
    assert K2.matrix == MatQ([[0, -2, 2], [2, 0, -6], [-2, 6, 0]])


def test_bracket_evaluation_matches_kirillov():
    rng = rng_stream(7, "poisson-cross")
    for _ in range(15):
        f = random_poly(rng, 3)
        g = random_poly(rng, 3)
        pt = integer_point(rng, 3, 5)
        K = kirillov(SL2, pt).matrix
        gf = f.grad_at(pt)
        gg = g.grad_at(pt)
        expect = sum(gf[i] * K[i, j] * gg[j] for i in range(3) for j in range(3))
        assert bracket(SL2, f, g).evaluate(pt) == expect


def test_jacobi_and_leibniz_properties():
    so3 = make_classical("so", 3)
    for L in (SL2, so3):
        rng = rng_stream(11, "poisson-jacobi", L.dim)
        for _ in range(8):
            f = random_poly(rng, L.dim)
            g = random_poly(rng, L.dim)
            h = random_poly(rng, L.dim)
            cyc = (bracket(L, f, bracket(L, g, h))
                   + bracket(L, g, bracket(L, h, f))
                   + bracket(L, h, bracket(L, f, g)))
            assert cyc.is_zero()
            assert bracket(L, f, g * h) == bracket(L, f, g) * h + g * bracket(L, f, h)
            assert bracket(L, f, g) == -bracket(L, g, f)


def test_frozen_bracket_is_bracket_at_frozen_point():
    # freezing the linear coefficients: both brackets agree after
    # replacing each structure form <x, [b_i, b_j]> by its value at xi
    rng = rng_stream(3, "poisson-frozen")
    for _ in range(10):
        f = random_poly(rng, 3)
        g = random_poly(rng, 3)
        xi = integer_point(rng, 3, 5)
        pt = integer_point(rng, 3, 5)
        K = kirillov(SL2, xi).matrix
        gf = f.grad_at(pt)
        gg = g.grad_at(pt)
        expect = sum(gf[i] * K[i, j] * gg[j] for i in range(3) for j in range(3))
        assert frozen_bracket(SL2, xi, f, g).evaluate(pt) == expect


def test_estimate_index_oracles():
    assert estimate_index(SL2).ind == 1
    assert estimate_index(abelian(3)).ind == 3
    assert estimate_index(make_vinberg((1, 2))).ind == 1
    assert estimate_index(make_takiff(SL2, 1)).ind == 2
    prof = estimate_index(SL2, trials=5, seed=2)
    assert prof.status == "estimated"
    assert prof.max_rank_seen == 2
    assert prof.witness is not None
    assert prof.b_q == 2
    with pytest.raises(ValueError):
        estimate_index(SL2, trials=0)


def test_casimir_set_verified():
    cs = CasimirSet.verified(SL2, [CAS])
    assert cs.degrees == (2,)
    assert cs.sum_degrees == 2
    assert cs.independence_witness is not None
    with pytest.raises(ValueError, match="not a Casimir"):
        CasimirSet.verified(SL2, [X_E])
    with pytest.raises(ValueError, match="zero polynomial"):
        CasimirSet.verified(SL2, [MPoly.zero(3)])
    empty = CasimirSet.verified(SL2, [])
    assert len(empty) == 0 and empty.independence_witness is None


def test_classical_casimirs_sl2():
    cs = classical_casimirs("sl", 2)
    assert len(cs) == 1
    # monic in graded lex order: x_e x_f + x_h^2 / 4
    assert 4 * cs.generators[0] == CAS


def test_classical_casimirs_gl2():
    cs = classical_casimirs("gl", 2)
    assert cs.degrees == (1, 2)
    # trace form: the linear generator is x_e11 + x_e22
    lin = cs.generators[0]
    assert lin == MPoly.variable(4, 0) + MPoly.variable(4, 3)


def test_classical_casimirs_sl3():
    cs = classical_casimirs("sl", 3)
    assert cs.degrees == (2, 3)
    assert cs.sum_degrees == 5
    assert cs.independence_witness is not None


def test_classical_casimirs_unsupported():
    with pytest.raises(ValueError):
        classical_casimirs("so", 3)


def test_takiff_lift_sl2_level1():
    lifts = takiff_lift(SL2, CAS, 1)
    assert len(lifts) == 2
    # order (e, h, f, e.t1, h.t1, f.t1); top-level copy comes first in s
    z_e, z_h, z_f = (MPoly.variable(6, i) for i in (3, 4, 5))
    y_e, y_h, y_f = (MPoly.variable(6, i) for i in (0, 1, 2))
    assert lifts[0] == z_h * z_h + 4 * z_e * z_f
    assert lifts[1] == 2 * z_h * y_h + 4 * z_e * y_f + 4 * z_f * y_e
    cs = CasimirSet.verified(make_takiff(SL2, 1), lifts)
    assert cs.degrees == (2, 2)


def test_takiff_lift_rejects_non_casimir():
    with pytest.raises(ValueError):
        takiff_lift(SL2, X_E, 1)
    with pytest.raises(ValueError):
        takiff_lift(SL2, CAS, -1)


def test_takiff_lift_level0_is_identity():
    lifts = takiff_lift(SL2, CAS, 0)
    assert lifts == [CAS]


@settings(max_examples=30, deadline=None)
@given(st.integers(-6, 6), st.integers(-6, 6), st.integers(-6, 6),
       st.integers(-6, 6), st.integers(-6, 6), st.integers(-6, 6))
def test_kirillov_linearity(a, b, c, d, e, f):
    K1 = kirillov(SL2, (a, b, c)).matrix
    K2 = kirillov(SL2, (d, e, f)).matrix
    Ksum = kirillov(SL2, (a + d, b + e, c + f)).matrix
    assert K1 + K2 == Ksum
    assert Ksum.is_skew()
