"""Round-trip and format tests for the JSON encodings."""

from fractions import Fraction

import pytest

from argshift.exactlin import MatQ, SubspaceQ
from argshift.jsonio import (algebra_from_json, algebra_to_json,
                             casimirs_from_json, casimirs_to_json, dumps,
                             family_from_json, family_to_json,
                             matrix_from_json, matrix_to_json, poly_from_json,
                             poly_to_json, subspace_from_json,
                             subspace_to_json, vector_from_json,
                             vector_to_json)
from argshift.liealg import make_classical, make_vinberg
from argshift.mfshift import build_family
from argshift.mpoly import MPoly
from argshift.poisson import classical_casimirs

SL2 = make_classical("sl", 2)
X = [MPoly.variable(3, i) for i in range(3)]
CAS = X[1] * X[1] + 4 * X[0] * X[2]


def test_vector_strings():
    v = (Fraction(1, 2), Fraction(-3), Fraction(0))
    assert vector_to_json(v) == ["1/2", "-3", "0"]
    assert vector_from_json(["1/2", "-3", "0"]) == v


def test_unicode_minus_tolerated():
    # hand-written tables sometimes carry U+2212
    assert vector_from_json(["−2", "−1/3"]) == (Fraction(-2), Fraction(-1, 3))


def test_matrix_round_trip():
    M = MatQ([[0, Fraction(1, 3)], [Fraction(-1, 3), 0]])
    assert matrix_from_json(matrix_to_json(M)) == M
    with pytest.raises(ValueError):
        matrix_from_json([])


def test_poly_round_trip_and_shape():
    d = poly_to_json(CAS)
    assert d["nvars"] == 3
    assert {"coeff": "4", "exps": [1, 0, 1]} in d["terms"]
    assert poly_from_json(d) == CAS
    # duplicate exponent rows accumulate
    twice = {"nvars": 1, "terms": [{"coeff": "1", "exps": [2]},
                                   {"coeff": "1/2", "exps": [2]}]}
    assert poly_from_json(twice) == MPoly(1, {(2,): Fraction(3, 2)})
    with pytest.raises(ValueError):
        poly_from_json({"nvars": 2, "terms": [{"coeff": "1", "exps": [1]}]})
    # a missing terms key is a malformed file, not the zero polynomial
    with pytest.raises(ValueError):
        poly_from_json({"nvars": 3, "generators": []})
    assert poly_from_json({"nvars": 3, "terms": []}).is_zero()


def test_algebra_round_trip():
    d = algebra_to_json(SL2)
    assert d["dim"] == 3
    assert d["basis"] == ["e", "h", "f"]
    back = algebra_from_json(d)
    assert back == SL2
    assert back.meta == SL2.meta


def test_algebra_bracket_entry_shape():
    d = algebra_to_json(SL2)
    eh = [b for b in d["brackets"] if (b["i"], b["j"]) == (0, 1)]
    assert eh == [{"i": 0, "j": 1, "coeffs": {"0": "-2"}}]


def test_algebra_json_rejects_bad_table():
    bad = {"dim": 2, "basis": ["a", "b"],
           "brackets": [{"i": 0, "j": 0, "coeffs": {"1": "1"}}]}
    with pytest.raises(ValueError):
        algebra_from_json(bad)


def test_vinberg_meta_passthrough():
    V = make_vinberg([1, 2])
    back = algebra_from_json(algebra_to_json(V))
    assert back == V
    assert back.meta == V.meta


def test_casimirs_round_trip():
    cs = classical_casimirs("sl", 2)
    back = casimirs_from_json(casimirs_to_json(cs))
    assert back.generators == cs.generators
    assert back.degrees == cs.degrees
    assert back.independence_witness == cs.independence_witness


def test_subspace_round_trip():
    S = SubspaceQ.span([(1, 2, 3), (0, 1, 1)], 3)
    assert subspace_from_json(subspace_to_json(S)) == S


def test_family_round_trip():
    fam = build_family(SL2, [CAS], (1, 0, 0))
    d = family_to_json(fam)
    back = family_from_json(d, SL2)
    assert back.xi == fam.xi
    assert back.polys == fam.polys
    assert [m.power for m in back.members] == [m.power for m in fam.members]


def test_dumps_canonical():
    a = dumps({"b": 1, "a": [Fraction is None]})
    assert a.endswith("\n")
    assert dumps({"x": 1, "y": 2}) == dumps({"y": 2, "x": 1})
