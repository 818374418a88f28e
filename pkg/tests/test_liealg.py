"""Constructor and validation tests.

Bracket oracles are classical tables checked by hand:
sl(2) in basis (e, h, f): [h,e] = 2e, [h,f] = -2f, [e,f] = h.
so(3) in basis r12, r13, r23: [r12, r13] = -r23.
"""

from fractions import Fraction

import pytest

from argshift.exactlin import MatQ
from argshift.liealg import (
    AlgebraProfile,
    LieAlgebraData,
    algebra_from_matrices,
    make_centralizer_sl,
    make_classical,
    make_semidirect,
    make_sl2_so2_contraction,
    make_takiff,
    make_vinberg,
    make_z2_contraction,
    semidirect_index_report,
    validate,
    validate_table,
)

SL2_ENTRIES = [(0, 1, {0: -2}), (0, 2, {1: 1}), (1, 2, {2: -2})]


def sl2_standard_rep():
    return [MatQ([[0, 1], [0, 0]]), MatQ([[1, 0], [0, -1]]), MatQ([[0, 0], [1, 0]])]


def block_diag(mats):
    n = sum(m.rows for m in mats)
    rows = [[Fraction(0)] * n for _ in range(n)]
    off = 0
    for m in mats:
        for i in range(m.rows):
            for j in range(m.cols):
                rows[off + i][off + j] = m[i, j]
        off += m.rows
    return MatQ(rows)


def test_sl2_table_oracle():
    L = make_classical("sl", 2)
    assert L.basis_names == ("e", "h", "f")
    assert L.bracket_coeffs(0, 1) == {0: Fraction(-2)}   # [e,h] = -2e
    assert L.bracket_coeffs(0, 2) == {1: Fraction(1)}    # [e,f] = h
    assert L.bracket_coeffs(1, 2) == {2: Fraction(-2)}   # [h,f] = -2f
    assert L.bracket_coeffs(1, 0) == {0: Fraction(2)}    # antisymmetry
    assert validate(L).ok


def test_classical_dimensions():
    assert make_classical("gl", 2).dim == 4
    assert make_classical("sl", 3).dim == 8
    assert make_classical("so", 4).dim == 6
    with pytest.raises(ValueError):
        make_classical("sp", 4)
    with pytest.raises(ValueError):
        make_classical("so", 2)


def test_so3_bracket_oracle():
    L = make_classical("so", 3)
    assert L.bracket_coeffs(0, 1) == {2: Fraction(-1)}
    assert validate(L).ok


def test_validate_reports_jacobi_violation():
    # tamper [e,f] = e instead of h; Jacobi defect on (e,h,f) is -2e
    bad = [(0, 1, {0: -2}), (0, 2, {0: 1}), (1, 2, {2: -2})]
    report = validate_table(3, bad, ["e", "h", "f"])
    assert not report.ok and report.kind == "jacobi"
    assert report.where == (0, 1, 2)
    assert "e" in report.detail


def test_validate_reports_antisymmetry_and_diagonal():
    report = validate_table(2, [(0, 1, {0: 1}), (1, 0, {0: 1})])
    assert not report.ok and report.kind == "antisymmetry"
    report = validate_table(2, [(0, 0, {1: 1})])
    assert not report.ok and report.kind == "diagonal"


def test_bracket_vectors():
    L = make_classical("sl", 2)
    # [e+f, h] = -2e + 2f
    assert L.bracket_vectors([1, 0, 1], [0, 1, 0]) == (-2, 0, 2)


def test_algebra_from_matrices_errors():
    e12 = MatQ([[0, 1], [0, 0]])
    e21 = MatQ([[0, 0], [1, 0]])
    with pytest.raises(ValueError, match="not closed"):
        algebra_from_matrices(["a", "b"], [e12, e21])
    with pytest.raises(ValueError, match="dependent"):
        algebra_from_matrices(["a", "b"], [e12, e12.scale(2)])


def test_semidirect_standard_rep():
    g = make_classical("sl", 2)
    L = make_semidirect(g, sl2_standard_rep())
    assert L.dim == 5
    assert L.basis_names[3:] == ("v1", "v2")
    assert L.bracket_coeffs(1, 3) == {3: Fraction(1)}    # [h, v1] = v1
    assert L.bracket_coeffs(0, 4) == {3: Fraction(1)}    # [e, v2] = v1
    assert validate(L).ok


def test_semidirect_rejects_non_representation():
    g = make_classical("sl", 2)
    e, h, f = sl2_standard_rep()
    with pytest.raises(ValueError, match="not a representation"):
        make_semidirect(g, [f, h, e])


def test_vinberg():
    L = make_vinberg([1, 2])
    assert L.dim == 3
    assert L.bracket_coeffs(0, 2) == {2: Fraction(2)}
    assert validate(L).ok
    with pytest.raises(ValueError):
        make_vinberg([1, 0])
    with pytest.raises(ValueError):
        make_vinberg([])


def test_takiff_levels():
    q = make_classical("sl", 2)
    L = make_takiff(q, 1)
    assert L.dim == 6
    assert L.basis_names == ("e", "h", "f", "e.t1", "h.t1", "f.t1")
    # [f, e.t1] = -h.t1 ; level overflow kills [e.t1, f.t1]
    assert L.bracket_coeffs(2, 3) == {4: Fraction(-1)}
    assert L.bracket_coeffs(3, 5) == {}
    assert validate(L).ok
    assert make_takiff(q, 0) == q


def test_takiff_abelian_base():
    q = LieAlgebraData.abelian(2)
    L = make_takiff(q, 3)
    assert L.dim == 8
    assert list(L.pairs()) == []


def test_z2_contraction_worked_example():
    L = make_sl2_so2_contraction()
    assert L.basis_names == ("t", "p", "r")
    assert L.bracket_coeffs(0, 1) == {2: Fraction(-2)}
    assert L.bracket_coeffs(0, 2) == {1: Fraction(2)}
    assert L.bracket_coeffs(1, 2) == {}
    assert validate(L).ok


def test_z2_contraction_grading_checked():
    g = make_classical("sl", 2)
    with pytest.raises(ValueError, match="not graded"):
        make_z2_contraction(g, [1, 1, 1])
    # all-even grading contracts nothing
    assert make_z2_contraction(g, [0, 0, 0]) == g


def test_centralizer_dimensions():
    # one Jordan block: centralizer in sl(3) is span{e, e^2}, abelian
    L = make_centralizer_sl(3, [3])
    assert L.dim == 2 and list(L.pairs()) == []
    assert make_centralizer_sl(3, [2, 1]).dim == 4
    assert make_centralizer_sl(3, [1, 1, 1]).dim == 8
    with pytest.raises(ValueError):
        make_centralizer_sl(3, [2, 2])


def test_centralizer_tables_validate():
    for partition in ([3], [2, 1]):
        assert validate(make_centralizer_sl(3, partition)).ok


def test_profile_magic_number():
    assert AlgebraProfile.declared(3, 1).b_q == 2
    with pytest.raises(ArithmeticError):
        _ = AlgebraProfile.declared(3, 2).b_q


def test_semidirect_index_report_rais_case():
    g = make_classical("sl", 2)
    e, h, f = sl2_standard_rep()
    rho = [block_diag([m] * 4) for m in (e, h, f)]
    report = semidirect_index_report(g, rho, trials=20, seed=0)
    assert report["formula_applies"]
    assert report["predicted_ind"] == 8 - 3 == 5


def test_semidirect_index_report_refuses_small_module():
    g = make_classical("sl", 2)
    report = semidirect_index_report(g, sl2_standard_rep(), trials=20, seed=0)
    assert not report["formula_applies"]
    assert report["predicted_ind"] is None
    assert "not established" in report["note"]
