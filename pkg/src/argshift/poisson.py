"""Lie-Poisson structure on the symmetric algebra of a Lie algebra.

Coordinates x_i are dual to the chosen basis, so {x_i, x_j} is the
linear form given by the bracket table.  Everything here is exact: the
bracket of polynomials, the skew form at a point, sampled index
estimation, and verified Casimir sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .exactlin import MatQ, Scalar, rank_kernel, rat_str, invert, vec
from .liealg import AlgebraProfile, LieAlgebraData, classical_matrix_basis, make_classical, make_takiff
from .mpoly import MPoly, determinant, drop_last_var, extract_var_coeffs
from .sampling import integer_point, rng_stream


def _linear_form_from(L: LieAlgebraData, coeffs: dict[int, Fraction]) -> MPoly:
    terms = {tuple(1 if m == k else 0 for m in range(L.dim)): c for k, c in coeffs.items()}
    return MPoly(L.dim, terms)


def bracket(L: LieAlgebraData, f: MPoly, g: MPoly) -> MPoly:
    """Poisson bracket {f, g} on polynomials in the dual coordinates."""
    if f.nvars != L.dim or g.nvars != L.dim:
        raise ValueError("polynomials must live on the dual of the algebra")
    pf = [f.partial(i) for i in range(L.dim)]
    pg = [g.partial(i) for i in range(L.dim)]
    acc = MPoly.zero(L.dim)
    for i, j, coeffs in L.pairs():
        term = pf[i] * pg[j] - pf[j] * pg[i]
        if term.is_zero():
            continue
        acc = acc + _linear_form_from(L, coeffs) * term
    return acc


def frozen_bracket(L: LieAlgebraData, xi: Sequence[Scalar], f: MPoly, g: MPoly) -> MPoly:
    """Bracket with the linear coefficients frozen at the point xi."""
    if f.nvars != L.dim or g.nvars != L.dim:
        raise ValueError("polynomials must live on the dual of the algebra")
    pt = vec(xi)
    if len(pt) != L.dim:
        raise ValueError("point length mismatch")
    pf = [f.partial(i) for i in range(L.dim)]
    pg = [g.partial(i) for i in range(L.dim)]
    acc = MPoly.zero(L.dim)
    for i, j, coeffs in L.pairs():
        s = sum((c * pt[k] for k, c in coeffs.items()), Fraction(0))
        if s == 0:
            continue
        term = pf[i] * pg[j] - pf[j] * pg[i]
        if not term.is_zero():
            acc = acc + s * term
    return acc


def coordinate_bracket(L: LieAlgebraData, i: int, f: MPoly) -> MPoly:
    """{x_i, f}, the coadjoint action of basis vector i on f."""
    pf = [f.partial(j) for j in range(L.dim)]
    acc = MPoly.zero(L.dim)
    for j in range(L.dim):
        if j == i or pf[j].is_zero():
            continue
        coeffs = L.bracket_coeffs(i, j)
        if coeffs:
            acc = acc + _linear_form_from(L, coeffs) * pf[j]
    return acc


@dataclass
class KirillovForm:
    at: tuple[Fraction, ...]
    matrix: MatQ

    @property
    def rank(self) -> int:
        return rank_kernel(self.matrix)[0]


def kirillov(L: LieAlgebraData, xi: Sequence[Scalar]) -> KirillovForm:
    """The skew form K[i][j] = <xi, [b_i, b_j]> at a point of the dual."""
    pt = vec(xi)
    if len(pt) != L.dim:
        raise ValueError("point length mismatch")
    n = L.dim
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i, j, coeffs in L.pairs():
        v = sum((c * pt[k] for k, c in coeffs.items()), Fraction(0))
        if v != 0:
            rows[i][j] = v
            rows[j][i] = -v
    M = MatQ(rows)
    assert M.is_skew()
    return KirillovForm(pt, M)


def estimate_index(L: LieAlgebraData, trials: int = 24, seed: int = 0,
                   bound: int = 9) -> AlgebraProfile:
    """Index estimate dim - max sampled Kirillov rank, with witness point.

    Sampling can only overestimate the index (never reach too high a
    rank), so the estimate is an upper bound that is exact once any
    regular point is hit.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    max_rank = 0
    witness: Optional[tuple[Fraction, ...]] = None
    for t in range(trials):
        rng = rng_stream(seed, "index-sample", t)
        pt = integer_point(rng, L.dim, bound)
        r, _ = rank_kernel(kirillov(L, pt).matrix)
        if r > max_rank:
            max_rank, witness = r, pt
    return AlgebraProfile(
        dim=L.dim, ind=L.dim - max_rank, status="estimated",
        max_rank_seen=max_rank, witness=witness,
        seed=seed, trials=trials, bound=bound)


@dataclass
class CasimirCheck:
    ok: bool
    witness_index: Optional[int] = None
    witness: Optional[MPoly] = None


def is_casimir(L: LieAlgebraData, f: MPoly) -> CasimirCheck:
    """Exact test that {x_i, f} vanishes for every coordinate."""
    if f.nvars != L.dim:
        raise ValueError("polynomial must live on the dual of the algebra")
    for i in range(L.dim):
        defect = coordinate_bracket(L, i, f)
        if not defect.is_zero():
            return CasimirCheck(False, i, defect)
    return CasimirCheck(True)


class CasimirSet:
    """A verified tuple of central generators.

    Construction checks each generator exactly and witnesses algebraic
    independence by a rational point where the Jacobian has full rank.
    """

    __slots__ = ("nvars", "generators", "degrees", "independence_witness")

    def __init__(self, nvars: int, generators: Sequence[MPoly],
                 degrees: Sequence[int], independence_witness: Optional[tuple[Fraction, ...]]):
        self.nvars = nvars
        self.generators = tuple(generators)
        self.degrees = tuple(degrees)
        self.independence_witness = independence_witness

    @classmethod
    def verified(cls, L: LieAlgebraData, polys: Sequence[MPoly], seed: int = 0,
                 bound: int = 9, attempts: int = 60) -> "CasimirSet":
        gens = tuple(polys)
        for p in gens:
            if p.is_zero():
                raise ValueError("zero polynomial offered as a Casimir")
            if p.nvars != L.dim:
                raise ValueError("generator lives on the wrong space")
            chk = is_casimir(L, p)
            if not chk.ok:
                name = L.basis_names[chk.witness_index]
                raise ValueError(
                    f"not a Casimir: bracket with x_{name} gives "
                    f"{chk.witness.pretty([f'x_{m}' for m in L.basis_names])}")
        if not gens:
            return cls(L.dim, (), (), None)
        l = len(gens)
        for t in range(attempts):
            rng = rng_stream(seed, "casimir-independence", t)
            pt = integer_point(rng, L.dim, bound)
            jac = MatQ([list(p.grad_at(pt)) for p in gens])
            if rank_kernel(jac)[0] == l:
                return cls(L.dim, gens, tuple(p.degree() for p in gens), pt)
        raise ValueError("could not witness algebraic independence of the generators")

    def __len__(self) -> int:
        return len(self.generators)

    @property
    def sum_degrees(self) -> int:
        return sum(self.degrees)

    def as_dict(self) -> dict:
        return {
            "count": len(self.generators),
            "degrees": list(self.degrees),
            "sum_degrees": self.sum_degrees,
            "independence_witness": ([rat_str(x) for x in self.independence_witness]
                                     if self.independence_witness else None),
        }


def classical_casimirs(family: str, n: int, seed: int = 0) -> CasimirSet:
    """Characteristic polynomial invariants of gl(n) or sl(n).

    The dual pairing is the trace form, so the coefficient of t^(n-k)
    in det(t*I - X) is a degree-k central generator; degree 1 exists
    only for gl.  Generators are normalized monic in graded lex order.
    """
    if family not in ("gl", "sl"):
        raise ValueError("classical Casimirs implemented for gl and sl")
    L = make_classical(family, n)
    mats = classical_matrix_basis(family, n)
    d = L.dim
    gram = MatQ([[sum(a[i, j] * b[j, i] for i in range(n) for j in range(n))
                  for b in mats] for a in mats])
    ginv = invert(gram)
    dual = []
    for a in range(d):
        rows = [[sum(ginv[a, b] * mats[b][i, j] for b in range(d)) for j in range(n)]
                for i in range(n)]
        dual.append(MatQ(rows))
    # generic matrix with entries linear in x_0..x_(d-1); variable d is t
    nv = d + 1
    entries: list[list[MPoly]] = []
    for i in range(n):
        row = []
        for j in range(n):
            terms = {}
            for a in range(d):
                c = dual[a][i, j]
                if c != 0:
                    terms[tuple(1 if m == a else 0 for m in range(nv))] = c
            p = MPoly(nv, terms)
            if i == j:
                p = MPoly(nv, {tuple(0 if m < d else 1 for m in range(nv)): 1}) - p
            else:
                p = -p
            row.append(p)
        entries.append(row)
    charpoly = determinant(entries)
    coeffs = extract_var_coeffs(charpoly, d)
    gens = []
    for k in range(1, n + 1):
        c = coeffs.get(n - k)
        if c is None:
            continue
        p = drop_last_var(c)
        if p.is_zero() or p.is_constant():
            continue
        gens.append(p.monic())
    return CasimirSet.verified(L, gens, seed=seed)


def takiff_lift(base: LieAlgebraData, f: MPoly, n: int) -> list[MPoly]:
    """Lift a Casimir of q to n+1 Casimirs of the truncated current algebra.

    Substitutes the generating series (top level first) for the
    coordinates and truncates at parameter degree n.  Every returned
    polynomial is re-verified as a Casimir of make_takiff(base, n);
    verification failure raises instead of returning unchecked output.
    """
    if n < 0:
        raise ValueError("level bound must be nonnegative")
    if f.nvars != base.dim:
        raise ValueError("polynomial must live on the dual of the base algebra")
    chk = is_casimir(base, f)
    if not chk.ok:
        raise ValueError("input polynomial is not a Casimir of the base algebra")
    d = base.dim
    nv = (n + 1) * d + 1   # last slot is the formal parameter
    subs = []
    for i in range(d):
        terms = {}
        for l in range(n + 1):
            e = [0] * nv
            e[(n - l) * d + i] = 1
            e[nv - 1] = l
            terms[tuple(e)] = Fraction(1)
        subs.append(MPoly(nv, terms))
    big = f.compose(subs)
    by_power = extract_var_coeffs(big, nv - 1)
    lifts = []
    for j in range(n + 1):
        p = by_power.get(j, MPoly.zero(nv))
        lifts.append(drop_last_var(p))
    takiff = make_takiff(base, n)
    for p in lifts:
        if not is_casimir(takiff, p).ok:
            raise ArithmeticError("lift failed exact verification on the current algebra")
    return lifts
