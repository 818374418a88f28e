"""Structure analysis of pencils of skew-symmetric bilinear forms.

For a pencil aA + bB the generic rank m is reached outside finitely
many directions.  The sum L of the kernels of regular members is
isotropic for every member, all members map it onto one common image
W, and the annihilator of W gives L with the degenerate directions'
contribution attached.  When the two coincide the pencil has no
singular directions at the generic rank ("Kronecker" type) and L is
maximal isotropic of dimension dim V - m/2; otherwise the recursion
operator on the quotient carries the singular directions as its
eigenvalues, which are cross-checked against the ranks of the
corresponding members.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .exactlin import (MatQ, Scalar, SubspaceQ, annihilator, image,
                       rank_kernel, rat_str, solve, vec)
from .liealg import LieAlgebraData
from .mpoly import MPoly, determinant, extract_var_coeffs, poly_gcd, rational_roots
from .poisson import kirillov
from .regcert import FalsificationError

Ratio = tuple[Fraction, Fraction]


class SkewPencil:
    """A pair of skew forms on the same space, spanning the pencil."""

    __slots__ = ("A", "B")

    def __init__(self, A: MatQ, B: MatQ):
        if A.rows != A.cols or B.rows != B.cols or A.rows != B.rows:
            raise ValueError("pencil needs two square matrices of equal size")
        if not (A.is_skew() and B.is_skew()):
            raise ValueError("pencil matrices must be skew-symmetric")
        self.A = A
        self.B = B

    @classmethod
    def from_matrices(cls, a_rows: Sequence[Sequence[Scalar]],
                      b_rows: Sequence[Sequence[Scalar]]) -> "SkewPencil":
        return cls(MatQ(a_rows), MatQ(b_rows))

    @classmethod
    def from_kirillov(cls, L: LieAlgebraData, xi: Sequence[Scalar],
                      eta: Sequence[Scalar]) -> "SkewPencil":
        return cls(kirillov(L, xi).matrix, kirillov(L, eta).matrix)

    @property
    def dim(self) -> int:
        return self.A.rows

    def member(self, a: Scalar, b: Scalar) -> MatQ:
        return self.A.scale(a) + self.B.scale(b)


def base_ratios(dim: int) -> list[Ratio]:
    """dim + 2 pairwise distinct directions in the pencil plane.

    Every nonzero minor of the pencil is homogeneous of degree at most
    dim, so it cannot vanish at all of these; the maximum sampled rank
    is therefore the generic rank.
    """
    out = [(Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))]
    out += [(Fraction(1), Fraction(k)) for k in range(1, dim + 1)]
    return out


@dataclass
class PencilRankProfile:
    m: int
    ranks: tuple[tuple[Ratio, int], ...]

    def regular_ratios(self) -> list[Ratio]:
        return [r for r, rank in self.ranks if rank == self.m]

    def as_dict(self) -> dict:
        return {"m": self.m,
                "ranks": [[[rat_str(a), rat_str(b)], rank]
                          for (a, b), rank in self.ranks]}


def rank_profile(pencil: SkewPencil) -> PencilRankProfile:
    """Generic rank and the per-direction ranks over the base ratios."""
    ranks = []
    for a, b in base_ratios(pencil.dim):
        r, _ = rank_kernel(pencil.member(a, b))
        ranks.append(((a, b), r))
    m = max(r for _, r in ranks)
    return PencilRankProfile(m, tuple(ranks))


def compute_L(pencil: SkewPencil, m: Optional[int] = None) -> SubspaceQ:
    """Sum of the kernels of regular members.

    Directions are walked in a fixed order; the sum is declared stable
    after dim V consecutive regular members bring no growth.  The walk
    extends past the base ratios up to a hard cap, at which point a
    non-stabilized sum is an error rather than a silent answer.
    """
    n = pencil.dim
    if m is None:
        m = rank_profile(pencil).m
    cap = 4 * n + 10
    ratios = base_ratios(n)
    ratios += [(Fraction(1), Fraction(k)) for k in range(n + 1, cap)]
    L = SubspaceQ.zero(n)
    consecutive = 0
    for a, b in ratios:
        r, ker = rank_kernel(pencil.member(a, b))
        if r != m:
            continue
        grown = (L + ker)
        consecutive = consecutive + 1 if grown.dim == L.dim else 0
        L = grown
        if consecutive >= n:
            return L
    raise ArithmeticError("kernel sum did not stabilize within the direction cap")


def check_image_equality(pencil: SkewPencil, L: SubspaceQ) -> SubspaceQ:
    """The common image of L under every nonzero member, certified.

    A(L) = B(L) pins the candidate W and already forces every member
    to map L into W.  No member may map L onto less: the minors of
    order dim W of the bivariate matrix [aA + bB] restricted to L are
    homogeneous, and a constant gcd certifies full rank in every
    direction.  Violations contradict the pencil structure theory, so
    they raise FalsificationError.
    """
    n = pencil.dim
    WA = image(pencil.A, L)
    WB = image(pencil.B, L)
    if WA != WB:
        raise FalsificationError(
            "kernel-sum images under the two pencil generators differ",
            {"dim": n, "L_dim": L.dim, "A_image_dim": WA.dim,
             "B_image_dim": WB.dim})
    W = WA
    w = W.dim
    if w == 0 or L.dim == 0:
        return W
    cols = []
    for v in L.basis:
        av = pencil.A.matvec(v)
        bv = pencil.B.matvec(v)
        cols.append([MPoly(2, {k: c for k, c in
                               (((1, 0), av[i]), ((0, 1), bv[i])) if c != 0})
                     for i in range(n)])
    # entries[i][j] = i-th coordinate of (aA + bB) applied to j-th basis vector
    entries = [[cols[j][i] for j in range(L.dim)] for i in range(n)]
    from itertools import combinations
    minors = []
    for rows_idx in combinations(range(n), w):
        for cols_idx in combinations(range(L.dim), w):
            sub = [[entries[i][j] for j in cols_idx] for i in rows_idx]
            d = determinant(sub)
            if not d.is_zero():
                minors.append(d)
                if len(minors) > 1 and poly_gcd(minors).is_constant():
                    return W
    g = poly_gcd(minors) if minors else None
    if g is None or not g.is_constant():
        raise FalsificationError(
            "some pencil member maps the kernel sum onto a smaller image",
            {"dim": n, "L_dim": L.dim, "W_dim": w,
             "minor_gcd": g.pretty(["a", "b"]) if g is not None else None})
    return W


def compute_Ltilde(pencil: SkewPencil, L: SubspaceQ,
                   W: Optional[SubspaceQ] = None) -> SubspaceQ:
    """Annihilator of the common image: the member-orthogonal of L."""
    if W is None:
        W = check_image_equality(pencil, L)
    return annihilator(W)


@dataclass
class PhiOperator:
    matrix: MatQ
    quotient_basis: tuple[tuple[Fraction, ...], ...]
    A_ratio: Ratio
    B_ratio: Ratio

    @property
    def dim(self) -> int:
        return self.matrix.rows


def _coords_mod(v: Sequence[Fraction], comp: Sequence[tuple[Fraction, ...]],
                L: SubspaceQ, n: int) -> Optional[list[Fraction]]:
    cols = [list(c) for c in comp] + [list(b) for b in L.basis]
    if not cols:
        return [] if all(x == 0 for x in v) else None
    M = MatQ([[cols[j][i] for j in range(len(cols))] for i in range(n)])
    sol = solve(M, v)
    if sol is None:
        return None
    return list(sol[:len(comp)])


def phi_operator(pencil: SkewPencil, L: SubspaceQ, Ltilde: SubspaceQ,
                 A_ratio: Ratio, B_ratio: Ratio, m: Optional[int] = None) -> PhiOperator:
    """Recursion operator on Ltilde / L solving A w = B v.

    Requires the A-direction to be regular, so its kernel sits inside
    L and the class of w does not depend on the particular solution;
    that independence is still re-verified by solving with a shifted
    particular solution.
    """
    n = pencil.dim
    if m is None:
        m = rank_profile(pencil).m
    Am = pencil.member(*A_ratio)
    Bm = pencil.member(*B_ratio)
    r, kerA = rank_kernel(Am)
    if r != m:
        raise ValueError("the A-direction of the recursion operator must be regular")
    if not kerA.is_subspace_of(L):
        raise FalsificationError(
            "kernel of a regular member escapes the kernel sum",
            {"dim": n, "member_rank": r, "kernel_dim": kerA.dim, "L_dim": L.dim})
    comp: list[tuple[Fraction, ...]] = []
    cur = L
    for v in Ltilde.basis:
        if not cur.contains(v):
            comp.append(v)
            cur = cur + SubspaceQ.span([v], n)
    columns: list[list[Fraction]] = []
    for v in comp:
        rhs = Bm.matvec(v)
        w = solve(Am, rhs)
        if w is None:
            raise FalsificationError(
                "A w = B v has no solution for v in the annihilator space",
                {"dim": n, "v": [rat_str(x) for x in v]})
        if not Ltilde.contains(w):
            raise FalsificationError(
                "recursion image escapes the annihilator space",
                {"dim": n, "v": [rat_str(x) for x in v],
                 "w": [rat_str(x) for x in w]})
        coords = _coords_mod(w, comp, L, n)
        if coords is None:
            raise FalsificationError(
                "recursion image not expressible in the quotient basis",
                {"dim": n, "w": [rat_str(x) for x in w]})
        if kerA.dim > 0:
            # independence from the particular solution, checked rather
            # than assumed: shift by a kernel vector and re-expand
            shifted = tuple(x + k for x, k in zip(w, kerA.basis[0]))
            again = _coords_mod(shifted, comp, L, n)
            if again != coords:
                raise FalsificationError(
                    "recursion operator depends on the particular solution",
                    {"dim": n, "kernel_shift": [rat_str(x) for x in kerA.basis[0]]})
        columns.append(coords)
    q = len(comp)
    mat = MatQ([[columns[j][i] for j in range(q)] for i in range(q)]) \
        if q else MatQ.zeros(0, 0)
    return PhiOperator(mat, tuple(comp), A_ratio, B_ratio)


def char_poly(M: MatQ) -> list[Fraction]:
    """Coefficients of det(tI - M), ascending in t."""
    q = M.rows
    if q == 0:
        return [Fraction(1)]
    entries = []
    for i in range(q):
        row = []
        for j in range(q):
            terms = {}
            if i == j:
                terms[(1,)] = Fraction(1)
            if M[i, j] != 0:
                terms[(0,)] = terms.get((0,), Fraction(0)) - M[i, j]
            row.append(MPoly(1, {e: c for e, c in terms.items() if c != 0}))
        entries.append(row)
    p = determinant(entries)
    by_power = extract_var_coeffs(p, 0)
    return [by_power[k].constant_value() if k in by_power else Fraction(0)
            for k in range(q + 1)]


def rational_eigenvalues(M: MatQ) -> dict[Fraction, int]:
    """Rational eigenvalues with algebraic multiplicities, exact."""
    return rational_roots(char_poly(M))


@dataclass
class PencilAnalysis:
    dim: int
    m: int
    kind: str                    # "kronecker" | "jordan-mixed"
    L_dim: int
    Ltilde_dim: int
    image_dim: int
    isotropic: bool
    ranks: tuple[tuple[Ratio, int], ...]
    A_ratio: Optional[Ratio] = None
    B_ratio: Optional[Ratio] = None
    eigenvalues: tuple[tuple[Fraction, int], ...] = ()
    phi: Optional[PhiOperator] = field(default=None, repr=False)

    def as_dict(self) -> dict:
        return {
            "dim": self.dim, "m": self.m, "kind": self.kind,
            "L_dim": self.L_dim, "Ltilde_dim": self.Ltilde_dim,
            "image_dim": self.image_dim, "isotropic": self.isotropic,
            "ranks": [[[rat_str(a), rat_str(b)], rank]
                      for (a, b), rank in self.ranks],
            "A_ratio": [rat_str(x) for x in self.A_ratio] if self.A_ratio else None,
            "B_ratio": [rat_str(x) for x in self.B_ratio] if self.B_ratio else None,
            "eigenvalues": [[rat_str(v), mult] for v, mult in self.eigenvalues],
        }


def _is_isotropic(M: MatQ, L: SubspaceQ) -> bool:
    basis = L.basis
    for i, u in enumerate(basis):
        for v in basis[i:]:
            mv = M.matvec(v)
            if sum(a * b for a, b in zip(u, mv)) != 0:
                return False
    return True


def verify_com1(pencil: SkewPencil, A_ratio: Optional[Ratio] = None,
                B_ratio: Optional[Ratio] = None) -> PencilAnalysis:
    """Full exact analysis of a skew pencil.

    Kronecker type (L equals its member-orthogonal): verifies that L
    is maximal isotropic of dimension dim V - m/2.  Mixed type: builds
    the recursion operator and cross-checks each rational eigenvalue
    against the rank drop of the corresponding member.  Violated
    theory-implied invariants raise FalsificationError.
    """
    n = pencil.dim
    prof = rank_profile(pencil)
    m = prof.m
    L = compute_L(pencil, m)
    W = check_image_equality(pencil, L)
    Ltilde = compute_Ltilde(pencil, L, W)
    iso = _is_isotropic(pencil.A, L) and _is_isotropic(pencil.B, L)
    if not iso or not L.is_subspace_of(Ltilde):
        raise FalsificationError(
            "kernel sum is not isotropic for the pencil",
            {"dim": n, "L_dim": L.dim, "Ltilde_dim": Ltilde.dim})
    if L == Ltilde:
        if L.dim != n - m // 2:
            raise FalsificationError(
                "Kronecker-type kernel sum has the wrong dimension",
                {"dim": n, "m": m, "L_dim": L.dim, "expected": n - m // 2})
        return PencilAnalysis(n, m, "kronecker", L.dim, Ltilde.dim, W.dim,
                              iso, prof.ranks)
    if A_ratio is None:
        A_ratio = next(r for r, rank in prof.ranks if rank == m)
    if B_ratio is None:
        B_ratio = (Fraction(0), Fraction(1))
        if A_ratio[0] == 0:
            B_ratio = (Fraction(1), Fraction(0))
    phi = phi_operator(pencil, L, Ltilde, A_ratio, B_ratio, m)
    eigs = rational_eigenvalues(phi.matrix)
    Am = pencil.member(*A_ratio)
    Bm = pencil.member(*B_ratio)
    for lam in eigs:
        drop = Bm + Am.scale(-lam)
        r, _ = rank_kernel(drop)
        if r >= m:
            raise FalsificationError(
                "recursion eigenvalue does not match a singular direction",
                {"dim": n, "eigenvalue": rat_str(lam), "member_rank": r,
                 "generic_rank": m,
                 "A_ratio": [rat_str(x) for x in A_ratio],
                 "B_ratio": [rat_str(x) for x in B_ratio]})
    eig_items = tuple(sorted(eigs.items()))
    return PencilAnalysis(n, m, "jordan-mixed", L.dim, Ltilde.dim, W.dim,
                          iso, prof.ranks, A_ratio, B_ratio, eig_items, phi)
