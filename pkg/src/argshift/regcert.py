"""Regularity certificates for points, planes, and whole duals.

A point is regular when the skew form there reaches the generic rank
m = dim - ind.  The certificates below are exact: a plane is certified
by the gcd of the pencil's m x m minors (bivariate homogeneous, so the
singular directions are its projective roots), and the dual space is
certified singular-in-codimension-two when the gcd of all symbolic
minors is constant.

The expensive symbolic gcd is usually avoided: restricting the matrix
to a plane maps every minor to its restriction, and a nonconstant
homogeneous divisor stays nonconstant on any plane where it does not
vanish outright.  A plane whose restricted minors are coprime therefore
certifies the full-space verdict; only failures fall back to the
symbolic computation, and those carry the offending divisor as witness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Optional, Sequence

from .exactlin import MatQ, Scalar, rank_kernel, rat_str, vec
from .liealg import AlgebraProfile, LieAlgebraData
from .mpoly import MPoly, determinant, poly_gcd, rational_roots
from .poisson import CasimirSet, kirillov
from .sampling import integer_point, rng_stream


class FalsificationError(Exception):
    """Two independently certified routes disagreed.

    Carries a reproduction bundle: everything needed to replay the
    contradiction with exact arithmetic.
    """

    def __init__(self, claim: str, bundle: dict):
        super().__init__(claim)
        self.claim = claim
        self.bundle = bundle


def generic_kirillov(L: LieAlgebraData) -> list[list[MPoly]]:
    """The skew matrix of structure linear forms over the coordinate ring."""
    n = L.dim
    rows = [[MPoly.zero(n) for _ in range(n)] for _ in range(n)]
    for i, j, coeffs in L.pairs():
        lin = MPoly(n, {tuple(1 if m == k else 0 for m in range(n)): c
                        for k, c in coeffs.items()})
        rows[i][j] = lin
        rows[j][i] = -lin
    return rows


def _check_profile(L: LieAlgebraData, profile: AlgebraProfile) -> int:
    if profile.dim != L.dim:
        raise ValueError("profile dimension does not match the algebra")
    m = L.dim - profile.ind
    if m < 0 or m % 2 != 0:
        raise ValueError("dim - ind must be an even nonnegative rank")
    return m


def is_regular(L: LieAlgebraData, profile: AlgebraProfile, xi: Sequence[Scalar]) -> bool:
    """Does the skew form at xi reach the generic rank dim - ind?"""
    m = _check_profile(L, profile)
    return kirillov(L, xi).rank == m


def jacobian_rank(polys: Sequence[MPoly], pt: Sequence[Scalar]) -> int:
    """Rank of the gradient matrix of the polynomials at the point."""
    if not polys:
        return 0
    return rank_kernel(MatQ([list(p.grad_at(vec(pt))) for p in polys]))[0]


@dataclass
class KostantVerdict:
    point: tuple[Fraction, ...]
    kirillov_rank: int
    regular: bool
    jacobian_rank: int
    independent: bool

    def as_dict(self) -> dict:
        return {"point": [rat_str(x) for x in self.point],
                "kirillov_rank": self.kirillov_rank, "regular": self.regular,
                "jacobian_rank": self.jacobian_rank,
                "independent": self.independent}


def kostant_criterion(L: LieAlgebraData, casimirs: CasimirSet,
                      profile: AlgebraProfile, xi: Sequence[Scalar]) -> KostantVerdict:
    """Dual-route regularity test at a point.

    With ind independent central generators whose degrees sum to
    (dim + ind) / 2, a point is regular exactly when the generator
    differentials are independent there.  Both sides are computed
    separately; disagreement is a falsification, not a failure.
    """
    m = _check_profile(L, profile)
    if len(casimirs) != profile.ind:
        raise ValueError(
            f"criterion needs ind = {profile.ind} generators, got {len(casimirs)}")
    if casimirs.sum_degrees != profile.b_q:
        raise ValueError(
            f"criterion needs degree sum {profile.b_q}, got {casimirs.sum_degrees}")
    pt = vec(xi)
    krank = kirillov(L, pt).rank
    jrank = jacobian_rank(casimirs.generators, pt)
    regular = krank == m
    independent = jrank == len(casimirs)
    if regular != independent:
        raise FalsificationError(
            "regularity and differential independence disagree",
            {"dim": L.dim, "ind": profile.ind,
             "point": [rat_str(x) for x in pt],
             "kirillov_rank": krank, "generic_rank": m,
             "jacobian_rank": jrank, "generator_count": len(casimirs),
             "degrees": list(casimirs.degrees)})
    return KostantVerdict(pt, krank, regular, jrank, independent)


# --- plane certificates -----------------------------------------------------

@dataclass(frozen=True)
class PlaneSpec:
    xi: tuple[Fraction, ...]
    eta: tuple[Fraction, ...]

    def point(self, a: Scalar, b: Scalar) -> tuple[Fraction, ...]:
        af, bf = Fraction(a), Fraction(b)
        return tuple(af * x + bf * y for x, y in zip(self.xi, self.eta))

    def as_dict(self) -> dict:
        return {"xi": [rat_str(x) for x in self.xi],
                "eta": [rat_str(x) for x in self.eta]}


@dataclass
class PlaneCertificate:
    ok: bool
    m: int
    minors_checked: int
    total_minors: int
    gcd_degree: int
    singular_directions: tuple[tuple[Fraction, Fraction], ...] = ()
    residual_degree: int = 0
    all_zero: bool = False
    witness_pretty: Optional[str] = None
    gcd: Optional[MPoly] = field(default=None, repr=False)
    minor_indices: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...] = ()

    def as_dict(self) -> dict:
        return {
            "ok": self.ok, "m": self.m,
            "minors_checked": self.minors_checked,
            "total_minors": self.total_minors,
            "gcd_degree": self.gcd_degree,
            "singular_directions": [[rat_str(a), rat_str(b)]
                                    for a, b in self.singular_directions],
            "residual_degree": self.residual_degree,
            "all_zero": self.all_zero,
            "witness": self.witness_pretty,
            "gcd": self.gcd.pretty(["a", "b"]) if self.gcd is not None else None,
            "minor_indices": [[list(r), list(c)] for r, c in self.minor_indices],
        }


def _minor_combos(n: int, m: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    return [(r, c) for r in combinations(range(n), m)
            for c in combinations(range(n), m)]


def _pencil_matrix(K1: MatQ, K2: MatQ) -> list[list[MPoly]]:
    n = K1.rows
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            terms = {}
            if K1[i, j] != 0:
                terms[(1, 0)] = K1[i, j]
            if K2[i, j] != 0:
                terms[(0, 1)] = K2[i, j]
            row.append(MPoly(2, terms))
        out.append(row)
    return out


def _stream_minor_gcd(entries: Sequence[Sequence[MPoly]], m: int,
                      order: Sequence[tuple[tuple[int, ...], tuple[int, ...]]],
                      stop_when_constant: bool
                      ) -> tuple[Optional[MPoly], int,
                                 tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]]:
    """Running gcd of the m x m minors taken in the given order.

    Returns (gcd, minors_examined, indices_consumed); gcd is None when
    every examined minor vanished.  With stop_when_constant the stream
    aborts as soon as the gcd is provably trivial, which certifies the
    full gcd.
    """
    g: Optional[MPoly] = None
    consumed: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
    for rows_idx, cols_idx in order:
        consumed.append((rows_idx, cols_idx))
        sub = [[entries[i][j] for j in cols_idx] for i in rows_idx]
        minor = determinant(sub)
        if minor.is_zero():
            continue
        g = minor if g is None else poly_gcd([g, minor])
        if stop_when_constant and g.is_constant():
            break
    return (None if g is None else g.monic()), len(consumed), tuple(consumed)


def certify_regular_plane(L: LieAlgebraData, profile: AlgebraProfile,
                          xi: Sequence[Scalar], eta: Sequence[Scalar],
                          seed: int = 0) -> PlaneCertificate:
    """Certify that every nonzero point of span(xi, eta) is regular.

    The pencil matrix has bivariate homogeneous minors; their gcd is
    constant exactly when no direction (a : b) drops below the generic
    rank.  A nonconstant gcd is reported with its rational projective
    roots; the residual degree counts directions outside Q.
    """
    m = _check_profile(L, profile)
    pxi, peta = vec(xi), vec(eta)
    if rank_kernel(MatQ([list(pxi), list(peta)]))[0] != 2:
        raise ValueError("plane spanning points are linearly dependent")
    n = L.dim
    if m == 0:
        return PlaneCertificate(True, 0, 0, 0, 0)
    entries = _pencil_matrix(kirillov(L, pxi).matrix, kirillov(L, peta).matrix)
    combos = _minor_combos(n, m)
    rng_stream(seed, "plane-minor-order").shuffle(combos)
    g, checked, consumed = _stream_minor_gcd(entries, m, combos,
                                             stop_when_constant=True)
    total = comb(n, m) ** 2
    if g is None:
        return PlaneCertificate(False, m, checked, total, 0, all_zero=True,
                                witness_pretty="all pencil minors vanish",
                                minor_indices=consumed)
    if g.is_constant():
        return PlaneCertificate(True, m, checked, total, 0, gcd=g,
                                minor_indices=consumed)
    # homogeneous bivariate gcd: read directions off g(1, t) plus the
    # coefficient deficiency at (0 : 1)
    deg = g.degree()
    by_t = {e[1]: c for e, c in g.terms.items()}
    coeffs = [by_t.get(k, Fraction(0)) for k in range(deg + 1)]
    t_deg = max(k for k, c in enumerate(coeffs) if c != 0)
    roots = rational_roots(coeffs[:t_deg + 1])
    directions = [(Fraction(1), r) for r in sorted(roots)]
    rational_mult = sum(roots.values())
    if t_deg < deg:
        directions.append((Fraction(0), Fraction(1)))
        rational_mult += deg - t_deg
    return PlaneCertificate(
        False, m, checked, total, deg,
        singular_directions=tuple(directions),
        residual_degree=deg - rational_mult,
        witness_pretty=g.pretty(["a", "b"]),
        gcd=g, minor_indices=consumed)


@dataclass
class FindPlaneResult:
    found: bool
    attempts_used: int
    spec: Optional[PlaneSpec] = None
    certificate: Optional[PlaneCertificate] = None

    def as_dict(self) -> dict:
        return {"found": self.found, "attempts_used": self.attempts_used,
                "spec": self.spec.as_dict() if self.spec else None,
                "certificate": self.certificate.as_dict() if self.certificate else None}


def find_regular_plane(L: LieAlgebraData, profile: AlgebraProfile, seed: int = 0,
                       attempts: int = 20, bound: int = 9) -> FindPlaneResult:
    """Search seeded sample planes for one that certifies regular."""
    _check_profile(L, profile)
    last: Optional[PlaneCertificate] = None
    for t in range(attempts):
        rng = rng_stream(seed, "plane-search", t)
        xi = integer_point(rng, L.dim, bound)
        eta = integer_point(rng, L.dim, bound)
        if rank_kernel(MatQ([list(xi), list(eta)]))[0] != 2:
            continue
        cert = certify_regular_plane(L, profile, xi, eta, seed=seed)
        last = cert
        if cert.ok:
            return FindPlaneResult(True, t + 1, PlaneSpec(xi, eta), cert)
    return FindPlaneResult(False, attempts, None, last)


# --- whole-dual certificate -------------------------------------------------

@dataclass
class Codim2Certificate:
    ok: bool
    m: int
    method: str                 # "trivial" | "plane" | "symbolic"
    planes_tried: int
    minors_checked: int
    total_minors: int
    seed: int
    witness: Optional[MPoly] = field(default=None, repr=False)
    witness_pretty: Optional[str] = None

    def as_dict(self) -> dict:
        return {"ok": self.ok, "m": self.m, "method": self.method,
                "planes_tried": self.planes_tried,
                "minors_checked": self.minors_checked,
                "total_minors": self.total_minors, "seed": self.seed,
                "witness": self.witness_pretty}


def certify_codim2(L: LieAlgebraData, profile: AlgebraProfile, seed: int = 0,
                   planes: int = 4, bound: int = 9) -> Codim2Certificate:
    """Certify that the singular set of the dual has codimension >= 2.

    Equivalent statement: the gcd of all m x m minors of the symbolic
    skew matrix is constant.  Sample planes give a sound shortcut (see
    module docstring); when every plane fails, the gcd is computed over
    the symbolic minors themselves, streamed in seeded order with early
    exit, and a nonconstant result is returned as the witness divisor.
    """
    m = _check_profile(L, profile)
    n = L.dim
    total = comb(n, m) ** 2 if m else 0
    if m == 0:
        return Codim2Certificate(True, 0, "trivial", 0, 0, total, seed)
    planes_tried = 0
    if n >= 3:
        for t in range(planes):
            rng = rng_stream(seed, "codim2-plane", t)
            xi = integer_point(rng, n, bound)
            eta = integer_point(rng, n, bound)
            if rank_kernel(MatQ([list(xi), list(eta)]))[0] != 2:
                continue
            planes_tried += 1
            entries = _pencil_matrix(kirillov(L, xi).matrix,
                                     kirillov(L, eta).matrix)
            combos = _minor_combos(n, m)
            rng_stream(seed, "codim2-minor-order", t).shuffle(combos)
            g, checked, _ = _stream_minor_gcd(entries, m, combos,
                                              stop_when_constant=True)
            if g is not None and g.is_constant():
                return Codim2Certificate(True, m, "plane", planes_tried,
                                         checked, total, seed)
    sym = generic_kirillov(L)
    combos = _minor_combos(n, m)
    rng_stream(seed, "codim2-minor-order", "symbolic").shuffle(combos)
    g, checked, _ = _stream_minor_gcd(sym, m, combos, stop_when_constant=True)
    if g is None:
        claim = "no nonzero minor at the declared generic rank"
        bundle = {"dim": n, "ind": profile.ind, "m": m,
                  "profile_status": profile.status}
        if profile.status == "estimated":
            raise FalsificationError(claim, bundle)
        raise ValueError(f"{claim}; the declared index looks wrong")
    if g.is_constant():
        return Codim2Certificate(True, m, "symbolic", planes_tried, checked,
                                 total, seed)
    names = [f"x_{nm}" for nm in L.basis_names]
    return Codim2Certificate(False, m, "symbolic", planes_tried, checked,
                             total, seed, witness=g,
                             witness_pretty=g.pretty(names))


# --- completeness checks ----------------------------------------------------

@dataclass
class ComplVerdict:
    ok: bool
    pairs_checked: int
    required_rank: int
    star_rank: int
    rows: tuple[tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction], int], ...]
    skipped_proportional: int
    spec: PlaneSpec

    def as_dict(self) -> dict:
        return {"ok": self.ok, "pairs_checked": self.pairs_checked,
                "required_rank": self.required_rank,
                "star_rank": self.star_rank,
                "pairs": [[[rat_str(a) for a in r1], [rat_str(b) for b in r2],
                           rank] for r1, r2, rank in self.rows],
                "skipped_proportional": self.skipped_proportional,
                "spec": self.spec.as_dict()}


def verify_compl(L: LieAlgebraData, casimirs: CasimirSet, profile: AlgebraProfile,
                 spec: PlaneSpec, certificate: Optional[PlaneCertificate] = None,
                 nsamples: int = 8, seed: int = 0) -> ComplVerdict:
    """Shift families built along a certified plane reach the maximal rank.

    Premises: generator degrees sum to the bound and the plane is
    certified regular; the span condition (central gradient rank = ind)
    is checked first at a base point.  Then, for nsamples pairs of
    non-proportional directions, the shift family built at the first
    point must have differentials of rank (dim + ind) / 2 at the
    second; each pair and its rank are recorded.  Any rank drop
    contradicts certified facts and raises FalsificationError;
    proportional draws are skipped and counted.
    """
    from .mfshift import build_family
    if len(casimirs) != profile.ind:
        raise ValueError(
            f"need ind = {profile.ind} generators, got {len(casimirs)}")
    if casimirs.sum_degrees != profile.b_q:
        raise ValueError("degree sum does not meet the bound; check inapplicable")
    if certificate is None:
        certificate = certify_regular_plane(L, profile, spec.xi, spec.eta, seed=seed)
    if not certificate.ok:
        raise ValueError("plane is not certified regular")
    if nsamples < 1:
        raise ValueError("need at least one sample pair")
    b = profile.b_q
    m = L.dim - profile.ind
    xi0 = spec.point(1, 0)
    star = jacobian_rank(casimirs.generators, xi0)
    if star != profile.ind:
        raise FalsificationError(
            "central differentials drop rank at a certified-regular point",
            {"dim": L.dim, "ind": profile.ind,
             "point": [rat_str(x) for x in xi0], "gradient_rank": star,
             "spec": spec.as_dict()})
    rng = rng_stream(seed, "compl-pairs")
    rows: list[tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction], int]] = []
    skipped = 0
    while len(rows) < nsamples:
        r1 = (Fraction(rng.randint(-9, 9)), Fraction(rng.randint(-9, 9)))
        r2 = (Fraction(rng.randint(-9, 9)), Fraction(rng.randint(-9, 9)))
        if r1 == (Fraction(0), Fraction(0)) or r2 == (Fraction(0), Fraction(0)):
            continue
        if r1[0] * r2[1] - r1[1] * r2[0] == 0:
            # the independence premise does not cover proportional pairs
            skipped += 1
            continue
        xi_pt = spec.point(*r1)
        eta_pt = spec.point(*r2)
        krank = kirillov(L, xi_pt).rank
        if krank != m:
            raise FalsificationError(
                "certified-regular plane point is singular",
                {"dim": L.dim, "ind": profile.ind,
                 "ratio": [rat_str(x) for x in r1],
                 "point": [rat_str(x) for x in xi_pt],
                 "kirillov_rank": krank, "generic_rank": m,
                 "spec": spec.as_dict()})
        fam = build_family(L, casimirs, xi_pt)
        rank = jacobian_rank(fam.polys, eta_pt)
        rows.append((r1, r2, rank))
        if rank != b:
            raise FalsificationError(
                "shift family differentials drop rank on a certified plane",
                {"dim": L.dim, "ind": profile.ind,
                 "xi_ratio": [rat_str(x) for x in r1],
                 "eta_ratio": [rat_str(x) for x in r2],
                 "xi": [rat_str(x) for x in xi_pt],
                 "eta": [rat_str(x) for x in eta_pt],
                 "jacobian_rank": rank, "required_rank": b,
                 "members": len(fam), "spec": spec.as_dict()})
    return ComplVerdict(True, len(rows), b, star, tuple(rows), skipped, spec)


@dataclass
class BolsVerdict:
    ok: bool
    degree_classification: str
    codim2_ok: bool
    xi_regular: bool
    note: str
    codim2: Optional[Codim2Certificate] = None

    def as_dict(self) -> dict:
        return {"ok": self.ok,
                "degree_classification": self.degree_classification,
                "codim2_ok": self.codim2_ok, "xi_regular": self.xi_regular,
                "note": self.note,
                "codim2": self.codim2.as_dict() if self.codim2 else None}


def verify_bols(L: LieAlgebraData, casimirs: CasimirSet, profile: AlgebraProfile,
                xi: Sequence[Scalar], codim2: Optional[Codim2Certificate] = None,
                seed: int = 0) -> BolsVerdict:
    """Maximality-of-dimension criterion at a shift direction.

    Three premises: generator degrees sum to the bound, the singular
    set has codimension two, and xi itself is regular.  When all hold,
    the shift family at xi attains the maximal transcendence degree;
    the verdict says which premise broke otherwise.  An already
    computed codimension certificate can be passed in to avoid
    recomputation.
    """
    from .mfshift import EXACT, degree_profile
    dp = degree_profile(casimirs, profile)
    if dp.classification != EXACT:
        return BolsVerdict(False, dp.classification, False, False,
                           f"degree sum {dp.sum_degrees} vs bound {dp.b_q}: "
                           f"{dp.classification}")
    if codim2 is None:
        codim2 = certify_codim2(L, profile, seed=seed)
    if not codim2.ok:
        return BolsVerdict(False, dp.classification, False, False,
                           "singular set contains a divisor", codim2)
    regular = is_regular(L, profile, xi)
    if not regular:
        return BolsVerdict(False, dp.classification, True, False,
                           "shift direction is not a regular point", codim2)
    return BolsVerdict(True, dp.classification, True, True,
                       "criterion satisfied: family dimension is maximal",
                       codim2)
