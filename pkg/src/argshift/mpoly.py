"""Sparse multivariate polynomials over Q.

A polynomial is a map from exponent vectors to nonzero Fraction
coefficients.  The monomial order used everywhere (leading terms,
normalization, display) is graded lexicographic.  The shift expansion
``param_expand`` and the exact gcd live here because every certificate
in the workbench reduces to them.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, gcd as int_gcd
from typing import Iterable, Mapping, Optional, Sequence

from .exactlin import Scalar, rat, rat_str, vec


def grlex_key(exps: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    return (sum(exps), exps)


class MPoly:
    """Immutable sparse polynomial in ``nvars`` variables over Q."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Optional[Mapping[tuple[int, ...], Scalar]] = None):
        clean: dict[tuple[int, ...], Fraction] = {}
        if terms:
            for exps, c in terms.items():
                cf = rat(c)
                if cf == 0:
                    continue
                if len(exps) != nvars or any(e < 0 for e in exps):
                    raise ValueError(f"bad exponent vector {exps} for nvars={nvars}")
                clean[tuple(exps)] = cf
        self.nvars = nvars
        self.terms = clean

    # --- constructors -------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> "MPoly":
        return cls(nvars)

    @classmethod
    def const(cls, nvars: int, c: Scalar) -> "MPoly":
        return cls(nvars, {(0,) * nvars: rat(c)})

    @classmethod
    def one(cls, nvars: int) -> "MPoly":
        return cls.const(nvars, 1)

    @classmethod
    def variable(cls, nvars: int, i: int) -> "MPoly":
        if not 0 <= i < nvars:
            raise ValueError("variable index out of range")
        exps = tuple(1 if j == i else 0 for j in range(nvars))
        return cls(nvars, {exps: 1})

    @classmethod
    def linear_form(cls, coeffs: Sequence[Scalar]) -> "MPoly":
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            cf = rat(c)
            if cf != 0:
                terms[tuple(1 if j == i else 0 for j in range(n))] = cf
        return cls(n, terms)

    # --- predicates and basic data ------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return next(iter(self.terms.values()), Fraction(0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        degrees = {sum(e) for e in self.terms}
        return len(degrees) <= 1

    def variables(self) -> set[int]:
        return {i for e in self.terms for i in range(self.nvars) if e[i]}

    def leading(self) -> tuple[tuple[int, ...], Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def monic(self) -> "MPoly":
        _, c = self.leading()
        return self if c == 1 else self * (1 / c)

    # --- arithmetic ----------------------------------------------------
    def _check(self, other: "MPoly") -> None:
        if self.nvars != other.nvars:
            raise ValueError("variable count mismatch")

    def __add__(self, other: "MPoly") -> "MPoly":
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, Fraction(0)) + c
            if s == 0:
                terms.pop(e, None)
            else:
                terms[e] = s
        return MPoly(self.nvars, terms)

    def __neg__(self) -> "MPoly":
        return MPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "MPoly") -> "MPoly":
        return self + (-other)

    def __mul__(self, other: object) -> "MPoly":
        if isinstance(other, MPoly):
            self._check(other)
            out: dict[tuple[int, ...], Fraction] = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    s = out.get(e, Fraction(0)) + c1 * c2
                    if s == 0:
                        out.pop(e, None)
                    else:
                        out[e] = s
            return MPoly(self.nvars, out)
        c = rat(other)  # type: ignore[arg-type]
        if c == 0:
            return MPoly.zero(self.nvars)
        return MPoly(self.nvars, {e: c * v for e, v in self.terms.items()})

    def __rmul__(self, other: object) -> "MPoly":
        return self.__mul__(other)

    def __pow__(self, k: int) -> "MPoly":
        if k < 0:
            raise ValueError("negative power")
        result = MPoly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        return isinstance(other, MPoly) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    # --- calculus and evaluation ----------------------------------------
    def partial(self, i: int) -> "MPoly":
        if not 0 <= i < self.nvars:
            raise ValueError("variable index out of range")
        out: dict[tuple[int, ...], Fraction] = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            e2 = list(e)
            e2[i] -= 1
            out[tuple(e2)] = c * e[i]
        return MPoly(self.nvars, out)

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        pt = vec(point)
        if len(pt) != self.nvars:
            raise ValueError("point length mismatch")
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(pt, e):
                if k:
                    v *= x ** k
            total += v
        return total

    def grad_at(self, point: Sequence[Scalar]) -> tuple[Fraction, ...]:
        return tuple(self.partial(i).evaluate(point) for i in range(self.nvars))

    def compose(self, subs: Sequence["MPoly"]) -> "MPoly":
        """Substitute subs[i] for variable i; subs share one target ring."""
        if len(subs) != self.nvars:
            raise ValueError("substitution length mismatch")
        if not subs:
            return MPoly(0, dict(self.terms))
        target = subs[0].nvars
        if any(s.nvars != target for s in subs):
            raise ValueError("substitution ring mismatch")
        pow_cache: dict[tuple[int, int], MPoly] = {}

        def power(i: int, k: int) -> MPoly:
            key = (i, k)
            if key not in pow_cache:
                pow_cache[key] = subs[i] ** k
            return pow_cache[key]

        acc = MPoly.zero(target)
        for e, c in self.terms.items():
            term = MPoly.const(target, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            acc = acc + term
        return acc

    def param_expand(self, xi: Sequence[Scalar]) -> list["MPoly"]:
        """Coefficients of f(x + a*xi) as polynomials in x, by powers of a.

        Returns [f_0, ..., f_d] with d the total degree, so that
        f(x + a*xi) = sum_j f_j(x) a^j identically.  f_0 = f and f_d is
        the constant f(xi).  Errors on the zero polynomial.
        """
        if self.is_zero():
            raise ValueError("param_expand of the zero polynomial")
        pt = vec(xi)
        if len(pt) != self.nvars:
            raise ValueError("shift direction length mismatch")
        d = self.degree()
        acc: list[dict[tuple[int, ...], Fraction]] = [{} for _ in range(d + 1)]
        for exps, c in self.terms.items():
            expanded: list[tuple[tuple[int, ...], Fraction, int]] = [(exps, c, 0)]
            for i, (e_i, x_i) in enumerate(zip(exps, pt)):
                if e_i == 0 or x_i == 0:
                    continue
                nxt: list[tuple[tuple[int, ...], Fraction, int]] = []
                for es, coeff, j in expanded:
                    nxt.append((es, coeff, j))
                    pw = Fraction(1)
                    for k in range(1, e_i + 1):
                        pw *= x_i
                        es2 = list(es)
                        es2[i] = e_i - k
                        nxt.append((tuple(es2), coeff * comb(e_i, k) * pw, j + k))
                expanded = nxt
            for es, coeff, j in expanded:
                bucket = acc[j]
                s = bucket.get(es, Fraction(0)) + coeff
                if s == 0:
                    bucket.pop(es, None)
                else:
                    bucket[es] = s
        return [MPoly(self.nvars, a) for a in acc]

    # --- display ---------------------------------------------------------
    def pretty(self, names: Optional[Sequence[str]] = None) -> str:
        if self.is_zero():
            return "0"
        if names is None:
            names = [f"x{i}" for i in range(self.nvars)]
        if len(names) != self.nvars:
            raise ValueError("name list length mismatch")
        pieces = []
        for e in sorted(self.terms, key=grlex_key, reverse=True):
            c = self.terms[e]
            factors = [names[i] if k == 1 else f"{names[i]}^{k}"
                       for i, k in enumerate(e) if k]
            if not factors:
                body = rat_str(abs(c))
            elif abs(c) == 1:
                body = "*".join(factors)
            else:
                body = "*".join([rat_str(abs(c))] + factors)
            pieces.append(("- " if c < 0 else "+ ") + body)
        first = pieces[0]
        out = ("-" + first[2:]) if first.startswith("- ") else first[2:]
        return " ".join([out] + pieces[1:])

    def __repr__(self) -> str:
        return f"MPoly({self.pretty()})"


# --- exact division ------------------------------------------------------

def try_divide(f: MPoly, g: MPoly) -> Optional[MPoly]:
    """Exact quotient f/g, or None when g does not divide f."""
    if g.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if f.is_zero():
        return MPoly.zero(f.nvars)
    f._check(g)
    ge, gc = g.leading()
    quotient: dict[tuple[int, ...], Fraction] = {}
    r = f
    while not r.is_zero():
        re, rc = r.leading()
        diff = tuple(a - b for a, b in zip(re, ge))
        if any(d < 0 for d in diff):
            return None
        c = rc / gc
        quotient[diff] = quotient.get(diff, Fraction(0)) + c
        r = r - MPoly(f.nvars, {diff: c}) * g
    return MPoly(f.nvars, quotient)


def exact_divide(f: MPoly, g: MPoly) -> MPoly:
    q = try_divide(f, g)
    if q is None:
        raise ArithmeticError("expected exact polynomial division")
    return q


# --- gcd ------------------------------------------------------------------

def _deg_in(p: MPoly, v: int) -> int:
    return max((e[v] for e in p.terms), default=-1)


def _var_coeffs(p: MPoly, v: int) -> dict[int, MPoly]:
    """View p as univariate in v; coefficients keep the same ring."""
    buckets: dict[int, dict[tuple[int, ...], Fraction]] = {}
    for e, c in p.terms.items():
        e2 = list(e)
        k = e2[v]
        e2[v] = 0
        buckets.setdefault(k, {})[tuple(e2)] = c
    return {k: MPoly(p.nvars, t) for k, t in buckets.items()}


def _shift_var(p: MPoly, v: int, k: int) -> MPoly:
    out = {}
    for e, c in p.terms.items():
        e2 = list(e)
        e2[v] += k
        out[tuple(e2)] = c
    return MPoly(p.nvars, out)


def _prem(a: MPoly, b: MPoly, v: int) -> MPoly:
    db = _deg_in(b, v)
    lb = _var_coeffs(b, v)[db]
    r = a
    while not r.is_zero() and _deg_in(r, v) >= db:
        dr = _deg_in(r, v)
        lr = _var_coeffs(r, v)[dr]
        r = lb * r - _shift_var(lr * b, v, dr - db)
    return r


def _monomial_content(p: MPoly) -> tuple[int, ...]:
    mins = [min(e[i] for e in p.terms) for i in range(p.nvars)]
    return tuple(mins)


def _univariate_gcd(f: MPoly, g: MPoly, v: int) -> MPoly:
    # monic Euclid over Q on dense coefficient dicts
    def to_dict(p: MPoly) -> dict[int, Fraction]:
        return {e[v]: c for e, c in p.terms.items()}

    def degree(d: dict[int, Fraction]) -> int:
        return max(d, default=-1)

    def divmod_step(num: dict[int, Fraction], den: dict[int, Fraction]) -> dict[int, Fraction]:
        num = dict(num)
        dd = degree(den)
        lc = den[dd]
        while num and degree(num) >= dd:
            dn = degree(num)
            c = num[dn] / lc
            for k, cv in den.items():
                key = k + dn - dd
                s = num.get(key, Fraction(0)) - c * cv
                if s == 0:
                    num.pop(key, None)
                else:
                    num[key] = s
        return num

    a, b = to_dict(f), to_dict(g)
    while b:
        a, b = b, divmod_step(a, b)
    lc = a[degree(a)]
    terms = {tuple(k if i == v else 0 for i in range(f.nvars)): c / lc for k, c in a.items()}
    return MPoly(f.nvars, terms)


def _dehomogenize(p: MPoly) -> MPoly:
    # bivariate homogeneous with trivial monomial content: set second var to 1
    return MPoly(p.nvars, {(e[0], 0): c for e, c in p.terms.items()})


def _homogenize(u: MPoly, degree: int) -> MPoly:
    return MPoly(u.nvars, {(e[0], degree - e[0]): c for e, c in u.terms.items()})


def _int_primitive(p: MPoly) -> MPoly:
    # rescale so the coefficients are coprime integers; keeps the
    # pseudo-remainder sequence from blowing up rational bit sizes
    if p.is_zero():
        return p
    num = 0
    den = 1
    for c in p.terms.values():
        num = int_gcd(num, c.numerator)
        den = den * c.denominator // int_gcd(den, c.denominator)
    scale = Fraction(den, num)
    if scale == 1:
        return p
    return MPoly(p.nvars, {e: c * scale for e, c in p.terms.items()})


def _content_in(p: MPoly, v: int) -> MPoly:
    return _gcd_list([c for c in _var_coeffs(p, v).values()])


def _primitive_part(p: MPoly, v: int) -> MPoly:
    return exact_divide(p, _content_in(p, v))


def _gcd2(f: MPoly, g: MPoly) -> MPoly:
    if f.is_zero():
        return g.monic() if not g.is_zero() else g
    if g.is_zero():
        return f.monic()
    n = f.nvars
    mf, mg = _monomial_content(f), _monomial_content(g)
    common = tuple(min(a, b) for a, b in zip(mf, mg))
    f1 = MPoly(n, {tuple(e - m for e, m in zip(ex, mf)): c for ex, c in f.terms.items()})
    g1 = MPoly(n, {tuple(e - m for e, m in zip(ex, mg)): c for ex, c in g.terms.items()})
    mono = MPoly(n, {common: 1})
    if f1.is_constant() or g1.is_constant():
        return mono
    if f1 == g1:
        return (mono * f1).monic()
    vars_f, vars_g = f1.variables(), g1.variables()
    if not (vars_f & vars_g):
        return mono
    support = vars_f | vars_g
    if len(support) == 1:
        return (mono * _univariate_gcd(f1, g1, next(iter(support)))).monic()
    if n == 2 and f1.is_homogeneous() and g1.is_homogeneous():
        u = _univariate_gcd(_dehomogenize(f1), _dehomogenize(g1), 0)
        return (mono * _homogenize(u, u.degree())).monic()
    v = max(support)
    df, dg = _deg_in(f1, v), _deg_in(g1, v)
    if df == 0:
        return (mono * _gcd2(f1, _content_in(g1, v))).monic()
    if dg == 0:
        return (mono * _gcd2(g1, _content_in(f1, v))).monic()
    cf, cg = _content_in(f1, v), _content_in(g1, v)
    a = _int_primitive(exact_divide(f1, cf))
    b = _int_primitive(exact_divide(g1, cg))
    if _deg_in(a, v) < _deg_in(b, v):
        a, b = b, a
    while True:
        if b.is_zero():
            head = _primitive_part(a, v)
            break
        if _deg_in(b, v) == 0:
            head = MPoly.one(n)
            break
        r = _prem(a, b, v)
        a, b = b, (_int_primitive(_primitive_part(r, v)) if not r.is_zero() else r)
    return (mono * _gcd2(cf, cg) * head).monic()


def _gcd_list(polys: Iterable[MPoly]) -> MPoly:
    acc: Optional[MPoly] = None
    for p in polys:
        if p.is_zero():
            continue
        acc = p if acc is None else _gcd2(acc, p)
        if acc.is_constant():
            break
    if acc is None:
        raise ValueError("gcd of all-zero input")
    return acc.monic()


def poly_gcd(polys: Sequence[MPoly]) -> MPoly:
    """Monic gcd of a family, with early exit once it is constant."""
    if not polys:
        raise ValueError("gcd of empty input")
    n = polys[0].nvars
    if any(p.nvars != n for p in polys):
        raise ValueError("variable count mismatch")
    g = _gcd_list(polys)
    return MPoly.one(n) if g.is_constant() else g


def _int_divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(coeffs: Sequence[Scalar]) -> dict[Fraction, int]:
    """Rational roots with multiplicity of sum coeffs[k] t^k.

    Exact: candidates come from the rational root theorem after
    clearing denominators, multiplicities from repeated synthetic
    division.  Roots outside Q are simply not reported.
    """
    cs = [rat(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    if not cs:
        raise ValueError("zero polynomial has no root set")
    roots: dict[Fraction, int] = {}
    shift = 0
    while cs[0] == 0:
        cs.pop(0)
        shift += 1
    if shift:
        roots[Fraction(0)] = shift
    if len(cs) == 1:
        return roots
    den = 1
    for c in cs:
        den = den * c.denominator // int_gcd(den, c.denominator)
    ints = [int(c * den) for c in cs]
    for p in _int_divisors(ints[0]):
        for q in _int_divisors(ints[-1]):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if cand in roots:
                    continue
                mult = 0
                cur: list[Fraction] = [Fraction(x) for x in ints]
                while len(cur) > 1:
                    # synthetic division by (t - cand); quo holds the
                    # Horner values [b_d, ..., b_1, remainder]
                    rem = Fraction(0)
                    quo: list[Fraction] = []
                    for c in reversed(cur):
                        rem = rem * cand + c
                        quo.append(rem)
                    if rem != 0:
                        break
                    mult += 1
                    cur = list(reversed(quo[:-1]))
                if mult:
                    roots[cand] = mult
    return roots


# --- determinants over the polynomial ring --------------------------------

def determinant(rows: Sequence[Sequence[MPoly]]) -> MPoly:
    """Exact determinant of a square MPoly matrix (fraction-free)."""
    n = len(rows)
    if n == 0:
        raise ValueError("empty determinant")
    nvars = rows[0][0].nvars
    if any(len(r) != n for r in rows):
        raise ValueError("non-square matrix")
    a = [list(r) for r in rows]
    sign = 1
    prev = MPoly.one(nvars)
    for k in range(n - 1):
        pivot = None
        for i in range(k, n):
            for j in range(k, n):
                if not a[i][j].is_zero():
                    cand = (len(a[i][j].terms), i, j)
                    if pivot is None or cand < pivot:
                        pivot = cand
        if pivot is None:
            return MPoly.zero(nvars)
        _, pi, pj = pivot
        if pi != k:
            a[k], a[pi] = a[pi], a[k]
            sign = -sign
        if pj != k:
            for row in a:
                row[k], row[pj] = row[pj], row[k]
            sign = -sign
        p = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = exact_divide(p * a[i][j] - a[i][k] * a[k][j], prev)
            a[i][k] = MPoly.zero(nvars)
        prev = p
    return a[n - 1][n - 1] if sign == 1 else -a[n - 1][n - 1]


def extract_var_coeffs(p: MPoly, v: int) -> dict[int, MPoly]:
    """Coefficients of powers of variable v (exponent at v zeroed)."""
    return _var_coeffs(p, v)


def drop_last_var(p: MPoly) -> MPoly:
    """Forget the last variable slot; it must not occur in p."""
    if _deg_in(p, p.nvars - 1) > 0:
        raise ValueError("last variable still occurs")
    return MPoly(p.nvars - 1, {e[:-1]: c for e, c in p.terms.items()})
