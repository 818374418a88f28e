"""Exact linear algebra over the rationals.

Matrices are dense and immutable; all elimination is fraction-free
(Bareiss) on denominator-cleared integer rows, with a final
normalization back to Fraction entries.  Subspaces are kept in reduced
row echelon form, so equality of subspaces is equality of bases.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Optional, Sequence, Union

Rat = Fraction
VecQ = tuple[Fraction, ...]

Scalar = Union[int, str, Fraction]


def rat(value: Scalar) -> Fraction:
    """Coerce an int, Fraction, or "p/q" string to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        # tolerate the unicode minus sign in hand-written input
        return Fraction(value.strip().replace("−", "-"))
    raise TypeError(f"cannot interpret {value!r} as a rational")


def rat_str(q: Fraction) -> str:
    """Render a Fraction as "p" or "p/q" with positive denominator."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def vec(values: Iterable[Scalar]) -> VecQ:
    return tuple(rat(v) for v in values)


def is_zero_vec(v: Sequence[Fraction]) -> bool:
    return all(x == 0 for x in v)


class MatQ:
    """Immutable dense matrix with Fraction entries."""

    __slots__ = ("rows", "cols", "_a")

    def __init__(self, entries: Sequence[Sequence[Scalar]], cols: Optional[int] = None):
        a = tuple(tuple(rat(x) for x in row) for row in entries)
        if a:
            ncols = len(a[0])
            if any(len(row) != ncols for row in a):
                raise ValueError("ragged matrix")
        else:
            ncols = 0 if cols is None else cols
        self._a = a
        self.rows = len(a)
        self.cols = ncols if a else ncols

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "MatQ":
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def identity(cls, n: int) -> "MatQ":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]], cols: Optional[int] = None) -> "MatQ":
        return cls(rows, cols=cols)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self._a[i][j]

    def row(self, i: int) -> VecQ:
        return self._a[i]

    def col(self, j: int) -> VecQ:
        return tuple(row[j] for row in self._a)

    def to_lists(self) -> list[list[Fraction]]:
        return [list(row) for row in self._a]

    def transpose(self) -> "MatQ":
        return MatQ([[self._a[i][j] for i in range(self.rows)] for j in range(self.cols)],
                    cols=self.rows)

    def __add__(self, other: "MatQ") -> "MatQ":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return MatQ([[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self._a, other._a)],
                    cols=self.cols)

    def __sub__(self, other: "MatQ") -> "MatQ":
        return self + (-other)

    def __neg__(self) -> "MatQ":
        return MatQ([[-x for x in row] for row in self._a], cols=self.cols)

    def scale(self, c: Scalar) -> "MatQ":
        c = rat(c)
        return MatQ([[c * x for x in row] for row in self._a], cols=self.cols)

    def __mul__(self, other: Union["MatQ", Scalar]) -> "MatQ":
        if isinstance(other, MatQ):
            if self.cols != other.rows:
                raise ValueError("shape mismatch")
            bt = other.transpose()._a
            return MatQ([[sum(a * b for a, b in zip(row, col)) for col in bt]
                         for row in self._a], cols=other.cols)
        return self.scale(other)

    def __rmul__(self, other: Scalar) -> "MatQ":
        return self.scale(other)

    def matvec(self, v: Sequence[Scalar]) -> VecQ:
        if len(v) != self.cols:
            raise ValueError("shape mismatch")
        w = vec(v)
        return tuple(sum(a * b for a, b in zip(row, w)) for row in self._a)

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "MatQ":
        return MatQ([[self._a[i][j] for j in col_idx] for i in row_idx],
                    cols=len(col_idx))

    def is_skew(self) -> bool:
        """True iff M^T = -M with zero diagonal (entrywise check)."""
        if self.rows != self.cols:
            return False
        for i in range(self.rows):
            if self._a[i][i] != 0:
                return False
            for j in range(i + 1, self.cols):
                if self._a[i][j] != -self._a[j][i]:
                    return False
        return True

    def __eq__(self, other: object) -> bool:
        return isinstance(other, MatQ) and self.cols == other.cols and self._a == other._a

    def __hash__(self) -> int:
        return hash((self.cols, self._a))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(rat_str(x) for x in row) for row in self._a)
        return f"MatQ[{self.rows}x{self.cols}]({body})"


def _int_rows(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    # clear denominators per row and strip the integer content;
    # row scaling preserves row space, rank, and kernel
    out: list[list[int]] = []
    for row in rows:
        mult = lcm(*(x.denominator for x in row)) if row else 1
        ints = [int(x * mult) for x in row]
        g = 0
        for x in ints:
            g = gcd(g, abs(x))
        if g > 1:
            ints = [x // g for x in ints]
        out.append(ints)
    return out


def _exact_div(a: int, b: int) -> int:
    q, r = divmod(a, b)
    if r != 0:
        raise ArithmeticError("fraction-free elimination lost exact divisibility")
    return q


def _rref(rows: Sequence[Sequence[Fraction]], ncols: int) -> tuple[list[VecQ], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    work = _int_rows(rows)
    m = len(work)
    pivots: list[int] = []
    piv_row = 0
    prev = 1
    for c in range(ncols):
        sel = next((r for r in range(piv_row, m) if work[r][c] != 0), None)
        if sel is None:
            continue
        work[piv_row], work[sel] = work[sel], work[piv_row]
        p = work[piv_row][c]
        for i in range(piv_row + 1, m):
            q = work[i][c]
            new_row = [0] * ncols
            top = work[piv_row]
            cur = work[i]
            for j in range(c + 1, ncols):
                new_row[j] = _exact_div(p * cur[j] - q * top[j], prev)
            work[i] = new_row
        pivots.append(c)
        piv_row += 1
        prev = p
        if piv_row == m:
            break
    # back-normalize to Fractions with leading 1 and zeros above pivots
    rank = len(pivots)
    frows: list[list[Fraction]] = []
    for r in range(rank):
        p = work[r][pivots[r]]
        frows.append([Fraction(x, p) for x in work[r]])
    for r in range(rank - 1, -1, -1):
        for above in range(r):
            factor = frows[above][pivots[r]]
            if factor != 0:
                frows[above] = [a - factor * b for a, b in zip(frows[above], frows[r])]
    return [tuple(row) for row in frows], pivots


class SubspaceQ:
    """Linear subspace of Q^n with a canonical RREF basis."""

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim: int, canonical_basis: Sequence[VecQ]):
        self.ambient_dim = ambient_dim
        self.basis = tuple(canonical_basis)

    @classmethod
    def span(cls, vectors: Iterable[Sequence[Scalar]], ambient_dim: int) -> "SubspaceQ":
        rows = [vec(v) for v in vectors]
        for row in rows:
            if len(row) != ambient_dim:
                raise ValueError("vector length does not match ambient dimension")
        basis, _ = _rref(rows, ambient_dim)
        return cls(ambient_dim, basis)

    @classmethod
    def zero(cls, ambient_dim: int) -> "SubspaceQ":
        return cls(ambient_dim, [])

    @classmethod
    def full(cls, ambient_dim: int) -> "SubspaceQ":
        return cls(ambient_dim, [tuple(Fraction(int(i == j)) for j in range(ambient_dim))
                                 for i in range(ambient_dim)])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _pivots(self) -> list[int]:
        return [next(j for j, x in enumerate(row) if x != 0) for row in self.basis]

    def contains(self, v: Sequence[Scalar]) -> bool:
        w = list(vec(v))
        if len(w) != self.ambient_dim:
            raise ValueError("vector length does not match ambient dimension")
        for row, p in zip(self.basis, self._pivots()):
            c = w[p]
            if c != 0:
                w = [a - c * b for a, b in zip(w, row)]
        return all(x == 0 for x in w)

    def is_subspace_of(self, other: "SubspaceQ") -> bool:
        return all(other.contains(v) for v in self.basis)

    def __add__(self, other: "SubspaceQ") -> "SubspaceQ":
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        return SubspaceQ.span(list(self.basis) + list(other.basis), self.ambient_dim)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, SubspaceQ)
                and self.ambient_dim == other.ambient_dim
                and self.basis == other.basis)

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.basis))

    def __repr__(self) -> str:
        rows = "; ".join("(" + ", ".join(rat_str(x) for x in v) + ")" for v in self.basis)
        return f"SubspaceQ(dim {self.dim} of Q^{self.ambient_dim}: {rows})"


def rank_kernel(M: MatQ) -> tuple[int, SubspaceQ]:
    """Exact rank and kernel basis of M.

    The kernel lives in Q^cols.  Skew input additionally asserts the
    even-rank invariant.  An empty matrix has rank 0 and full kernel.
    """
    rref_rows, pivots = _rref(M._a, M.cols)
    rank = len(pivots)
    pivot_set = set(pivots)
    free_cols = [c for c in range(M.cols) if c not in pivot_set]
    kernel_vectors: list[list[Fraction]] = []
    for fc in free_cols:
        v = [Fraction(0)] * M.cols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -rref_rows[r][fc]
        kernel_vectors.append(v)
    kernel = SubspaceQ.span(kernel_vectors, M.cols)
    if M.is_skew() and rank % 2 != 0:
        raise ArithmeticError("skew matrix produced odd rank")
    return rank, kernel


def rank(M: MatQ) -> int:
    return rank_kernel(M)[0]


def det(M: MatQ) -> Fraction:
    """Exact determinant via fraction-free elimination."""
    if M.rows != M.cols:
        raise ValueError("determinant of non-square matrix")
    n = M.rows
    if n == 0:
        return Fraction(1)
    work = [list(row) for row in M._a]
    sign = 1
    denom = Fraction(1)
    # clear denominators per row, tracking the scaling
    iwork: list[list[int]] = []
    for row in work:
        mult = lcm(*(x.denominator for x in row))
        denom *= mult
        iwork.append([int(x * mult) for x in row])
    prev = 1
    for k in range(n - 1):
        sel = next((r for r in range(k, n) if iwork[r][k] != 0), None)
        if sel is None:
            return Fraction(0)
        if sel != k:
            iwork[k], iwork[sel] = iwork[sel], iwork[k]
            sign = -sign
        p = iwork[k][k]
        for i in range(k + 1, n):
            q = iwork[i][k]
            for j in range(k + 1, n):
                iwork[i][j] = _exact_div(p * iwork[i][j] - q * iwork[k][j], prev)
            iwork[i][k] = 0
        prev = p
    return Fraction(sign * iwork[n - 1][n - 1], 1) / denom


def solve(M: MatQ, b: Sequence[Scalar]) -> Optional[VecQ]:
    """One exact solution of M x = b, or None if inconsistent."""
    rhs = vec(b)
    if len(rhs) != M.rows:
        raise ValueError("shape mismatch")
    aug_rows = [tuple(row) + (rhs[i],) for i, row in enumerate(M._a)]
    rref_rows, pivots = _rref(aug_rows, M.cols + 1)
    if M.cols in pivots:
        return None
    x = [Fraction(0)] * M.cols
    for r, pc in enumerate(pivots):
        x[pc] = rref_rows[r][M.cols]
    return tuple(x)


def solve_many(M: MatQ, rhs_list: Sequence[Sequence[Scalar]]) -> list[Optional[VecQ]]:
    """Solutions of M x = b for several right-hand sides in one elimination."""
    k = len(rhs_list)
    cols = M.cols
    vs = [vec(b) for b in rhs_list]
    for v in vs:
        if len(v) != M.rows:
            raise ValueError("shape mismatch")
    aug_rows = [tuple(row) + tuple(v[i] for v in vs) for i, row in enumerate(M._a)]
    rref_rows, pivots = _rref(aug_rows, cols + k)
    base_pivots = [p for p in pivots if p < cols]
    out: list[Optional[VecQ]] = []
    for t in range(k):
        col = cols + t
        # inconsistent iff some rref row is zero on the coefficient block
        # but nonzero in this rhs column
        bad = any(all(row[j] == 0 for j in range(cols)) and row[col] != 0
                  for row in rref_rows)
        if bad:
            out.append(None)
            continue
        x = [Fraction(0)] * cols
        for r, pc in enumerate(base_pivots):
            x[pc] = rref_rows[r][col]
        out.append(tuple(x))
    return out


def invert(M: MatQ) -> MatQ:
    if M.rows != M.cols:
        raise ValueError("inverse of non-square matrix")
    n = M.rows
    aug_rows = [tuple(row) + tuple(Fraction(int(i == j)) for j in range(n))
                for i, row in enumerate(M._a)]
    rref_rows, pivots = _rref(aug_rows, 2 * n)
    if pivots != list(range(n)):
        raise ArithmeticError("matrix is singular")
    return MatQ([row[n:] for row in rref_rows], cols=n)


def subspace_sum(U: SubspaceQ, W: SubspaceQ) -> SubspaceQ:
    return U + W


def subspace_intersection(U: SubspaceQ, W: SubspaceQ) -> SubspaceQ:
    return annihilator(annihilator(U) + annihilator(W))


def annihilator(U: SubspaceQ) -> SubspaceQ:
    """Vectors pairing to zero with U under the standard bilinear form."""
    M = MatQ(U.basis, cols=U.ambient_dim)
    return rank_kernel(M)[1]


def image(M: MatQ, U: SubspaceQ) -> SubspaceQ:
    """Span of M applied to a subspace of Q^cols, inside Q^rows."""
    if U.ambient_dim != M.cols:
        raise ValueError("ambient dimension mismatch")
    return SubspaceQ.span([M.matvec(v) for v in U.basis], M.rows)
