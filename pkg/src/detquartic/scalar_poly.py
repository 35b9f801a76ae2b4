"""Exact scalars and multivariate polynomial algebra.

Coefficients live in the Gaussian rationals (complex numbers with rational
real and imaginary parts), so determinant identities and rank computations
downstream can be decided with zero tolerance.  Polynomials are sparse maps
from exponent vectors to coefficients; matrices of polynomials support
memoised Laplace expansion, which is plenty for the 4x4 and 8x8 sizes used
here.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union


# ---------------------------------------------------------------------------
# Gaussian rationals
# ---------------------------------------------------------------------------

def _frac(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, (int, str)):
        return Fraction(v)
    if isinstance(v, float):
        return Fraction(v)
    raise TypeError(f"cannot coerce {type(v).__name__} to Fraction")


@dataclass(frozen=True)
class GQ:
    """A Gaussian rational re + im*i with exact Fraction parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", _frac(self.re))
        object.__setattr__(self, "im", _frac(self.im))

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "GQ") -> "GQ":
        other = as_gq(other)
        return GQ(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other: "GQ") -> "GQ":
        other = as_gq(other)
        return GQ(self.re - other.re, self.im - other.im)

    def __rsub__(self, other) -> "GQ":
        return as_gq(other) - self

    def __neg__(self) -> "GQ":
        return GQ(-self.re, -self.im)

    def __mul__(self, other) -> "GQ":
        other = as_gq(other)
        return GQ(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other) -> "GQ":
        other = as_gq(other)
        n = other.re * other.re + other.im * other.im
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GQ(
            (self.re * other.re + self.im * other.im) / n,
            (self.im * other.re - self.re * other.im) / n,
        )

    def conj(self) -> "GQ":
        return GQ(self.re, -self.im)

    def norm2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    # -- predicates / conversions -------------------------------------------

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __str__(self) -> str:
        return f"({self.re})+({self.im})i"

    @staticmethod
    def parse(s: str) -> "GQ":
        """Parse the report form '(p/q)+(r/s)i' or a bare rational 'p/q'."""
        s = s.strip()
        if s.endswith("i") and ")+(" in s:
            left, right = s[:-1].split(")+(")
            return GQ(Fraction(left.lstrip("(")), Fraction(right.rstrip(")")))
        return GQ(Fraction(s))


GQ_ZERO = GQ()
GQ_ONE = GQ(Fraction(1))
GQ_I = GQ(Fraction(0), Fraction(1))

Scalar = Union[GQ, int, Fraction, complex, float]


def as_gq(v) -> GQ:
    if isinstance(v, GQ):
        return v
    if isinstance(v, (int, Fraction)):
        return GQ(_frac(v))
    if isinstance(v, complex):
        return GQ(Fraction(v.real), Fraction(v.imag))
    if isinstance(v, float):
        return GQ(Fraction(v))
    raise TypeError(f"cannot coerce {type(v).__name__} to GQ")


# ---------------------------------------------------------------------------
# Multivariate polynomials
# ---------------------------------------------------------------------------

def _grlex_key(expo: tuple) -> tuple:
    # graded lexicographic: total degree first, then lexicographic descending
    return (sum(expo), tuple(-e for e in expo))


class MultiPoly:
    """Sparse multivariate polynomial with GQ coefficients.

    Immutable by convention; no stored zero coefficients.
    """

    __slots__ = ("num_vars", "terms")

    def __init__(self, num_vars: int, terms: dict | None = None):
        self.num_vars = num_vars
        clean = {}
        if terms:
            for expo, c in terms.items():
                if len(expo) != num_vars:
                    raise ValueError("exponent vector length mismatch")
                c = as_gq(c)
                if not c.is_zero():
                    e = tuple(int(x) for x in expo)
                    if e in clean:
                        c = clean[e] + c
                        if c.is_zero():
                            del clean[e]
                            continue
                    clean[e] = c
        self.terms = clean

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(num_vars: int) -> "MultiPoly":
        return MultiPoly(num_vars)

    @staticmethod
    def constant(num_vars: int, c) -> "MultiPoly":
        return MultiPoly(num_vars, {(0,) * num_vars: as_gq(c)})

    @staticmethod
    def variable(i: int, num_vars: int) -> "MultiPoly":
        e = [0] * num_vars
        e[i] = 1
        return MultiPoly(num_vars, {tuple(e): GQ_ONE})

    @staticmethod
    def linear_form(coeffs: Sequence) -> "MultiPoly":
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            e = [0] * n
            e[i] = 1
            terms[tuple(e)] = as_gq(c)
        return MultiPoly(n, terms)

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "MultiPoly"):
        if self.num_vars != other.num_vars:
            raise ValueError(
                f"variable count mismatch: {self.num_vars} vs {other.num_vars}"
            )

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, GQ_ZERO) + c
            if s.is_zero():
                terms.pop(e, None)
            else:
                terms[e] = s
        out = MultiPoly.__new__(MultiPoly)
        out.num_vars = self.num_vars
        out.terms = terms
        return out

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __neg__(self) -> "MultiPoly":
        out = MultiPoly.__new__(MultiPoly)
        out.num_vars = self.num_vars
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                s = terms.get(e)
                s = c if s is None else s + c
                if s.is_zero():
                    terms.pop(e, None)
                else:
                    terms[e] = s
        out = MultiPoly.__new__(MultiPoly)
        out.num_vars = self.num_vars
        out.terms = terms
        return out

    def scale(self, c) -> "MultiPoly":
        c = as_gq(c)
        if c.is_zero():
            return MultiPoly.zero(self.num_vars)
        out = MultiPoly.__new__(MultiPoly)
        out.num_vars = self.num_vars
        out.terms = {e: t * c for e, t in self.terms.items()}
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MultiPoly)
            and self.num_vars == other.num_vars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.num_vars, frozenset(self.terms.items())))

    # -- calculus -----------------------------------------------------------

    def diff(self, i: int) -> "MultiPoly":
        terms = {}
        for e, c in self.terms.items():
            if e[i] > 0:
                ne = list(e)
                ne[i] -= 1
                terms[tuple(ne)] = c * e[i]
        return MultiPoly(self.num_vars, terms)

    # -- queries ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def is_real(self) -> bool:
        return all(c.im == 0 for c in self.terms.values())

    def conj_coeffs(self) -> "MultiPoly":
        out = MultiPoly.__new__(MultiPoly)
        out.num_vars = self.num_vars
        out.terms = {e: c.conj() for e, c in self.terms.items()}
        return out

    def support_vars(self) -> set:
        """Indices of variables actually appearing."""
        used = set()
        for e in self.terms:
            for i, p in enumerate(e):
                if p:
                    used.add(i)
        return used

    def coeff_norm(self) -> float:
        """Euclidean norm of the coefficient vector (float)."""
        return sum(float(c.norm2()) for c in self.terms.values()) ** 0.5

    # -- evaluation ---------------------------------------------------------

    def evaluate(self, point: Sequence):
        """Evaluate at a point.

        Exact (GQ result) when all coordinates are GQ/int/Fraction,
        complex float otherwise.
        """
        if len(point) != self.num_vars:
            raise ValueError("point length does not match num_vars")
        exact = all(isinstance(p, (GQ, int, Fraction)) for p in point)
        if exact:
            pt = [as_gq(p) for p in point]
            total = GQ_ZERO
            for e, c in self.terms.items():
                v = c
                for i, p in enumerate(e):
                    for _ in range(p):
                        v = v * pt[i]
                total = total + v
            return total
        pt = [complex(p) if not isinstance(p, (GQ,)) else complex(p) for p in point]
        total = 0j
        for e, c in self.terms.items():
            v = complex(c)
            for i, p in enumerate(e):
                if p:
                    v *= pt[i] ** p
            total += v
        return total

    # -- serialization ------------------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = " ".join(
                f"x{i}^{p}" if p > 1 else f"x{i}" for i, p in enumerate(e) if p
            )
            parts.append(f"{c} * {mono}" if mono else f"{c}")
        return " + ".join(parts)

    __repr__ = __str__


def poly_arith(a: MultiPoly, b: MultiPoly, op: str) -> MultiPoly:
    """Dispatch form of the exact polynomial ring operations."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def gradient(f: MultiPoly) -> list:
    return [f.diff(i) for i in range(f.num_vars)]


def hessian(f: MultiPoly) -> "PolyMatrix":
    n = f.num_vars
    grads = gradient(f)
    entries = [[grads[i].diff(j) for j in range(n)] for i in range(n)]
    return PolyMatrix(entries)


# ---------------------------------------------------------------------------
# Matrices of polynomials
# ---------------------------------------------------------------------------

class PolyMatrix:
    """A rows x cols grid of MultiPoly sharing a variable count."""

    __slots__ = ("rows", "cols", "num_vars", "entries")

    def __init__(self, entries: Sequence[Sequence[MultiPoly]]):
        self.entries = [list(row) for row in entries]
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.rows else 0
        nv = {p.num_vars for row in self.entries for p in row}
        if len(nv) > 1:
            raise ValueError("entries disagree on num_vars")
        self.num_vars = nv.pop() if nv else 0
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("ragged matrix")

    def __getitem__(self, rc):
        r, c = rc
        return self.entries[r][c]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix([[self.entries[r][c] for c in cols] for r in rows])

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(
            [[self.entries[r][c] for r in range(self.rows)] for c in range(self.cols)]
        )

    def conj_coeffs(self) -> "PolyMatrix":
        return PolyMatrix([[p.conj_coeffs() for p in row] for row in self.entries])

    def determinant(self) -> MultiPoly:
        """Exact determinant via memoised Laplace expansion along rows."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return MultiPoly.constant(self.num_vars, 1)
        cache: dict = {}

        def minor(row: int, cols: tuple) -> MultiPoly:
            # determinant of rows row..n-1 restricted to `cols`
            if row == n:
                return MultiPoly.constant(self.num_vars, 1)
            key = cols
            hit = cache.get((row, key))
            if hit is not None:
                return hit
            acc = MultiPoly.zero(self.num_vars)
            for k, c in enumerate(cols):
                entry = self.entries[row][c]
                if entry.is_zero():
                    continue
                rest = cols[:k] + cols[k + 1:]
                sub = minor(row + 1, rest)
                term = entry * sub
                acc = acc + (term if k % 2 == 0 else -term)
            cache[(row, key)] = acc
            return acc

        return minor(0, tuple(range(n)))

    def minor_det(self, drop_row: int, drop_col: int) -> MultiPoly:
        rows = [r for r in range(self.rows) if r != drop_row]
        cols = [c for c in range(self.cols) if c != drop_col]
        return self.submatrix(rows, cols).determinant()

    def evaluate(self, point: Sequence):
        """Evaluate entrywise; grid of GQ for exact points, complex otherwise."""
        return [[p.evaluate(point) for p in row] for row in self.entries]


def minors_3x3(m: PolyMatrix) -> list:
    """All 3x3 minors, in row-major order of deleted (row, col).

    For a 4x4 input: sixteen minors.  For 4x3 / 3x4 inputs: the four minors
    obtained by deleting each row / column.
    """
    if m.rows == 4 and m.cols == 4:
        return [m.minor_det(r, c) for r in range(4) for c in range(4)]
    if m.rows == 4 and m.cols == 3:
        return [m.submatrix([r for r in range(4) if r != dr], [0, 1, 2]).determinant()
                for dr in range(4)]
    if m.rows == 3 and m.cols == 4:
        return [m.submatrix([0, 1, 2], [c for c in range(4) if c != dc]).determinant()
                for dc in range(4)]
    raise ValueError(f"minors_3x3 expects 4x4, 4x3 or 3x4, got {m.rows}x{m.cols}")


# ---------------------------------------------------------------------------
# Exact linear algebra over the Gaussian rationals
# ---------------------------------------------------------------------------

def gq_matrix(rows: Sequence[Sequence]) -> list:
    return [[as_gq(v) for v in row] for row in rows]


def gq_rank(rows: Sequence[Sequence]) -> int:
    """Rank via exact Gaussian elimination with partial pivoting by norm."""
    m = gq_matrix(rows)
    nr = len(m)
    nc = len(m[0]) if nr else 0
    rank = 0
    row = 0
    for col in range(nc):
        piv = None
        for r in range(row, nr):
            if not m[r][col].is_zero():
                piv = r
                break
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        inv = m[row][col]
        for r in range(row + 1, nr):
            if m[r][col].is_zero():
                continue
            factor = m[r][col] / inv
            m[r] = [a - factor * b for a, b in zip(m[r], m[row])]
        row += 1
        rank += 1
        if row == nr:
            break
    return rank


def gq_nullspace(rows: Sequence[Sequence]) -> list:
    """Exact right nullspace basis vectors of an (m x n) GQ matrix."""
    m = gq_matrix(rows)
    nr = len(m)
    nc = len(m[0]) if nr else 0
    # reduced row echelon form
    pivots = []
    row = 0
    for col in range(nc):
        piv = None
        for r in range(row, nr):
            if not m[r][col].is_zero():
                piv = r
                break
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        inv = m[row][col]
        m[row] = [a / inv for a in m[row]]
        for r in range(nr):
            if r != row and not m[r][col].is_zero():
                factor = m[r][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[row])]
        pivots.append(col)
        row += 1
        if row == nr:
            break
    free = [c for c in range(nc) if c not in pivots]
    basis = []
    for fc in free:
        v = [GQ_ZERO] * nc
        v[fc] = GQ_ONE
        for prow, pcol in enumerate(pivots):
            v[pcol] = -m[prow][fc]
        basis.append(v)
    return basis


def gq_det(rows: Sequence[Sequence]) -> GQ:
    """Exact determinant of a square GQ matrix by elimination."""
    m = gq_matrix(rows)
    n = len(m)
    det = GQ_ONE
    for col in range(n):
        piv = None
        for r in range(col, n):
            if not m[r][col].is_zero():
                piv = r
                break
        if piv is None:
            return GQ_ZERO
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det = det * m[col][col]
        inv = m[col][col]
        for r in range(col + 1, n):
            if m[r][col].is_zero():
                continue
            factor = m[r][col] / inv
            m[r] = [a - factor * b for a, b in zip(m[r], m[col])]
    return det


def gq_principal_minor_sums(rows: Sequence[Sequence]) -> list:
    """e_k = sum of all principal k x k minors, k = 1..n (exact).

    For a Hermitian matrix these are the elementary symmetric functions of
    the (real) eigenvalues; all nonnegative iff the matrix is PSD.
    """
    m = gq_matrix(rows)
    n = len(m)
    sums = []
    for k in range(1, n + 1):
        total = GQ_ZERO
        for idx in itertools.combinations(range(n), k):
            sub = [[m[r][c] for c in idx] for r in idx]
            total = total + gq_det(sub)
        sums.append(total)
    return sums
