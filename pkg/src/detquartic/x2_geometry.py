"""Hermitian matrices as points of CP^15 and quadrics in P^7.

A Hermitian 4x4 matrix has 16 real coordinates: ten real parts x_ij (i <= j)
and six imaginary parts y_ij (i < j).  Complexifying these gives CP^15, and
each point corresponds to a symmetric 8x8 quadric whose restriction to a
fixed pair of conjugate 3-spaces (the base locus) vanishes.  Real rank-4
quadrics in this web are parameterized by four linear forms attached to a
line in the base locus; mapping such a quadric back gives a rank-2 Hermitian
matrix.  Tangent-space ranks at rank-2 points certify the codimension of the
rank-2 locus.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .pencil import HermitianMatrix
from .scalar_poly import GQ, as_gq, gq_rank

# coordinate order: ten xs then six ys
X_INDEX = [(0, 0), (0, 1), (0, 2), (0, 3), (1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 3)]
Y_INDEX = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
COORD_NAMES = [f"x{i}{j}" for i, j in X_INDEX] + [f"y{i}{j}" for i, j in Y_INDEX]


def _is_exact(v) -> bool:
    return isinstance(v, (int, Fraction, GQ))


@dataclass(frozen=True)
class CP15Point:
    """A point of CP^15 in the (x_ij, y_ij) coordinates."""

    coords: tuple  # 16 scalars, order per COORD_NAMES

    def __post_init__(self):
        if len(self.coords) != 16:
            raise ValueError("CP15Point needs 16 coordinates")
        if all(_zero(v) for v in self.coords):
            raise ValueError("CP15Point must be nonzero")

    def x(self, i: int, j: int):
        i, j = min(i, j), max(i, j)
        return self.coords[X_INDEX.index((i, j))]

    def y(self, i: int, j: int):
        if i == j:
            raise ValueError("y coordinates need i < j")
        sign = 1 if i < j else -1
        i, j = min(i, j), max(i, j)
        v = self.coords[10 + Y_INDEX.index((i, j))]
        return v if sign == 1 else _neg(v)


def _zero(v) -> bool:
    if isinstance(v, GQ):
        return v.is_zero()
    return v == 0


def _neg(v):
    return -v


@dataclass(frozen=True)
class Quadric8:
    """A quadric in P^7 given by a symmetric 8x8 gram matrix."""

    gram: tuple  # 8 rows of 8 scalars

    def __post_init__(self):
        g = self.gram
        if len(g) != 8 or any(len(r) != 8 for r in g):
            raise ValueError("gram must be 8x8")
        for i in range(8):
            for j in range(i + 1, 8):
                if _is_exact(g[i][j]) and _is_exact(g[j][i]):
                    if as_gq(g[i][j]) != as_gq(g[j][i]):
                        raise ValueError("gram must be symmetric")
                elif abs(complex(g[i][j]) - complex(g[j][i])) > 1e-9 * (
                    1.0 + abs(complex(g[i][j]))
                ):
                    raise ValueError("gram must be symmetric")

    def is_exact(self) -> bool:
        return all(_is_exact(v) for row in self.gram for v in row)

    def rank(self, tol: float = 1e-8) -> int:
        if self.is_exact():
            return gq_rank([list(r) for r in self.gram])
        m = self.to_numpy()
        sv = np.linalg.svd(m, compute_uv=False)
        if sv[0] == 0:
            return 0
        return int(np.sum(sv > tol * sv[0]))

    def to_numpy(self) -> np.ndarray:
        return np.array([[complex(v) for v in row] for row in self.gram])


def hermitian_to_cp15(h: HermitianMatrix) -> CP15Point:
    xs = [h[i, j].re for i, j in X_INDEX]
    ys = [h[i, j].im for i, j in Y_INDEX]
    return CP15Point(tuple(xs + ys))


def cp15_to_quadric(p: CP15Point) -> Quadric8:
    """The symmetric 8x8 matrix [[X, -Y], [Y, X]] in the display layout."""
    g = [[Fraction(0)] * 8 for _ in range(8)]
    zero = p.coords[0] * 0
    for i in range(4):
        for j in range(4):
            xv = p.x(i, j)
            g[i][j] = xv
            g[i + 4][j + 4] = xv
            if i == j:
                g[i][j + 4] = zero
                g[i + 4][j] = zero
            else:
                yv = p.y(i, j)
                g[i][j + 4] = _neg(yv)
                g[i + 4][j] = yv
    return Quadric8(tuple(tuple(r) for r in g))


# --------------------------------------------------------------------------
# base locus
# --------------------------------------------------------------------------

def _restrict(gram, basis) -> list:
    """B^T G B for an 8x4 basis with GQ entries."""
    G = [[as_gq(v) for v in row] for row in gram]
    B = [[as_gq(v) for v in row] for row in basis]
    GB = [
        [sum((G[i][k] * B[k][j] for k in range(8)), GQ(0)) for j in range(4)]
        for i in range(8)
    ]
    return [
        [sum((B[k][i] * GB[k][j] for k in range(8)), GQ(0)) for j in range(4)]
        for i in range(4)
    ]


def base_locus_check(q: Quadric8, tol: float = 1e-9) -> bool:
    """Whether the quadric vanishes on both conjugate 3-spaces of the base
    locus V(y_j + i y_{j+4}) and V(y_j - i y_{j+4})."""
    i_unit = GQ(Fraction(0), Fraction(1))
    for sign in (1, -1):
        # parameterize y_{j+4} = s_j, y_j = -(sign i) s_j
        basis = [[GQ(0)] * 4 for _ in range(8)]
        for j in range(4):
            basis[j][j] = _neg(i_unit) if sign == 1 else i_unit
            basis[j + 4][j] = GQ(1)
        if q.is_exact():
            r = _restrict(q.gram, basis)
            if any(not v.is_zero() for row in r for v in row):
                return False
        else:
            g = q.to_numpy()
            b = np.array([[complex(v) for v in row] for row in basis])
            r = b.T @ g @ b
            scale = max(np.abs(g).max(), 1e-300)
            if np.abs(r).max() > tol * scale:
                return False
    return True


# --------------------------------------------------------------------------
# lines in the base locus and the web of rank-4 quadrics
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class LineParams:
    """Two complex hyperplanes sum (a_j + i b_j) y_j and sum (c_j + i d_j) y_j
    cutting a line out of the base-locus 3-space."""

    a: tuple
    b: tuple
    c: tuple
    d: tuple

    def __post_init__(self):
        for v in (self.a, self.b, self.c, self.d):
            if len(v) != 8:
                raise ValueError("LineParams vectors must have length 8")


@dataclass(frozen=True)
class EllForms:
    """Four real linear forms in y_0..y_7, as coefficient rows."""

    ell: tuple  # 4 rows of 8 rationals

    def matrix(self) -> list:
        return [list(r) for r in self.ell]


def ell_forms(lp: LineParams) -> EllForms:
    """The four real forms cutting the unique real 3-space through the line."""
    a = [Fraction(v) for v in lp.a]
    b = [Fraction(v) for v in lp.b]
    c = [Fraction(v) for v in lp.c]
    d = [Fraction(v) for v in lp.d]
    rows = []
    for u, w in ((a, b), (c, d)):
        r0 = [Fraction(0)] * 8
        r1 = [Fraction(0)] * 8
        for j in range(4):
            p = u[j] - w[j + 4]
            m = u[j + 4] + w[j]
            r0[j] += p
            r0[j + 4] += m
            r1[j + 4] += p
            r1[j] -= m
        rows.append(r0)
        rows.append(r1)
    ells = [rows[0], rows[1], rows[2], rows[3]]
    mat = [[GQ(v) for v in row] for row in ells]
    if gq_rank(mat) < 4:
        raise ValueError("degenerate line: the four forms are not independent")
    return EllForms(tuple(tuple(r) for r in ells))


def web_quadric(ef: EllForms, a, b, c, d) -> Quadric8:
    """Gram matrix of a(l0^2+l1^2) + b(l0 l2 + l1 l3) + c(l0 l3 - l1 l2)
    + d(l2^2+l3^2); real, rank <= 4, rank exactly 4 iff 4ad - b^2 - c^2 != 0."""
    a, b, c, d = Fraction(a), Fraction(b), Fraction(c), Fraction(d)
    K = [
        [a, 0, b / 2, c / 2],
        [0, a, -c / 2, b / 2],
        [b / 2, -c / 2, d, 0],
        [c / 2, b / 2, 0, d],
    ]
    L = [[Fraction(v) for v in row] for row in ef.ell]
    KL = [[sum(K[i][k] * L[k][j] for k in range(4)) for j in range(8)] for i in range(4)]
    G = [
        [sum(L[k][i] * KL[k][j] for k in range(4)) for j in range(8)]
        for i in range(8)
    ]
    return Quadric8(tuple(tuple(r) for r in G))


def quadric_to_hermitian(q: Quadric8, tol: float = 1e-9) -> HermitianMatrix:
    """Invert the realification: recover M = X + iY from [[X, -Y], [Y, X]].

    Float grams are converted through exact binary rationals after the block
    structure is verified within tol, so the returned matrix's realification
    reproduces the (symmetrized) input bit for bit.
    """
    g = q.to_numpy()
    scale = max(np.abs(g).max(), 1e-300)
    A = g[:4, :4]
    D = g[4:, 4:]
    TR = g[:4, 4:]
    BL = g[4:, :4]
    ok = (
        np.abs(A - D).max() <= tol * scale
        and np.abs(TR + BL).max() <= tol * scale
        and np.abs(BL + BL.T).max() <= tol * scale
        and np.abs(A - A.T).max() <= tol * scale
        and np.abs(np.diag(TR)).max() <= tol * scale
        and np.abs(g.imag).max() <= tol * scale
    )
    if not ok:
        raise ValueError("gram does not have the realified Hermitian block structure")
    if q.is_exact():
        X = [[Fraction(q.gram[i][j]) for j in range(4)] for i in range(4)]
        Xd = [[Fraction(q.gram[i + 4][j + 4]) for j in range(4)] for i in range(4)]
        Y = [[Fraction(q.gram[i + 4][j]) for j in range(4)] for i in range(4)]
        sx = [[(X[i][j] + X[j][i] + Xd[i][j] + Xd[j][i]) / 4 for j in range(4)] for i in range(4)]
        sy = [[(Y[i][j] - Y[j][i]) / 2 for j in range(4)] for i in range(4)]
    else:
        sxf = (A + A.T + D + D.T).real / 4
        syf = (BL - BL.T).real / 2
        sx = [[Fraction(float(sxf[i][j])) for j in range(4)] for i in range(4)]
        sy = [[Fraction(float(syf[i][j])) for j in range(4)] for i in range(4)]
    return HermitianMatrix(
        [[GQ(sx[i][j], sy[i][j]) for j in range(4)] for i in range(4)]
    )


# --------------------------------------------------------------------------
# tangent space of the rank-2 locus
# --------------------------------------------------------------------------

def _entry_derivative(i: int, j: int, coord: int) -> GQ:
    """d m_ij / d coordinate for the general Hermitian matrix."""
    if coord < 10:
        a, b = X_INDEX[coord]
        if (i, j) == (a, b) or (i, j) == (b, a):
            return GQ(1)
        return GQ(0)
    a, b = Y_INDEX[coord - 10]
    if (i, j) == (a, b):
        return GQ(Fraction(0), Fraction(1))
    if (i, j) == (b, a):
        return GQ(Fraction(0), Fraction(-1))
    return GQ(0)


def x2_tangent_codim(h: HermitianMatrix) -> int:
    """Rank of the Jacobian of the sixteen 3x3 minors at a rank-2 matrix,
    taken in the 16 complexified CP^15 coordinates (4 at smooth points of
    the rank-2 locus)."""
    if h.rank() != 2:
        raise ValueError("x2_tangent_codim requires a matrix of rank exactly 2")
    jac = []
    for dr in range(4):
        rows = [r for r in range(4) if r != dr]
        for dc in range(4):
            cols = [c for c in range(4) if c != dc]
            # cofactors of the 3x3 submatrix at h
            cof = [[GQ(0)] * 3 for _ in range(3)]
            for p in range(3):
                for qq in range(3):
                    rr = [rows[t] for t in range(3) if t != p]
                    cc = [cols[t] for t in range(3) if t != qq]
                    det2 = (
                        h[rr[0], cc[0]] * h[rr[1], cc[1]]
                        - h[rr[0], cc[1]] * h[rr[1], cc[0]]
                    )
                    cof[p][qq] = det2 if (p + qq) % 2 == 0 else _neg(det2)
            row = []
            for coord in range(16):
                total = GQ(0)
                for p in range(3):
                    for qq in range(3):
                        dm = _entry_derivative(rows[p], cols[qq], coord)
                        if not dm.is_zero():
                            total = total + cof[p][qq] * dm
                row.append(total)
            jac.append(row)
    return gq_rank(jac)
