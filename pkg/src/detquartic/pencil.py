"""Hermitian 4x4 pencils M(x) = M0 x0 + M1 x1 + M2 x2 + M3 x3.

Provides exact evaluation, the determinant quartic, rank and definiteness
queries, and the 8x8 real symmetric companion pencil obtained by splitting
each coefficient into real and imaginary parts.  The companion pencil
satisfies det(A8(x)) = f(x)^2 exactly, which is verified as a polynomial
identity rather than assumed.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .scalar_poly import (
    GQ,
    GQ_ZERO,
    MultiPoly,
    PolyMatrix,
    as_gq,
    gq_det,
    gq_rank,
)


class Definiteness(enum.Enum):
    POSITIVE_DEFINITE = "positive_definite"
    NEGATIVE_DEFINITE = "negative_definite"
    INDEFINITE_OR_SINGULAR = "indefinite_or_singular"

    @property
    def is_definite(self) -> bool:
        return self is not Definiteness.INDEFINITE_OR_SINGULAR


class HermitianMatrix:
    """Exact 4x4 Hermitian matrix over the Gaussian rationals."""

    __slots__ = ("entries",)

    def __init__(self, entries: Sequence[Sequence]):
        grid = [[as_gq(v) for v in row] for row in entries]
        if len(grid) != 4 or any(len(r) != 4 for r in grid):
            raise ValueError("HermitianMatrix must be 4x4")
        for i in range(4):
            if grid[i][i].im != 0:
                raise ValueError(f"diagonal entry ({i},{i}) has nonzero imaginary part")
            for j in range(i + 1, 4):
                if grid[i][j] != grid[j][i].conj():
                    raise ValueError(f"entries ({i},{j}) and ({j},{i}) are not conjugate")
        self.entries = grid

    def __getitem__(self, rc):
        r, c = rc
        return self.entries[r][c]

    def __eq__(self, other) -> bool:
        return isinstance(other, HermitianMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(tuple(tuple(row) for row in self.entries))

    def is_zero(self) -> bool:
        return all(v.is_zero() for row in self.entries for v in row)

    def scale(self, c) -> "HermitianMatrix":
        c = as_gq(c)
        if c.im != 0:
            raise ValueError("scaling a Hermitian matrix by a non-real scalar")
        return HermitianMatrix([[v * c for v in row] for row in self.entries])

    def add(self, other: "HermitianMatrix") -> "HermitianMatrix":
        return HermitianMatrix(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)]
        )

    def rank(self) -> int:
        return gq_rank(self.entries)

    def real_part(self) -> list:
        return [[v.re for v in row] for row in self.entries]

    def imag_part(self) -> list:
        return [[v.im for v in row] for row in self.entries]

    def to_numpy(self) -> np.ndarray:
        return np.array([[complex(v) for v in row] for row in self.entries])

    @staticmethod
    def zero() -> "HermitianMatrix":
        return HermitianMatrix([[0] * 4 for _ in range(4)])

    @staticmethod
    def identity() -> "HermitianMatrix":
        return HermitianMatrix([[1 if i == j else 0 for j in range(4)] for i in range(4)])


@dataclass(frozen=True)
class RealSymmetricPencil:
    """Four real symmetric 8x8 Fraction matrices (x0..x3 coefficients)."""

    coeffs: tuple

    def poly_matrix(self) -> PolyMatrix:
        entries = []
        for i in range(8):
            row = []
            for j in range(8):
                terms = {}
                for k in range(4):
                    c = self.coeffs[k][i][j]
                    if c != 0:
                        e = [0, 0, 0, 0]
                        e[k] = 1
                        terms[tuple(e)] = GQ(c)
                row.append(MultiPoly(4, terms))
            entries.append(row)
        return PolyMatrix(entries)

    def evaluate(self, x: Sequence) -> list:
        """8x8 grid; Fractions for rational x, floats otherwise."""
        exact = all(isinstance(v, (int, Fraction)) for v in x)
        if exact:
            xs = [Fraction(v) for v in x]
            return [
                [sum(xs[k] * self.coeffs[k][i][j] for k in range(4)) for j in range(8)]
                for i in range(8)
            ]
        xs = [float(v) for v in x]
        out = np.zeros((8, 8))
        for k in range(4):
            out += xs[k] * np.array([[float(v) for v in row] for row in self.coeffs[k]])
        return out

    def rank_at(self, x: Sequence) -> int:
        """Exact rank at a rational point."""
        return gq_rank(self.evaluate(x))


class HermitianPencil:
    """A Hermitian matrix pencil in four variables.

    Two-variable examples are represented with zero coefficient slots.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[HermitianMatrix]):
        coeffs = tuple(coeffs)
        if len(coeffs) != 4:
            raise ValueError("HermitianPencil needs exactly four coefficient matrices")
        for m in coeffs:
            if not isinstance(m, HermitianMatrix):
                raise TypeError("pencil coefficients must be HermitianMatrix")
        self.coeffs = coeffs

    # -- symbolic views ------------------------------------------------------

    def poly_matrix(self) -> PolyMatrix:
        entries = []
        for i in range(4):
            row = []
            for j in range(4):
                terms = {}
                for k in range(4):
                    c = self.coeffs[k][i, j]
                    if not c.is_zero():
                        e = [0, 0, 0, 0]
                        e[k] = 1
                        terms[tuple(e)] = c
                row.append(MultiPoly(4, terms))
            entries.append(row)
        return PolyMatrix(entries)

    def determinant(self) -> MultiPoly:
        """The quartic f = det M(x); coefficients are exactly real."""
        f = self.poly_matrix().determinant()
        if not f.is_real():
            raise AssertionError(
                "determinant of a Hermitian pencil has a nonzero imaginary part"
            )
        return f

    # -- pointwise -----------------------------------------------------------

    def evaluate(self, x: Sequence):
        """4x4 grid of GQ (exact x) or a complex numpy array (float x)."""
        exact = all(isinstance(v, (GQ, int, Fraction)) for v in x)
        if exact:
            xs = [as_gq(v) for v in x]
            out = [[GQ_ZERO] * 4 for _ in range(4)]
            for k in range(4):
                if xs[k].is_zero():
                    continue
                for i in range(4):
                    for j in range(4):
                        out[i][j] = out[i][j] + xs[k] * self.coeffs[k][i, j]
            return out
        xs = [complex(v) for v in x]
        out = np.zeros((4, 4), dtype=complex)
        for k in range(4):
            out += xs[k] * self.coeffs[k].to_numpy()
        return out

    def rank_at(self, x: Sequence, tol: float = 1e-8) -> int:
        """Exact rank for Gaussian-rational x, singular-value rank otherwise."""
        if not any(
            (isinstance(v, (int, Fraction)) and v != 0)
            or (isinstance(v, GQ) and not v.is_zero())
            or (isinstance(v, (float, complex)) and v != 0)
            for v in x
        ):
            raise ValueError("rank_at requires a nonzero point")
        m = self.evaluate(x)
        if isinstance(m, list):
            return gq_rank(m)
        sv = np.linalg.svd(m, compute_uv=False)
        if sv[0] == 0:
            return 0
        return int(np.sum(sv > tol * sv[0]))

    def is_definite_at(self, e: Sequence) -> Definiteness:
        """Exact Sylvester test at a real rational point."""
        evec = []
        for v in e:
            g = as_gq(v) if isinstance(v, (GQ, int, Fraction)) else None
            if g is None or g.im != 0:
                raise ValueError("definiteness point must be real and rational")
            evec.append(g)
        if all(v.is_zero() for v in evec):
            raise ValueError("definiteness point must be nonzero")
        m = self.evaluate(evec)
        if _sylvester_pd(m):
            return Definiteness.POSITIVE_DEFINITE
        neg = [[-v for v in row] for row in m]
        if _sylvester_pd(neg):
            return Definiteness.NEGATIVE_DEFINITE
        return Definiteness.INDEFINITE_OR_SINGULAR

    # -- realification -------------------------------------------------------

    def realify(self) -> RealSymmetricPencil:
        """The 8x8 real symmetric pencil [[A, -B], [B, A]] per coefficient."""
        out = []
        for m in self.coeffs:
            a = m.real_part()
            b = m.imag_part()
            big = [[Fraction(0)] * 8 for _ in range(8)]
            for i in range(4):
                for j in range(4):
                    big[i][j] = a[i][j]
                    big[i + 4][j + 4] = a[i][j]
                    big[i][j + 4] = -b[i][j]
                    big[i + 4][j] = b[i][j]
            out.append(tuple(tuple(r) for r in big))
        return RealSymmetricPencil(tuple(out))

    def verify_square_identity(self) -> bool:
        """det(A8(x)) == f(x)^2 as exact polynomials."""
        f = self.determinant()
        det8 = self.realify().poly_matrix().determinant()
        return det8 == f * f

    # -- structure -----------------------------------------------------------

    def conj_transpose_coeffs(self) -> "HermitianPencil":
        # Hermitian coefficients are fixed points of conjugate transposition.
        return HermitianPencil(
            tuple(
                HermitianMatrix(
                    [[m[j, i].conj() for j in range(4)] for i in range(4)]
                )
                for m in self.coeffs
            )
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, HermitianPencil) and self.coeffs == other.coeffs

    # -- serialization -------------------------------------------------------

    def to_json_dict(self, name: str = "", definite_point=None, claimed=None) -> dict:
        d = {
            "name": name,
            "vars": 4,
            "coeffs": [
                [
                    [{"re": str(v.re), "im": str(v.im)} for v in row]
                    for row in m.entries
                ]
                for m in self.coeffs
            ],
        }
        if definite_point is not None:
            d["definite_point"] = [str(Fraction(v)) for v in definite_point]
        if claimed is not None:
            eta, rho, sigma = claimed
            d["claimed"] = {"eta": eta, "rho": rho, "sigma": sigma}
        return d

    @staticmethod
    def from_json_dict(d: dict) -> "HermitianPencil":
        if d.get("vars", 4) != 4:
            raise ValueError("pencil JSON must declare vars = 4")
        coeffs = []
        for m in d["coeffs"]:
            coeffs.append(
                HermitianMatrix(
                    [[GQ(Fraction(v["re"]), Fraction(v["im"])) for v in row] for row in m]
                )
            )
        return HermitianPencil(coeffs)

    def dumps(self, **kw) -> str:
        return json.dumps(self.to_json_dict(**kw), indent=2, sort_keys=True)

    @staticmethod
    def loads(s: str) -> "HermitianPencil":
        return HermitianPencil.from_json_dict(json.loads(s))


def _sylvester_pd(m: list) -> bool:
    """Positive definiteness of an exact Hermitian GQ matrix."""
    for k in range(1, 5):
        d = gq_det([row[:k] for row in m[:k]])
        if d.im != 0:
            raise AssertionError("leading principal minor of a Hermitian matrix not real")
        if d.re <= 0:
            return False
    return True


def eval_pencil(p: HermitianPencil, x: Sequence):
    return p.evaluate(x)


def pencil_det(p: HermitianPencil) -> MultiPoly:
    return p.determinant()


def rank_at(p: HermitianPencil, x: Sequence, tol: float = 1e-8) -> int:
    return p.rank_at(x, tol)


def is_definite_at(p: HermitianPencil, e: Sequence) -> Definiteness:
    return p.is_definite_at(e)


def realify(p: HermitianPencil) -> RealSymmetricPencil:
    return p.realify()


def verify_square_identity(p: HermitianPencil) -> bool:
    return p.verify_square_identity()
