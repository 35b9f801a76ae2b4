"""Sextic curve structure of Hermitian determinantal quartic surfaces.

Dropping one column of the 4x4 pencil leaves a 4x3 matrix whose four 3x3
minors cut out a sextic space curve; dropping a row gives the conjugate
family.  Each rows/cols pair with matching indices shares a 3x3 minor whose
cubic surface, intersected with the quartic, is exactly the union of the two
curves.  The module verifies these pointwise statements and the
bilinear-swap construction that turns a 4x3 matrix linear in x into a 4x4
matrix linear in y with the same bilinear form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import homotopy
from .homotopy import FloatPoly, PolySystem
from .pencil import HermitianPencil
from .scalar_poly import GQ, MultiPoly, PolyMatrix, gradient
from .singularities import SolverConfig


@dataclass(frozen=True)
class CurveIdeal:
    generators: tuple          # four homogeneous cubic MultiPoly
    side: str                  # "rows" (4x3, drop a column) or "cols" (3x4, drop a row)
    index: int                 # the dropped column / row

    def scaled_residual(self, point: Sequence) -> float:
        """max over generators of |g(x)| / (||g|| * max(1,|x|)^3)."""
        pt = np.asarray(point, dtype=np.complex128)
        nx = max(1.0, float(np.linalg.norm(pt)))
        worst = 0.0
        for g in self.generators:
            norm = max(g.coeff_norm(), 1e-300)
            worst = max(worst, abs(complex(g.evaluate(pt))) / (norm * nx ** 3))
        return worst

    def conj(self) -> "CurveIdeal":
        other = "cols" if self.side == "rows" else "rows"
        return CurveIdeal(
            tuple(g.conj_coeffs() for g in self.generators), other, self.index
        )


def sextic_family(p: HermitianPencil, side: str, index: int) -> CurveIdeal:
    """The four 3x3 minors of a 4x3 (side='rows') or 3x4 (side='cols')
    submatrix of the pencil, dropping the given column / row."""
    if index not in range(4):
        raise ValueError("index must be 0..3")
    if side not in ("rows", "cols"):
        raise ValueError("side must be 'rows' or 'cols'")
    m = p.poly_matrix()
    keep = [i for i in range(4) if i != index]
    if side == "rows":
        sub = m.submatrix([0, 1, 2, 3], keep)
        gens = [
            sub.submatrix([r for r in range(4) if r != dr], [0, 1, 2]).determinant()
            for dr in range(4)
        ]
    else:
        sub = m.submatrix(keep, [0, 1, 2, 3])
        gens = [
            sub.submatrix([0, 1, 2], [c for c in range(4) if c != dc]).determinant()
            for dc in range(4)
        ]
    return CurveIdeal(tuple(gens), side, index)


def common_minor_surface(p: HermitianPencil, drop_row: int, drop_col: int) -> MultiPoly:
    """The cubic 3x3 minor shared by the drop-column and drop-row submatrices."""
    if drop_row not in range(4) or drop_col not in range(4):
        raise ValueError("indices must be 0..3")
    m = p.poly_matrix()
    rows = [i for i in range(4) if i != drop_row]
    cols = [j for j in range(4) if j != drop_col]
    return m.submatrix(rows, cols).determinant()


@dataclass
class IntersectionReport:
    n_samples: int
    residuals: list = field(default_factory=list)
    max_residual: float = 0.0
    tol: float = 1e-8

    @property
    def all_pass(self) -> bool:
        return len(self.residuals) >= self.n_samples and self.max_residual < self.tol


def _restrict_to_plane(f: MultiPoly, basis: list) -> MultiPoly:
    """f(B u) for a rational 4x3 basis matrix B; result in 3 variables."""
    forms = []
    for i in range(4):
        terms = {}
        for j in range(3):
            c = basis[i][j]
            if c:
                e = [0, 0, 0]
                e[j] = 1
                terms[tuple(e)] = GQ(Fraction(c))
        forms.append(MultiPoly(3, terms))
    total = MultiPoly(3, {})
    for e, c in f.terms.items():
        term = MultiPoly(3, {(0, 0, 0): c})
        for i, d in enumerate(e):
            for _ in range(d):
                term = term * forms[i]
        total = total + term
    return total


def _solve_plane_slice(
    fu: MultiPoly, su: MultiPoly, seed: int, cfg: SolverConfig
) -> list:
    """Certified common zeros of two curves in P^2, as 3-vectors."""
    f3 = FloatPoly.from_multipoly(fu, keep=[0, 1, 2])
    s3 = FloatPoly.from_multipoly(su, keep=[0, 1, 2])
    pts = []
    for chart in range(3):
        keep = [i for i in range(3) if i != chart]
        try:
            polys = [
                FloatPoly.from_multipoly(g, keep=keep, sub={chart: 1})
                for g in (fu, su)
            ]
        except ValueError:
            continue
        system = PolySystem(polys)
        if 0 in system.degrees:
            continue
        rng = np.random.default_rng(seed * 6007 + chart)
        result = homotopy.track_total_degree(system, rng, max_steps=cfg.max_steps,
                                             polish_tolerance=cfg.polish_tolerance)
        for sol in result.successes:
            # near-tangent slices give double roots whose double-precision
            # coordinates are only ~1e-8 accurate; extended precision fixes
            # the sample before the membership test
            sol = homotopy.mp_newton([fu, su], keep, {chart: 1}, sol)
            pt = np.insert(np.asarray(sol, dtype=np.complex128), chart, 1.0 + 0.0j)
            nx = max(1.0, float(np.linalg.norm(pt)))
            rf = abs(f3.eval(pt)[0]) / (max(f3.coeff_norm(), 1e-300) * nx ** 4)
            rs = abs(s3.eval(pt)[0]) / (max(s3.coeff_norm(), 1e-300) * nx ** 3)
            if rf < 1e-11 and rs < 1e-11:
                pts.append(pt)
    return pts


def complete_intersection_check(
    f: MultiPoly,
    s3: MultiPoly,
    c1: CurveIdeal,
    c2: CurveIdeal,
    n_samples: int = 20,
    seed: int = 0,
    tol: float = 1e-8,
) -> IntersectionReport:
    """Sample V(f) ∩ V(s3) with random rational plane slices and test that
    each sample lies on the curve of c1 or of c2."""
    if c1.index != c2.index:
        raise ValueError("c1 and c2 must drop matching indices")
    rng = np.random.default_rng(seed)
    report = IntersectionReport(n_samples=n_samples, tol=tol)
    attempts = 0
    while len(report.residuals) < n_samples and attempts < 40:
        attempts += 1
        basis = rng.integers(-9, 10, size=(4, 3)).tolist()
        if np.linalg.matrix_rank(np.array(basis, dtype=float)) < 3:
            continue
        fu = _restrict_to_plane(f, basis)
        su = _restrict_to_plane(s3, basis)
        if not fu.terms or not su.terms:
            continue
        B = np.array(basis, dtype=np.complex128)
        for u in _solve_plane_slice(fu, su, seed * 131 + attempts, SolverConfig()):
            x = B @ u
            r = min(c1.scaled_residual(x), c2.scaled_residual(x))
            report.residuals.append(float(r))
            if len(report.residuals) >= n_samples:
                break
    report.max_residual = max(report.residuals) if report.residuals else float("inf")
    return report


def bilinear_swap(a1: PolyMatrix) -> PolyMatrix:
    """Exchange the roles of coefficients and variables of a matrix of
    linear forms: for A (r x m, linear in n variables) return A' (r x n,
    linear in m variables) with A(x) y = A'(y) x identically."""
    r, m, n = a1.rows, a1.cols, a1.num_vars
    for row in a1.entries:
        for p in row:
            if any(sum(e) != 1 for e in p.terms):
                raise ValueError("bilinear_swap requires homogeneous linear entries")
    out = []
    for i in range(r):
        out_row = []
        for k in range(n):
            terms = {}
            for j in range(m):
                e_k = tuple(1 if t == k else 0 for t in range(n))
                c = a1.entries[i][j].terms.get(e_k)
                if c is not None and not c.is_zero():
                    e_j = tuple(1 if t == j else 0 for t in range(m))
                    terms[e_j] = c
            out_row.append(MultiPoly(m, terms))
        out.append(out_row)
    return PolyMatrix(out)


def plane_quartic_smooth(q: MultiPoly, cfg: SolverConfig = SolverConfig()) -> bool:
    """Whether a plane quartic curve V(q) in P^2 is smooth.

    Solves the gradient system by homotopy in the charts u0 = 1 and u1 = 1
    (two partials each, Bezout 9) and checks the remaining point [0:0:1]
    directly; smooth iff no certified gradient zero exists.
    """
    if q.num_vars != 3:
        raise ValueError("expected a polynomial in three variables")
    if not q.terms:
        raise ValueError("the zero polynomial does not define a curve")
    if not (q.is_homogeneous() and q.degree() == 4):
        raise ValueError("expected a homogeneous quartic")
    grads_exact = gradient(q)
    grads = [FloatPoly.from_multipoly(g, keep=[0, 1, 2]) for g in grads_exact]
    if any(g.degree() < 0 for g in grads):
        return False

    # the single point not covered by the two charts
    e2 = [GQ(0), GQ(0), GQ(1)]
    if all(g.evaluate(e2).is_zero() for g in grads_exact):
        return False

    for chart in (0, 1):
        keep = [i for i in range(3) if i != chart]
        polys = [
            FloatPoly.from_multipoly(grads_exact[i], keep=keep, sub={chart: 1})
            for i in keep
        ]
        system = PolySystem(polys)
        rng = np.random.default_rng(cfg.seed * 4099 + chart)
        result = homotopy.track_total_degree(system, rng, max_steps=cfg.max_steps,
                                             polish_tolerance=cfg.polish_tolerance)
        for sol in result.successes:
            pt = np.insert(sol, chart, 1.0 + 0.0j)
            nx = max(1.0, float(np.linalg.norm(pt)))
            worst = max(
                abs(g.eval(pt)[0]) / (max(g.coeff_norm(), 1e-300) * nx ** 3)
                for g in grads
            )
            if worst < cfg.path_tolerance:
                return False
    return True
