"""Singular points of quartic surfaces and their (eta, rho, sigma) profiles.

The singular locus of V(f) in P^3 is found numerically: in each affine chart
x_k = 1 the three partial derivatives with index != k form a square cubic
system (the fourth partial vanishes automatically by the Euler relation),
solved by total-degree homotopy continuation.  Endpoints are certified
against the full scaled gradient, deduplicated projectively, and classified
by pencil corank and Hessian rank.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import homotopy
from .homotopy import FloatPoly, PolySystem
from .pencil import HermitianPencil
from .scalar_poly import MultiPoly, gradient, hessian


class DegenerateSurfaceError(Exception):
    """The surface has non-isolated or non-nodal singularities."""

    def __init__(self, message: str, points=None):
        super().__init__(message)
        self.points = points or []


class NotASingularPointError(Exception):
    pass


@dataclass(frozen=True)
class SolverConfig:
    seed: int = 0
    path_tolerance: float = 1e-8
    polish_tolerance: float = 1e-12
    dedupe_angle: float = 1e-6
    reality_tolerance: float = 1e-6
    max_steps: int = 20000


class ProjectivePointC:
    """A point of P^3(C), normalized so its largest-modulus coordinate is 1."""

    __slots__ = ("coords",)

    def __init__(self, coords: Sequence):
        v = np.asarray(coords, dtype=np.complex128).reshape(4)
        norms = np.abs(v)
        k = int(np.argmax(norms))
        if norms[k] == 0:
            raise ValueError("zero vector is not a projective point")
        self.coords = v / v[k]

    def is_real(self, tol: float = 1e-6) -> bool:
        return bool(np.max(np.abs(self.coords.imag)) < tol)

    def real_coords(self) -> np.ndarray:
        return self.coords.real.copy()

    def conjugate(self) -> "ProjectivePointC":
        return ProjectivePointC(self.coords.conj())

    def angle_to(self, other: "ProjectivePointC") -> float:
        """Fubini-Study distance."""
        u, v = self.coords, other.coords
        c = abs(np.vdot(u, v)) / (np.linalg.norm(u) * np.linalg.norm(v))
        return float(np.arccos(min(c, 1.0)))

    def sort_key(self):
        return tuple(
            (round(z.real, 9) + 0.0, round(z.imag, 9) + 0.0) for z in self.coords
        )

    def __repr__(self):
        return f"ProjectivePointC({list(self.coords)})"


@dataclass
class SingularPoint:
    point: ProjectivePointC
    pencil_corank: int
    hessian_rank: int
    is_real: bool
    residual: float
    on_spectrahedron: Optional[bool] = None

    @property
    def is_essential(self) -> bool:
        return self.pencil_corank >= 2

    @property
    def is_node(self) -> bool:
        return self.hessian_rank == 3


@dataclass
class Profile:
    eta: int
    rho: int
    sigma: Optional[int]
    degenerate: bool
    points: list = field(default_factory=list)
    warnings: list = field(default_factory=list)


def _float_rank(m: np.ndarray, tol: float = 1e-8) -> int:
    sv = np.linalg.svd(m, compute_uv=False)
    if sv.size == 0 or sv[0] == 0:
        return 0
    return int(np.sum(sv > tol * sv[0]))


def _grad_residual(grads: list, pt: np.ndarray) -> float:
    """Scaled sup-norm of the gradient at a point of C^4."""
    nx = max(1.0, float(np.linalg.norm(pt)))
    worst = 0.0
    for g in grads:
        denom = max(g.coeff_norm(), 1e-300) * nx ** 3
        worst = max(worst, abs(g.eval(pt)[0]) / denom)
    return worst


def _refine_point(
    grads_exact: list, p: ProjectivePointC, digits: int = 50, iters: int = 120
) -> ProjectivePointC:
    """High-precision Newton polish of a singular point.

    Works in the affine chart of the largest coordinate on the three partial
    derivatives with the other indices.  Multiple roots make double-precision
    Newton stagnate around 1e-5; extended precision pushes the linear
    convergence far below the deduplication angle, so path endpoints that
    belong to one multiple root collapse to one representative.
    """
    chart = int(np.argmax(np.abs(p.coords)))
    keep = [i for i in range(4) if i != chart]
    polys = [grads_exact[i] for i in keep]
    x0 = [p.coords[i] for i in keep]
    best = homotopy.mp_newton(polys, keep, {chart: 1}, x0, digits=digits, iters=iters)
    coords = [None] * 4
    coords[chart] = 1.0 + 0.0j
    for idx, v in zip(keep, best):
        coords[idx] = v
    return ProjectivePointC(coords)


def solve_gradient_system(f: MultiPoly, config: SolverConfig = SolverConfig()):
    """All isolated singular points of V(f), as certified projective points.

    Raises DegenerateSurfaceError when the singular locus is visibly not a
    finite set of nodes (more than 27 distinct points, an identically zero
    partial derivative, or a certified point with Hessian rank below 3).
    """
    if f.num_vars != 4:
        raise ValueError("expected a polynomial in four variables")
    if not f.terms:
        raise ValueError("the zero polynomial does not define a surface")
    if not (f.is_homogeneous() and f.degree() == 4):
        raise ValueError("expected a homogeneous quartic")

    grads_exact = gradient(f)
    grads = [FloatPoly.from_multipoly(g, keep=[0, 1, 2, 3]) for g in grads_exact]
    if any(g.degree() < 0 for g in grads):
        raise DegenerateSurfaceError(
            "a partial derivative vanishes identically; the singular locus "
            "is not a finite set of nodes"
        )

    found: list[ProjectivePointC] = []
    warnings: list[str] = []
    for chart in range(4):
        rng = np.random.default_rng(config.seed * 7919 + chart)
        keep = [i for i in range(4) if i != chart]
        polys = [
            FloatPoly.from_multipoly(grads_exact[i], keep=keep, sub={chart: 1})
            for i in keep
        ]
        system = PolySystem(polys)
        result = homotopy.track_total_degree(
            system,
            rng,
            max_steps=config.max_steps,
            polish_tolerance=config.polish_tolerance,
        )
        warnings.extend(f"chart x{chart}: {w}" for w in result.warnings)
        for sol in result.successes:
            pt = np.insert(sol, chart, 1.0 + 0.0j)
            if _grad_residual(grads, pt) < config.path_tolerance:
                found.append(ProjectivePointC(pt))

    # projective deduplication
    distinct: list[ProjectivePointC] = []
    for p in sorted(found, key=ProjectivePointC.sort_key):
        if all(p.angle_to(q) > config.dedupe_angle for q in distinct):
            distinct.append(p)

    # Double-precision Newton stagnates around 1e-7 at multiple roots, which
    # passes certification but is too coarse for corank/Hessian
    # classification and leaves satellite near-duplicates.  Refine every
    # point in extended precision and deduplicate again.
    refined = [_refine_point(grads_exact, p) for p in distinct]
    refined = [
        p for p in refined
        if _grad_residual(grads, p.coords) < config.path_tolerance
    ]
    distinct = []
    for p in sorted(refined, key=ProjectivePointC.sort_key):
        if all(p.angle_to(q) > config.dedupe_angle for q in distinct):
            distinct.append(p)

    if len(distinct) > 27:
        raise DegenerateSurfaceError(
            f"{len(distinct)} distinct singular points exceed the quartic "
            "node bound of 27; the singular locus is not isolated nodes",
            points=distinct,
        )

    hess = hessian(f)
    for p in distinct:
        hmat = np.array(
            [[hess[i, j].evaluate(p.coords) for j in range(4)] for i in range(4)]
        )
        if _float_rank(hmat) < 3:
            raise DegenerateSurfaceError(
                "a singular point has Hessian rank below 3 (not a node)",
                points=distinct,
            )

    return distinct, warnings


def _snap_rational(grads_exact: list, coords: np.ndarray, max_den: int = 64):
    """Gaussian-rational coordinates exactly annihilating the gradient, or None.

    Snapping lets corank and Hessian rank be computed exactly at the many
    small-rational singular points of integer-coefficient pencils, where
    float SVD thresholds are the difference between corank 1 and 2.
    """
    from fractions import Fraction

    from .scalar_poly import GQ

    snapped = []
    for z in coords:
        re = Fraction(z.real).limit_denominator(max_den)
        im = Fraction(z.imag).limit_denominator(max_den)
        if abs(re - z.real) > 1e-9 or abs(im - z.imag) > 1e-9:
            return None
        snapped.append(GQ(re, im))
    if all(v.is_zero() for v in snapped):
        return None
    if all(g.evaluate(snapped).is_zero() for g in grads_exact):
        return snapped
    return None


def classify_point(
    pencil: HermitianPencil,
    point,
    config: SolverConfig = SolverConfig(),
) -> SingularPoint:
    """Certify and classify one singular point of det(pencil)."""
    p = point if isinstance(point, ProjectivePointC) else ProjectivePointC(point)
    f = pencil.determinant()
    grads_exact = gradient(f)
    grads = [FloatPoly.from_multipoly(g, keep=[0, 1, 2, 3]) for g in grads_exact]
    res = _grad_residual(grads, p.coords)
    if res >= config.path_tolerance:
        raise NotASingularPointError(
            f"scaled gradient residual {res:.3e} exceeds {config.path_tolerance:.1e}"
        )
    hess = hessian(f)
    snapped = _snap_rational(grads_exact, p.coords)
    if snapped is not None:
        from .scalar_poly import gq_rank

        mg = pencil.evaluate(snapped)
        corank = 4 - gq_rank(mg)
        hg = [[hess[i, j].evaluate(snapped) for j in range(4)] for i in range(4)]
        hessian_rank = gq_rank(hg)
    else:
        m = np.zeros((4, 4), dtype=np.complex128)
        for k in range(4):
            m += p.coords[k] * pencil.coeffs[k].to_numpy()
        corank = 4 - _float_rank(m)
        hmat = np.array(
            [[hess[i, j].evaluate(p.coords) for j in range(4)] for i in range(4)]
        )
        hessian_rank = _float_rank(hmat)
    return SingularPoint(
        point=p,
        pencil_corank=corank,
        hessian_rank=hessian_rank,
        is_real=p.is_real(config.reality_tolerance),
        residual=res,
    )


def profile(
    pencil: HermitianPencil,
    e: Optional[Sequence] = None,
    config: SolverConfig = SolverConfig(),
) -> Profile:
    """Compute the (eta, rho, sigma) profile of a pencil.

    eta counts essential singular points (pencil corank >= 2), rho the real
    ones among them, and sigma the real essential points lying on the
    spectrahedron of the pencil (requires a definite direction e; sigma is
    None when e is omitted).  A degenerate profile carries whatever points
    were recovered and flags the counts as unreliable.
    """
    from .spectra import on_spectrahedron

    f = pencil.determinant()
    degenerate = False
    warnings: list[str] = []
    try:
        points, warnings = solve_gradient_system(f, config)
    except DegenerateSurfaceError as exc:
        degenerate = True
        points = exc.points
        warnings = [str(exc)]

    classified = []
    for p in points:
        try:
            sp = classify_point(pencil, p, config)
        except NotASingularPointError:
            continue
        classified.append(sp)
        if not degenerate and sp.pencil_corank == 1 and not sp.is_node:
            degenerate = True
            warnings.append("an accidental singular point is not a node")

    essential = [sp for sp in classified if sp.is_essential]
    real_essential = [sp for sp in essential if sp.is_real]
    sigma: Optional[int] = None
    if e is not None:
        sigma = 0
        for sp in real_essential:
            sp.on_spectrahedron = on_spectrahedron(pencil, e, sp.point.real_coords())
            if sp.on_spectrahedron:
                sigma += 1
    return Profile(
        eta=len(essential),
        rho=len(real_essential),
        sigma=sigma,
        degenerate=degenerate,
        points=classified,
        warnings=warnings,
    )


def _fmt(x: float) -> float:
    """Round-trip through 17 significant digits for stable JSON output."""
    return float(f"{x:.17g}")


def profile_report(prof: Profile) -> dict:
    """JSON-safe report with deterministic float formatting."""
    pts = []
    for sp in sorted(prof.points, key=lambda s: s.point.sort_key()):
        pts.append(
            {
                "coords": [
                    {"re": _fmt(z.real), "im": _fmt(z.imag)} for z in sp.point.coords
                ],
                "pencil_corank": sp.pencil_corank,
                "hessian_rank": sp.hessian_rank,
                "is_real": sp.is_real,
                "residual": _fmt(sp.residual),
                "on_spectrahedron": sp.on_spectrahedron,
            }
        )
    return {
        "eta": prof.eta,
        "rho": prof.rho,
        "sigma": prof.sigma,
        "degenerate": prof.degenerate,
        "points": pts,
        "warnings": sorted(prof.warnings),
    }


def dumps_report(prof: Profile) -> str:
    return json.dumps(profile_report(prof), indent=2, sort_keys=True)
