"""Stochastic search for pencils with a prescribed (eta, rho, sigma) profile.

Three construction strategies feed a verification loop: direct planting of
rank-2 coefficient values (small eta), conjugate-pair pencils obtained by an
exact linear solve (rho < eta), and a deformation move that replaces one
rank-2 point of an existing representation by a draw from the web of rank-4
quadrics through the same line.  Verified hits update a tracker of which
(rho, sigma) cells are covered for each eta.
"""

from __future__ import annotations

import copy
import json
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import x2_geometry as xg
from .pencil import HermitianMatrix, HermitianPencil
from .scalar_poly import GQ, gq_nullspace, gq_rank, gradient
from .singularities import Profile, SolverConfig, profile, profile_report, _snap_rational

log = logging.getLogger(__name__)

# --------------------------------------------------------------------------
# targets and the coverage table
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class SearchTarget:
    eta: int
    rho: int
    sigma: int

    def __post_init__(self):
        if self.eta == 9:
            raise ValueError("eta = 9 is impossible for isolated essential points")
        if self.eta not in list(range(9)) + [10]:
            raise ValueError("eta must be in 0..8 or 10")
        if not 0 <= self.sigma <= self.rho <= self.eta:
            raise ValueError("need 0 <= sigma <= rho <= eta")
        if self.eta <= 8 and (self.rho - self.eta) % 2 != 0:
            raise ValueError("rho must have the same parity as eta")
        if self.eta == 10:
            if self.rho < 2:
                raise ValueError("eta = 10 requires rho >= 2")
            if (self.sigma - self.rho) % 2 != 0:
                raise ValueError("eta = 10 requires sigma = rho (mod 2)")


@dataclass(frozen=True)
class FoundExample:
    pencil: HermitianPencil
    e: tuple
    profile: Profile
    strategy: str
    seed: int

    def to_json_dict(self) -> dict:
        d = self.pencil.to_json_dict(name=f"search/{self.strategy}/seed{self.seed}")
        d["definite_point"] = [str(v) for v in self.e]
        d["profile"] = profile_report(self.profile)
        d["strategy"] = self.strategy
        d["seed"] = self.seed
        return d


# known / missing (rho, sigma) cells per eta, as published
TABLE_KNOWN = {
    0: {(0, 0)},
    1: {(1, 1), (1, 0)},
    2: {(2, 2), (2, 1), (2, 0), (0, 0)},
    3: {(3, 3), (3, 2), (3, 1), (3, 0), (1, 1), (1, 0)},
    4: {(4, 4), (4, 3), (4, 2), (4, 1), (4, 0), (2, 2), (2, 1), (0, 0)},
    5: {(5, 3), (5, 2), (5, 1)},
    6: {(6, 4), (6, 3)},
    7: {(7, 5), (7, 4)},
    8: {(8, 5), (8, 4), (6, 4)},
    10: {
        (r, s) for r in (2, 4, 6, 8, 10) for s in range(0, r + 1, 2)
    },
}


def _allowed_cells(eta: int) -> set:
    if eta == 10:
        return set(TABLE_KNOWN[10])
    return {
        (r, s)
        for r in range(eta % 2, eta + 1, 2)
        for s in range(r + 1)
    }


TABLE_MISSING = {eta: _allowed_cells(eta) - TABLE_KNOWN[eta] for eta in TABLE_KNOWN}


@dataclass
class TrackerState:
    """Coverage of (rho, sigma) cells per eta against the published table."""

    found: dict = field(default_factory=lambda: {eta: set() for eta in TABLE_KNOWN})

    @classmethod
    def empty(cls) -> "TrackerState":
        return cls()

    def missing(self, eta: int) -> set:
        return _allowed_cells(eta) - self.found.get(eta, set())

    def beyond_known(self, eta: int) -> set:
        """Cells found here that the published table lists as missing."""
        return self.found.get(eta, set()) & TABLE_MISSING[eta]

    def record(self, eta: int, rho: int, sigma: int) -> None:
        if eta not in self.found:
            self.found[eta] = set()
        self.found[eta].add((rho, sigma))

    def to_json_dict(self) -> dict:
        rows = []
        for eta in sorted(self.found):
            rows.append(
                {
                    "eta": eta,
                    "found": sorted(self.found[eta]),
                    "missing": sorted(self.missing(eta)),
                    "baseline_known": sorted(TABLE_KNOWN[eta]),
                    "baseline_missing": sorted(TABLE_MISSING[eta]),
                    "beyond_known": sorted(self.beyond_known(eta)),
                }
            )
        return {"rows": rows}

    def dump(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_json_dict(), indent=2) + "\n")


def tracker_update(state: TrackerState, found: FoundExample) -> TrackerState:
    new = copy.deepcopy(state)
    p = found.profile
    if p.degenerate:
        raise ValueError("tracker only accepts non-degenerate verified profiles")
    new.record(p.eta, p.rho, p.sigma if p.sigma is not None else 0)
    return new


# --------------------------------------------------------------------------
# random building blocks
# --------------------------------------------------------------------------


def _rand_gq(rng, lo=-3, hi=3) -> GQ:
    return GQ(Fraction(int(rng.integers(lo, hi + 1))), Fraction(int(rng.integers(lo, hi + 1))))


def _rand_gq_vec(rng, n=4) -> list:
    return [_rand_gq(rng) for _ in range(n)]


def _rand_hermitian(rng, lo=-3, hi=3) -> HermitianMatrix:
    m = [[GQ(0)] * 4 for _ in range(4)]
    for i in range(4):
        m[i][i] = GQ(Fraction(int(rng.integers(lo, hi + 1))))
        for j in range(i + 1, 4):
            v = _rand_gq(rng, lo, hi)
            m[i][j] = v
            m[j][i] = v.conj()
    return HermitianMatrix(m)


def _positive_definite(rng) -> HermitianMatrix:
    """L L* for a random Gaussian-integer lower-triangular L with nonzero diagonal."""
    while True:
        L = [[GQ(0)] * 4 for _ in range(4)]
        for i in range(4):
            d = int(rng.integers(1, 4))
            L[i][i] = GQ(Fraction(d))
            for j in range(i):
                L[i][j] = _rand_gq(rng, -2, 2)
        m = [
            [sum((L[i][k] * L[j][k].conj() for k in range(4)), GQ(0)) for j in range(4)]
            for i in range(4)
        ]
        h = HermitianMatrix(m)
        if h.rank() == 4:
            return h


def _rank2_plant(rng, on_spectrahedron: bool) -> HermitianMatrix:
    """v v* + w w* (semidefinite: the point lands on the spectrahedron,
    because -x gives the opposite sign projectively) or v v* - w w*
    (indefinite: off the spectrahedron); exact rank 2 either way."""
    sign = GQ(1) if on_spectrahedron else GQ(-1)
    while True:
        v = _rand_gq_vec(rng)
        w = _rand_gq_vec(rng)
        m = [
            [v[i] * v[j].conj() + w[i] * w[j].conj() * sign for j in range(4)]
            for i in range(4)
        ]
        h = HermitianMatrix(m)
        if h.rank() == 2:
            return h


def _traceless_plant(rng, i: int) -> HermitianMatrix:
    """v e_i* + e_i v* with Re(v_i) = 0: Hermitian rank 2 with zero diagonal,
    hence indefinite.  Three of these plus a definite slot frequently leave a
    fourth off-spectrahedron essential point in the span."""
    while True:
        v = _rand_gq_vec(rng)
        v[i] = GQ(Fraction(0), v[i].im)
        m = [[GQ(0)] * 4 for _ in range(4)]
        for r in range(4):
            for c in range(4):
                term = GQ(0)
                if c == i:
                    term = term + v[r]
                if r == i:
                    term = term + v[c].conj()
                m[r][c] = term
        h = HermitianMatrix(m)
        if h.rank() == 2:
            return h


def _rank2_complex(rng) -> list:
    """A general (non-Hermitian) complex 4x4 of rank exactly 2, as GQ grid."""
    while True:
        v1, w1 = _rand_gq_vec(rng), _rand_gq_vec(rng)
        v2, w2 = _rand_gq_vec(rng), _rand_gq_vec(rng)
        n = [
            [v1[i] * w1[j] + v2[i] * w2[j] for j in range(4)]
            for i in range(4)
        ]
        if gq_rank(n) == 2:
            return n


def _pair_from_complex(n: list) -> tuple:
    """Hermitian (Ma, Mb) with Ma + i Mb = N; then the pencil value at the
    conjugate parameter is N* automatically."""
    half = GQ(Fraction(1, 2))
    neg_half_i = GQ(Fraction(0), Fraction(-1, 2))
    ma = [
        [(n[i][j] + n[j][i].conj()) * half for j in range(4)]
        for i in range(4)
    ]
    mb = [
        [(n[i][j] - n[j][i].conj()) * neg_half_i for j in range(4)]
        for i in range(4)
    ]
    return HermitianMatrix(ma), HermitianMatrix(mb)


# --------------------------------------------------------------------------
# constructors
# --------------------------------------------------------------------------


def construct_small_eta(target: SearchTarget, seed: int) -> HermitianPencil:
    """A pencil with a positive-definite first coefficient and target.eta
    planted semidefinite rank-2 coefficients; the plant signs set sigma."""
    if target.eta > 3 or target.rho != target.eta:
        raise ValueError("construct_small_eta needs eta <= 3 and rho = eta")
    rng = np.random.default_rng(seed)
    coeffs = [_positive_definite(rng)]
    kinds = [True] * target.sigma + [False] * (target.eta - target.sigma)
    for on in kinds:
        coeffs.append(_rank2_plant(rng, on))
    while len(coeffs) < 4:
        coeffs.append(_rand_hermitian(rng))
    return HermitianPencil(coeffs)


def construct_conjugate_pair(seed: int, max_attempts: int = 32) -> HermitianPencil:
    """Hermitian (M0, M1) with (M0 + t0 M1) v_i = 0 for two random kernel
    vectors at a non-real t0; the conjugate parameter drops rank as well."""
    rng = np.random.default_rng(seed)
    for _ in range(max_attempts):
        t0 = GQ(Fraction(int(rng.integers(-2, 3))), Fraction(int(rng.integers(1, 3))))
        v1 = _rand_gq_vec(rng)
        v2 = _rand_gq_vec(rng)
        if gq_rank([v1, v2]) < 2:
            continue
        # 32 real unknowns: diag(M) (4 each) + off-diagonal re/im (12 each)
        def herm_from_params(p, base):
            m = [[GQ(0)] * 4 for _ in range(4)]
            k = base
            for i in range(4):
                m[i][i] = GQ(p[k])
                k += 1
            for i in range(4):
                for j in range(i + 1, 4):
                    m[i][j] = GQ(p[k], p[k + 1])
                    m[j][i] = m[i][j].conj()
                    k += 2
            return m

        # rows of the real linear system: for each kernel vector and each
        # matrix row, the complex equation (M0 v)_r + t0 (M1 v)_r = 0
        ncols = 32
        rows = []
        for v in (v1, v2):
            for r in range(4):
                coeff = [GQ(0)] * ncols
                for col in range(ncols):
                    p = [Fraction(0)] * ncols
                    p[col] = Fraction(1)
                    m0 = herm_from_params(p, 0)
                    m1 = herm_from_params(p, 16)
                    val = sum(
                        ((m0[r][c] + t0 * m1[r][c]) * v[c] for c in range(4)), GQ(0)
                    )
                    coeff[col] = val
                # one complex row splits into two real rows
                rows.append([GQ(c.re) for c in coeff])
                rows.append([GQ(c.im) for c in coeff])
        basis = gq_nullspace(rows)
        if not basis:
            continue
        combo = [Fraction(0)] * ncols
        for b in basis:
            c = Fraction(int(rng.integers(-2, 3)))
            for k in range(ncols):
                combo[k] += c * b[k].re
        m0 = HermitianMatrix(herm_from_params(combo, 0))
        m1 = HermitianMatrix(herm_from_params(combo, 16))
        if m0.rank() == 0 and m1.rank() == 0:
            continue
        point = [GQ(1), t0, GQ(0), GQ(0)]
        value = [
            [m0.entries[i][j] + t0 * m1.entries[i][j] for j in range(4)]
            for i in range(4)
        ]
        if gq_rank(value) > 2:
            continue
        pencil = HermitianPencil([m0, m1, _positive_definite(rng), _rand_hermitian(rng)])
        if pencil.determinant().is_zero():
            continue
        return pencil
    raise ValueError("could not build a conjugate-pair pencil from the drawn data")


def _plant_candidate(target: SearchTarget, rng) -> Optional[tuple]:
    """One candidate for any eta <= 4 by planting rank-2 values; returns
    (pencil, known_definite_point or None) or None if the target shape is
    not covered by planting."""
    eta, rho, sigma = target.eta, target.rho, target.sigma
    if eta > 4:
        return None
    pairs = (eta - rho) // 2
    kinds = [True] * sigma + [False] * (rho - sigma)

    coeffs: list = [None] * 4
    if (eta, rho, sigma) == (4, 4, 0):
        # all-off targets almost never admit a definite point from generic
        # plants; traceless plants with a definite fourth slot do
        coeffs = [_traceless_plant(rng, i) for i in range(3)]
        coeffs.append(_positive_definite(rng))
        pencil = HermitianPencil(coeffs)
        if pencil.determinant().is_zero():
            return None
        return pencil, (Fraction(0), Fraction(0), Fraction(0), Fraction(1))
    if rho == 4:
        plants = [_rank2_plant(rng, on) for on in kinds]
        # plants at the coordinate points e1, e2, e3 and at (1,1,1,1)
        total = plants[3].entries
        m0 = [
            [
                total[i][j]
                - plants[0].entries[i][j]
                - plants[1].entries[i][j]
                - plants[2].entries[i][j]
                for j in range(4)
            ]
            for i in range(4)
        ]
        coeffs = [HermitianMatrix(m0), plants[0], plants[1], plants[2]]
        known_e = None
    else:
        slot = 1
        for on in kinds:
            coeffs[slot] = _rank2_plant(rng, on)
            slot += 1
        for _ in range(pairs):
            if slot + 1 > 3:
                # the pair takes slots (0, slot); no definite slot remains
                ma, mb = _pair_from_complex(_rank2_complex(rng))
                coeffs[0] = ma
                coeffs[slot] = mb
                slot += 1
                break
            ma, mb = _pair_from_complex(_rank2_complex(rng))
            coeffs[slot] = ma
            coeffs[slot + 1] = mb
            slot += 2
        known_e = None
        if coeffs[0] is None:
            coeffs[0] = _positive_definite(rng)
            known_e = (Fraction(1), Fraction(0), Fraction(0), Fraction(0))
        for k in range(4):
            if coeffs[k] is None:
                coeffs[k] = _rand_hermitian(rng)
    pencil = HermitianPencil(coeffs)
    if pencil.determinant().is_zero():
        return None
    return pencil, known_e


# --------------------------------------------------------------------------
# deformation through the web of rank-4 quadrics
# --------------------------------------------------------------------------


def _exact_essential_points(start: HermitianPencil, cfg: SolverConfig) -> list:
    """Rational real essential points of det(start) with their exact values."""
    f = start.determinant()
    grads = gradient(f)
    prof = profile(start, None, cfg)
    out = []
    for sp in prof.points:
        if not (sp.is_essential and sp.is_real):
            continue
        snapped = _snap_rational(grads, sp.point.coords)
        if snapped is None:
            continue
        value = HermitianMatrix(start.evaluate(snapped))
        out.append((snapped, value))
    return out


def _line_params_from_kernel(value: HermitianMatrix):
    """LineParams for the base-locus line attached to a rank-2 Hermitian
    matrix: two complex forms annihilating the conjugated kernel."""
    kernel = gq_nullspace(value.entries)
    if len(kernel) < 2:
        raise ValueError("expected a 2-dimensional kernel")
    conj_rows = [[v.conj() for v in vec] for vec in kernel[:2]]
    forms = gq_nullspace(conj_rows)
    if len(forms) < 2:
        raise ValueError("could not cut the line by two forms")
    phi, psi = forms[0], forms[1]
    zeros = (Fraction(0),) * 4

    def split(form):
        re = tuple(Fraction(v.re) for v in form)
        im = tuple(Fraction(v.im) for v in form)
        return zeros + re, zeros + im

    a, b = split(phi)
    c, d = split(psi)
    return xg.LineParams(a, b, c, d)


def web_coordinates(q: xg.Quadric8, ef: xg.EllForms):
    """The (a, b, c, d) web parameters reproducing q exactly, or None if q
    is not in the web spanned by the four basis draws."""
    basis = [
        xg.web_quadric(ef, *unit)
        for unit in ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))
    ]
    rows = []
    rhs = []
    for i in range(8):
        for j in range(i, 8):
            rows.append([Fraction(bq.gram[i][j]) for bq in basis])
            rhs.append(Fraction(q.gram[i][j]))
    # exact least-structure solve: eliminate and back-substitute
    ncols = 4
    aug = [row + [r] for row, r in zip(rows, rhs)]
    piv_cols = []
    r = 0
    for c in range(ncols):
        piv = next((k for k in range(r, len(aug)) if aug[k][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        aug[r] = [v / aug[r][c] for v in aug[r]]
        for k in range(len(aug)):
            if k != r and aug[k][c] != 0:
                f = aug[k][c]
                aug[k] = [v - f * w for v, w in zip(aug[k], aug[r])]
        piv_cols.append(c)
        r += 1
    sol = [Fraction(0)] * ncols
    for rr, c in enumerate(piv_cols):
        sol[c] = aug[rr][ncols]
    for k in range(r, len(aug)):
        if aug[k][ncols] != 0:
            return None
    check = xg.web_quadric(ef, *sol)
    for i in range(8):
        for j in range(8):
            if Fraction(check.gram[i][j]) != Fraction(q.gram[i][j]):
                return None
    return tuple(sol)


def deform(
    start: HermitianPencil,
    seed: int,
    cfg: SolverConfig = SolverConfig(),
    params: Optional[tuple] = None,
    max_attempts: int = 16,
    lead_offset: int = 0,
    draw_semidefinite: Optional[bool] = None,
) -> HermitianPencil:
    """Replace one rank-2 point of start by a draw from the web of rank-4
    quadrics through the same base-locus line, keeping three other essential
    points as the rest of the new pencil basis.

    lead_offset rotates which rank-2 point is replaced; draw_semidefinite
    forces the sign of 4ad - b^2 - c^2, i.e. whether the replacement value
    is semidefinite (on the spectrahedron) or indefinite (off it).
    """
    found = _exact_essential_points(start, cfg)
    eligible = [(s, v) for s, v in found if v.rank() == 2]
    if not eligible:
        raise ValueError("deform needs an essential point of rank exactly 2")
    lead = eligible[lead_offset % len(eligible)]
    chosen = [lead]
    vectors = [[GQ(v) for v in xg.hermitian_to_cp15(lead[1]).coords]]
    for snapped, value in found:
        if len(chosen) == 4:
            break
        if value is lead[1]:
            continue
        vec = [GQ(v) for v in xg.hermitian_to_cp15(value).coords]
        if gq_rank(vectors + [vec]) == len(vectors) + 1:
            vectors.append(vec)
            chosen.append((snapped, value))
    if len(chosen) < 4:
        raise ValueError(
            "deform needs at least four spanning essential points, one of rank 2"
        )
    lp = _line_params_from_kernel(chosen[0][1])
    ef = xg.ell_forms(lp)
    rng = np.random.default_rng(seed)
    rest = [value for _, value in chosen[1:]]
    for _ in range(max_attempts):
        if params is not None:
            draw = tuple(Fraction(v) for v in params)
        else:
            draw = tuple(Fraction(int(rng.integers(-4, 5))) for _ in range(4))
        a, b, c, d = draw
        disc = 4 * a * d - b * b - c * c
        if disc == 0:
            if params is not None:
                raise ValueError("supplied web parameters give a rank-deficient draw")
            continue
        if params is None and draw_semidefinite is not None:
            if draw_semidefinite != (disc > 0):
                continue
        q = xg.web_quadric(ef, a, b, c, d)
        h_new = xg.quadric_to_hermitian(q)
        vec_new = [GQ(v) for v in xg.hermitian_to_cp15(h_new).coords]
        if gq_rank([vec_new] + vectors[1:]) < 4:
            if params is not None:
                raise ValueError("supplied web parameters do not span")
            continue
        candidate = HermitianPencil([h_new] + rest)
        if candidate.determinant().is_zero():
            continue
        return candidate
    raise ValueError("no spanning web draw found within the attempt budget")


# --------------------------------------------------------------------------
# definite-point discovery
# --------------------------------------------------------------------------


def find_definite_point(
    pencil: HermitianPencil, rng, n_samples: int = 512
) -> Optional[tuple]:
    """A rational point where the pencil is definite, found by seeded
    sampling plus ascent on the smallest absolute eigenvalue."""
    mats = [m.to_numpy() for m in pencil.coeffs]

    def eigs(x):
        return np.linalg.eigvalsh(sum(float(v) * m for v, m in zip(x, mats)))

    def exact_ok(x):
        e = tuple(Fraction(v).limit_denominator(10**6) for v in x)
        if all(v == 0 for v in e):
            return None
        return e if pencil.is_definite_at(e).is_definite else None

    best = None
    best_margin = 0.0
    for _ in range(n_samples):
        x = rng.integers(-6, 7, size=4)
        if not x.any():
            continue
        w = eigs(x)
        scale = max(abs(w).max(), 1e-300)
        if w[0] > 0 or w[-1] < 0:
            e = exact_ok(x)
            if e is not None:
                return e
        margin = min(w.max(), -w.min()) / scale  # how far from one-signed
        if best is None or margin < best_margin:
            best, best_margin = np.array(x, dtype=float), margin
    # ascent: push the offending eigenvalue across zero
    if best is None:
        return None
    x = best
    for _ in range(40):
        m = sum(float(v) * mm for v, mm in zip(x, mats))
        w, vecs = np.linalg.eigh(m)
        target_pos = abs(w.max()) >= abs(w.min())
        idx = int(np.argmin(w)) if target_pos else int(np.argmax(w))
        v = vecs[:, idx]
        grad = np.array([float((v.conj() @ mm @ v).real) for mm in mats])
        step = grad if target_pos else -grad
        nrm = np.linalg.norm(step)
        if nrm == 0:
            break
        x = x + 0.2 * np.linalg.norm(x) * step / nrm
        w2 = eigs(x)
        if w2[0] > 0 or w2[-1] < 0:
            e = exact_ok(x)
            if e is not None:
                return e
    return None


# --------------------------------------------------------------------------
# the search driver
# --------------------------------------------------------------------------


class FoundList(list):
    """run_search result: a list of FoundExample with attached statistics."""

    stats: dict


def _verify_candidate(
    pencil: HermitianPencil,
    known_e,
    target: SearchTarget,
    verify_seed: int,
    rng,
) -> Optional[tuple]:
    e = known_e
    if e is None:
        e = find_definite_point(pencil, rng)
        if e is None:
            return None
    if not pencil.is_definite_at(e).is_definite:
        return None
    prof = profile(pencil, e, SolverConfig(seed=verify_seed))
    if prof.degenerate:
        return None
    if (prof.eta, prof.rho, prof.sigma) != (target.eta, target.rho, target.sigma):
        return None
    return prof, e


def run_search(
    target: SearchTarget,
    budget: int,
    seeds: Sequence[int],
    out_dir=None,
    stop_after: int = 1,
    catalog_starts: Optional[Sequence[HermitianPencil]] = None,
) -> FoundList:
    """Drive the constructors until stop_after verified examples are found
    or the candidate budget is exhausted.  Deterministic for fixed
    (target, budget, seeds); found examples are appended to found.ndjson and
    the tracker to tracker.json when out_dir is given."""
    if not isinstance(target, SearchTarget):
        target = SearchTarget(*target)
    if not seeds:
        raise ValueError("run_search needs at least one seed")
    threads = max(1, int(os.environ.get("DETQUARTIC_THREADS", "1")))

    def make_candidate(index: int):
        seed = int(seeds[index % len(seeds)])
        rng = np.random.default_rng(seed * 1_000_003 + index)
        strategy = None
        built = None
        if target.eta <= 3 and target.rho == target.eta:
            built = (construct_small_eta(target, seed * 1_000_003 + index), None)
            strategy = "small_eta"
        elif target.eta <= 4:
            built = _plant_candidate(target, rng)
            strategy = "plant" if target.rho == target.eta else "conjugate_pair"
        elif catalog_starts:
            start = catalog_starts[index % len(catalog_starts)]
            try:
                built = (deform(start, seed * 1_000_003 + index), None)
                strategy = "deform"
            except ValueError:
                built = None
        if built is None:
            return None
        return built[0], built[1], strategy, seed, rng

    results = FoundList()
    stats = {"candidates": 0, "verified": 0, "failures": 0}
    index = 0
    with ThreadPoolExecutor(max_workers=threads) as pool:
        while index < budget and len(results) < stop_after:
            batch = []
            while len(batch) < threads and index < budget:
                cand = make_candidate(index)
                index += 1
                stats["candidates"] += 1
                if cand is not None:
                    batch.append(cand)
                else:
                    stats["failures"] += 1
            futures = [
                pool.submit(_verify_candidate, p, e, target, seed, rng)
                for p, e, _, seed, rng in batch
            ]
            # deterministic reduction: consume in submission order
            for fut, (p, _, strategy, seed, _) in zip(futures, batch):
                out = fut.result()
                if out is None:
                    stats["failures"] += 1
                    continue
                prof, e = out
                stats["verified"] += 1
                results.append(
                    FoundExample(pencil=p, e=tuple(e), profile=prof,
                                 strategy=strategy, seed=seed)
                )
                if len(results) >= stop_after:
                    break
    results.stats = stats
    log.info("search for %s: %s", target, stats)
    if out_dir is not None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        with (out / "found.ndjson").open("a") as fh:
            for ex in results:
                fh.write(json.dumps(ex.to_json_dict()) + "\n")
        tracker = TrackerState.empty()
        tpath = out / "tracker.json"
        if tpath.exists():
            tracker = load_tracker(tpath)
        for ex in results:
            tracker = tracker_update(tracker, ex)
        tracker.dump(tpath)
    return results


def load_tracker(path) -> TrackerState:
    data = json.loads(Path(path).read_text())
    state = TrackerState.empty()
    for row in data.get("rows", []):
        for rho, sigma in row.get("found", []):
            state.record(int(row["eta"]), int(rho), int(sigma))
    return state
