from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from detquartic.catalog import get_entry
from detquartic.curves import (
    bilinear_swap,
    common_minor_surface,
    complete_intersection_check,
    plane_quartic_smooth,
    sextic_family,
)
from detquartic.scalar_poly import GQ, MultiPoly, PolyMatrix


def _poly(n, terms):
    return MultiPoly(n, {e: GQ(Fraction(c)) for e, c in terms.items()})


class TestSexticFamilies:
    def test_generators_are_cubic(self):
        p = get_entry("(2,2,1)").pencil
        for side in ("rows", "cols"):
            ci = sextic_family(p, side, 0)
            assert len(ci.generators) == 4
            for g in ci.generators:
                assert g.is_homogeneous() and g.degree() == 3

    def test_conjugate_family_matches_other_side(self):
        # conjugating the drop-column minors coefficientwise gives the
        # drop-row minors of the same index, since M(x)* = M(x)
        p = get_entry("(3,3,1)").pencil
        for idx in range(4):
            rows = sextic_family(p, "rows", idx)
            cols = sextic_family(p, "cols", idx)
            conj = rows.conj()
            assert conj.side == "cols"
            got = {frozenset(g.terms.items()) for g in conj.generators}
            want = {frozenset(g.terms.items()) for g in cols.generators}
            assert got == want

    def test_rejects_bad_arguments(self):
        p = get_entry("(1,1,0)").pencil
        with pytest.raises(ValueError):
            sextic_family(p, "rows", 5)
        with pytest.raises(ValueError):
            sextic_family(p, "diag", 0)

    def test_residual_small_on_planted_curve_point(self):
        # any point where the pencil has rank <= 2 kills every 3x3 minor
        p = get_entry("(2,2,2)").pencil
        prof_pts = []
        # coordinate sweep for a rank-2 rational point
        for x in ([1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]):
            if p.rank_at([Fraction(v) for v in x]) <= 2:
                prof_pts.append(x)
        assert prof_pts, "expected a coordinate point of rank <= 2"
        ci = sextic_family(p, "rows", 0)
        for x in prof_pts:
            assert ci.scaled_residual([float(v) for v in x]) < 1e-14


class TestCompleteIntersection:
    def test_quartic_meets_shared_cubic_on_the_curves(self):
        ent = get_entry("(1,1,1)")
        f = ent.pencil.determinant()
        s3 = common_minor_surface(ent.pencil, 0, 0)
        c1 = sextic_family(ent.pencil, "rows", 0)
        c2 = sextic_family(ent.pencil, "cols", 0)
        rep = complete_intersection_check(f, s3, c1, c2, n_samples=8, seed=0)
        assert rep.all_pass
        assert rep.max_residual < 1e-8

    def test_mismatched_indices_rejected(self):
        p = get_entry("(1,1,0)").pencil
        c1 = sextic_family(p, "rows", 0)
        c2 = sextic_family(p, "cols", 1)
        with pytest.raises(ValueError):
            complete_intersection_check(p.determinant(), MultiPoly(4, {}), c1, c2)


class TestBilinearSwap:
    def _random_linear_matrix(self, rng, r, m, n):
        ent = []
        for _ in range(r):
            row = []
            for _ in range(m):
                terms = {}
                for k in range(n):
                    c = int(rng.integers(-3, 4))
                    if c:
                        e = tuple(1 if t == k else 0 for t in range(n))
                        terms[e] = GQ(Fraction(c))
                row.append(MultiPoly(n, terms))
            ent.append(row)
        return PolyMatrix(ent)

    def test_bilinear_identity(self):
        rng = np.random.default_rng(0)
        for _ in range(10):
            a = self._random_linear_matrix(rng, 4, 3, 4)
            b = bilinear_swap(a)
            assert (b.rows, b.cols, b.num_vars) == (4, 4, 3)
            x = [Fraction(int(rng.integers(-5, 6))) for _ in range(4)]
            y = [Fraction(int(rng.integers(-5, 6))) for _ in range(3)]
            ax = a.evaluate(x)
            by = b.evaluate(y)
            lhs = [sum((ax[i][j] * GQ(y[j]) for j in range(3)), GQ(0))
                   for i in range(4)]
            rhs = [sum((by[i][k] * GQ(x[k]) for k in range(4)), GQ(0))
                   for i in range(4)]
            assert lhs == rhs

    def test_double_swap_is_identity(self):
        rng = np.random.default_rng(1)
        a = self._random_linear_matrix(rng, 4, 3, 4)
        again = bilinear_swap(bilinear_swap(a))
        for i in range(4):
            for j in range(3):
                assert again.entries[i][j].terms == a.entries[i][j].terms

    def test_rejects_nonlinear_entries(self):
        quad = PolyMatrix([[_poly(2, {(2, 0): 1})]])
        with pytest.raises(ValueError):
            bilinear_swap(quad)


class TestPlaneQuarticSmoothness:
    def test_fermat_quartic_is_smooth(self):
        q = _poly(3, {(4, 0, 0): 1, (0, 4, 0): 1, (0, 0, 4): 1})
        assert plane_quartic_smooth(q)

    def test_double_conic_is_singular(self):
        # (u0^2 + u1^2)^2
        q = _poly(3, {(4, 0, 0): 1, (2, 2, 0): 2, (0, 4, 0): 1})
        assert not plane_quartic_smooth(q)

    def test_rejects_wrong_degree(self):
        with pytest.raises(ValueError):
            plane_quartic_smooth(_poly(3, {(2, 0, 0): 1}))
