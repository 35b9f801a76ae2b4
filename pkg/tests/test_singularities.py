from fractions import Fraction

import numpy as np
import pytest

from detquartic.pencil import HermitianMatrix, HermitianPencil
from detquartic.scalar_poly import GQ
from detquartic.search import SearchTarget, construct_small_eta
from detquartic.singularities import (
    NotASingularPointError,
    ProjectivePointC,
    SolverConfig,
    classify_point,
    dumps_report,
    profile,
)


def _diag_pencil():
    coeffs = []
    for k in range(4):
        m = [[GQ(1) if i == j == k else GQ(0) for j in range(4)] for i in range(4)]
        coeffs.append(HermitianMatrix(m))
    return HermitianPencil(coeffs)


class TestProjectivePoint:
    def test_normalization_is_scale_invariant(self):
        a = ProjectivePointC([2, 4, 0, 6])
        b = ProjectivePointC([1, 2, 0, 3])
        assert a.angle_to(b) < 1e-6

    def test_conjugate_of_real_point_is_itself(self):
        p = ProjectivePointC([1.0, -2.0, 3.0, 0.5])
        assert p.is_real()
        assert p.angle_to(p.conjugate()) < 1e-6

    def test_phase_does_not_matter(self):
        z = np.exp(1j * 0.7)
        a = ProjectivePointC([1 + 2j, 3j, 1, 0])
        b = ProjectivePointC([z * (1 + 2j), z * 3j, z, 0])
        assert a.angle_to(b) < 1e-6


class TestProfile:
    def test_planted_profile_recovered(self):
        p = construct_small_eta(SearchTarget(1, 1, 1), 11)
        prof = profile(p, (Fraction(1), 0, 0, 0), SolverConfig(seed=0))
        assert (prof.eta, prof.rho, prof.sigma) == (1, 1, 1)
        assert not prof.degenerate
        essential = [sp for sp in prof.points if sp.is_essential]
        assert len(essential) == 1
        assert essential[0].pencil_corank == 2

    def test_product_of_planes_is_degenerate(self):
        prof = profile(_diag_pencil(), None, SolverConfig(seed=0))
        assert prof.degenerate

    def test_classify_rejects_smooth_point(self):
        p = construct_small_eta(SearchTarget(0, 0, 0), 3)
        with pytest.raises(NotASingularPointError):
            classify_point(p, [1.0, 0.3, 0.7, 0.9])


class TestReportDeterminism:
    def test_identical_runs_are_byte_identical(self):
        p = construct_small_eta(SearchTarget(1, 1, 0), 4)
        e = (Fraction(1), 0, 0, 0)
        a = dumps_report(profile(p, e, SolverConfig(seed=7)))
        b = dumps_report(profile(p, e, SolverConfig(seed=7)))
        assert a == b
