"""End-to-end acceptance checks for the whole package.

Each test class pins one externally visible guarantee: catalog profile
reproduction, the exact realification identity, rank doubling, the
two-variable rank fixture, hyperbolicity sampling, structural invariants of
the singularity profiles, the sextic curve structure, rank-2 locus geometry,
stochastic search coverage, and bitwise determinism of reports.
"""

import json
from fractions import Fraction

import numpy as np
import pytest

from detquartic.catalog import get_entry
from detquartic.curves import (
    common_minor_surface,
    complete_intersection_check,
    sextic_family,
)
from detquartic.pencil import HermitianMatrix, HermitianPencil
from detquartic.scalar_poly import GQ
from detquartic.search import (
    TABLE_KNOWN,
    SearchTarget,
    TrackerState,
    run_search,
)
from detquartic.singularities import SolverConfig, dumps_report, profile
from detquartic.spectra import hyperbolicity_check
from detquartic.x2_geometry import (
    base_locus_check,
    cp15_to_quadric,
    ell_forms,
    hermitian_to_cp15,
    web_quadric,
    x2_tangent_codim,
)
from detquartic.search import _line_params_from_kernel, _rank2_plant

# entries whose essential loci contain exact non-nodal points; their
# (eta, rho, sigma) counts still verify, but the nodal certificates
# (corank exactly 2, Hessian rank exactly 3 at every essential point)
# do not apply and profile() flags them
DEGENERATE_ENTRIES = {
    "4.3/(2,0,0)",
    "4.3/(2,2,0)",
    "4.4/(3,3,0)",
    "4.4/(3,3,2)",
    "4.5/(4,0,0)",
    "4.6/(5,5,2)",
    "4.6/(5,5,3)",
    "4.7/(6,6,4)",
    "4.8/(7,7,5)",
    "4.9/(8,6,4)",
    "4.9/(8,8,4)",
}


def _rand_hermitian(rng, lo=-3, hi=3):
    m = [[GQ(0)] * 4 for _ in range(4)]
    for i in range(4):
        m[i][i] = GQ(Fraction(int(rng.integers(lo, hi + 1))))
        for j in range(i + 1, 4):
            v = GQ(Fraction(int(rng.integers(lo, hi + 1))),
                   Fraction(int(rng.integers(lo, hi + 1))))
            m[i][j] = v
            m[j][i] = v.conj()
    return HermitianMatrix(m)


def _rand_pencil(rng):
    return HermitianPencil([_rand_hermitian(rng) for _ in range(4)])


def _rand_rank2(rng):
    return _rank2_plant(rng, bool(rng.integers(0, 2)))


class TestCatalogReproduction:
    """Every bundled surface reproduces its claimed profile and
    is definite at its printed point."""

    def test_profiles_match_claims(self, surfaces, catalog_profiles):
        for ent in surfaces:
            prof = catalog_profiles[ent.name]
            assert (prof.eta, prof.rho, prof.sigma) == ent.claimed, ent.name

    def test_definite_at_printed_point(self, surfaces):
        for ent in surfaces:
            assert ent.pencil.is_definite_at(ent.definite_point).is_definite, ent.name


class TestRealificationIdentity:
    """Det(A8) = f^2 as an exact polynomial identity."""

    def test_catalog_entries(self, catalog):
        for ent in catalog:
            assert ent.pencil.verify_square_identity(), ent.name

    def test_fifty_random_pencils(self):
        rng = np.random.default_rng(20)
        for _ in range(50):
            assert _rand_pencil(rng).verify_square_identity()


class TestRankDoubling:
    """Rank(A8(x)) = 2 rank(M4(x)) at random rational points."""

    def test_hundred_points_per_entry(self, surfaces):
        rng = np.random.default_rng(30)
        for ent in surfaces:
            rs = ent.pencil.realify()
            done = 0
            while done < 100:
                x = [Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 5)))
                     for _ in range(4)]
                if all(v == 0 for v in x):
                    continue
                assert rs.rank_at(x) == 2 * ent.pencil.rank_at(x), ent.name
                done += 1


class TestTwoVariableRankFixture:
    """The bundled two-variable pencil has rank 2 exactly at
    the two distinguished parameters and rank 3 elsewhere."""

    def test_rank_profile(self):
        ent = get_entry("line/(rank2-pair)")
        p = ent.pencil
        assert p.rank_at([Fraction(1), 0, 0, 0]) == 2
        assert p.rank_at([Fraction(0), 1, 0, 0]) == 2
        rng = np.random.default_rng(40)
        done = 0
        while done < 100:
            s = Fraction(int(rng.integers(-20, 21)), int(rng.integers(1, 9)))
            t = Fraction(int(rng.integers(-20, 21)), int(rng.integers(1, 9)))
            if s == 0 or t == 0:
                continue
            assert p.rank_at([s, t, 0, 0]) == 3
            done += 1


class TestHyperbolicity:
    """All 200 seeded lines through e meet the quartic in real
    points only, for every catalog surface."""

    def test_fraction_is_exactly_one(self, surfaces):
        for ent in surfaces:
            res = hyperbolicity_check(
                ent.pencil, ent.definite_point, n_lines=200, seed=0, tol=1e-6
            )
            assert res.fraction_real == 1.0, ent.name


class TestStructuralInvariants:
    """Parity and bound on the claimed counts; nodal
    certificates at every essential point of the non-degenerate entries."""

    def test_parity_and_bound(self, surfaces):
        for ent in surfaces:
            eta, rho, _ = ent.claimed
            assert (rho - eta) % 2 == 0, ent.name
            assert eta <= 8, ent.name

    def test_degenerate_set_is_exactly_the_documented_one(self, catalog_profiles):
        got = {name for name, prof in catalog_profiles.items() if prof.degenerate}
        assert got == DEGENERATE_ENTRIES

    def test_nodal_certificates_on_non_degenerate_entries(self, catalog_profiles):
        for name, prof in catalog_profiles.items():
            if prof.degenerate:
                continue
            essential = [sp for sp in prof.points if sp.is_essential]
            assert len(essential) == prof.eta, name
            for sp in essential:
                assert sp.pencil_corank == 2, name
                assert sp.hessian_rank == 3, name


class TestCurveStructure:
    """Essential points lie on both sextic families, and the
    quartic meets the shared cubic minor exactly along the two curves."""

    def test_essential_points_on_both_families(self, surfaces, catalog_profiles):
        for ent in surfaces:
            prof = catalog_profiles[ent.name]
            families = [sextic_family(ent.pencil, side, idx)
                        for side in ("rows", "cols") for idx in range(4)]
            for sp in prof.points:
                if not sp.is_essential:
                    continue
                for fam in families:
                    assert fam.scaled_residual(sp.point.coords) < 1e-8, ent.name

    def test_intersection_is_union_of_curves(self, surfaces):
        for ent in surfaces:
            f = ent.pencil.determinant()
            s3 = common_minor_surface(ent.pencil, 0, 0)
            c1 = sextic_family(ent.pencil, "rows", 0)
            c2 = sextic_family(ent.pencil, "cols", 0)
            rep = complete_intersection_check(
                f, s3, c1, c2, n_samples=20, seed=0, tol=1e-8
            )
            assert rep.all_pass, (ent.name, rep.max_residual)


class TestRank2LocusGeometry:
    """Quadrics of Hermitian points contain the base locus;
    the rank-2 locus has tangent codimension 4."""

    def test_base_locus_hundred_hermitian(self):
        rng = np.random.default_rng(80)
        done = 0
        while done < 100:
            h = _rand_hermitian(rng)
            if all(v.is_zero() for row in h.entries for v in row):
                continue
            assert base_locus_check(cp15_to_quadric(hermitian_to_cp15(h)))
            done += 1

    def test_base_locus_hundred_web_quadrics(self):
        rng = np.random.default_rng(81)
        done = 0
        while done < 100:
            ef = ell_forms(_line_params_from_kernel(_rand_rank2(rng)))
            a, b, c, d = (int(v) for v in rng.integers(-4, 5, size=4))
            if a == b == c == d == 0:
                continue
            assert base_locus_check(web_quadric(ef, a, b, c, d))
            done += 1

    def test_tangent_codim_four_at_rank2_points(self):
        rng = np.random.default_rng(82)
        for _ in range(25):
            assert x2_tangent_codim(_rand_rank2(rng)) == 4


class TestSearchCoverage:
    """The stochastic search reaches every published cell with
    eta <= 4; only (4, 2, 0) remains open afterwards."""

    def test_every_known_cell_found(self):
        tracker = TrackerState.empty()
        for eta in range(5):
            for rho, sigma in sorted(TABLE_KNOWN[eta]):
                target = SearchTarget(eta, rho, sigma)
                found = run_search(target, budget=10_000, seeds=[0, 1, 2])
                assert len(found) >= 1, (eta, rho, sigma)
                for ex in found:
                    p = ex.profile
                    tracker.record(p.eta, p.rho, p.sigma)
        for eta in range(4):
            assert tracker.missing(eta) == set(), eta
        assert tracker.missing(4) == {(2, 0)}


class TestDeterminism:
    """Identical seeds give byte-identical reports."""

    def test_profile_reports_byte_identical(self, catalog_profiles):
        for key in ("4.2/(1,1,1)", "4.3/(2,2,1)"):
            ent = get_entry(key)
            fresh = profile(ent.pencil, ent.definite_point, SolverConfig(seed=0))
            assert dumps_report(fresh) == dumps_report(catalog_profiles[key])

    def test_search_results_byte_identical(self):
        target = SearchTarget(1, 1, 0)
        a = run_search(target, budget=6, seeds=[0])
        b = run_search(target, budget=6, seeds=[0])
        sa = json.dumps([f.to_json_dict() for f in a], sort_keys=True)
        sb = json.dumps([f.to_json_dict() for f in b], sort_keys=True)
        assert sa == sb
