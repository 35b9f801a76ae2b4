from fractions import Fraction

import numpy as np
import pytest

from detquartic.pencil import (
    Definiteness,
    HermitianMatrix,
    HermitianPencil,
)
from detquartic.scalar_poly import GQ


def _rand_hermitian(rng, lo=-3, hi=3):
    m = [[GQ(0)] * 4 for _ in range(4)]
    for i in range(4):
        m[i][i] = GQ(Fraction(int(rng.integers(lo, hi + 1))))
        for j in range(i + 1, 4):
            v = GQ(
                Fraction(int(rng.integers(lo, hi + 1))),
                Fraction(int(rng.integers(lo, hi + 1))),
            )
            m[i][j] = v
            m[j][i] = v.conj()
    return HermitianMatrix(m)


def _rand_pencil(rng):
    return HermitianPencil([_rand_hermitian(rng) for _ in range(4)])


class TestHermitianMatrix:
    def test_rejects_non_hermitian(self):
        bad = [[GQ(0, 1) if i == j == 0 else GQ(0) for j in range(4)] for i in range(4)]
        with pytest.raises(ValueError):
            HermitianMatrix(bad)
        bad2 = [[GQ(1)] * 4 for _ in range(4)]
        bad2[0][1] = GQ(2)
        with pytest.raises(ValueError):
            HermitianMatrix(bad2)

    def test_rank_of_outer_products(self):
        rng = np.random.default_rng(0)
        for _ in range(10):
            v = [GQ(Fraction(int(rng.integers(-3, 4))),
                    Fraction(int(rng.integers(-3, 4)))) for _ in range(4)]
            if all(x.is_zero() for x in v):
                continue
            m = [[v[i] * v[j].conj() for j in range(4)] for i in range(4)]
            assert HermitianMatrix(m).rank() == 1


class TestRealification:
    def test_block_structure(self):
        rng = np.random.default_rng(1)
        p = _rand_pencil(rng)
        rs = p.realify()
        for k in range(4):
            big = rs.coeffs[k]
            a = p.coeffs[k].real_part()
            b = p.coeffs[k].imag_part()
            for i in range(4):
                for j in range(4):
                    assert big[i][j] == a[i][j]
                    assert big[i + 4][j + 4] == a[i][j]
                    assert big[i][j + 4] == -b[i][j]
                    assert big[i + 4][j] == b[i][j]

    def test_square_identity_random(self):
        rng = np.random.default_rng(2)
        for _ in range(5):
            assert _rand_pencil(rng).verify_square_identity()

    def test_rank_doubling_random_points(self):
        rng = np.random.default_rng(3)
        p = _rand_pencil(rng)
        rs = p.realify()
        for _ in range(25):
            x = [Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 5)))
                 for _ in range(4)]
            if all(v == 0 for v in x):
                continue
            assert rs.rank_at(x) == 2 * p.rank_at(x)


class TestDefiniteness:
    def test_matches_eigenvalues(self):
        rng = np.random.default_rng(4)
        for _ in range(20):
            p = _rand_pencil(rng)
            e = [Fraction(int(rng.integers(-3, 4))) for _ in range(4)]
            if all(v == 0 for v in e):
                continue
            verdict = p.is_definite_at(e)
            m = sum(float(v) * c.to_numpy() for v, c in zip(e, p.coeffs))
            w = np.linalg.eigvalsh(m)
            if verdict is Definiteness.POSITIVE_DEFINITE:
                assert w[0] > 0
            elif verdict is Definiteness.NEGATIVE_DEFINITE:
                assert w[-1] < 0
            else:
                assert w[0] <= 1e-9 * max(1, abs(w).max()) or w[-1] >= -1e-9

    def test_rejects_non_real_point(self):
        rng = np.random.default_rng(5)
        p = _rand_pencil(rng)
        with pytest.raises(ValueError):
            p.is_definite_at([GQ(0, 1), GQ(1), GQ(0), GQ(0)])
        with pytest.raises(ValueError):
            p.is_definite_at([0, 0, 0, 0])


class TestJson:
    def test_round_trip(self):
        rng = np.random.default_rng(6)
        p = _rand_pencil(rng)
        d = p.to_json_dict(name="t")
        q = HermitianPencil.from_json_dict(d)
        assert all(a == b for a, b in zip(p.coeffs, q.coeffs))
