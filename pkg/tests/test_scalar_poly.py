from fractions import Fraction

import numpy as np
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from detquartic.scalar_poly import (
    GQ,
    MultiPoly,
    PolyMatrix,
    gq_det,
    gq_nullspace,
    gq_principal_minor_sums,
    gq_rank,
    gradient,
    hessian,
)

small_fraction = st.fractions(
    min_value=-5, max_value=5, max_denominator=6
)
gq_values = st.builds(GQ, small_fraction, small_fraction)


def sparse_poly(n_vars=3, max_deg=3):
    expo = st.tuples(*[st.integers(0, max_deg) for _ in range(n_vars)])
    return st.dictionaries(expo, gq_values, max_size=5).map(
        lambda terms: MultiPoly(n_vars, terms)
    )


class TestGQ:
    @given(gq_values, gq_values, gq_values)
    def test_ring_laws(self, a, b, c):
        assert (a + b) * c == a * c + b * c
        assert a * (b * c) == (a * b) * c
        assert a + b == b + a

    @given(gq_values, gq_values)
    def test_conjugation_is_multiplicative(self, a, b):
        assert (a * b).conj() == a.conj() * b.conj()

    @given(gq_values)
    def test_division_inverts_multiplication(self, a):
        if not a.is_zero():
            assert (a * GQ(7, 3)) / a == GQ(7, 3)

    @given(gq_values)
    def test_norm_matches_complex_modulus(self, a):
        assert float(a.norm2()) == abs(complex(a)) ** 2 or abs(
            float(a.norm2()) - abs(complex(a)) ** 2
        ) < 1e-9 * (1 + float(a.norm2()))


class TestMultiPoly:
    @given(sparse_poly(), sparse_poly(), sparse_poly())
    @settings(max_examples=50, deadline=None)
    def test_distributive(self, f, g, h):
        assert (f + g) * h == f * h + g * h

    @given(sparse_poly(), sparse_poly())
    @settings(max_examples=50, deadline=None)
    def test_evaluation_is_a_homomorphism(self, f, g):
        pt = [Fraction(1, 2), Fraction(-2), Fraction(3)]
        assert (f * g).evaluate(pt) == f.evaluate(pt) * g.evaluate(pt)
        assert (f + g).evaluate(pt) == f.evaluate(pt) + g.evaluate(pt)

    def test_gradient_and_hessian_shape(self):
        f = MultiPoly(4, {(2, 1, 1, 0): GQ(3), (0, 0, 2, 2): GQ(1, 2)})
        grads = gradient(f)
        assert len(grads) == 4
        h = hessian(f)
        for i in range(4):
            for j in range(4):
                assert h[i, j] == h[j, i]


def _rand_gq_matrix(rng, n=4, herm=False):
    m = [[GQ(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            m[i][j] = GQ(
                Fraction(int(rng.integers(-4, 5))), Fraction(int(rng.integers(-4, 5)))
            )
    if herm:
        for i in range(n):
            m[i][i] = GQ(Fraction(int(rng.integers(-4, 5))))
            for j in range(i + 1, n):
                m[j][i] = m[i][j].conj()
    return m


class TestExactLinearAlgebra:
    def test_rank_matches_numpy(self):
        rng = np.random.default_rng(0)
        for _ in range(30):
            m = _rand_gq_matrix(rng)
            a = np.array([[complex(v) for v in row] for row in m])
            assert gq_rank(m) == np.linalg.matrix_rank(a, tol=1e-9)

    def test_det_matches_sympy(self):
        rng = np.random.default_rng(1)
        for _ in range(10):
            m = _rand_gq_matrix(rng, n=3)
            s = sympy.Matrix(
                [[sympy.Rational(v.re) + sympy.I * sympy.Rational(v.im) for v in row]
                 for row in m]
            )
            d = gq_det(m)
            expect = sympy.expand(s.det())
            assert sympy.Rational(d.re) + sympy.I * sympy.Rational(d.im) == expect

    def test_nullspace_vectors_annihilate(self):
        rng = np.random.default_rng(2)
        for _ in range(20):
            m = _rand_gq_matrix(rng, n=3)
            m[2] = [m[0][k] + m[1][k] for k in range(3)]  # force a relation
            basis = gq_nullspace(m)
            assert basis
            for v in basis:
                for row in m:
                    acc = GQ(0)
                    for a, b in zip(row, v):
                        acc = acc + a * b
                    assert acc.is_zero()

    def test_principal_minor_sums_match_charpoly(self):
        rng = np.random.default_rng(3)
        for _ in range(10):
            m = _rand_gq_matrix(rng, herm=True)
            sums = gq_principal_minor_sums(m)
            s = sympy.Matrix(
                [[sympy.Rational(v.re) + sympy.I * sympy.Rational(v.im) for v in row]
                 for row in m]
            )
            lam = sympy.symbols("lam")
            # char poly det(lam I - M) = lam^4 - e1 lam^3 + e2 lam^2 - ...
            cp = sympy.Poly(s.charpoly(lam).as_expr(), lam)
            coeffs = cp.all_coeffs()  # leading first
            for k, e in enumerate(sums, start=1):
                expect = (-1) ** k * coeffs[k]
                assert sympy.Rational(e.re) == expect
                assert e.im == 0


class TestPolyMatrixDeterminant:
    def test_matches_numerical_determinant(self):
        rng = np.random.default_rng(4)
        entries = []
        for i in range(3):
            row = []
            for j in range(3):
                terms = {
                    tuple(int(v) for v in e): GQ(Fraction(int(rng.integers(-3, 4))))
                    for e in np.eye(3, dtype=int)
                }
                row.append(MultiPoly(3, terms))
            entries.append(row)
        m = PolyMatrix(entries)
        d = m.determinant()
        x = [Fraction(2), Fraction(-1), Fraction(3)]
        a = np.array(
            [[complex(p.evaluate(x)) for p in row] for row in entries]
        )
        assert abs(complex(d.evaluate(x)) - np.linalg.det(a)) < 1e-8
