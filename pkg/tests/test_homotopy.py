from fractions import Fraction

import numpy as np

from detquartic.homotopy import FloatPoly, PolySystem, mp_newton, track_total_degree
from detquartic.scalar_poly import GQ, MultiPoly


def _poly(n, terms):
    return MultiPoly(n, {e: GQ(Fraction(c)) for e, c in terms.items()})


class TestTracking:
    def test_recovers_known_product_roots(self):
        # x^2 = 1, y^2 = 4 has the four corners (+-1, +-2)
        f1 = _poly(2, {(2, 0): 1, (0, 0): -1})
        f2 = _poly(2, {(0, 2): 1, (0, 0): -4})
        system = PolySystem([
            FloatPoly.from_multipoly(f1, keep=[0, 1]),
            FloatPoly.from_multipoly(f2, keep=[0, 1]),
        ])
        result = track_total_degree(system, np.random.default_rng(0))
        sols = sorted(
            (round(s[0].real), round(s[1].real)) for s in result.successes
        )
        assert sols == [(-1, -2), (-1, 2), (1, -2), (1, 2)]
        for s in result.successes:
            assert system.scaled_residual(s) < 1e-10

    def test_handles_complex_roots(self):
        # x^2 + 1 = 0, y - x = 0
        f1 = _poly(2, {(2, 0): 1, (0, 0): 1})
        f2 = _poly(2, {(0, 1): 1, (1, 0): -1})
        system = PolySystem([
            FloatPoly.from_multipoly(f1, keep=[0, 1]),
            FloatPoly.from_multipoly(f2, keep=[0, 1]),
        ])
        result = track_total_degree(system, np.random.default_rng(1))
        ims = sorted(round(s[0].imag) for s in result.successes)
        assert ims == [-1, 1]

    def test_substitution_chart(self):
        # homogeneous x^2 - y z restricted to z = 1
        f = _poly(3, {(2, 0, 0): 1, (0, 1, 1): -1})
        fp = FloatPoly.from_multipoly(f, keep=[0, 1], sub={2: 1})
        val = fp.eval(np.array([[3.0 + 0j, 9.0 + 0j]]))
        assert abs(val[0]) < 1e-12


class TestExtendedPrecision:
    def test_refines_double_root_past_float_accuracy(self):
        # (x - 1)^2 = 0 in the chart of a homogeneous version
        f = _poly(2, {(2, 0): 1, (1, 1): -2, (0, 2): 1})
        x = mp_newton([f], keep=[0], sub={1: 1}, x0=[1.0 + 1e-6])
        assert abs(complex(x[0]) - 1.0) < 1e-10

    def test_refines_simple_root_to_high_precision(self):
        f = _poly(1, {(2,): 1, (0,): -2})
        x = mp_newton([f], keep=[0], sub={}, x0=[1.4])
        v = complex(x[0])
        assert abs(v.real - 2 ** 0.5) < 1e-14
        assert abs(v.imag) < 1e-14
