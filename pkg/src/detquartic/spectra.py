"""Spectrahedra and hyperbolicity of Hermitian determinantal quartics.

on_spectrahedron tests semidefiniteness of the pencil at a real projective
point, with the sign convention fixed by a definite direction e.  Rational
points get an exact certificate (signs of the characteristic-polynomial
coefficients); float points fall back to eigenvalues with a scaled
tolerance.  hyperbolicity_check samples projective lines through e and
counts real intersections with the quartic using a chordal-metric reality
test, so roots near infinity are handled without special cases.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .pencil import Definiteness, HermitianPencil
from .scalar_poly import GQ, as_gq, gq_principal_minor_sums


# --------------------------------------------------------------------------
# spectrahedron membership
# --------------------------------------------------------------------------


def _orientation(pencil: HermitianPencil, e: Sequence) -> int:
    """+1 if M(e) is positive definite, -1 if negative definite."""
    d = pencil.is_definite_at(e)
    if d is Definiteness.POSITIVE_DEFINITE:
        return 1
    if d is Definiteness.NEGATIVE_DEFINITE:
        return -1
    raise ValueError("e must be a definite direction of the pencil")


def _psd_exact(m: list) -> bool:
    """PSD test for an exact Hermitian GQ matrix.

    A Hermitian matrix is PSD iff every coefficient sum of k x k principal
    minors is nonnegative (the characteristic polynomial has alternating
    signs).
    """
    return all(s.im == 0 and s.re >= 0 for s in gq_principal_minor_sums(m))


def _is_rational_vec(x: Sequence) -> bool:
    return all(isinstance(v, (int, Fraction)) for v in x)


def on_spectrahedron(
    pencil: HermitianPencil,
    e: Sequence,
    x: Sequence,
    tol: float = 1e-6,
) -> bool:
    """Whether the real projective point x lies on the spectrahedron.

    The pencil is oriented so M(e) is positive definite; the point passes if
    either representative +-x gives a positive semidefinite matrix.
    """
    sign = _orientation(pencil, e)
    if _is_rational_vec(x):
        m = pencil.evaluate([Fraction(v) * sign for v in x])
        neg = [[-v for v in row] for row in m]
        return _psd_exact(m) or _psd_exact(neg)
    xv = np.asarray(x, dtype=float) * sign
    m = np.zeros((4, 4), dtype=np.complex128)
    for k in range(4):
        m += xv[k] * pencil.coeffs[k].to_numpy()
    ev = np.linalg.eigvalsh(m)
    bound = tol * max(np.max(np.abs(ev)), 1e-300)
    return bool(ev[0] >= -bound or ev[-1] <= bound)


# --------------------------------------------------------------------------
# hyperbolicity along lines
# --------------------------------------------------------------------------


@dataclass
class LineSample:
    direction: np.ndarray
    roots: np.ndarray
    is_hyperbolic: bool


@dataclass
class HyperbolicityResult:
    fraction_real: float
    n_lines: int
    samples: list = field(default_factory=list)

    @property
    def is_hyperbolic(self) -> bool:
        return self.fraction_real == 1.0


def _line_restriction(fterms, e: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Coefficients (ascending in s) of f(e + s v) for a quartic f."""
    out = np.zeros(5, dtype=np.complex128)
    for expo, c in fterms:
        poly = np.array([1.0 + 0.0j])
        for k in range(4):
            for _ in range(expo[k]):
                poly = np.convolve(poly, np.array([e[k], v[k]]))
        out[: poly.size] += c * poly
    return out


def _chordal_real(z: complex, tol: float) -> bool:
    return abs(z.imag) / (1.0 + abs(z) ** 2) < tol


def hyperbolicity_check(
    pencil: HermitianPencil,
    e: Sequence,
    n_lines: int = 200,
    seed: int = 0,
    tol: float = 1e-6,
    keep_samples: bool = False,
) -> HyperbolicityResult:
    """Sample projective lines through e and test that every intersection of
    the line with V(det M) is real in the chordal metric."""
    f = pencil.determinant()
    fterms = [(expo, complex(c)) for expo, c in sorted(f.terms.items())]
    ev = np.asarray([float(v) for v in e], dtype=float)
    scale = max(abs(c) for _, c in fterms)
    rng = np.random.default_rng(seed)
    n_real = 0
    samples = []
    for _ in range(n_lines):
        v = rng.standard_normal(4)
        v /= np.linalg.norm(v)
        coeffs = _line_restriction(fterms, ev, v) / scale
        # trim negligible leading coefficients: missing degrees are roots at
        # infinity, which are real points of the projective line
        mags = np.abs(coeffs)
        top = 4
        while top > 0 and mags[top] <= 1e-12 * mags.max():
            top -= 1
        roots = np.roots(coeffs[: top + 1][::-1]) if top > 0 else np.array([])
        good = all(_chordal_real(z, tol) for z in roots)
        if good:
            n_real += 1
        if keep_samples:
            samples.append(LineSample(direction=v, roots=roots, is_hyperbolic=good))
    return HyperbolicityResult(
        fraction_real=n_real / n_lines, n_lines=n_lines, samples=samples
    )


# --------------------------------------------------------------------------
# exact real-root counting for univariate quartics
# --------------------------------------------------------------------------


def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p = p[:-1]
    return p


def _pdiff(p: list) -> list:
    return [k * c for k, c in enumerate(p)][1:]


def _pmod(a: list, b: list) -> list:
    a = list(a)
    while len(a) >= len(b) and _trim(a):
        if a[-1] == 0:
            a.pop()
            continue
        q = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[i + shift] -= q * c
        a.pop()
    return _trim(a)


def _pgcd(a: list, b: list) -> list:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b)
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def _pquo(a: list, b: list) -> list:
    """Exact quotient of a by a divisor b."""
    a = list(a)
    out = [Fraction(0)] * (len(a) - len(b) + 1)
    while len(a) >= len(b):
        if a[-1] == 0:
            a.pop()
            continue
        q = a[-1] / b[-1]
        out[len(a) - len(b)] = q
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[i + shift] -= q * c
        a.pop()
    return _trim(out)


def _sign_changes_at_inf(chain: list, sign: int) -> int:
    signs = []
    for p in chain:
        lead = p[-1]
        s = (1 if lead > 0 else -1) * (sign ** ((len(p) - 1) % 2) if sign < 0 else 1)
        signs.append(s)
    changes = 0
    for a, b in zip(signs, signs[1:]):
        if a * b < 0:
            changes += 1
    return changes


def _sturm_distinct(p: list) -> int:
    """Distinct real roots of a squarefree rational polynomial."""
    p = _trim(p)
    if len(p) <= 1:
        return 0
    chain = [p, _trim(_pdiff(p))]
    while len(chain[-1]) > 1:
        r = _pmod(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-c for c in r])
    return _sign_changes_at_inf(chain, -1) - _sign_changes_at_inf(chain, 1)


def _count_real_with_multiplicity(p: list) -> int:
    p = _trim(p)
    if len(p) <= 1:
        return 0
    g = _pgcd(p, _pdiff(p))
    if len(g) <= 1:
        return _sturm_distinct(p)
    squarefree = _pquo(p, g)
    return _sturm_distinct(squarefree) + _count_real_with_multiplicity(g)


def quartic_real_roots(coeffs: Sequence) -> tuple:
    """Real roots of a rational univariate quartic c0 + c1 s + ... + c4 s^4.

    Returns (count, roots): the exact number of real roots counted with
    multiplicity (Sturm chains over the rationals) and float approximations
    of the distinct real roots from the companion matrix.  The two methods
    cross-check each other; a mismatch raises.
    """
    exact = [Fraction(c) for c in coeffs]
    exact = _trim(exact)
    if len(exact) > 5:
        raise ValueError("expected degree at most 4")
    if len(exact) <= 1:
        raise ValueError("constant polynomial has no well-defined root count")
    count = _count_real_with_multiplicity(exact)

    # distinct roots come from the exact squarefree part, where the
    # companion matrix is well conditioned even when the input has
    # multiple roots
    g = _pgcd(exact, _pdiff(exact))
    sf = _pquo(exact, g) if len(g) > 1 else exact
    fl = np.array([float(c) for c in sf[::-1]])
    roots = np.roots(fl)
    real = np.sort(roots[np.abs(roots.imag) < 1e-7 * (1.0 + np.abs(roots))].real)
    distinct = []
    for r in real:
        if not distinct or abs(r - distinct[-1]) > 1e-6 * (1.0 + abs(r)):
            distinct.append(r)
    n_distinct = _sturm_distinct(sf)
    if len(distinct) != n_distinct:
        raise AssertionError(
            f"companion matrix found {len(distinct)} real roots, "
            f"Sturm chain certifies {n_distinct}"
        )
    return count, np.array(distinct)
