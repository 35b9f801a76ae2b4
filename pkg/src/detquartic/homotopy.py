"""Total-degree polynomial homotopy continuation for small dense systems.

Square systems only.  The start system is x_i^{d_i} = c_i with seeded unit
constants, connected to the target by a gamma-twisted straight-line homotopy.
Paths are tracked with an Euler predictor and Newton corrector, all paths of
one system advanced together as numpy batches with per-path adaptive steps.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .scalar_poly import MultiPoly

# path status codes
TRACKING = 0
SUCCESS = 1
DIVERGED = 2
STALLED = 3

_DIVERGE_NORM = 1e10
_MIN_STEP = 1e-14
_MAX_STEP = 0.1


class FloatPoly:
    """Dense-term float polynomial for batched evaluation."""

    __slots__ = ("expo", "coeff", "n_vars")

    def __init__(self, expo: np.ndarray, coeff: np.ndarray, n_vars: int):
        self.expo = np.asarray(expo, dtype=np.int64).reshape(-1, n_vars)
        self.coeff = np.asarray(coeff, dtype=np.complex128).reshape(-1)
        self.n_vars = n_vars

    @staticmethod
    def from_multipoly(f: MultiPoly, keep: list, sub: dict | None = None) -> "FloatPoly":
        """Restrict f to the variables in `keep`; `sub` fixes the others."""
        sub = sub or {}
        terms: dict = {}
        for e, c in f.terms.items():
            val = complex(c)
            ke = []
            ok = True
            for i, p in enumerate(e):
                if i in sub:
                    val *= complex(sub[i]) ** p
                elif i in keep:
                    ke.append(p)
                elif p:
                    ok = False
                    break
            if not ok:
                raise ValueError(f"variable x{i} appears but is neither kept nor substituted")
            key = tuple(ke)
            terms[key] = terms.get(key, 0j) + val
        items = sorted(terms.items())
        expo = np.array([k for k, _ in items], dtype=np.int64).reshape(-1, len(keep))
        coeff = np.array([v for _, v in items], dtype=np.complex128)
        return FloatPoly(expo, coeff, len(keep))

    def degree(self) -> int:
        if self.coeff.size == 0:
            return -1
        nz = np.abs(self.coeff) > 0
        if not nz.any():
            return -1
        return int(self.expo[nz].sum(axis=1).max())

    def coeff_norm(self) -> float:
        return float(np.linalg.norm(self.coeff))

    def diff(self, j: int) -> "FloatPoly":
        mask = self.expo[:, j] > 0
        expo = self.expo[mask].copy()
        coeff = self.coeff[mask] * expo[:, j]
        expo[:, j] -= 1
        return FloatPoly(expo, coeff, self.n_vars)

    def eval(self, X: np.ndarray) -> np.ndarray:
        """X: (N, n_vars) complex -> (N,) values."""
        X = np.atleast_2d(X)
        if self.coeff.size == 0:
            return np.zeros(X.shape[0], dtype=np.complex128)
        # powers[j][d] = X[:, j]**d, shared across terms
        maxd = self.expo.max(axis=0)
        powers = [np.ones((int(maxd[j]) + 1, X.shape[0]), dtype=np.complex128)
                  for j in range(self.n_vars)]
        for j in range(self.n_vars):
            for d in range(1, int(maxd[j]) + 1):
                powers[j][d] = powers[j][d - 1] * X[:, j]
        out = np.zeros(X.shape[0], dtype=np.complex128)
        for k in range(self.coeff.size):
            term = np.full(X.shape[0], self.coeff[k])
            for j in range(self.n_vars):
                d = int(self.expo[k, j])
                if d:
                    term = term * powers[j][d]
            out += term
        return out


class PolySystem:
    """A square system of FloatPoly with cached Jacobian polynomials."""

    def __init__(self, polys: list):
        self.polys = list(polys)
        self.n = len(self.polys)
        if any(p.n_vars != self.n for p in self.polys):
            raise ValueError("system is not square")
        self.jac_polys = [[p.diff(j) for j in range(self.n)] for p in self.polys]
        self.degrees = [max(p.degree(), 0) for p in self.polys]

    def eval(self, X: np.ndarray) -> np.ndarray:
        X = np.atleast_2d(X)
        return np.stack([p.eval(X) for p in self.polys], axis=1)

    def jac(self, X: np.ndarray) -> np.ndarray:
        X = np.atleast_2d(X)
        out = np.empty((X.shape[0], self.n, self.n), dtype=np.complex128)
        for i in range(self.n):
            for j in range(self.n):
                out[:, i, j] = self.jac_polys[i][j].eval(X)
        return out

    def scaled_residual(self, X: np.ndarray) -> np.ndarray:
        """max_i |p_i(x)| / (||p_i|| * max(1, |x|)^deg), per point."""
        X = np.atleast_2d(X)
        nx = np.maximum(1.0, np.linalg.norm(X, axis=1))
        res = np.zeros(X.shape[0])
        for p, d in zip(self.polys, self.degrees):
            denom = max(p.coeff_norm(), 1e-300) * nx ** d
            res = np.maximum(res, np.abs(p.eval(X)) / denom)
        return res


@dataclass
class TrackResult:
    endpoints: np.ndarray          # (N, n) complex
    status: np.ndarray             # (N,) int codes
    n_paths: int = 0
    warnings: list = field(default_factory=list)

    @property
    def successes(self) -> np.ndarray:
        return self.endpoints[self.status == SUCCESS]


def total_degree_start(degrees: list, rng: np.random.Generator):
    """Start system x_i^{d_i} - c_i with |c_i| = 1, and all its solutions."""
    n = len(degrees)
    angles = rng.uniform(0.0, 2.0 * np.pi, size=n)
    consts = np.exp(1j * angles)
    roots = []
    for d, c in zip(degrees, consts):
        base = c ** (1.0 / d)
        roots.append([base * np.exp(2j * np.pi * k / d) for k in range(d)])
    starts = np.array(list(itertools.product(*roots)), dtype=np.complex128)
    return consts, starts


def _solve_batch(A: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Batched linear solve; least-squares fallback for singular members."""
    try:
        return np.linalg.solve(A, b[..., None])[..., 0]
    except np.linalg.LinAlgError:
        out = np.empty_like(b)
        for k in range(A.shape[0]):
            try:
                out[k] = np.linalg.solve(A[k], b[k])
            except np.linalg.LinAlgError:
                out[k] = np.linalg.lstsq(A[k], b[k], rcond=None)[0]
        return out


def mp_newton(
    polys: list,
    keep: list,
    sub: dict,
    x0,
    digits: int = 50,
    iters: int = 120,
):
    """Extended-precision Newton for a square system of exact polynomials.

    `polys` are MultiPoly with Gaussian-rational coefficients; `keep` lists
    the free variable indices (len(keep) == len(polys)) and `sub` fixes the
    remaining ones.  Returns the refined coordinates of the free variables as
    complex numbers.  Converges quadratically at regular roots and linearly
    at multiple roots, where double precision stagnates far too early.
    """
    import mpmath

    n = len(polys)
    jac = [[p.diff(j) for j in keep] for p in polys]

    with mpmath.workdps(digits):
        def ev(poly, x):
            full = [None] * poly.num_vars
            for i, v in sub.items():
                full[i] = mpmath.mpc(v)
            for idx, v in zip(keep, x):
                full[idx] = v
            total = mpmath.mpc(0)
            for e, c in poly.terms.items():
                v = mpmath.mpc(
                    mpmath.mpf(c.re.numerator) / c.re.denominator,
                    mpmath.mpf(c.im.numerator) / c.im.denominator,
                )
                for i, d in enumerate(e):
                    for _ in range(d):
                        v *= full[i]
                total += v
            return total

        x = [mpmath.mpc(complex(v)) for v in x0]
        best = list(x)
        best_res = None
        for _ in range(iters):
            F = mpmath.matrix([ev(q, x) for q in polys])
            res = max(abs(v) for v in F)
            if best_res is None or res < best_res:
                best_res = res
                best = list(x)
            J = mpmath.matrix(n, n)
            for r in range(n):
                for c in range(n):
                    J[r, c] = ev(jac[r][c], x)
            try:
                delta = mpmath.lu_solve(J, -F)
            except (ZeroDivisionError, ValueError):
                break
            x = [xi + di for xi, di in zip(x, delta)]
            step = max(abs(d) for d in delta)
            if step > 1:
                x = best
                break
            if step < mpmath.mpf(10) ** (-30):
                best = list(x)
                break
        return [complex(v) for v in best]


def track_total_degree(
    target: PolySystem,
    rng: np.random.Generator,
    max_steps: int = 20000,
    polish_tolerance: float = 1e-12,
) -> TrackResult:
    """Track all Bezout paths of a gamma-twisted total-degree homotopy.

    Degrees for the start system are the literal degrees of the target
    equations (callers pass homogeneous restrictions, so paths lost to
    infinity in one chart are recovered in another).
    """
    n = target.n
    degrees = [max(d, 1) for d in target.degrees]
    consts, X = total_degree_start(degrees, rng)
    gamma = np.exp(1j * rng.uniform(0.0, 2.0 * np.pi))
    N = X.shape[0]

    # start system values and Jacobian, evaluated on the fly
    start_expo = np.array(degrees)

    def g_eval(Xa):
        return np.stack(
            [Xa[:, i] ** degrees[i] - consts[i] for i in range(n)], axis=1
        )

    def g_jac(Xa):
        out = np.zeros((Xa.shape[0], n, n), dtype=np.complex128)
        for i in range(n):
            out[:, i, i] = degrees[i] * Xa[:, i] ** (degrees[i] - 1)
        return out

    t = np.zeros(N)
    dt = np.full(N, 0.02)
    status = np.full(N, TRACKING, dtype=np.int64)
    grow = np.zeros(N, dtype=np.int64)

    for _ in range(max_steps):
        act = np.flatnonzero(status == TRACKING)
        if act.size == 0:
            break
        Xa = X[act]
        ta = t[act]
        dta = np.minimum(dt[act], 1.0 - ta)
        F = target.eval(Xa)
        G = g_eval(Xa)
        JH = (ta[:, None, None] * target.jac(Xa)
              + ((1.0 - ta) * gamma)[:, None, None] * g_jac(Xa))
        Ht = F - gamma * G
        dx = _solve_batch(JH, -Ht * dta[:, None])
        Xp = Xa + dx
        tp = ta + dta

        # Newton corrections at the advanced time
        ok = np.ones(act.size, dtype=bool)
        for _ in range(3):
            Fp = target.eval(Xp)
            Gp = g_eval(Xp)
            Hp = tp[:, None] * Fp + ((1.0 - tp) * gamma)[:, None] * Gp
            JHp = (tp[:, None, None] * target.jac(Xp)
                   + ((1.0 - tp) * gamma)[:, None, None] * g_jac(Xp))
            delta = _solve_batch(JHp, -Hp)
            Xp = Xp + delta
            step_ok = np.isfinite(Xp).all(axis=1)
            rel = np.linalg.norm(delta, axis=1) / np.maximum(1.0, np.linalg.norm(Xp, axis=1))
            ok &= step_ok
        ok &= rel < 1e-8

        accepted = act[ok]
        X[accepted] = Xp[ok]
        t[accepted] = tp[ok]
        grow[accepted] += 1
        dt[accepted[grow[accepted] >= 2]] *= 2.0
        np.clip(dt, None, _MAX_STEP, out=dt)
        grow[accepted[grow[accepted] >= 2]] = 0

        rejected = act[~ok]
        dt[rejected] *= 0.5
        grow[rejected] = 0
        status[rejected[dt[rejected] < _MIN_STEP]] = STALLED

        big = np.linalg.norm(X, axis=1) > _DIVERGE_NORM
        status[(status == TRACKING) & big] = DIVERGED
        done = (status == TRACKING) & (t >= 1.0 - 1e-14)
        status[done] = SUCCESS
    else:
        status[status == TRACKING] = STALLED

    # Endpoint polish on the target system alone.  Stalled paths near t = 1
    # are included: singular (multiple) endpoints make the corrector's
    # contraction test fail even though Newton still reaches the solution,
    # and slowly escaping paths are recognized by their growing norm.
    idx = np.flatnonzero((status == SUCCESS) | ((status == STALLED) & (t > 0.9)))
    if idx.size:
        Xe = X[idx]
        best = Xe.copy()
        best_res = target.scaled_residual(Xe)
        for _ in range(60):
            if (best_res < polish_tolerance).all():
                break
            J = target.jac(Xe)
            F = target.eval(Xe)
            delta = _solve_batch(J, -F)
            Xn = Xe + delta
            bad = ~np.isfinite(Xn).all(axis=1)
            Xn[bad] = Xe[bad]
            Xe = Xn
            res = target.scaled_residual(Xe)
            improved = res < best_res
            best[improved] = Xe[improved]
            best_res = np.minimum(best_res, res)
        X[idx] = best
        norms = np.linalg.norm(best, axis=1)
        status[idx[best_res <= 1e-6]] = SUCCESS
        fail = best_res > 1e-6
        status[idx[fail & (norms > 1e4)]] = DIVERGED
        status[idx[fail & (norms <= 1e4)]] = STALLED
    far = (status == STALLED) & (np.linalg.norm(X, axis=1) > 1e4)
    status[far] = DIVERGED

    result = TrackResult(endpoints=X, status=status, n_paths=N)
    n_bad = int(np.sum(status == STALLED))
    if n_bad > 0.05 * N:
        result.warnings.append(
            f"{n_bad}/{N} paths failed to converge (above the 5% budget)"
        )
    return result
