"""Numeric kernels the rest of the package is built on.

Everything here is deterministic and dependency-free apart from numpy:
the error function and the Dawson integral are implemented from scratch
(series plus continued fraction / asymptotic expansion), quadrature is
adaptive Simpson with an explicit node budget, and the ODE kernel is the
classical fourth-order Runge-Kutta step.  Identical inputs always produce
bit-identical outputs; there is no shared mutable state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import NonConvergence, NonFinite

_TWO_OVER_SQRT_PI = 2.0 / math.sqrt(math.pi)


@dataclass(frozen=True)
class Tolerances:
    """Knobs for quadrature and finite differences.

    Attributes
    ----------
    abs_tol : float
        Absolute quadrature tolerance.
    rel_tol : float
        Relative quadrature tolerance.
    fd_step : float
        Relative step for central differences, must lie in (1e-9, 1e-2).
    max_quad_nodes : int
        Evaluation budget for one adaptive integral.
    """

    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    fd_step: float = 1e-5
    max_quad_nodes: int = 500_000

    def __post_init__(self) -> None:
        if not (self.abs_tol > 0 and self.rel_tol > 0 and self.max_quad_nodes > 0):
            raise ValueError("tolerances must be strictly positive")
        if not (1e-9 < self.fd_step < 1e-2):
            raise ValueError("fd_step must lie in (1e-9, 1e-2)")


DEFAULT_TOL = Tolerances()


# ---------------------------------------------------------------------------
# special functions
# ---------------------------------------------------------------------------

def erf(x: float) -> float:
    """Error function, accurate to better than 1e-12 absolute.

    For |x| < 3 uses the non-alternating series
    erf(x) = (2/sqrt(pi)) exp(-x^2) sum_k (2x^2)^k x / (2k+1)!!,
    which is free of cancellation; for |x| >= 3 the complement is evaluated
    through a continued fraction.
    """
    if x != x:  # NaN
        raise NonFinite("erf of NaN")
    ax = abs(x)
    if ax == 0.0:
        return 0.0
    if ax < 3.0:
        u = 2.0 * x * x
        term = ax
        total = ax
        k = 0
        while True:
            k += 1
            term *= u / (2 * k + 1)
            total += term
            if term < total * 1e-18:
                break
        val = _TWO_OVER_SQRT_PI * math.exp(-x * x) * total
        return val if x > 0 else -val
    val = 1.0 - _erfc_cf(ax)
    return val if x > 0 else -val


def erfc(x: float) -> float:
    """Complementary error function 1 - erf(x)."""
    if x > 3.0:
        return _erfc_cf(x)
    if x < -3.0:
        return 2.0 - _erfc_cf(-x)
    return 1.0 - erf(x)


def _erfc_cf(x: float) -> float:
    # Laplace continued fraction, backward recurrence; valid for x >= 3.
    f = x
    for k in range(60, 0, -1):
        f = x + (0.5 * k) / f
    z = x * x
    if z > 700.0:
        return 0.0
    return math.exp(-z) / (math.sqrt(math.pi) * f)


def dawson(x: float) -> float:
    """Dawson integral F(x) = exp(-x^2) * int_0^x exp(t^2) dt.

    Series for |x| <= 8 (all-positive sum scaled by exp(-x^2), no
    cancellation), asymptotic expansion beyond.
    """
    ax = abs(x)
    if ax == 0.0:
        return 0.0
    if ax <= 8.0:
        u = x * x
        term = ax
        total = ax
        k = 0
        while True:
            k += 1
            term *= u * (2 * k - 1) / (k * (2 * k + 1))
            total += term
            if term < total * 1e-18:
                break
        val = math.exp(-u) * total
    else:
        # F(x) ~ 1/(2x) * (1 + sum_k (2k-1)!!/(2x^2)^k)
        inv2x2 = 1.0 / (2.0 * x * x)
        term = 1.0
        total = 1.0
        for k in range(1, 24):
            term *= (2 * k - 1) * inv2x2
            total += term
            if term < 1e-17:
                break
        val = total / (2.0 * ax)
    return val if x > 0 else -val


def dawson_ratio(x: float) -> float:
    """F(x)/x with the removable singularity filled in (value 1 at x=0)."""
    ax = abs(x)
    if ax < 1e-4:
        x2 = x * x
        return 1.0 - 2.0 * x2 / 3.0 + 4.0 * x2 * x2 / 15.0
    return dawson(ax) / ax


def dawson_ratio_ddx2(x: float) -> float:
    """Derivative of F(x)/x with respect to x^2."""
    ax = abs(x)
    if ax < 1e-3:
        x2 = x * x
        return -2.0 / 3.0 + 8.0 * x2 / 15.0 - 8.0 * x2 * x2 / 35.0
    f = dawson(ax)
    return (ax - 2.0 * ax * ax * f - f) / (2.0 * ax ** 3)


# ---------------------------------------------------------------------------
# quadrature
# ---------------------------------------------------------------------------

def integrate_1d(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: Tolerances = DEFAULT_TOL,
) -> float:
    """Adaptive Simpson integral of ``f`` over the finite interval [a, b].

    Deterministic: the refinement pattern depends only on the integrand
    values.  Raises :class:`NonConvergence` once ``tol.max_quad_nodes``
    evaluations have been spent.
    """
    if not (math.isfinite(a) and math.isfinite(b)):
        raise ValueError("integrate_1d requires finite bounds")
    if a == b:
        return 0.0
    budget = [tol.max_quad_nodes]

    def ev(x: float) -> float:
        if budget[0] <= 0:
            raise NonConvergence("quadrature node budget exhausted")
        budget[0] -= 1
        v = f(x)
        return v

    fa, fm, fb = ev(a), ev(0.5 * (a + b)), ev(b)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    return _adapt(ev, a, b, fa, fm, fb, whole, tol, 60)


def _adapt(ev, a, b, fa, fm, fb, whole, tol, depth):
    m = 0.5 * (a + b)
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm, frm = ev(lm), ev(rm)
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    better = left + right
    err = better - whole
    if depth <= 0:
        raise NonConvergence("adaptive refinement depth exhausted")
    if abs(err) <= 15.0 * max(tol.abs_tol, tol.rel_tol * abs(better)):
        return better + err / 15.0
    return (
        _adapt(ev, a, m, fa, flm, fm, left, tol, depth - 1)
        + _adapt(ev, m, b, fm, frm, fb, right, tol, depth - 1)
    )


def integrate_real_line(
    f: Callable[[float], float],
    tol: Tolerances = DEFAULT_TOL,
    scale: float = 4.0,
) -> float:
    """Integral of a decaying integrand over the whole real line.

    Uses the substitution x = scale * atanh(u); the integrand must decay
    faster than the Jacobian grows (Gaussian-family tails do).
    """

    def g(u: float) -> float:
        if abs(u) >= 1.0 - 1e-14:
            return 0.0
        x = scale * math.atanh(u)
        return f(x) * scale / (1.0 - u * u)

    return integrate_1d(g, -1.0, 1.0, tol)


def integrate_half_line(
    f: Callable[[float], float],
    tol: Tolerances = DEFAULT_TOL,
    scale: float = 4.0,
) -> float:
    """Integral of a decaying integrand over [0, infinity)."""

    def g(u: float) -> float:
        if u >= 1.0 - 1e-14:
            return 0.0
        x = scale * math.atanh(u)
        return f(x) * scale / (1.0 - u * u)

    return integrate_1d(g, 0.0, 1.0, tol)


def integrate_3d_separable(
    fx: Callable[[float], float],
    fy: Callable[[float], float],
    fz: Callable[[float], float],
    tol: Tolerances = DEFAULT_TOL,
    scale: float = 4.0,
) -> float:
    """Product integral of an axis-separable integrand over all of space."""
    return (
        integrate_real_line(fx, tol, scale)
        * integrate_real_line(fy, tol, scale)
        * integrate_real_line(fz, tol, scale)
    )


def integrate_3d_radial(
    g: Callable[[float], float],
    tol: Tolerances = DEFAULT_TOL,
    scale: float = 4.0,
) -> float:
    """Integral of a radially symmetric integrand over 3-space.

    Computes int_0^inf 4 pi d^2 g(d) dd; an integrable 1/d endpoint
    singularity in ``g`` is harmless because of the d^2 measure.
    """

    def shell(d: float) -> float:
        if d == 0.0:
            return 0.0
        return 4.0 * math.pi * d * d * g(d)

    return integrate_half_line(shell, tol, scale)


def gauss_legendre(n: int, a: float, b: float) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights mapped to [a, b]."""
    x, w = _leggauss_cached(n)
    half = 0.5 * (b - a)
    return a + half * (x + 1.0), half * w


_LEGGAUSS_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _leggauss_cached(n: int) -> tuple[np.ndarray, np.ndarray]:
    got = _LEGGAUSS_CACHE.get(n)
    if got is None:
        got = np.polynomial.legendre.leggauss(n)
        _LEGGAUSS_CACHE[n] = got
    return got


# ---------------------------------------------------------------------------
# ODE step and derivatives
# ---------------------------------------------------------------------------

def rk4_step(
    state: np.ndarray,
    t: float,
    dt: float,
    deriv: Callable[[np.ndarray, float], np.ndarray],
) -> np.ndarray:
    """One classical fourth-order Runge-Kutta step, local error O(dt^5)."""
    if dt <= 0:
        raise ValueError("dt must be positive")
    y = np.asarray(state, dtype=float)
    k1 = np.asarray(deriv(y, t), dtype=float)
    k2 = np.asarray(deriv(y + 0.5 * dt * k1, t + 0.5 * dt), dtype=float)
    k3 = np.asarray(deriv(y + 0.5 * dt * k2, t + 0.5 * dt), dtype=float)
    k4 = np.asarray(deriv(y + dt * k3, t + dt), dtype=float)
    out = y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    if not np.all(np.isfinite(out)):
        raise NonFinite("rk4_step produced a non-finite state")
    return out


def central_gradient(
    f: Callable[[np.ndarray], float],
    x: Sequence[float] | np.ndarray,
    tol: Tolerances = DEFAULT_TOL,
) -> np.ndarray:
    """Component-wise central differences with step fd_step * max(1, |x_i|)."""
    x = np.asarray(x, dtype=float)
    grad = np.empty_like(x)
    for i in range(x.size):
        h = tol.fd_step * max(1.0, abs(x[i]))
        xp = x.copy()
        xm = x.copy()
        xp[i] += h
        xm[i] -= h
        fp = f(xp)
        fm = f(xm)
        if not (math.isfinite(fp) and math.isfinite(fm)):
            raise NonFinite("central_gradient sampled a non-finite value")
        grad[i] = (fp - fm) / (2.0 * h)
    return grad
