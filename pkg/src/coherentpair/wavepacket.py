"""Single coherent electron in atomic units (hbar = m = 1, e0^2 = 1).

The packet is a minimum-uncertainty Gaussian labelled by its culmination
width ``sigma``, mean center ``r0``, mean momentum ``p0`` and culmination
time ``t0``.  Free evolution drifts the center along r0 + p0 (t - t0) and
grows the width as sigma * sqrt(1 + omega^2 (t - t0)^2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


def _vec3(v) -> np.ndarray:
    a = np.asarray(v, dtype=float).reshape(3)
    if not np.all(np.isfinite(a)):
        raise ValueError("vector components must be finite")
    return a


@dataclass(frozen=True, eq=False)
class PacketParams:
    """One Gaussian coherent electron.

    ``sigma`` is the per-axis coordinate uncertainty at culmination (Bohr),
    ``r0``/``p0`` the mean center and momentum, ``t0`` the culmination time.
    """

    sigma: float
    r0: np.ndarray = field(default_factory=lambda: np.zeros(3))
    p0: np.ndarray = field(default_factory=lambda: np.zeros(3))
    t0: float = 0.0

    def __post_init__(self) -> None:
        if not (self.sigma > 0 and math.isfinite(self.sigma)):
            raise ValueError("sigma must be positive and finite")
        object.__setattr__(self, "r0", _vec3(self.r0))
        object.__setattr__(self, "p0", _vec3(self.p0))
        if not math.isfinite(self.t0):
            raise ValueError("t0 must be finite")


@dataclass(frozen=True)
class SpreadLaw:
    """Width evolution: free spreading at rate ``omega``, or frozen width.

    ``frozen`` pins sigma_x(t) = sigma for all t and requires omega = 0.
    """

    omega: float
    frozen: bool = False

    def __post_init__(self) -> None:
        if self.omega < 0:
            raise ValueError("omega must be non-negative")
        if self.frozen and self.omega != 0.0:
            raise ValueError("frozen law must have omega = 0")

    @classmethod
    def for_packet(cls, params: PacketParams) -> "SpreadLaw":
        return cls(spreading_rate(params))

    @classmethod
    def frozen_width(cls) -> "SpreadLaw":
        return cls(0.0, frozen=True)


def spreading_rate(params: PacketParams) -> float:
    """Spreading rate omega = hbar / (2 m sigma^2), a.u.: 1 / (2 sigma^2).

    This is the unique rate for which the free-evolution variance obeys
    sigma_x^2(t) = sigma^2 (1 + omega^2 (t - t0)^2); it is pinned by the
    grid Fourier evolution oracle in :mod:`coherentpair.oracle`.
    """
    return 0.5 / (params.sigma * params.sigma)


def sigma_t(params: PacketParams, law: SpreadLaw, t: float) -> float:
    """Width sigma_x(t); equals sigma at culmination and in frozen mode."""
    if not math.isfinite(t):
        raise ValueError("t must be finite")
    if law.frozen:
        return params.sigma
    dt = t - params.t0
    return params.sigma * math.sqrt(1.0 + (law.omega * dt) ** 2)


def center(params: PacketParams, t: float) -> np.ndarray:
    """Drifted packet center r0 + p0 (t - t0) / m."""
    return params.r0 + params.p0 * (t - params.t0)


def amplitude(params: PacketParams, law: SpreadLaw, r, t: float) -> complex:
    """Wave function value at position ``r`` and time ``t``.

    Gaussian envelope of width sigma_x(t) around the drifted center with a
    plane-wave phase exp(i p0 . r).  Unit norm; the global (Gouy) phase of
    the exact propagator is dropped since all observables used here are
    densities.
    """
    r = np.asarray(r, dtype=float).reshape(3)
    s = sigma_t(params, law, t)
    c = center(params, t)
    d2 = float(np.dot(r - c, r - c))
    norm = (2.0 * math.pi * s * s) ** -0.75
    phase = float(np.dot(params.p0, r))
    return norm * math.exp(-d2 / (4.0 * s * s)) * complex(math.cos(phase), math.sin(phase))


def kinetic_energy(params: PacketParams) -> float:
    """Mean kinetic energy p0^2/(2m) + 3 hbar^2 / (8 m sigma^2).

    The second term is the momentum-uncertainty contribution; it is the
    dimensionally consistent value pinned by the momentum-space quadrature
    oracle.
    """
    p2 = float(np.dot(params.p0, params.p0))
    return 0.5 * p2 + 3.0 / (8.0 * params.sigma * params.sigma)
