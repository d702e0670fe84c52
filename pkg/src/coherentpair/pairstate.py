"""Two-electron (anti)symmetrized pair state built from mirrored packets.

The pair is parametrized in the center-of-mass frame: packet 1 carries
(+r0, +p0), packet 2 carries (-r0, -p0), both of width sigma.  The spatial
part is symmetric for anti-parallel spins, antisymmetric for parallel
spins; a distinguishable mode (bare product, no symmetrization) exists as
a test-only baseline.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateState
from .wavepacket import PacketParams, SpreadLaw, amplitude, sigma_t

_DEGENERATE_EPS = 1e-12


class ExchangeSymmetry(enum.Enum):
    """Sign of the spatial exchange term.

    SYMMETRIC: anti-parallel spins, "+" combination.
    ANTISYMMETRIC: parallel spins, "-" combination.
    DISTINGUISHABLE: no symmetrization (baseline for isolating exchange).
    """

    SYMMETRIC = "symmetric"
    ANTISYMMETRIC = "antisymmetric"
    DISTINGUISHABLE = "distinguishable"

    @property
    def sign(self) -> int:
        """+1, -1 or 0 entering 1 +/- N^2 denominators and exchange terms."""
        if self is ExchangeSymmetry.SYMMETRIC:
            return 1
        if self is ExchangeSymmetry.ANTISYMMETRIC:
            return -1
        return 0


@dataclass(frozen=True, eq=False)
class PairConfig:
    """Mirrored coherent pair: packets at +/- r0 with momenta +/- p0.

    ``coupling`` is the Coulomb strength e0^2 (1 in atomic units).
    Culmination is at t = 0 for both packets.
    """

    sigma: float
    r0: np.ndarray = field(default_factory=lambda: np.zeros(3))
    p0: np.ndarray = field(default_factory=lambda: np.zeros(3))
    symmetry: ExchangeSymmetry = ExchangeSymmetry.SYMMETRIC
    coupling: float = 1.0
    law: SpreadLaw | None = None

    def __post_init__(self) -> None:
        if not (self.sigma > 0 and math.isfinite(self.sigma)):
            raise ValueError("sigma must be positive and finite")
        r0 = np.asarray(self.r0, dtype=float).reshape(3)
        p0 = np.asarray(self.p0, dtype=float).reshape(3)
        if not (np.all(np.isfinite(r0)) and np.all(np.isfinite(p0))):
            raise ValueError("r0 and p0 must be finite")
        object.__setattr__(self, "r0", r0)
        object.__setattr__(self, "p0", p0)
        if self.law is None:
            object.__setattr__(
                self, "law", SpreadLaw.for_packet(PacketParams(self.sigma))
            )
        if self.symmetry is ExchangeSymmetry.ANTISYMMETRIC and not (
            np.any(r0 != 0.0) or np.any(p0 != 0.0)
        ):
            raise ValueError(
                "antisymmetric pair with r0 = p0 = 0 vanishes identically"
            )

    @property
    def packet1(self) -> PacketParams:
        return PacketParams(self.sigma, self.r0, self.p0, 0.0)

    @property
    def packet2(self) -> PacketParams:
        return PacketParams(self.sigma, -self.r0, -self.p0, 0.0)


def overlap_from_params(offset2: float, p2: float, s: float) -> float:
    """|<Psi_1|Psi_2>| for mirrored packets.

    ``offset2`` is the squared center offset |c|^2 of packet 1 (packet 2
    sits at -c), ``p2`` the squared momentum, ``s`` the current width.
    Closed form exp(-|c|^2/(2 s^2) - 2 s^2 p^2), pinned by the 3D
    quadrature oracle.
    """
    return math.exp(-offset2 / (2.0 * s * s) - 2.0 * s * s * p2)


def overlap(config: PairConfig, t: float = 0.0) -> float:
    """Overlap integral N(t) of the two freely drifting packets."""
    s = sigma_t(config.packet1, config.law, t)
    c = config.r0 + config.p0 * t
    return overlap_from_params(float(np.dot(c, c)), float(np.dot(config.p0, config.p0)), s)


def _norm_factor(sign: int, n2: float) -> float:
    den = 2.0 * (1.0 + sign * n2)
    if den <= _DEGENERATE_EPS:
        raise DegenerateState("antisymmetric pair state with overlap N -> 1")
    return 1.0 / math.sqrt(den)


def pair_amplitude(config: PairConfig, r1, r2, t: float = 0.0) -> complex:
    """Value of the normalized pair wave function at (r1, r2).

    [Psi_1(r1) Psi_2(r2) +/- Psi_1(r2) Psi_2(r1)] / sqrt(2 (1 +/- N^2));
    distinguishable mode returns the bare product.  The sqrt(2) keeps the
    state probability-normalized.
    """
    p1, p2 = config.packet1, config.packet2
    law = config.law
    a11 = amplitude(p1, law, r1, t)
    a22 = amplitude(p2, law, r2, t)
    if config.symmetry is ExchangeSymmetry.DISTINGUISHABLE:
        return a11 * a22
    a12 = amplitude(p1, law, r2, t)
    a21 = amplitude(p2, law, r1, t)
    n = overlap(config, t)
    sign = config.symmetry.sign
    return (a11 * a22 + sign * a12 * a21) * _norm_factor(sign, n * n)


def density_from_params(x, c, p, s: float, sign: int) -> float:
    """One-particle density of a mirrored pair with packets at +/- c.

    Two Gaussians of width ``s`` at +/- c plus an interference Gaussian at
    the midpoint weighted by the overlap; normalized so the integral is 2.
    """
    x = np.asarray(x, dtype=float).reshape(3)
    c = np.asarray(c, dtype=float).reshape(3)
    p = np.asarray(p, dtype=float).reshape(3)
    s2 = s * s
    norm = (2.0 * math.pi * s2) ** -1.5
    g_plus = math.exp(-float(np.dot(x - c, x - c)) / (2.0 * s2))
    g_minus = math.exp(-float(np.dot(x + c, x + c)) / (2.0 * s2))
    if sign == 0:
        return norm * (g_plus + g_minus)
    n = overlap_from_params(float(np.dot(c, c)), float(np.dot(p, p)), s)
    n2 = n * n
    den = 1.0 + sign * n2
    if den <= _DEGENERATE_EPS:
        raise DegenerateState("antisymmetric pair state with overlap N -> 1")
    cross = (
        2.0
        * n
        * math.exp(-(float(np.dot(x, x)) + float(np.dot(c, c))) / (2.0 * s2))
        * math.cos(2.0 * float(np.dot(p, x)))
    )
    return norm * (g_plus + g_minus + sign * cross) / den


def one_particle_density(config: PairConfig, r, t: float = 0.0) -> float:
    """n(r) = 2 int |pair_amplitude(r, r2)|^2 d^3 r2, with int n = 2."""
    s = sigma_t(config.packet1, config.law, t)
    c = config.r0 + config.p0 * t
    return density_from_params(r, c, config.p0, s, config.symmetry.sign)
