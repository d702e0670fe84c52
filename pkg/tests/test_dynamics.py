"""Tests for trajectory integration, traveltimes and regimes."""

import math

import numpy as np
import pytest

from coherentpair import dynamics
from coherentpair.dynamics import Outcome, Regime
from coherentpair.errors import MalformedTrajectory
from coherentpair.meanfield import initial_state
from coherentpair.pairstate import ExchangeSymmetry, PairConfig
from coherentpair.wavepacket import SpreadLaw


def make_config(p=0.5, sigma=1.0, d0=10.0, symmetry=ExchangeSymmetry.SYMMETRIC,
                coupling=1.0, frozen=False):
    law = SpreadLaw.frozen_width() if frozen else None
    return PairConfig(sigma, np.array([0.0, 0.0, d0 / 2.0]),
                      np.array([0.0, 0.0, -p]), symmetry, coupling, law)


def test_free_motion_exact():
    cfg = make_config(p=0.5, symmetry=ExchangeSymmetry.DISTINGUISHABLE,
                      coupling=0.0, frozen=True)
    traj = dynamics.integrate(initial_state(cfg), 0.01, 10.0)
    assert traj.t.size == 1001
    expected = 10.0 - 1.0 * traj.t  # dr/dt = 2p with p_z = -0.5
    assert float(np.max(np.abs(traj.r[:, 2] - expected))) < 1e-9
    np.testing.assert_allclose(traj.p, np.tile([0.0, 0.0, -0.5], (1001, 1)), atol=1e-12)


def test_time_reversal():
    cfg = make_config(p=0.4, frozen=True)
    fwd = dynamics.integrate(initial_state(cfg), 0.01, 12.0)
    from coherentpair.meanfield import PhaseState

    back_start = PhaseState(fwd.r[-1], -fwd.p[-1], 0.0, cfg)
    back = dynamics.integrate(back_start, 0.01, 12.0)
    r_err = np.linalg.norm(back.r[-1] - fwd.r[0]) / np.linalg.norm(fwd.r[0])
    p_err = np.linalg.norm(back.p[-1] + fwd.p[0]) / np.linalg.norm(fwd.p[0])
    assert r_err < 1e-6 and p_err < 1e-6


def test_frozen_width_energy_conservation():
    cfg = make_config(p=0.5, frozen=True)
    traj = dynamics.integrate(initial_state(cfg), 0.01, 30.0)
    energy = traj.energy[:, 5]
    drift = float(np.max(np.abs(energy - energy[0]))) / abs(energy[0])
    assert drift < 1e-6


def test_step_halving_convergence():
    cfg = make_config(p=0.3)

    def final(dt):
        traj = dynamics.integrate(initial_state(cfg), dt, 24.0)
        return np.concatenate([traj.r[-1], traj.p[-1]])

    f1, f2, f4 = final(0.2), final(0.1), final(0.05)
    scale = float(np.linalg.norm(f4))
    d1 = float(np.linalg.norm(f1 - f2))
    d2 = float(np.linalg.norm(f2 - f4))
    assert d1 / scale < 1e-6
    assert 16.0 / 1.3 < d1 / d2 < 16.0 * 1.3


def test_gradient_modes_agree():
    cfg = make_config(p=0.4)
    a = dynamics.integrate(initial_state(cfg), 0.05, 5.0, gradient="analytic")
    n = dynamics.integrate(initial_state(cfg), 0.05, 5.0, gradient="numeric")
    assert float(np.max(np.abs(a.r - n.r))) < 1e-6
    assert float(np.max(np.abs(a.p - n.p))) < 1e-6


def test_traveltime_free_flight():
    cfg = make_config(p=0.5, symmetry=ExchangeSymmetry.DISTINGUISHABLE,
                      coupling=0.0, frozen=True)
    traj = dynamics.integrate(initial_state(cfg), 0.01, 30.0)
    res = dynamics.traveltime(traj)
    # separation rate is 2|p| = 1, so return after 2 d0 / (2 p) = 20
    assert res.outcome is Outcome.RETURN
    assert abs(res.t_return - 20.0) < 1e-6
    assert res.d_min < 0.02


def test_traveltime_requires_inward_motion():
    cfg = PairConfig(1.0, np.array([0.0, 0.0, 5.0]), np.array([0.0, 0.0, 0.3]))
    traj = dynamics.integrate(initial_state(cfg), 0.05, 2.0)
    with pytest.raises(MalformedTrajectory):
        dynamics.traveltime(traj)


def test_free_traveltime():
    assert dynamics.free_traveltime(1.0, 1.0) == 2.0
    assert dynamics.free_traveltime(3.0, 1.0) == 3.0 * dynamics.free_traveltime(1.0, 1.0)
    for d0, v0 in ((2.0, 0.5), (7.0, 3.0)):
        assert abs(dynamics.free_traveltime(d0, v0) * v0 - 2.0 * d0) < 1e-14


def test_classical_traveltime_free_limit():
    assert dynamics.classical_traveltime(4.0, 0.8, 0.0) == 10.0
    # quadrature-verified deviations from the free value: 1.96% at a kinetic
    # energy of 100 barrier units, below 1% only from ~400 units up
    d0 = 10.0
    for mult, gate in ((100.0, 0.021), (400.0, 0.01)):
        v0 = math.sqrt(2.0 * mult * 1.0 / d0 / 0.5)
        t = dynamics.classical_traveltime(d0, v0, 1.0)
        assert abs(t / dynamics.free_traveltime(d0, v0) - 1.0) < gate


def test_classical_traveltime_monotone():
    # strictly decreasing beyond the shallow-entry peak near v0 ~ 0.6
    # (slower pairs turn around right at d0, so t -> 0 as v0 -> 0)
    times = [dynamics.classical_traveltime(10.0, v, 1.0) for v in np.linspace(0.8, 3.0, 12)]
    assert all(a > b for a, b in zip(times, times[1:]))


def test_classify_passthrough_free():
    cfg = make_config(p=0.5, symmetry=ExchangeSymmetry.DISTINGUISHABLE,
                      coupling=0.0, frozen=True)
    traj = dynamics.integrate(initial_state(cfg), 0.01, 30.0)
    res = dynamics.traveltime(traj)
    assert dynamics.classify(traj, res) is Regime.PASS_THROUGH


def test_classify_classical_reflection():
    cfg = make_config(p=0.35, sigma=0.1, symmetry=ExchangeSymmetry.DISTINGUISHABLE,
                      frozen=True)
    t_free = dynamics.free_traveltime(10.0, 0.7)
    traj = dynamics.integrate(initial_state(cfg), t_free / 2000.0, 3.0 * t_free,
                              stop_at_separation=10.0)
    res = dynamics.traveltime(traj)
    assert res.outcome is Outcome.RETURN
    assert dynamics.classify(traj, res) is Regime.CLASSICAL_LIKE
    # quantitative classical limit lives in the acceptance suite
    t_cl = dynamics.classical_traveltime(10.0, 0.7, 1.0)
    assert abs(res.t_return / t_cl - 1.0) < 0.02


def test_classify_frozen_window():
    cfg = make_config(p=0.14)
    t_free = dynamics.free_traveltime(10.0, 0.28)
    traj = dynamics.integrate(initial_state(cfg), t_free / 400.0, 2.5 * t_free)
    res = dynamics.traveltime(traj)
    assert res.outcome is Outcome.NO_RETURN
    assert dynamics.classify(traj, res) is Regime.FROZEN


def test_sweep_single_point_consistency():
    cfg = make_config(p=0.5)
    records = dynamics.sweep_traveltime(cfg, [0.5], horizon_factor=5.0)
    assert len(records) == 1
    rec = records[0]
    t_free = dynamics.free_traveltime(10.0, 1.0)
    assert abs(rec.t_free - t_free) < 1e-12
    traj = dynamics.integrate(initial_state(make_config(p=0.5)), t_free / 400.0,
                              5.0 * t_free, stop_at_separation=10.0)
    res = dynamics.traveltime(traj)
    assert abs(rec.t_coherent - res.t_return) < 1e-9


def test_sweep_error_capture():
    # antisymmetric pair with r0 = 0 template and p from grid is fine; force an
    # error with a zero momentum grid point instead
    cfg = make_config(p=0.5)
    records = dynamics.sweep_traveltime(cfg, [0.0], horizon_factor=2.0)
    assert records[0].error is not None


def test_sweep_parallel_matches_serial():
    cfg = make_config(p=0.2)
    grid = [0.3, 0.5, 0.8]
    serial = dynamics.sweep_traveltime(cfg, grid, jobs=1, horizon_factor=3.0)
    parallel = dynamics.sweep_traveltime(cfg, grid, jobs=2, horizon_factor=3.0)
    for a, b in zip(serial, parallel):
        assert a == b


def test_trajectory_samples_view():
    cfg = make_config(p=0.5, frozen=True)
    traj = dynamics.integrate(initial_state(cfg), 0.1, 1.0)
    samples = list(traj.samples)
    assert len(samples) == traj.t.size
    t0, r0, p0, s0, n0, e0 = samples[0]
    assert t0 == 0.0 and s0 == 1.0
    assert abs(e0.total - traj.energy[0, 5]) < 1e-15
