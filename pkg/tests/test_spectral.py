import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hecke_dft import spectral as S
from hecke_dft.weyl import LatticeConfig

TAUS = (0.1, 0.3, 0.5, 0.7, 0.9)


def test_theta_examples():
    for tau in TAUS:
        assert S.theta(0.0, tau) == 0.0
        assert S.theta(math.pi / 2, tau) == pytest.approx(math.pi, abs=1e-15)
        for xi in (0.1, 0.7, 1.3, 2.9):
            assert S.theta(xi, tau) + S.theta(-xi, tau) == pytest.approx(0.0, abs=1e-14)


@given(st.floats(-10, 10), st.floats(0.05, 0.95), st.integers(-3, 3))
def test_theta_branch_rule(xi, tau, k):
    assert S.theta(xi + k * math.pi, tau) == pytest.approx(S.theta(xi, tau) + 2 * k * math.pi, abs=1e-9)


@settings(max_examples=30, deadline=None)
@given(st.floats(0.0, 3.1), st.floats(0.1, 0.9))
def test_theta_matches_integral(xi, tau):
    assert S.theta(xi, tau) == pytest.approx(S.theta_integral(xi, tau), abs=1e-10)


def test_theta_increasing():
    xs = np.linspace(-4, 4, 2001)
    for tau in TAUS:
        vals = [S.theta(x, tau) for x in xs]
        assert all(b > a for a, b in zip(vals, vals[1:]))


def test_V_examples():
    for M in (2, 5, 8):
        for tau in TAUS:
            cfg = LatticeConfig(M, tau)
            assert S.bethe_V(0.0, cfg) == 0.0
            assert S.bethe_V(math.pi, cfg) == pytest.approx((M + 2) * math.pi, abs=1e-13)
            grid = np.linspace(0, math.pi, 10_000)
            assert min(S.bethe_V_prime(x, cfg) for x in grid) > M


def test_V_prime_matches_difference_quotient():
    cfg = LatticeConfig(5, 0.6)
    h = 1e-6
    for xi in (0.2, 1.0, 2.2):
        fd = (S.bethe_V(xi + h, cfg) - S.bethe_V(xi - h, cfg)) / (2 * h)
        assert S.bethe_V_prime(xi, cfg) == pytest.approx(fd, rel=1e-8)


@pytest.mark.parametrize("tau", TAUS)
def test_midpoint_root_M2(tau):
    p = S.solve_bethe_root(1, LatticeConfig(2, tau))
    assert abs(p.xi - math.pi / 2) <= 1e-13


def test_root_range_check():
    cfg = LatticeConfig(4, 0.5)
    with pytest.raises(ValueError):
        S.solve_bethe_root(5, cfg)
    with pytest.raises(ValueError):
        S.solve_bethe_root(-1, cfg)


def test_root_matches_brentq():
    from scipy.optimize import brentq

    for M in (2, 7, 16):
        for tau in TAUS:
            cfg = LatticeConfig(M, tau)
            for m in range(M + 1):
                ref = brentq(lambda x: S.bethe_V(x, cfg) - (m + 1) * math.pi, 0.0, math.pi, xtol=1e-15)
                assert S.solve_bethe_root(m, cfg).xi == pytest.approx(ref, abs=1e-13)


def test_spectral_point_fields():
    cfg = LatticeConfig(6, 0.4)
    table = S.spectrum(cfg)
    for p in table.points:
        assert p.parity_epsilon == (1 if p.m % 2 == 0 else -1)
        assert p.eigenvalue == pytest.approx(2 * math.cos(p.xi))
        assert p.dual_weight > 0
        assert p.bethe_residual <= 1e-10
        assert abs(S.bethe_V(p.xi, cfg) - (p.m + 1) * math.pi) <= 1e-13 * (cfg.M + 2) * math.pi
    xs = table.xi
    assert np.all(np.abs(xs + xs[::-1] - math.pi) <= 1e-12)
    assert table.delta[0] == table.delta[-1] == pytest.approx(1 / (1 + 0.16))
    assert np.all(table.delta[1:-1] == 1.0)


def test_limit_interior_nodes():
    # interior nodes approach m pi / M at rate O(1 - tau)
    table = S.spectrum(LatticeConfig(8, 1 - 1e-6))
    for p in table.points[1:-1]:
        assert abs(p.xi - p.m * math.pi / 8) <= 1e-5


def test_limit_endpoint_nodes_follow_square_root_law():
    # endpoint nodes solve M xi = pi - theta(xi) with theta close to pi - 2(1-tau^2)/((1+tau^2) xi),
    # so xi_0 ~ sqrt(2 (1-tau^2) / ((1+tau^2) M)) rather than O(1 - tau)
    for tau in (1 - 1e-6, 1 - 1e-8, 0.999):
        M = 8
        table = S.spectrum(LatticeConfig(M, tau))
        t2 = tau**2
        predicted = math.sqrt(2 * (1 - t2) / ((1 + t2) * M))
        assert table.points[0].xi == pytest.approx(predicted, rel=1e-3)
        assert math.pi - table.points[-1].xi == pytest.approx(predicted, rel=1e-3)


@pytest.mark.xfail(strict=True, reason="endpoint nodes converge like sqrt(1 - tau); see decisions ledger")
def test_limit_all_nodes_within_1e5():
    table = S.spectrum(LatticeConfig(8, 1 - 1e-6))
    assert max(abs(p.xi - p.m * math.pi / 8) for p in table.points) <= 1e-5


def test_c_function_examples():
    for tau in TAUS:
        for xi in (0.3, 1.2, 2.0, 2.8):
            c, cm = S.c_function(xi, tau), S.c_function(-xi, tau)
            assert c + cm == pytest.approx(1 + tau**2, abs=1e-13)
            expect = (1 + tau**4 - 2 * tau**2 * math.cos(2 * xi)) / (2 - 2 * math.cos(2 * xi))
            assert c * cm == pytest.approx(expect, rel=1e-12)
        assert S.c_function(math.pi / 2, tau) == pytest.approx((1 + tau**2) / 2, abs=1e-15)
        with pytest.raises(ZeroDivisionError):
            S.c_function(0.0, tau)
        with pytest.raises(ZeroDivisionError):
            S.c_function(math.pi, tau)


def test_c_function_matches_definition():
    import cmath

    for tau in TAUS:
        for xi in (0.4, 1.7, -2.1):
            z = cmath.exp(-2j * xi)
            assert S.c_function(xi, tau) == pytest.approx((1 - tau**2 * z) / (1 - z), abs=1e-13)


def test_chebyshev():
    for x in (-0.9, 0.1, 0.77):
        xi = math.acos(x)
        for n in range(-6, 12):
            assert S.chebyshev_u(n, x) == pytest.approx(math.sin((n + 1) * xi) / math.sin(xi), abs=1e-10)
    assert S.chebyshev_u(-1, 0.3) == 0.0


def test_phi_examples():
    for tau in TAUS:
        for xi in (0.2, 1.1, 2.6):
            assert S.phi_xi(xi, 0, tau) == pytest.approx(1 + tau**2, abs=1e-14)
            assert S.phi_xi(xi, 1, tau) == pytest.approx(2 * math.cos(xi), abs=1e-14)
            for n in range(-10, 11):
                cf = S.phi_xi_cform(xi, n, tau)
                assert abs(cf.imag) < 1e-12
                assert S.phi_xi(xi, n, tau) == pytest.approx(cf.real, abs=1e-12)


def test_phi_finite_near_poles():
    for xi in (0.0, 1e-12, math.pi, math.pi - 1e-12):
        assert math.isfinite(S.phi_xi(xi, 5, 0.5))
    assert S.phi_xi(0.0, 5, 0.5) == pytest.approx(6 - 0.25 * 4)


def test_dual_weight():
    cfg = LatticeConfig(5, 0.3)
    p = S.solve_bethe_root(2, cfg)
    assert S.dual_weight(p, cfg) == pytest.approx(p.dual_weight)
    assert S.dual_weight(p.xi, cfg) == pytest.approx(p.dual_weight)
    with pytest.raises(ValueError):
        S.dual_weight(p)
    via_c, explicit = S._dual_weight_forms(p.xi, cfg)
    assert via_c == pytest.approx(explicit, rel=1e-12)


def test_dual_weight_sum_rule_and_positivity():
    for M in range(2, 17):
        for tau in (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9):
            table = S.spectrum(LatticeConfig(M, tau))
            w = table.dual_weights
            assert np.all(w > 0)
            assert np.sum((1 + tau**2) ** 2 * w) == pytest.approx(1 + tau**2, rel=1e-12)


def test_limit_dual_weights():
    table = S.spectrum(LatticeConfig(8, 1 - 1e-6))
    pattern = np.array([0.5] + [1.0] * 7 + [0.5])
    assert np.max(np.abs(16 * table.dual_weights - pattern)) <= 1e-4


def test_spherical_kernel():
    cfg = LatticeConfig(5, 0.45)
    k = S.spherical_kernel(S.spectrum(cfg))
    assert k.phi.shape == (6, 6)
    assert np.allclose(k.phi[:, 0], 1 + 0.45**2, atol=1e-14)
    assert np.all(np.isfinite(k.phi))


def test_kernel_matches_Jcal_of_phi():
    from hecke_dft import lattice as L

    cfg = LatticeConfig(4, 0.5)
    table = S.spectrum(cfg)
    k = S.spherical_kernel(table)
    for p in table.points:
        Phi = L.apply_Jcal(L.LatticeFunction(lambda n, xi=p.xi: S.phi_xi(xi, n, cfg.tau)), cfg)
        assert np.allclose([Phi(n) for n in range(cfg.M + 1)], k.phi[p.m], atol=1e-13)


def test_limit_kernel_is_cosine():
    k = S.spherical_kernel(S.spectrum(LatticeConfig(8, 1 - 1e-6)))
    m = np.arange(9)
    assert np.max(np.abs(k.phi - 2 * np.cos(np.outer(m, m) * math.pi / 8))) <= 1e-4


def test_extreme_tau_stability():
    for tau in (1e-6, 1 - 1e-9):
        table = S.spectrum(LatticeConfig(6, tau))
        assert np.all(np.diff(table.xi) > 0)
        assert np.all(table.dual_weights > 0)
