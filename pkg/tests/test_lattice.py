import cmath
import math
import threading

import numpy as np
import pytest

from hecke_dft import lattice as L
from hecke_dft import weyl
from hecke_dft.weyl import LatticeConfig

CONFIGS = [LatticeConfig(M, tau) for M in (2, 3, 4, 8) for tau in (0.25, 0.5, 0.9)]


@pytest.fixture
def cfg():
    return LatticeConfig(4, 0.5)


def rand(seed, lo=-8, hi=8):
    return L.random_function(np.random.default_rng(seed), lo, hi)


def close(f, g, lo=-20, hi=20, rtol=1e-12):
    dev, rel = L.max_deviation(f, g, lo, hi)
    assert rel <= rtol, (dev, rel)


def test_lattice_function_support_and_memo():
    calls = []

    def rule(n):
        calls.append(n)
        return n * 1.5

    f = L.LatticeFunction(rule, support=(-2, 3))
    assert f(10) == 0.0
    assert f(2) == 3.0 and f(2) == 3.0
    assert calls == [2]
    with pytest.raises(ValueError):
        L.LatticeFunction(rule, support=(3, 1))


def test_concurrent_evaluation_is_consistent(cfg):
    f = L.apply_Jcal(rand(0), cfg)
    results = {}

    def worker(tid):
        results[tid] = [f(n) for n in range(-30, 31)]

    threads = [threading.Thread(target=worker, args=(t,)) for t in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    first = results[0]
    assert all(r == first for r in results.values())


def test_s_and_u(cfg):
    assert L.apply_s(L.indicator(2))(-2) == 1.0
    assert L.apply_u(L.indicator(0), cfg)(4) == 1.0
    f = rand(1)
    close(L.apply_s(L.apply_s(f)), f, rtol=0)


def test_That_examples():
    cfg = LatticeConfig(4, 0.5)
    assert L.apply_That(L.indicator(0), cfg)(0) == 0.5
    tau = cfg.tau
    Tf = L.apply_That(L.indicator(3), cfg)
    assert Tf(3) == 0.0
    assert Tf(-3) == pytest.approx(1 / tau)
    f = rand(2)
    lhs = L.apply_That(L.apply_That(f, cfg), cfg)
    rhs = L.linear_combination([(tau - 1 / tau, L.apply_That(f, cfg)), (1.0, f)])
    close(lhs, rhs)


def test_J_examples():
    f = rand(3)
    Jf = L.apply_J(f)
    assert Jf(0) == 0
    assert Jf(3) == pytest.approx(-f(1) - f(-1) - f(-3))
    assert Jf(-2) == pytest.approx(f(-2) + f(0))
    assert Jf(-1) == pytest.approx(f(-1))
    close(L.apply_J(Jf), Jf)


def test_J_brute_force():
    f = rand(4, -15, 15)
    Jf = L.apply_J(f)
    for n in range(-20, 21):
        if n > 0:
            expect = -sum(f(k) for k in range(-n, n - 1, 2))
        elif n < 0:
            expect = sum(f(k) for k in range(n, -n - 1, 2))
        else:
            expect = 0
        assert Jf(n) == pytest.approx(expect, abs=1e-12)


def test_I_on_plane_wave(cfg):
    xi, tau = 1.0, cfg.tau
    Ie = L.apply_I(L.plane_wave(xi), cfg)
    for n in range(-10, 11):
        e = lambda s: cmath.exp(1j * s * n)
        expect = tau * e(-xi) + (tau - 1 / tau) * (e(xi) - e(-xi)) / (1 - cmath.exp(2j * xi))
        assert abs(Ie(n) - expect) < 1e-12


def test_D():
    f = rand(5)
    assert L.apply_D(f, 1)(5) == f(4)
    assert L.apply_D(f, -1)(5) == f(6)
    with pytest.raises(ValueError):
        L.apply_D(f, 0)


def test_Iw_examples(cfg):
    f = rand(6)
    close(L.apply_Iw(weyl.IDENTITY, f, cfg), f, rtol=0)
    tau = cfg.tau
    Is1 = L.apply_Isi(1, f, cfg)
    for n in range(-10, 1):
        expect = tau * f(-n) + (tau - 1 / tau) * sum(f(n + 2 * k) for k in range(-n))
        assert Is1(n) == pytest.approx(expect, abs=1e-12)
    close(L.apply_Isi(0, f, cfg), L.apply_u(L.apply_I(L.apply_u(f, cfg), cfg), cfg))
    with pytest.raises(ValueError):
        L.apply_Isi(2, f, cfg)


def test_Iw_composition(cfg):
    f = rand(7)
    w = weyl.from_word(0, [1, 0, 1])
    direct = L.apply_Isi(1, L.apply_Isi(0, L.apply_Isi(1, f, cfg), cfg), cfg)
    close(L.apply_Iw(w, f, cfg), direct)
    wu = weyl.from_word(1, [0])
    close(L.apply_Iw(wu, f, cfg), L.apply_u(L.apply_Isi(0, f, cfg), cfg))


def test_Jcal_examples(cfg):
    f = rand(8)
    Jf = L.apply_Jcal(f, cfg)
    for n in range(cfg.M + 1):
        assert Jf(n) == f(n)
    M, tau = cfg.M, cfg.tau
    for k in range(-12, 13):
        Je = L.apply_Jcal(L.indicator(k), cfg)
        for n in range(-12, 13):
            if n != k and not L.precedes(k, n, M):
                assert Je(n) == 0.0
    for n in range(-12, 13):
        wn = weyl.chamber_map(n, M)
        ell = wn.word_length
        lead = L.apply_Iw(wn, L.indicator(n), cfg)(weyl.act(wn, n, M))
        assert lead == pytest.approx(tau**-ell, rel=1e-13)
        # the extra tau^{-l} prefactor of Jcal doubles the exponent on the diagonal
        assert L.apply_Jcal(L.indicator(n), cfg)(n) == pytest.approx(tau ** (-2 * ell), rel=1e-13)


@pytest.mark.parametrize("cfg", CONFIGS, ids=str)
def test_invert_Jcal_round_trip(cfg):
    N = 6 * cfg.M
    f = L.random_function(np.random.default_rng(cfg.M), -2 * cfg.M, 2 * cfg.M)
    back = L.invert_Jcal(L.apply_Jcal(f, cfg), N, cfg)
    dev, _ = L.max_deviation(back, f, -N, N)
    assert dev < 1e-9


def test_invert_Jcal_identity_on_alcove(cfg):
    for n in range(cfg.M + 1):
        g = L.indicator(n)
        f = L.invert_Jcal(g, 2 * cfg.M, cfg)
        for k in range(cfg.M + 1):
            assert f(k) == pytest.approx(1.0 if k == n else 0.0, abs=1e-14)


def test_invert_Jcal_errors(cfg):
    g = {n: 1.0 for n in range(-3, 4)}
    with pytest.raises(KeyError, match="missing index"):
        L.invert_Jcal(g, 3, cfg)
    f = L.invert_Jcal(rand(9), 4, cfg)
    with pytest.raises(L.OutsideDomainError):
        f(10_000)
    filled = L.invert_Jcal(rand(9), 4, cfg, fill=0.0)
    assert filled(10_000) == 0.0
    with pytest.raises(ValueError):
        L.invert_Jcal(rand(9), 0, cfg)


def test_closure_window_is_closed(cfg):
    idx = L.closure_window(10, cfg.M)
    s = set(idx)
    assert set(range(-10, 11)) <= s
    for n in idx:
        for k in range(min(idx) - 5, max(idx) + 6):
            if L.precedes(k, n, cfg.M):
                assert k in s
    pos = {k: i for i, k in enumerate(idx)}
    for n in idx:
        for k in idx:
            if L.precedes(k, n, cfg.M):
                assert pos[k] < pos[n]


@pytest.mark.parametrize("cfg", CONFIGS, ids=str)
def test_conjugated_D_matches_Xhat(cfg):
    M = cfg.M
    N = 6 * M
    g = L.random_function(np.random.default_rng(100 + M), -N, N)
    f = L.invert_Jcal(g, N, cfg)
    conj = L.apply_Jcal(L.apply_D(f, 1), cfg)
    for conv in L.XHAT_CONVENTIONS:
        _, rel = L.max_deviation(L.apply_Xhat(g, cfg, conv), conj, -N + 2 * M, N - 2 * M)
        assert rel < 1e-12


def test_Xhat_examples(cfg):
    f = rand(10)
    Xf = L.apply_Xhat(f, cfg)
    for n in range(1, cfg.M + 1):
        assert Xf(n) == f(n - 1)
    assert Xf(0) == pytest.approx(cfg.tau**2 * f(-1))
    with pytest.raises(ValueError):
        L.apply_Xhat(f, cfg, "w")


def test_Xhat_conventions_agree(cfg):
    f = rand(11, -12, 12)
    close(L.apply_Xhat(f, cfg, "v"), L.apply_Xhat(f, cfg, "v_inv"), rtol=1e-15)
    close(L.apply_Xhat_inv(f, cfg, "v"), L.apply_Xhat_inv(f, cfg, "v_inv"), rtol=1e-15)


def test_Xhat_inverse_pair(cfg):
    f = rand(12)
    close(L.apply_Xhat(L.apply_Xhat_inv(f, cfg), cfg), f, rtol=1e-11)
    close(L.apply_Xhat_inv(L.apply_Xhat(f, cfg), cfg), f, rtol=1e-11)


def test_L_examples(cfg):
    f = rand(13)
    Lf = L.apply_L(f, cfg)
    t2 = cfg.tau**2
    assert Lf(0) == pytest.approx(f(1) + t2 * f(-1))
    assert Lf(cfg.M) == pytest.approx(t2 * f(cfg.M + 1) + f(cfg.M - 1))
    close(Lf, L.apply_Xhat(f, cfg) + L.apply_Xhat_inv(f, cfg), rtol=1e-12)


def test_L_coefficients():
    cfg = LatticeConfig(3, 0.4)
    t2 = 0.4**2
    assert L.laplacian_coefficients(3, cfg) == (t2, 1.0)
    assert L.laplacian_coefficients(0, cfg) == (1.0, t2)
    assert L.laplacian_coefficients(-3, cfg) == (1.0, t2)
    assert L.laplacian_coefficients(1, cfg) == (1.0, 1.0)


def test_inner_delta(cfg):
    e0, em1 = L.indicator(0), L.indicator(-1)
    assert L.inner_delta(e0, e0, 5, cfg) == 1.0
    assert L.inner_delta(em1, em1, 5, cfg) == pytest.approx(cfg.tau**2)
    f, g = rand(14, -6, 6), rand(15, -6, 6)
    a = L.inner_delta(L.apply_That(f, cfg), g, 8, cfg)
    b = L.inner_delta(f, L.apply_That(g, cfg), 8, cfg)
    assert abs(a - b) < 1e-12 * abs(a)
    with pytest.raises(ValueError, match="no finite support"):
        L.inner_delta(L.plane_wave(0.3), g, 8, cfg)
    with pytest.raises(ValueError, match="exceeds bound"):
        L.inner_delta(f, g, 3, cfg)


def test_delta_weight(cfg):
    assert L.delta_weight(0, cfg) == 1.0
    assert L.delta_weight(-1, cfg) == cfg.tau**2
    assert L.delta_weight(9, cfg) == cfg.tau**4


@pytest.mark.parametrize("cfg", CONFIGS, ids=str)
def test_intertwining(cfg):
    f = L.random_function(np.random.default_rng(7), -2 * cfg.M, 2 * cfg.M)
    N = 6 * cfg.M
    Jf = L.apply_Jcal(f, cfg)
    close(L.apply_That(Jf, cfg), L.apply_Jcal(L.apply_I(f, cfg), cfg), -N, N)
    close(L.apply_u(Jf, cfg), L.apply_Jcal(L.apply_u(f, cfg), cfg), -N, N)
    close(L.apply_Xhat(Jf, cfg), L.apply_Jcal(L.apply_D(f, 1), cfg), -N, N)


def test_apply_element_both_representations(cfg):
    from hecke_dft import hecke

    e = hecke.T() * hecke.X() + hecke.Ugen() * 2
    f = L.random_function(np.random.default_rng(1), -4, 4)
    Jf = L.apply_Jcal(f, cfg)
    lhs = L.apply_element(e, Jf, cfg, representation="difference")
    rhs = L.apply_Jcal(L.apply_element(e, f, cfg, representation="integral"), cfg)
    close(lhs, rhs, -16, 16)
    with pytest.raises(ValueError):
        L.apply_element(e, f, cfg, representation="other")


def test_from_values_forms():
    f = L.from_values([1, 2, 3], offset=-1)
    assert (f(-1), f(0), f(1), f(2)) == (1, 2, 3, 0.0)
    g = L.from_values({5: 2.0})
    assert g.support == (5, 5)
    assert L.from_values([])(0) == 0.0
