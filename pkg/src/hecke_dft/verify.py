"""Verification suites for every identity the package implements.

Each suite returns a :class:`SuiteReport` of :class:`CheckResult` rows.
Exact (symbolic or integer) checks carry ``tolerance=None``.  Numerical
deviations are relative unless the check name says otherwise.

Random test functions are drawn as batches: a single lattice function whose
values are numpy vectors, so one lazy evaluation pass covers the whole batch.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from . import hecke, lattice, spectral, transform, weyl
from .lattice import LatticeFunction
from .weyl import LatticeConfig, WeylElement

__all__ = [
    "CheckResult",
    "SuiteReport",
    "SUITES",
    "LIMIT_TAU",
    "LIMIT_M",
    "QUADRATURE_TAUS",
    "run_suite",
    "suite_daha",
    "suite_reps",
    "suite_intertwiner",
    "suite_unitarity",
    "suite_spectrum",
    "suite_orthogonality",
    "suite_limit",
    "suite_quadrature",
    "cross_representation_check",
]

SUITES = ("daha", "reps", "intertwiner", "unitarity", "spectrum", "orthogonality", "limit", "quadrature")

LIMIT_TAU = 1 - 1e-6
LIMIT_M = 8
QUADRATURE_TAUS = (0.3, 0.5, 0.7)


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    deviation: float
    tolerance: Optional[float]
    passed: bool
    detail: str = ""

    @property
    def exact(self) -> bool:
        return self.tolerance is None

    def line(self, precision: int = 3) -> str:
        status = "PASS" if self.passed else "FAIL"
        if self.exact:
            body = "exact"
        else:
            body = f"deviation={self.deviation:.{precision}e} tol={self.tolerance:.{precision}e}"
        extra = f" ({self.detail})" if self.detail else ""
        return f"{status} {self.suite}/{self.name} {body}{extra}"


@dataclass
class SuiteReport:
    suite: str
    checks: List[CheckResult] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def add(self, name: str, deviation: float, tolerance: Optional[float], detail: str = "") -> CheckResult:
        deviation = float(deviation)
        ok = deviation == 0.0 if tolerance is None else deviation <= tolerance
        res = CheckResult(self.suite, name, deviation, tolerance, bool(ok), detail)
        self.checks.append(res)
        return res

    def exact(self, name: str, holds: bool, detail: str = "") -> CheckResult:
        res = CheckResult(self.suite, name, 0.0 if holds else 1.0, None, bool(holds), detail)
        self.checks.append(res)
        return res


def _cfg_tag(cfg: LatticeConfig) -> str:
    return f"M={cfg.M} tau={cfg.tau:g}"


# --- batch helpers ------------------------------------------------------------

def _random_batch(rng: np.random.Generator, lo: int, hi: int, count: int) -> LatticeFunction:
    vals = rng.standard_normal((hi - lo + 1, count)) + 1j * rng.standard_normal((hi - lo + 1, count))
    data = {lo + i: vals[i] for i in range(hi - lo + 1)}
    return LatticeFunction(lambda n: data[n], support=(lo, hi), name="batch")


def _block(f: LatticeFunction, lo: int, hi: int, count: int) -> np.ndarray:
    return np.array([np.broadcast_to(f(n), (count,)) for n in range(lo, hi + 1)])


def _rel_dev(a: np.ndarray, b: np.ndarray, scale: Optional[np.ndarray] = None) -> float:
    """Max over batch columns of ``sup|a - b| / scale``."""
    diff = np.max(np.abs(a - b), axis=0)
    if scale is None:
        scale = np.maximum(np.max(np.abs(a), axis=0), np.max(np.abs(b), axis=0))
    scale = np.where(scale > 0, scale, 1.0)
    return float(np.max(diff / scale))


def _compare(f: LatticeFunction, g: LatticeFunction, lo: int, hi: int, count: int) -> float:
    return _rel_dev(_block(f, lo, hi, count), _block(g, lo, hi, count))


# --- daha ---------------------------------------------------------------------

def _weyl_elements(max_length: int) -> List[WeylElement]:
    return list(weyl.elements_up_to(max_length))


def suite_daha(max_length: int = 6, k_max: int = 6, central_length: int = 4, central_k: int = 3) -> SuiteReport:
    rep = SuiteReport("daha")
    H = hecke
    tau = hecke.TAU
    q = tau - 1 / tau
    T, Ti, U, X, Xi, one = H.T(), H.T_inv(), H.Ugen(), H.X(), H.X_inv(), H.one()

    rep.exact("quadratic (T-tau)(T+1/tau)=0", ((T - tau) * (T + 1 / tau)).is_zero())
    rep.exact("T T^-1 = 1", T * Ti == one and Ti * T == one)
    rep.exact("U^2 = 1", U * U == one)
    rep.exact("U X U = X^-1", U * X * U == Xi)
    rep.exact("T^-1 X T^-1 = X^-1", Ti * X * Ti == Xi)

    elems = _weyl_elements(max_length)
    ok_twt, ok_ttw = True, True
    for w in elems:
        Tw = H.basis_monomial(w)
        # right rule against the explicit formula
        expect = H.basis_monomial(weyl.multiply(w, weyl.S1))
        if weyl.eta(w) == -1:
            expect = expect + Tw * q
        ok_twt &= H.mul_right_T(Tw) == expect
        # left rule against the folded product
        ok_ttw &= H.mul_left_T(Tw) == H.multiply(T, Tw)
    rep.exact(f"T_w T rule, l(w)<={max_length}", ok_twt)
    rep.exact(f"T T_w rule, l(w)<={max_length}", ok_ttw)

    ok_l = True
    for k in range(-k_max, k_max + 1):
        Xk = H.basis_monomial(weyl.IDENTITY, k)
        lhs = T * Xk
        tail = H.AlgebraElement()
        sgn = (k > 0) - (k < 0)
        for j in range(abs(k)):
            tail = tail + H.basis_monomial(weyl.IDENTITY, abs(k) - 2 * j)
        rhs = H.basis_monomial(weyl.IDENTITY, -k) * T + tail * (q * sgn)
        ok_l &= lhs == rhs
    rep.exact(f"T X^k commutation, |k|<={k_max}", ok_l)

    bad = [(w, e) for w in elems for e in (1, -1) if not H.verify_prop21(w, e)]
    rep.exact(f"T_w X^eps expansion, l(w)<={max_length}, r in {{0,1}}", not bad,
              f"first failure {bad[0]}" if bad else "")

    ok_rec = all(H.a_coeff(k - 2) - q * H.a_coeff(k - 1) == H.a_coeff(k) for k in range(2, 13))
    rep.exact("a(k-2) - (tau-1/tau) a(k-1) = a(k), 2<=k<=12", ok_rec)

    Z = X + Xi
    ok_c = True
    for w in _weyl_elements(central_length):
        for k in range(-central_k, central_k + 1):
            m = H.basis_monomial(w, k)
            ok_c &= (Z * m - m * Z).is_zero()
    rep.exact(f"X+X^-1 central, l(w)<={central_length}, |k|<={central_k}", ok_c)
    return rep


def cross_representation_check(
    taus: Sequence[float] = (0.25, 0.5, 0.75),
    pairs: int = 50,
    functions: int = 10,
    M: int = 4,
    seed: int = 0,
    tol: float = 1e-10,
) -> SuiteReport:
    """Symbolic products against composed lattice operators.

    Uses the integral-reflection representation ``(I, u, D)``; elements are
    single monomials ``T_w X^k`` with ``l(w) <= 3`` and ``|k| <= 2``.
    """
    rep = SuiteReport("daha")
    rng = np.random.default_rng(seed)
    elems = _weyl_elements(3)
    monos = [(w, k) for w in elems for k in range(-2, 3)]
    chosen = [(monos[i], monos[j]) for i, j in rng.integers(0, len(monos), size=(pairs, 2))]
    products = [(hecke.basis_monomial(*a), hecke.basis_monomial(*b)) for a, b in chosen]
    products = [(e1, e2, hecke.multiply(e1, e2)) for e1, e2 in products]
    lo, hi = -3 * M, 3 * M
    worst = 0.0
    for tau in taus:
        cfg = LatticeConfig(M, tau)
        f = _random_batch(rng, -M, M, functions)
        for e1, e2, prod in products:
            composed = lattice.apply_element(e1, lattice.apply_element(e2, f, cfg), cfg)
            direct = lattice.apply_element(prod, f, cfg)
            worst = max(worst, _compare(composed, direct, lo, hi, functions))
    rep.add(f"symbolic product vs operator composition ({pairs} pairs, tau in {list(taus)})", worst, tol)
    return rep


# --- reps ---------------------------------------------------------------------

def _xhat_magnitude(g: LatticeFunction, cfg: LatticeConfig, inverse: bool) -> LatticeFunction:
    """Sum of absolute values of the terms ``Xhat`` (or its inverse) adds up at ``n``.

    Used as the scale of identities where large terms cancel.
    """
    M, tau = cfg.M, cfg.tau

    def rule(n):
        if inverse:
            wn = weyl.chamber_map(n, M)
            expo = (weyl.chamber_map(n + 1, M).word_length - wn.word_length) * (1 + weyl.eta(wn))
            total = tau**expo * np.abs(g(n + 1))
        else:
            wun = weyl.chamber_map(M - n, M)
            expo = (weyl.chamber_map(n - 1, M).word_length - weyl.chamber_map(n, M).word_length) * (
                1 + weyl.eta(wun))
            total = tau**expo * np.abs(g(n - 1))
        if n != 0:
            wn = weyl.chamber_map(n, M)
            base = weyl.fold(n - ((n > 0) - (n < 0)), M)
            for v in weyl.enumerate_strictly_less(wn):
                d = wn.word_length - v.word_length
                coef = tau ** (-d) * abs(lattice._a_numeric(d, tau))
                total = total + coef * np.abs(g(weyl.act(weyl.inverse(v), base, M)))
        return total

    return LatticeFunction(rule, name="|Xhat| g")


def suite_reps(cfg: LatticeConfig, window: Optional[int] = None, seed: int = 0, count: int = 20,
               tol: float = 1e-12, convention: str = lattice.DEFAULT_XHAT_CONVENTION) -> SuiteReport:
    rep = SuiteReport("reps")
    M, tau = cfg.M, cfg.tau
    N = window or 6 * M
    rng = np.random.default_rng(seed)
    f = _random_batch(rng, -2 * M, 2 * M, count)
    tag = _cfg_tag(cfg)
    q = tau - 1 / tau
    lo, hi = -N, N
    That = lambda h: lattice.apply_That(h, cfg)
    Thati = lambda h: lattice.apply_That_inv(h, cfg)
    u = lambda h: lattice.apply_u(h, cfg)
    Xh = lambda h: lattice.apply_Xhat(h, cfg, convention)
    Xhi = lambda h: lattice.apply_Xhat_inv(h, cfg, convention)
    I = lambda h: lattice.apply_I(h, cfg)
    Ii = lambda h: lattice.apply_I_inv(h, cfg)
    D = lambda h: lattice.apply_D(h, 1)
    Di = lambda h: lattice.apply_D(h, -1)

    Tf = That(f)
    rep.add(f"That quadratic relation [{tag}]",
            _compare(That(Tf), lattice.linear_combination([(q, Tf), (1.0, f)]), lo, hi, count), tol)
    rep.add(f"u Xhat u = Xhat^-1 [{tag}]", _compare(u(Xh(u(f))), Xhi(f), lo, hi, count), tol)
    rep.add(f"That^-1 Xhat That^-1 = Xhat^-1 [{tag}]",
            _compare(Thati(Xh(Thati(f))), Xhi(f), lo, hi, count), tol)

    If = I(f)
    rep.add(f"I quadratic relation [{tag}]",
            _compare(I(If), lattice.linear_combination([(q, If), (1.0, f)]), lo, hi, count), tol)
    rep.add(f"u D u = D^-1 [{tag}]", _compare(u(D(u(f))), Di(f), lo, hi, count), tol)
    rep.add(f"I^-1 D I^-1 = D^-1 [{tag}]", _compare(Ii(D(Ii(f))), Di(f), lo, hi, count), tol)

    # Xhat Xhat^-1 = 1 and L = Xhat + Xhat^-1 cancel terms of size tau^{-2l};
    # deviations are measured against the size of those terms
    g = Xhi(f)
    scale = np.max(_block(_xhat_magnitude(g, cfg, inverse=False), lo, hi, count), axis=0)
    rep.add(f"Xhat Xhat^-1 = 1, relative to term size [{tag}]",
            _rel_dev(_block(Xh(g), lo, hi, count), _block(f, lo, hi, count), scale), tol)
    scale = np.maximum(np.max(_block(_xhat_magnitude(f, cfg, False), lo, hi, count), axis=0),
                       np.max(_block(_xhat_magnitude(f, cfg, True), lo, hi, count), axis=0))
    rep.add(f"L = Xhat + Xhat^-1, relative to term size [{tag}]",
            _rel_dev(_block(lattice.apply_L(f, cfg), lo, hi, count),
                     _block(Xh(f) + Xhi(f), lo, hi, count), scale), tol)
    rep.add(f"J^2 = J [{tag}]",
            _compare(lattice.apply_J(lattice.apply_J(f)), lattice.apply_J(f), lo, hi, count), tol)
    rep.add(f"I_s0 = u I u [{tag}]",
            _compare(lattice.apply_Isi(0, f, cfg), u(I(u(f))), lo, hi, count), tol)
    rep.add(f"I_s1 = I [{tag}]", _compare(lattice.apply_Isi(1, f, cfg), If, lo, hi, count), tol)
    return rep


# --- intertwiner --------------------------------------------------------------

def suite_intertwiner(cfg: LatticeConfig, window: Optional[int] = None, seed: int = 0, count: int = 8,
                      tol: float = 1e-12) -> SuiteReport:
    rep = SuiteReport("intertwiner")
    M, tau = cfg.M, cfg.tau
    N = window or 6 * M
    rng = np.random.default_rng(seed)
    tag = _cfg_tag(cfg)
    f = _random_batch(rng, -2 * M, 2 * M, count)
    Jf = lattice.apply_Jcal(f, cfg)
    lo, hi = -N, N

    rep.add(f"That Jcal = Jcal I [{tag}]",
            _compare(lattice.apply_That(Jf, cfg), lattice.apply_Jcal(lattice.apply_I(f, cfg), cfg), lo, hi, count),
            tol)
    rep.add(f"u Jcal = Jcal u [{tag}]",
            _compare(lattice.apply_u(Jf, cfg), lattice.apply_Jcal(lattice.apply_u(f, cfg), cfg), lo, hi, count),
            tol)
    JDf = lattice.apply_Jcal(lattice.apply_D(f, 1), cfg)
    consistent = []
    for conv in lattice.XHAT_CONVENTIONS:
        res = rep.add(f"Xhat Jcal = Jcal D, convention {conv} [{tag}]",
                      _compare(lattice.apply_Xhat(Jf, cfg, conv), JDf, lo, hi, count), tol)
        if res.passed:
            consistent.append(conv)

    # triangularity on indicators
    indices = lattice.closure_window(N, M)
    A, leak = lattice.jcal_matrix(indices, cfg)
    off = 0.0
    for i, n in enumerate(indices):
        for j, k in enumerate(indices):
            if i != j and A[i, j] != 0.0 and not lattice.precedes(k, n, M):
                off = max(off, abs(A[i, j]))
    rep.exact(f"Jcal e_k vanishes unless k precedes n [{tag}]", off == 0.0 and not np.any(leak),
              f"largest stray entry {off:.3e}" if off else "")
    lead_dev = 0.0
    diag_dev = 0.0
    for i, n in enumerate(indices):
        if abs(n) > N:
            continue
        wn = weyl.chamber_map(n, M)
        ell = wn.word_length
        lead = lattice.apply_Iw(wn, lattice.indicator(n), cfg)(weyl.act(wn, n, M))
        lead_dev = max(lead_dev, abs(lead - tau ** (-ell)) / tau ** (-ell))
        diag_dev = max(diag_dev, abs(A[i, i] - tau ** (-2 * ell)) / tau ** (-2 * ell))
    rep.add(f"(I_(w_n) e_n)_(n+) = tau^-l(w_n) [{tag}]", lead_dev, tol)
    rep.add(f"(Jcal e_n)_n = tau^-2l(w_n) [{tag}]", diag_dev, tol)

    # Xhat against the normative form Jcal D Jcal^-1 on the interior
    g = _random_batch(rng, -N, N, count)
    finv = lattice.invert_Jcal(g, N, cfg)
    margin = 2 * M
    conj = lattice.apply_Jcal(lattice.apply_D(finv, 1), cfg)
    rep.add(f"Jcal^-1 Jcal = 1 [{tag}]",
            _compare(lattice.invert_Jcal(Jf, N, cfg), f, lo, hi, count), 1e-9,
            "absolute scale tau^-2l amplifies rounding; looser bound")
    for conv in lattice.XHAT_CONVENTIONS:
        rep.add(f"Xhat = Jcal D Jcal^-1 on |n|<={N - margin}, convention {conv} [{tag}]",
                _compare(lattice.apply_Xhat(g, cfg, conv), conj, -N + margin, N - margin, count), tol)
    rep.notes.append(
        "Xhat summand indexing: consistent conventions = " + (", ".join(consistent) or "none")
        + f"; default = {lattice.DEFAULT_XHAT_CONVENTION}"
    )
    return rep


# --- unitarity ------------------------------------------------------------------

def _exact_weight_identity(cfg: LatticeConfig, radius: int) -> bool:
    # a_n delta_n = b_{n+1} delta_{n+1}, compared as exponents of tau^2
    M = cfg.M
    for n in range(-radius, radius + 1):
        a_exp = 1 if (n > 0 and n % M == 0) else 0
        b_exp = 1 if (n + 1 <= 0 and (n + 1) % M == 0) else 0
        lhs = a_exp + weyl.chamber_map(n, M).word_length
        rhs = b_exp + weyl.chamber_map(n + 1, M).word_length
        if lhs != rhs:
            return False
    return True


def suite_unitarity(cfg: LatticeConfig, window: Optional[int] = None, seed: int = 0, count: int = 20,
                    tol: float = 1e-12) -> SuiteReport:
    rep = SuiteReport("unitarity")
    M = cfg.M
    N = window or 6 * M
    tag = _cfg_tag(cfg)
    rng = np.random.default_rng(seed)
    a = max(1, N - M - 1)
    f = _random_batch(rng, -a, a, count)
    g = _random_batch(rng, -a, a, count)

    def ip(x, y):
        return lattice.inner_delta(x, y, N, cfg)

    def norm(x):
        return np.sqrt(np.abs(ip(x, x)))

    ops = {
        "That": lambda h: lattice.apply_That(h, cfg),
        "u": lambda h: lattice.apply_u(h, cfg),
        "L": lambda h: lattice.apply_L(h, cfg),
    }
    for name, op in ops.items():
        Af, Ag = op(f), op(g)
        lhs, rhs = ip(Af, g), ip(f, Ag)
        # Cauchy-Schwarz scale, since the inner products themselves may cancel
        scale = np.maximum(norm(Af) * norm(g), norm(f) * norm(Ag))
        rep.add(f"<{name} f, g> = <f, {name} g> [{tag}]", float(np.max(np.abs(lhs - rhs) / scale)), tol)
    rep.exact(f"a_n delta_n = b_(n+1) delta_(n+1), |n|<={4 * M} [{tag}]", _exact_weight_identity(cfg, 4 * M))
    return rep


# --- spectrum -------------------------------------------------------------------

def _orbit_weight(n: int, cfg: LatticeConfig, max_length: int = 40) -> float:
    """``W_S(tau^2)^-1 sum_{m in W_S n} delta_m`` with an exact geometric tail."""
    M, t2 = cfg.M, cfg.tau**2
    counts: Dict[int, set] = {}
    for w in weyl.elements_up_to(max_length, u_exponents=(0,)):
        m = weyl.act(w, n, M)
        counts.setdefault(weyl.chamber_map(m, M).word_length, set()).add(m)
    per_length = [len(counts.get(k, ())) for k in range(max_length + 1)]
    tail_count = per_length[-1]
    if any(c != tail_count for c in per_length[1:]):
        raise ArithmeticError(f"orbit of {n} has irregular length profile {per_length}")
    head = sum(c * t2**k for k, c in enumerate(per_length))
    tail = tail_count * t2 ** (max_length + 1) / ((1 - cfg.tau) * (1 + cfg.tau))
    ws = (1 + t2) / ((1 - cfg.tau) * (1 + cfg.tau))
    return (head + tail) / ws


def _phi_function(xi: float, tau: float) -> LatticeFunction:
    return LatticeFunction(lambda n: spectral.phi_xi(xi, n, tau), name=f"phi_{xi}")


def suite_spectrum(cfg: LatticeConfig, tol: float = 1e-10, invariance_radius: Optional[int] = None,
                   with_lattice: bool = True) -> SuiteReport:
    rep = SuiteReport("spectrum")
    M, tau = cfg.M, cfg.tau
    tag = _cfg_tag(cfg)
    table = spectral.spectrum(cfg)
    xs = table.xi
    rep.exact(f"{M + 1} roots strictly ordered in (0, pi) [{tag}]",
              len(xs) == M + 1 and bool(np.all(np.diff(xs) > 0)) and 0 < xs[0] and xs[-1] < math.pi)
    vres = max(abs(spectral.bethe_V(p.xi, cfg) - (p.m + 1) * math.pi) for p in table.points)
    rep.add(f"|V(xi_m) - (m+1) pi| (absolute) [{tag}]", vres, 1e-13 * (M + 2) * math.pi)
    rep.add(f"xi_(M-m) = pi - xi_m (absolute) [{tag}]", float(np.max(np.abs(xs + xs[::-1] - math.pi))), 1e-12)
    rep.add(f"Bethe residual (absolute) [{tag}]", max(p.bethe_residual for p in table.points), tol)
    parity_ok = all(
        p.parity_epsilon == (1 if p.m % 2 == 0 else -1)
        and spectral.bethe_residual(p.xi, -p.parity_epsilon, cfg) > 1e-6
        for p in table.points
    )
    rep.exact(f"parity epsilon = (-1)^m [{tag}]", parity_ok)
    if M % 2 == 0:
        mid = table.points[M // 2].xi
        rep.add(f"midpoint root = pi/2 (absolute) [{tag}]", abs(mid - math.pi / 2), 1e-13)

    grid = np.linspace(0.0, math.pi, 10_000)
    vmin = min(spectral.bethe_V_prime(x, cfg) for x in grid)
    rep.exact(f"V' > M on a 10^4-point grid [{tag}]", vmin > M, f"min V' - M = {vmin - M:.3e}")
    th = max(abs(spectral.theta(x, tau) - spectral.theta_integral(x, tau)) for x in (0.2, 0.9, 1.4, 2.3, 3.0))
    rep.add(f"theta: arctan form vs integral form (absolute) [{tag}]", th, 1e-10)

    forms = [spectral._dual_weight_forms(p.xi, cfg) for p in table.points]
    rep.add(f"dual weight: c-function form vs cosine form [{tag}]",
            max(abs(a - b) / abs(b) for a, b in forms), 1e-12)
    rep.exact(f"dual weights positive [{tag}]", bool(np.all(table.dual_weights > 0)))

    kern = spectral.spherical_kernel(table)
    rep.add(f"Phi(., 0) = 1 + tau^2 [{tag}]", float(np.max(np.abs(kern.phi[:, 0] - (1 + tau**2)))), 1e-12)
    rep.add(f"sum_m Phi_(m,0)^2 dual_m = 1 + tau^2 [{tag}]",
            abs(float(np.sum(kern.phi[:, 0] ** 2 * kern.delta_hat)) - (1 + tau**2)) / (1 + tau**2), tol)

    # eigen-oracle
    sym = transform.symmetrized_laplacian(cfg)
    ev = np.sort(np.linalg.eigvalsh(0.5 * (sym + sym.T)))
    expect = np.sort(table.eigenvalues)
    rep.add(f"eigenvalues of symmetrized Laplacian = 2cos xi_m (absolute) [{tag}]",
            float(np.max(np.abs(ev - expect))), 1e-9)
    gen = np.sort(np.linalg.eigvals(transform.dense_laplacian(cfg)).real)
    rep.add(f"general eigensolver on unsymmetrized Laplacian (absolute) [{tag}]",
            float(np.max(np.abs(gen - expect))), 1e-9)
    dense = transform.dense_laplacian(cfg)
    resid = 0.0
    for row, lam in zip(kern.phi, table.eigenvalues):
        resid = max(resid, float(np.max(np.abs(dense @ row - lam * row)) / np.max(np.abs(row))))
    rep.add(f"L Phi_m = 2cos(xi_m) Phi_m [{tag}]", resid, tol)
    gap = float(np.min(np.diff(expect)))
    rep.exact(f"eigenvalues pairwise distinct [{tag}]", gap > 1e-12, f"min gap {gap:.3e}")

    dev = max(abs(_orbit_weight(n, cfg) - spectral.node_weight(n, cfg)) for n in range(M + 1))
    rep.add(f"Delta_n from orbit sum of delta (absolute) [{tag}]", dev, 1e-14)

    if with_lattice:
        # values of Jcal phi at n come out of cancellations among terms of
        # size tau^{-2 l(w_n)}; deviations are scaled by that factor
        R = invariance_radius or 4 * M
        cond = lambda *ns: max(tau ** (-2 * weyl.chamber_map(n, M).word_length) for n in ns)
        worst_s = worst_u = worst_k = 0.0
        for p in table.points:
            Phi = lattice.apply_Jcal(_phi_function(p.xi, tau), cfg)
            vals = {n: Phi(n) for n in range(-R - 2 * M, R + 2 * M + 1)}
            scale = max(abs(v) for v in vals.values())
            for n in range(-R, R + 1):
                worst_s = max(worst_s, abs(vals[-n] - vals[n]) / (scale * cond(n, -n)),
                              abs(vals[2 * M - n] - vals[n]) / (scale * cond(n, 2 * M - n)))
                worst_u = max(worst_u, abs(vals[M - n] - p.parity_epsilon * vals[n]) / (scale * cond(n, M - n)))
            worst_k = max(worst_k, max(abs(vals[n] - kern.phi[p.m, n]) for n in range(M + 1)) / scale)
        rep.add(f"Jcal phi_(xi_m) invariant under s and s0, |n|<={R}, condition-scaled [{tag}]", worst_s, tol)
        rep.add(f"u Jcal phi_(xi_m) = eps Jcal phi_(xi_m), |n|<={R}, condition-scaled [{tag}]", worst_u, tol)
        rep.add(f"kernel = Jcal phi on Lambda_M [{tag}]", worst_k, tol)
        worst_t = 0.0
        for xi in (0.3, 1.1, 2.5):
            Phi = lattice.apply_Jcal(_phi_function(xi, tau), cfg)
            TPhi = lattice.apply_That(Phi, cfg)
            scale = max(abs(Phi(n)) for n in range(-R, R + 1))
            for n in range(-R, R + 1):
                worst_t = max(worst_t, abs(TPhi(n) - tau * Phi(n)) / (scale * cond(n, -n)))
        rep.add(f"That Phi_xi = tau Phi_xi for generic xi, condition-scaled [{tag}]", worst_t, tol)
    return rep


# --- orthogonality ------------------------------------------------------------------

def tampered(kernel: transform.KernelMatrix, amount: float = 1e-3) -> transform.KernelMatrix:
    """Copy of ``kernel`` with one entry perturbed (negative control)."""
    phi = kernel.phi.copy()
    phi[1, 1] += amount
    return transform.KernelMatrix(kernel.cfg, phi, kernel.delta, kernel.delta_hat, kernel.xi)


def suite_orthogonality(cfg: LatticeConfig, seed: int = 0, signals: int = 100, tol: float = 1e-10,
                        kernel: Optional[transform.KernelMatrix] = None) -> SuiteReport:
    rep = SuiteReport("orthogonality")
    tag = _cfg_tag(cfg)
    k = kernel or transform.build_kernel(cfg)
    size = k.size
    rng = np.random.default_rng(seed)

    report = transform.verify_orthogonality(k)
    rows_expect = np.diag(1.0 / k.delta_hat)
    cols_expect = np.diag(1.0 / k.delta)
    raw_rows = float(np.max(np.abs(report.row_gram - rows_expect)) / np.max(1.0 / k.delta_hat))
    raw_cols = float(np.max(np.abs(report.column_gram - cols_expect)) / np.max(1.0 / k.delta))
    rep.add(f"orthogonality: row Gram = diag(1/dual weights) [{tag}]", raw_rows, tol)
    rep.add(f"orthogonality: column Gram = diag(1/Delta) [{tag}]", raw_cols, tol)
    rep.add(f"orthogonality: weighted kernel is an orthogonal matrix [{tag}]", report.max_deviation, tol)

    F = rng.standard_normal((signals, size)) + 1j * rng.standard_normal((signals, size))
    G = rng.standard_normal((signals, size)) + 1j * rng.standard_normal((signals, size))
    Fh, Gh = transform.forward(k, F), transform.forward(k, G)
    back = transform.inverse(k, Fh)
    rt = np.max(np.abs(back - F), axis=1) / np.max(np.abs(F), axis=1)
    rep.add(f"inverse(forward f) = f, {signals} signals [{tag}]", float(np.max(rt)), tol)

    ipd = lambda a, b: np.sum(a * np.conj(b) * k.delta, axis=-1)
    iph = lambda a, b: np.sum(a * np.conj(b) * k.delta_hat, axis=-1)
    scale = np.sqrt(np.abs(ipd(F, F)) * np.abs(ipd(G, G)))
    rep.add(f"Parseval <f,g> = <fhat,ghat> [{tag}]", float(np.max(np.abs(ipd(F, G) - iph(Fh, Gh)) / scale)), tol)
    nf = np.abs(ipd(F, F))
    rep.add(f"Plancherel |f| = |fhat| [{tag}]", float(np.max(np.abs(nf - np.abs(iph(Fh, Fh))) / nf)), tol)

    lam = 2 * np.cos(k.xi)
    diag = transform.inverse(k, Fh * lam[None, :])
    dense = F @ transform.dense_laplacian(cfg).T
    rep.add(f"L = F^-1 E F [{tag}]",
            float(np.max(np.max(np.abs(diag - dense), axis=1) / np.max(np.abs(dense), axis=1))), tol)

    even, odd = transform.parity_split(k, F)
    he, ho = transform.forward(k, even), transform.forward(k, odd)
    m = np.arange(size)
    leak_e = np.max(np.abs(he[:, m % 2 == 1]), axis=1) / np.max(np.abs(Fh), axis=1)
    leak_o = np.max(np.abs(ho[:, m % 2 == 0]), axis=1) / np.max(np.abs(Fh), axis=1)
    rep.add(f"u-even part maps to even m [{tag}]", float(np.max(leak_e)), tol)
    rep.add(f"u-odd part maps to odd m [{tag}]", float(np.max(leak_o)), tol)
    rep.add(f"parity split reassembles f [{tag}]", float(np.max(np.abs(even + odd - F))), tol)
    return rep


# --- limit ------------------------------------------------------------------------------

def suite_limit(tau: float = LIMIT_TAU, M: int = LIMIT_M, xi_tol: float = 1e-5, kernel_tol: float = 1e-4,
                weight_tol: float = 1e-4) -> SuiteReport:
    rep = SuiteReport("limit")
    cfg = LatticeConfig(M, tau)
    tag = _cfg_tag(cfg)
    k = transform.build_kernel(cfg)
    m = np.arange(M + 1)
    xi_dev = np.abs(k.xi - m * math.pi / M)
    worst = int(np.argmax(xi_dev))
    rep.add(f"|xi_m - m pi/M| [{tag}]", float(xi_dev[worst]), xi_tol, f"worst at m={worst}")
    dct = 2 * np.cos(np.outer(m, m) * math.pi / M)
    rep.add(f"|Phi_(m,n) - 2cos(m n pi/M)| [{tag}]", float(np.max(np.abs(k.phi - dct))), kernel_tol)
    pattern = np.ones(M + 1)
    pattern[[0, M]] = 0.5
    rep.add(f"|2M dual_n - (1 or 1/2)| [{tag}]", float(np.max(np.abs(2 * M * k.delta_hat - pattern))),
            weight_tol)
    rng = np.random.default_rng(0)
    f = rng.standard_normal((10, M + 1))
    delta1 = np.ones(M + 1)
    delta1[[0, M]] = 0.5
    ref = f @ (dct * delta1[None, :]).T
    got = transform.forward(k, f)
    rep.add(f"forward vs cosine-transform sum [{tag}]",
            float(np.max(np.abs(got - ref)) / np.max(np.abs(ref))), kernel_tol)
    return rep


# --- quadrature -------------------------------------------------------------------------

def suite_quadrature(taus: Sequence[float] = QUADRATURE_TAUS, nmax: int = 10, tol: float = 1e-8) -> SuiteReport:
    rep = SuiteReport("quadrature")
    for tau in taus:
        worst = 0.0
        where = None
        for n in range(nmax + 1):
            for n2 in range(n, nmax + 1):
                expect = 0.0 if n != n2 else (1 + tau**2 if n == 0 else 1.0)
                dev = abs(transform.hl_quadrature(n, n2, tau) - expect)
                if dev > worst:
                    worst, where = dev, (n, n2)
        rep.add(f"Hall-Littlewood orthogonality integral, 0<=n,n'<={nmax} [tau={tau:g}]", worst, tol,
                f"worst at {where}" if where else "")
    return rep


# --- dispatch ---------------------------------------------------------------------------

def run_suite(name: str, cfg: LatticeConfig, window: Optional[int] = None, seed: int = 0,
              tol: Optional[float] = None, tamper: bool = False) -> SuiteReport:
    """Run one suite at the given configuration (``limit`` and ``quadrature``
    use their own fixed parameters; ``quadrature`` adds the configured tau)."""
    start = time.perf_counter()
    kw: Dict[str, float] = {} if tol is None else {"tol": tol}
    if name == "daha":
        rep = suite_daha()
        rep.checks += cross_representation_check(seed=seed, **kw).checks
    elif name == "reps":
        rep = suite_reps(cfg, window, seed, **kw)
    elif name == "intertwiner":
        rep = suite_intertwiner(cfg, window, seed, **kw)
    elif name == "unitarity":
        rep = suite_unitarity(cfg, window, seed, **kw)
    elif name == "spectrum":
        rep = suite_spectrum(cfg, **kw)
    elif name == "orthogonality":
        kernel = transform.build_kernel(cfg)
        if tamper:
            kernel = tampered(kernel)
        rep = suite_orthogonality(cfg, seed, kernel=kernel, **kw)
    elif name == "limit":
        rep = suite_limit() if tol is None else suite_limit(xi_tol=tol, kernel_tol=tol, weight_tol=tol)
    elif name == "quadrature":
        taus = tuple(sorted(set(QUADRATURE_TAUS) | {cfg.tau}))
        rep = suite_quadrature(taus, **kw)
    else:
        raise ValueError(f"unknown suite {name!r}; expected one of {SUITES + ('all',)}")
    rep.seconds = time.perf_counter() - start
    return rep
