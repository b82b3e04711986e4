"""Spectral data of the deformed Laplacian on ``{0, ..., M}``.

The nodes ``xi_m`` are the roots of ``V(xi) = (m + 1) pi`` with
``V(xi) = M xi + theta(xi)`` strictly increasing, so each is bracketed in
``(0, pi)`` and found by bisection followed by clamped Newton steps.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Dict, List

import numpy as np

from .weyl import LatticeConfig

__all__ = [
    "SpectralPoint",
    "SpectrumTable",
    "theta",
    "theta_integral",
    "bethe_V",
    "bethe_V_prime",
    "bethe_residual",
    "solve_bethe_root",
    "c_function",
    "chebyshev_u",
    "phi_xi",
    "phi_xi_cform",
    "dual_weight",
    "node_weight",
    "spectrum",
    "spherical_kernel",
]


@dataclass(frozen=True)
class SpectralPoint:
    m: int
    xi: float
    parity_epsilon: int
    eigenvalue: float
    dual_weight: float
    bethe_residual: float


@dataclass(frozen=True)
class SpectrumTable:
    cfg: LatticeConfig
    points: List[SpectralPoint]
    node_weights: Dict[int, float] = field(default_factory=dict)

    @property
    def xi(self) -> np.ndarray:
        return np.array([p.xi for p in self.points])

    @property
    def eigenvalues(self) -> np.ndarray:
        return np.array([p.eigenvalue for p in self.points])

    @property
    def dual_weights(self) -> np.ndarray:
        return np.array([p.dual_weight for p in self.points])

    @property
    def delta(self) -> np.ndarray:
        return np.array([self.node_weights[n] for n in range(self.cfg.M + 1)])


def theta(xi: float, tau: float) -> float:
    """Phase ``2 arctan(((1+tau^2)/(1-tau^2)) tan xi)``, continued so that
    ``theta(xi + pi) = theta(xi) + 2 pi``."""
    k = math.floor(xi / math.pi + 0.5)
    x = xi - k * math.pi  # in [-pi/2, pi/2)
    ratio = (1 + tau**2) / _one_minus_tau2(tau)
    return 2.0 * math.atan2(ratio * math.sin(x), math.cos(x)) + 2.0 * math.pi * k


def theta_integral(xi: float, tau: float) -> float:
    """Integral form of the phase; slow, used only as a cross-check."""
    from scipy.integrate import quad

    t4 = tau**4
    val, _ = quad(lambda x: 1.0 / (1 + t4 - 2 * tau**2 * math.cos(x)), 0.0, 2 * xi, limit=200,
                  epsabs=1e-14, epsrel=1e-13)
    return (1 - t4) * val


def _one_minus_tau2(tau: float) -> float:
    return (1 - tau) * (1 + tau)


def _denominator(xi: float, tau: float) -> float:
    # 1 + tau^4 - 2 tau^2 cos(2 xi), without cancellation near tau = 1 or xi = 0
    return _one_minus_tau2(tau) ** 2 + 4 * tau**2 * math.sin(xi) ** 2


def bethe_V(xi: float, cfg: LatticeConfig) -> float:
    return cfg.M * xi + theta(xi, cfg.tau)


def bethe_V_prime(xi: float, cfg: LatticeConfig) -> float:
    tau = cfg.tau
    return cfg.M + 2 * _one_minus_tau2(tau) * (1 + tau**2) / _denominator(xi, tau)


def bethe_residual(xi: float, epsilon: int, cfg: LatticeConfig) -> float:
    t2 = cfg.tau**2
    z = cmath.exp(2j * xi)
    return abs(cmath.exp(1j * cfg.M * xi) - epsilon * (1 - t2 * z) / (t2 - z))


_MAX_ITER = 80


def _root(target: float, cfg: LatticeConfig) -> float:
    lo, hi = 0.0, math.pi
    for _ in range(_MAX_ITER):
        if hi - lo <= 1e-3:
            break
        mid = 0.5 * (lo + hi)
        if bethe_V(mid, cfg) < target:
            lo = mid
        else:
            hi = mid
    x = 0.5 * (lo + hi)
    best, best_r = x, math.inf
    for _ in range(_MAX_ITER):
        r = bethe_V(x, cfg) - target
        if abs(r) < best_r:
            best, best_r = x, abs(r)
        elif abs(r) >= best_r and best_r < 1e-13 * (cfg.M + 2) * math.pi:
            break  # rounding floor reached
        if r == 0.0:
            break
        if r < 0:
            lo = x
        else:
            hi = x
        step = x - r / bethe_V_prime(x, cfg)
        if not lo <= step <= hi:
            step = 0.5 * (lo + hi)
        if step == x:
            break
        x = step
    if best_r > 1e-13 * (cfg.M + 2) * math.pi:
        raise ArithmeticError(f"root solve for V = {target} stalled with residual {best_r}")
    return best


def c_function(xi: float, tau: float) -> complex:
    # (1 - tau^2 e^{-2i xi}) / (1 - e^{-2i xi}) rewritten as
    # tau^2 + (1 - tau^2) e^{i xi} / (2i sin xi)
    sn = math.sin(xi)
    if abs(sn) < 1e-15:
        raise ZeroDivisionError(f"c-function has a pole at xi={xi}")
    return tau**2 + _one_minus_tau2(tau) * cmath.exp(1j * xi) / (2j * sn)


def chebyshev_u(n: int, x: float) -> float:
    """``U_n(x)`` by the three-term recurrence, with ``U_{-1} = 0`` and
    ``U_{-n-1} = -U_{n-1}`` for negative degree."""
    if n < 0:
        return -chebyshev_u(-n - 2, x) if n < -1 else 0.0
    prev, cur = 0.0, 1.0  # U_{-1}, U_0
    for _ in range(n):
        prev, cur = cur, 2 * x * cur - prev
    return cur


def phi_xi(xi: float, n: int, tau: float) -> float:
    """One-dimensional Hall-Littlewood polynomial ``U_n(cos xi) + tau^2 U_{-n}(cos xi)``."""
    x = math.cos(xi)
    return chebyshev_u(n, x) + tau**2 * chebyshev_u(-n, x)


def phi_xi_cform(xi: float, n: int, tau: float) -> complex:
    return c_function(xi, tau) * cmath.exp(1j * xi * n) + c_function(-xi, tau) * cmath.exp(-1j * xi * n)


def node_weight(n: int, cfg: LatticeConfig) -> float:
    return 1.0 / (1.0 + cfg.tau**2) if n in (0, cfg.M) else 1.0


def _dual_weight_forms(xi: float, cfg: LatticeConfig):
    tau = cfg.tau
    cc = (c_function(xi, tau) * c_function(-xi, tau)).real
    via_c = 1.0 / (2.0 * cc * bethe_V_prime(xi, cfg))
    den = _denominator(xi, tau)
    one_minus_cos = 2 * math.sin(xi) ** 2
    explicit = one_minus_cos / den / (cfg.M + 2 * _one_minus_tau2(tau) * (1 + tau**2) / den)
    return via_c, explicit


def dual_weight(point, cfg: LatticeConfig = None) -> float:
    """``1 / (2 c(xi) c(-xi) V'(xi))``, checked against its cosine form.

    Accepts a :class:`SpectralPoint` (with ``cfg``) or a bare ``xi``.
    """
    xi = point.xi if isinstance(point, SpectralPoint) else float(point)
    if cfg is None:
        raise ValueError("dual_weight needs the lattice configuration")
    via_c, explicit = _dual_weight_forms(xi, cfg)
    if abs(via_c - explicit) > 1e-12 * abs(explicit):
        raise ArithmeticError(
            f"dual weight forms disagree at xi={xi}: {via_c!r} vs {explicit!r}"
        )
    return explicit


def solve_bethe_root(m: int, cfg: LatticeConfig) -> SpectralPoint:
    if not 0 <= m <= cfg.M:
        raise ValueError(f"m must lie in 0..{cfg.M}, got {m}")
    xi = _root((m + 1) * math.pi, cfg)
    eps = 1 if m % 2 == 0 else -1
    return SpectralPoint(
        m=m,
        xi=xi,
        parity_epsilon=eps,
        eigenvalue=2.0 * math.cos(xi),
        dual_weight=dual_weight(xi, cfg),
        bethe_residual=bethe_residual(xi, eps, cfg),
    )


def spectrum(cfg: LatticeConfig) -> SpectrumTable:
    points = [solve_bethe_root(m, cfg) for m in range(cfg.M + 1)]
    xs = [p.xi for p in points]
    if not (0 < xs[0] and all(a < b for a, b in zip(xs, xs[1:])) and xs[-1] < math.pi):
        raise ArithmeticError(f"spectral nodes not strictly ordered in (0, pi): {xs}")
    weights = {n: node_weight(n, cfg) for n in range(cfg.M + 1)}
    return SpectrumTable(cfg=cfg, points=points, node_weights=weights)


def spherical_kernel(table: SpectrumTable, check: bool = True):
    """Kernel ``Phi[m, n] = phi_{xi_m}(n)`` on ``{0..M}^2`` as a KernelMatrix.

    With ``check`` the c-function form is evaluated too; it must be real and
    match the Chebyshev form.
    """
    from .transform import KernelMatrix

    cfg = table.cfg
    size = cfg.M + 1
    phi = np.empty((size, size))
    for i, p in enumerate(table.points):
        for n in range(size):
            phi[i, n] = phi_xi(p.xi, n, cfg.tau)
    if check:
        for i, p in enumerate(table.points):
            row = np.array([phi_xi_cform(p.xi, n, cfg.tau) for n in range(size)])
            scale = max(1.0, float(np.max(np.abs(row))))
            if np.max(np.abs(row.imag)) > 1e-13 * scale:
                raise ArithmeticError(f"kernel row {i} has a non-negligible imaginary part")
            if np.max(np.abs(row.real - phi[i])) > 1e-12 * scale:
                raise ArithmeticError(f"kernel row {i}: c-form and Chebyshev form disagree")
    return KernelMatrix(cfg=cfg, phi=phi, delta=table.delta, delta_hat=table.dual_weights, xi=table.xi)
