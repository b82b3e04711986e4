"""The deformed discrete Fourier transform on ``{0, ..., M}``.

``forward`` maps a signal ``f`` to ``fhat[m] = sum_n f[n] Phi[m, n] Delta[n]``
and ``inverse`` maps back with the dual weights.  :class:`DeformedFourierTransform`
wraps the pair in the scikit-learn transformer API.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from . import spectral
from .weyl import LatticeConfig

__all__ = [
    "KernelMatrix",
    "OrthogonalityReport",
    "build_kernel",
    "check_signal",
    "forward",
    "inverse",
    "verify_orthogonality",
    "dense_laplacian",
    "symmetrized_laplacian",
    "parity_split",
    "hl_quadrature",
    "DeformedFourierTransform",
]


@dataclass(frozen=True)
class KernelMatrix:
    cfg: LatticeConfig
    phi: np.ndarray
    delta: np.ndarray
    delta_hat: np.ndarray
    xi: Optional[np.ndarray] = None

    @property
    def size(self) -> int:
        return self.cfg.M + 1

    def orthogonal_form(self) -> np.ndarray:
        """``sqrt(delta_hat)[:, None] * phi * sqrt(delta)[None, :]``."""
        return np.sqrt(self.delta_hat)[:, None] * self.phi * np.sqrt(self.delta)[None, :]


@dataclass(frozen=True)
class OrthogonalityReport:
    row_deviation: float
    column_deviation: float
    row_gram: np.ndarray
    column_gram: np.ndarray

    @property
    def max_deviation(self) -> float:
        return max(self.row_deviation, self.column_deviation)


def build_kernel(cfg: LatticeConfig) -> KernelMatrix:
    return spectral.spherical_kernel(spectral.spectrum(cfg))


def check_signal(values, size: int, name: str = "signal") -> np.ndarray:
    """Coerce to a complex 1-d or 2-d array whose last axis has ``size`` entries."""
    arr = np.asarray(values)
    if arr.dtype == object:
        raise ValueError(f"{name} must be numeric")
    arr = arr.astype(complex)
    if arr.ndim not in (1, 2):
        raise ValueError(f"{name} must be 1-d or 2-d, got shape {arr.shape}")
    if arr.shape[-1] != size:
        raise ValueError(f"{name} has {arr.shape[-1]} entries, expected {size}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")
    return arr


def _maybe_real(out: np.ndarray, source: np.ndarray) -> np.ndarray:
    return out.real if np.isrealobj(source) else out


def forward(k: KernelMatrix, f) -> np.ndarray:
    f_arr = check_signal(f, k.size)
    out = f_arr @ (k.phi * k.delta[None, :]).T
    return _maybe_real(out, np.asarray(f))


def inverse(k: KernelMatrix, fhat) -> np.ndarray:
    fh = check_signal(fhat, k.size, "fhat")
    out = fh @ (k.phi * k.delta_hat[:, None])
    return _maybe_real(out, np.asarray(fhat))


def verify_orthogonality(k: KernelMatrix) -> OrthogonalityReport:
    rows = (k.phi * k.delta[None, :]) @ k.phi.T
    cols = (k.phi.T * k.delta_hat[None, :]) @ k.phi
    # deviations measured after normalizing by the expected diagonal, i.e. the
    # orthogonality defect of sqrt(delta_hat) phi sqrt(delta)
    rh, ch = np.sqrt(k.delta_hat), np.sqrt(k.delta)
    eye = np.eye(k.size)
    row_dev = float(np.max(np.abs(rh[:, None] * rows * rh[None, :] - eye)))
    col_dev = float(np.max(np.abs(ch[:, None] * cols * ch[None, :] - eye)))
    return OrthogonalityReport(row_dev, col_dev, rows, cols)


def dense_laplacian(cfg: LatticeConfig) -> np.ndarray:
    """Tridiagonal matrix of the Laplacian restricted to ``{0, ..., M}``."""
    M, t2 = cfg.M, cfg.tau**2
    L = np.zeros((M + 1, M + 1))
    for n in range(1, M):
        L[n, n - 1] = L[n, n + 1] = 1.0
    L[0, 1] = 1 + t2
    L[M, M - 1] = 1 + t2
    return L


def symmetrized_laplacian(cfg: LatticeConfig) -> np.ndarray:
    # self-adjoint in the Delta inner product, so diag(sqrt Delta) conjugation symmetrizes it
    d = np.sqrt(np.array([spectral.node_weight(n, cfg) for n in range(cfg.M + 1)]))
    return d[:, None] * dense_laplacian(cfg) / d[None, :]


def parity_split(k: KernelMatrix, f) -> Tuple[np.ndarray, np.ndarray]:
    """Split ``f`` into parts even and odd under ``n -> M - n``."""
    f_arr = check_signal(f, k.size)
    flipped = f_arr[..., ::-1]
    even, odd = 0.5 * (f_arr + flipped), 0.5 * (f_arr - flipped)
    src = np.asarray(f)
    return _maybe_real(even, src), _maybe_real(odd, src)


def hl_quadrature(n: int, nprime: int, tau: float, points: int = 64, tol: float = 1e-10,
                  max_points: int = 1 << 20) -> float:
    """``(1/2pi) int_0^pi phi(n) phi(n') dxi / (c(xi) c(-xi))`` by the trapezoid rule.

    The integrand is written pole-free and is even and 2pi-periodic, so the
    rule converges spectrally; ``points`` doubles until two successive values
    differ by less than ``tol``.
    """
    if n < 0 or nprime < 0:
        raise ValueError(f"indices must be non-negative, got ({n}, {nprime})")
    if points < 2:
        raise ValueError("points must be at least 2")
    t2 = tau**2

    def rule(npts):
        xi = np.linspace(0.0, math.pi, npts + 1)
        x = np.cos(xi)
        a = _phi_vec(n, x, t2)
        b = _phi_vec(nprime, x, t2)
        s2 = np.sin(xi) ** 2
        w = 4 * s2 / ((1 - t2) ** 2 + 4 * t2 * s2)
        vals = a * b * w
        h = math.pi / npts
        return h * (vals.sum() - 0.5 * (vals[0] + vals[-1])) / (2 * math.pi)

    prev = rule(points)
    while points < max_points:
        points *= 2
        cur = rule(points)
        if abs(cur - prev) < tol:
            return float(cur)
        prev = cur
    raise ArithmeticError(f"quadrature did not converge within {max_points} points")


def _chebyshev_vec(n: int, x: np.ndarray) -> np.ndarray:
    if n < -1:
        return -_chebyshev_vec(-n - 2, x)
    if n == -1:
        return np.zeros_like(x)
    prev, cur = np.zeros_like(x), np.ones_like(x)
    for _ in range(n):
        prev, cur = cur, 2 * x * cur - prev
    return cur


def _phi_vec(n: int, x: np.ndarray, t2: float) -> np.ndarray:
    return _chebyshev_vec(n, x) + t2 * _chebyshev_vec(-n, x)


class DeformedFourierTransform(TransformerMixin, BaseEstimator):
    """Hecke-deformed discrete cosine transform as a scikit-learn transformer.

    Rows of ``X`` are signals on ``{0, ..., M}``.  ``transform`` computes the
    forward transform and ``inverse_transform`` undoes it.  If ``M`` is None
    it is read off the number of columns at ``fit`` time.

    Parameters
    ----------
    tau : float in (0, 1)
        Hecke parameter; ``tau -> 1`` recovers the discrete cosine transform.
    M : int or None
        Signal length minus one.
    """

    def __init__(self, tau: float = 0.5, M: Optional[int] = None):
        self.tau = tau
        self.M = M

    def fit(self, X=None, y=None):
        if self.M is None:
            if X is None:
                raise ValueError("M is None, so fit needs data to infer it")
            arr = np.asarray(X)
            M = (arr.shape[-1] if arr.ndim else 0) - 1
        else:
            M = self.M
        cfg = LatticeConfig(int(M), float(self.tau))
        if X is not None:
            check_signal(X, cfg.M + 1, "X")
        self.kernel_ = build_kernel(cfg)
        self.xi_ = self.kernel_.xi
        self.eigenvalues_ = 2.0 * np.cos(self.xi_)
        self.n_features_in_ = cfg.M + 1
        return self

    def transform(self, X):
        check_is_fitted(self, "kernel_")
        return forward(self.kernel_, X)

    def inverse_transform(self, X):
        check_is_fitted(self, "kernel_")
        return inverse(self.kernel_, X)
