"""Heat kernels e^{-t L} of the normalized Laplacian.

The exact kernel comes from the eigendecomposition L = Phi Lambda Phi^T; a
second-order Taylor truncation covers small times and a Fiedler-pair form
covers large times. All operations are pure functions of immutable inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericalError

EIGENVALUE_CLAMP = 1e-9
RECONSTRUCTION_TOL = 1e-8

METHOD_EXACT = "exact"
METHOD_TAYLOR2 = "taylor2"
METHOD_FIEDLER = "fiedler"
METHOD_AUTO = "auto"

# Regime defaults for auto selection: the truncated Taylor form is cubic in t,
# so it is restricted to t below this threshold; the Fiedler form needs the
# non-constant modes to have decayed, i.e. t well past 1/lambda_1.
SMALL_TIME_DEFAULT = 0.1
FIEDLER_TIME_FACTOR = 10.0


@dataclass(frozen=True)
class SpectralDecomposition:
    """Ascending eigenvalues and the matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def n(self) -> int:
        return len(self.eigenvalues)


@dataclass(frozen=True)
class HeatKernel:
    t: float
    matrix: np.ndarray
    method: str


@dataclass(frozen=True)
class HeatState:
    """Per-node heat amounts at time t."""

    t: float
    heat: np.ndarray


def spectral_decompose(lap: np.ndarray) -> SpectralDecomposition:
    """Eigendecompose a symmetric normalized Laplacian.

    Eigenvalues within EIGENVALUE_CLAMP below zero are clamped to 0 so that
    exponentials never exceed 1 from rounding noise. Reconstruction and
    orthonormality are verified to RECONSTRUCTION_TOL.
    """
    lap = np.asarray(lap, dtype=float)
    try:
        w, v = np.linalg.eigh(lap)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigendecomposition failed: {exc}") from exc
    if len(w) and w[0] < -EIGENVALUE_CLAMP:
        raise NumericalError(
            f"eigenvalue {w[0]:.3e} below zero beyond tolerance; input is not a normalized Laplacian"
        )
    w = np.where(w < 0.0, 0.0, w)
    residual = float(np.linalg.norm((v * w) @ v.T - lap))
    if residual > RECONSTRUCTION_TOL:
        raise NumericalError(f"eigendecomposition residual {residual:.3e} exceeds {RECONSTRUCTION_TOL}")
    return SpectralDecomposition(eigenvalues=w, eigenvectors=v)


def heat_kernel_exact(spec: SpectralDecomposition, t: float) -> HeatKernel:
    """Closed-form kernel Phi e^{-t Lambda} Phi^T; entries are non-negative."""
    if t < 0:
        raise ValueError(f"time must be non-negative, got {t}")
    decay = np.exp(-t * spec.eigenvalues)
    matrix = (spec.eigenvectors * decay) @ spec.eigenvectors.T
    return HeatKernel(t=float(t), matrix=matrix, method=METHOD_EXACT)


def heat_kernel_taylor2(lap: np.ndarray, t: float) -> HeatKernel:
    """Second-order truncation I - tL + (tL)^2/2, intended for small t."""
    if t < 0:
        raise ValueError(f"time must be non-negative, got {t}")
    lap = np.asarray(lap, dtype=float)
    n = lap.shape[0]
    tl = t * lap
    matrix = np.eye(n) - tl + 0.5 * (tl @ tl)
    return HeatKernel(t=float(t), matrix=matrix, method=METHOD_TAYLOR2)


def heat_kernel_fiedler(spec: SpectralDecomposition, t: float) -> HeatKernel:
    """Large-time form I - e^{-lambda_1 t} phi_1 phi_1^T.

    lambda_1 is the second-smallest eigenvalue. t = 0 returns the identity so
    that every method agrees at the initial time.
    """
    if spec.n < 2:
        raise ValueError("the Fiedler form needs at least 2 nodes")
    if t < 0:
        raise ValueError(f"time must be non-negative, got {t}")
    n = spec.n
    if t == 0:
        return HeatKernel(t=0.0, matrix=np.eye(n), method=METHOD_FIEDLER)
    lam1 = spec.eigenvalues[1]
    phi1 = spec.eigenvectors[:, 1]
    matrix = np.eye(n) - np.exp(-lam1 * t) * np.outer(phi1, phi1)
    return HeatKernel(t=float(t), matrix=matrix, method=METHOD_FIEDLER)


def compute_heat_kernel(
    lap: np.ndarray,
    spec: SpectralDecomposition,
    t: float,
    method: str = METHOD_EXACT,
    small_time: float = SMALL_TIME_DEFAULT,
) -> HeatKernel:
    """Dispatch on ``method``; ``auto`` picks the regime from t and lambda_1."""
    if method == METHOD_AUTO:
        method = select_heat_method(spec, t, small_time)
    if method == METHOD_EXACT:
        return heat_kernel_exact(spec, t)
    if method == METHOD_TAYLOR2:
        return heat_kernel_taylor2(lap, t)
    if method == METHOD_FIEDLER:
        return heat_kernel_fiedler(spec, t)
    raise ValueError(f"unknown heat-kernel method {method!r}")


def select_heat_method(
    spec: SpectralDecomposition, t: float, small_time: float = SMALL_TIME_DEFAULT
) -> str:
    if t < small_time:
        return METHOD_TAYLOR2
    if spec.n >= 2:
        lam1 = spec.eigenvalues[1]
        if lam1 > EIGENVALUE_CLAMP and t > FIEDLER_TIME_FACTOR / lam1:
            return METHOD_FIEDLER
    return METHOD_EXACT


def propagate_heat(hk: HeatKernel, u0: float) -> HeatState:
    """Evolve the uniform initial condition u0 on every node through the kernel."""
    if u0 <= 0:
        raise ValueError(f"initial heat must be positive, got {u0}")
    n = hk.matrix.shape[0]
    heat = hk.matrix @ np.full(n, float(u0))
    return HeatState(t=hk.t, heat=heat)


def perturbation_gap(lap: np.ndarray, f: np.ndarray, t: float) -> float:
    """Frobenius gap between e^{-t L} and e^{-t (L + F)} for a symmetric perturbation F."""
    lap = np.asarray(lap, dtype=float)
    f = np.asarray(f, dtype=float)
    if not np.all(np.isfinite(f)):
        raise ValueError("perturbation must be finite")
    exact = heat_kernel_exact(spectral_decompose(lap), t).matrix
    perturbed = _symmetric_expm(-t * (lap + f))
    return float(np.linalg.norm(exact - perturbed))


def _symmetric_expm(s: np.ndarray) -> np.ndarray:
    """Matrix exponential of a symmetric matrix via eigh, no Laplacian-specific clamping."""
    w, v = np.linalg.eigh(s)
    return (v * np.exp(w)) @ v.T
