"""One-vs-rest SVM on a precomputed kernel, trained by SMO.

The solver is the max-violating-pair variant of sequential minimal
optimization: at each update the most violating pair under the KKT conditions
is selected deterministically (first index on ties), so training is exactly
reproducible. Indefinite kernels are tolerated by flooring the pair curvature.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import TrainingError
from .kernel import EvolutionKernelMatrix

KKT_TOL = 1e-3
MAX_UPDATES = 100_000
_BOX_EPS = 1e-12
_SUPPORT_TOL = 1e-10


@dataclass
class BinarySvm:
    """Dual solution of one one-vs-rest problem over the training indices."""

    positive_class: int
    y: np.ndarray
    alpha: np.ndarray
    bias: float
    support: np.ndarray
    kkt_residual: float
    updates: int
    cap_hit: bool

    def decision(self, k_row: np.ndarray) -> float:
        return float((self.alpha * self.y) @ k_row + self.bias)


@dataclass
class SvmModel:
    classes: np.ndarray
    machines: list[BinarySvm]
    c: float
    train_size: int

    def decision_values(self, k_row: np.ndarray) -> np.ndarray:
        return np.array([m.decision(k_row) for m in self.machines])


def _smo(k: np.ndarray, y: np.ndarray, c: float, tol: float, max_updates: int) -> BinarySvm:
    n = len(y)
    alpha = np.zeros(n)
    grad = -np.ones(n)  # gradient of 1/2 a'Qa - 1'a at a = 0
    updates = 0
    converged = False

    while updates < max_updates:
        yg = -(y * grad)
        up = ((y > 0) & (alpha < c - _BOX_EPS)) | ((y < 0) & (alpha > _BOX_EPS))
        low = ((y < 0) & (alpha < c - _BOX_EPS)) | ((y > 0) & (alpha > _BOX_EPS))
        if not up.any() or not low.any():
            converged = True
            break
        up_idx = np.flatnonzero(up)
        low_idx = np.flatnonzero(low)
        i = int(up_idx[np.argmax(yg[up_idx])])
        j = int(low_idx[np.argmin(yg[low_idx])])
        violation = yg[i] - yg[j]
        if violation <= tol:
            converged = True
            break

        curvature = k[i, i] + k[j, j] - 2.0 * k[i, j]
        if curvature <= 0:
            curvature = 1e-12
        step = violation / curvature
        step = min(step, c - alpha[i] if y[i] > 0 else alpha[i])
        step = min(step, alpha[j] if y[j] > 0 else c - alpha[j])

        alpha[i] += y[i] * step
        alpha[j] -= y[j] * step
        grad += step * y * (k[:, i] - k[:, j])
        updates += 1

    yg = -(y * grad)
    up = ((y > 0) & (alpha < c - _BOX_EPS)) | ((y < 0) & (alpha > _BOX_EPS))
    low = ((y < 0) & (alpha < c - _BOX_EPS)) | ((y > 0) & (alpha > _BOX_EPS))
    if up.any() and low.any():
        m_up = float(np.max(yg[up]))
        m_low = float(np.min(yg[low]))
        bias = (m_up + m_low) / 2.0
        residual = max(m_up - m_low, 0.0)
    else:
        # Everything sits on a box bound; center the bias on the KKT targets.
        bias = float(np.mean(yg))
        residual = 0.0

    return BinarySvm(
        positive_class=-1,  # filled by svm_train
        y=y,
        alpha=alpha,
        bias=bias,
        support=np.flatnonzero(alpha > _SUPPORT_TOL),
        kkt_residual=residual,
        updates=updates,
        cap_hit=not converged,
    )


def svm_train(
    kernel: EvolutionKernelMatrix | np.ndarray,
    labels,
    train_idx,
    c: float = 10.0,
    tol: float = KKT_TOL,
    max_updates: int = MAX_UPDATES,
) -> SvmModel:
    """Train one binary SMO problem per class present in the training labels.

    The kernel is restricted to train_idx x train_idx. Convergence is max KKT
    violation <= tol or the update cap, with the cap recorded on the machine.
    """
    if c <= 0:
        raise ValueError(f"regularization c must be positive, got {c}")
    k = kernel.k if isinstance(kernel, EvolutionKernelMatrix) else np.asarray(kernel, dtype=float)
    labels = np.asarray(labels, dtype=np.int64)
    train_idx = np.asarray(train_idx, dtype=np.int64)
    if train_idx.size == 0:
        raise TrainingError("empty training set")
    train_labels = labels[train_idx]
    classes = np.unique(train_labels)
    if len(classes) < 2:
        raise TrainingError(f"training set contains a single class ({classes.tolist()})")

    k_train = k[np.ix_(train_idx, train_idx)]
    machines = []
    for cls in classes:
        y = np.where(train_labels == cls, 1.0, -1.0)
        machine = _smo(k_train, y, float(c), tol, max_updates)
        machine.positive_class = int(cls)
        machines.append(machine)
    return SvmModel(classes=classes, machines=machines, c=float(c), train_size=len(train_idx))


def svm_predict(model: SvmModel, k_row: np.ndarray) -> int:
    """Argmax of the one-vs-rest decision values; ties go to the lowest class id."""
    k_row = np.asarray(k_row, dtype=float)
    if k_row.shape != (model.train_size,):
        raise ValueError(
            f"kernel row has length {k_row.size}, expected {model.train_size}"
        )
    values = model.decision_values(k_row)
    return int(model.classes[int(np.argmax(values))])


def svm_predict_many(model: SvmModel, k_rows: np.ndarray) -> np.ndarray:
    return np.array([svm_predict(model, row) for row in np.asarray(k_rows, dtype=float)])
