"""Linear support vector machine trained by dual coordinate descent.

Solves, for labels y in {-1, +1} and an intercept handled through an
augmented constant column:

    min_w  0.5 ||w||^2 + (C / n) * sum_i max(0, 1 - y_i w.x_i)

The hinge term is averaged, not summed, so the objective (and therefore the
solution) is invariant to duplicating the training set.  The dual problem is
box-constrained with alpha_i in [0, C/n]; coordinates are visited in seeded
random permutations, which makes training deterministic for a fixed seed.
Convergence is declared when the relative duality gap falls below ``tol``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["LinearSVMResult", "ConvergenceError", "train_linear_svm"]


class ConvergenceError(RuntimeError):
    """Solver hit the epoch budget before the duality gap closed."""

    def __init__(self, gap: float, epochs: int):
        super().__init__(
            f"dual coordinate descent did not converge in {epochs} epochs "
            f"(final duality gap {gap:.3e})"
        )
        self.gap = gap
        self.epochs = epochs


@dataclass(frozen=True)
class LinearSVMResult:
    weights: np.ndarray
    intercept: float
    duality_gap: float
    epochs: int
    cost: float


def _objectives(
    X: np.ndarray, y: np.ndarray, w: np.ndarray, alpha: np.ndarray, box: float
) -> tuple[float, float]:
    margins = 1.0 - y * (X @ w)
    hinge = np.maximum(margins, 0.0).sum()
    primal = 0.5 * float(w @ w) + box * hinge
    dual = float(alpha.sum()) - 0.5 * float(w @ w)
    return primal, dual


def train_linear_svm(
    X: np.ndarray,
    y: np.ndarray,
    cost: float = 1.0,
    *,
    seed: int = 0,
    tol: float = 1e-6,
    max_epochs: int = 1000,
    fit_intercept: bool = True,
) -> LinearSVMResult:
    """Train the SVM and report the final duality gap.

    X is (n, d) float, y is (n,) in {-1, +1}.  Raises ConvergenceError when
    the relative duality gap is still above ``tol`` after ``max_epochs``
    passes over the data.
    """
    X = np.ascontiguousarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    n, d = X.shape
    if y.shape != (n,):
        raise ValueError(f"labels shape {y.shape} does not match {n} rows")
    if not np.all(np.isin(y, (-1.0, 1.0))):
        raise ValueError("labels must be -1 or +1")
    if cost <= 0:
        raise ValueError(f"cost must be positive, got {cost}")

    if fit_intercept:
        X = np.hstack([X, np.ones((n, 1))])

    box = cost / n
    qdiag = np.einsum("ij,ij->i", X, X)
    qdiag = np.where(qdiag > 0, qdiag, 1.0)
    alpha = np.zeros(n)
    w = np.zeros(X.shape[1])
    rng = np.random.default_rng(seed)

    gap = np.inf
    epochs_run = 0
    for epoch in range(max_epochs):
        epochs_run = epoch + 1
        for i in rng.permutation(n):
            grad = y[i] * float(X[i] @ w) - 1.0
            old = alpha[i]
            new = min(max(old - grad / qdiag[i], 0.0), box)
            if new != old:
                w += (new - old) * y[i] * X[i]
                alpha[i] = new
        primal, dual = _objectives(X, y, w, alpha, box)
        gap = primal - dual
        if gap <= tol * max(1.0, abs(primal)):
            break
    else:
        raise ConvergenceError(gap, epochs_run)

    if fit_intercept:
        return LinearSVMResult(
            weights=w[:-1].copy(),
            intercept=float(w[-1]),
            duality_gap=float(gap),
            epochs=epochs_run,
            cost=cost,
        )
    return LinearSVMResult(
        weights=w.copy(), intercept=0.0, duality_gap=float(gap), epochs=epochs_run, cost=cost
    )
