"""Numerical ground truth for the closed forms.

``max_singular_value`` runs power iteration on the Gram matrix ``B = C^T C``
and ``perron_root`` on a nonnegative matrix.  Neither looks at the DFT, so
both can be compared against :mod:`circnorm.circulant` independently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .circulant import CirculantSpec, _spec, as_fraction, materialize, to_float_row


@dataclass(frozen=True)
class OracleConfig:
    tol: float = 1e-12
    max_iter: int = 200_000
    max_n: int = 512


DEFAULT_CONFIG = OracleConfig()


@dataclass(frozen=True)
class OracleResult:
    max_singular: float
    iterations: int
    converged: bool
    residual: float


def gram_matrix(spec) -> list[list[Fraction]]:
    """``C^T C`` computed exactly from the dense circulant."""
    c = materialize(spec)
    n = len(c)
    return [[sum(c[r][k] * c[r][j] for r in range(n)) for j in range(n)] for k in range(n)]


@dataclass
class _Run:
    rho: float
    iterations: int
    converged: bool
    residual: float


def _power(apply, v0: np.ndarray, tol: float, max_iter: int) -> _Run:
    # Terminates on the eigen-residual ||Bv - rho v|| / ||Bv||, which is zero
    # after one step when the start vector is already an eigenvector.
    v = v0 / np.linalg.norm(v0)
    rho, residual = 0.0, math.inf
    for it in range(1, max_iter + 1):
        w = apply(v)
        rho = float(v @ w)
        w_norm = float(np.linalg.norm(w))
        if w_norm == 0.0:
            return _Run(0.0, it, True, 0.0)
        residual = float(np.linalg.norm(w - rho * v)) / w_norm
        if residual < tol:
            return _Run(rho, it, True, residual)
        v = w / w_norm
    return _Run(rho, max_iter, False, residual)


def max_singular_value(spec, tol: float = DEFAULT_CONFIG.tol,
                       max_iter: int = DEFAULT_CONFIG.max_iter,
                       max_n: int = DEFAULT_CONFIG.max_n) -> OracleResult:
    """Largest singular value of ``C(x)`` by power iteration on ``C^T C``.

    The first run starts from the all-ones vector.  For a circulant that
    vector is always an eigenvector of ``C^T C`` (eigenvalue ``(sum x)^2``),
    so whenever the first run stops after a single step, or settles below the
    Frobenius bound ``||C||_F^2 / n``, the iteration is restarted from
    ``(1, 2, ..., n)``, which has a nonzero component in every Fourier mode.
    The larger Rayleigh quotient of the two runs is reported.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    spec = _spec(spec)
    n = spec.n
    if n > max_n:
        raise ValueError(f"oracle size cap exceeded: n={n} > {max_n}")
    xf = to_float_row(spec)
    if not np.any(xf):
        return OracleResult(0.0, 1, True, 0.0)
    c = np.array([[xf[(j - k) % n] for j in range(n)] for k in range(n)])

    def apply(v):
        return c.T @ (c @ v)

    run = _power(apply, np.ones(n), tol, max_iter)
    frobenius_bound = float(xf @ xf)
    total = run.iterations
    if n > 1 and (run.iterations == 1 or run.rho < frobenius_bound * (1 - tol)):
        second = _power(apply, np.arange(1, n + 1, dtype=np.float64), tol, max_iter)
        total += second.iterations
        if second.rho > run.rho or not run.converged:
            run = second
    return OracleResult(math.sqrt(max(run.rho, 0.0)), total, run.converged, run.residual)


def _check_nonnegative(rows) -> list[list[Fraction]]:
    a = [[as_fraction(v) for v in row] for row in rows]
    n = len(a)
    if n == 0 or any(len(row) != n for row in a):
        raise ValueError("matrix must be square and nonempty")
    for i, row in enumerate(a):
        for j, v in enumerate(row):
            if v < 0:
                raise ValueError(f"not entrywise nonnegative: entry ({i}, {j}) = {v}")
    return a


def perron_root(a, tol: float = DEFAULT_CONFIG.tol,
                max_iter: int = DEFAULT_CONFIG.max_iter) -> OracleResult:
    """Dominant eigenvalue of a nonnegative square matrix.

    Iterates with ``A + I`` from the all-ones vector; the shift keeps
    imprimitive matrices such as permutations from oscillating and does not
    move the eigenvector.  ``max_singular`` holds the eigenvalue estimate.
    """
    a = _check_nonnegative(a)
    n = len(a)
    af = np.array([[float(v) for v in row] for row in a])
    shifted = af + np.eye(n)
    run = _power(lambda v: shifted @ v, np.ones(n), tol, max_iter)
    return OracleResult(max(run.rho - 1.0, 0.0), run.iterations, run.converged, run.residual)


__all__ = [
    "CirculantSpec",
    "OracleConfig",
    "OracleResult",
    "gram_matrix",
    "max_singular_value",
    "perron_root",
]
