"""Circulant matrices given by their first row.

Row ``k`` of ``C(x)`` is the first row shifted ``k`` places to the right, so
``C[k][j] = x[(j - k) mod n]``.  The eigenvalues are the DFT values
``lam_i = sum_j x_j * w**(-i*j)`` with ``w = exp(2*pi*1j/n)``; since ``C`` is
normal, the singular values are their moduli.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

FLOAT_EXACT_LIMIT = 2**53
# error_bound = DFT_ERROR_CONSTANT * n**2 * eps * max|x_j|
DFT_ERROR_CONSTANT = 4.0
_ROW_BLOCK = 256


class FloatRangeError(ValueError):
    """An entry is too large to be converted to a double without rounding."""

    def __init__(self, message: str = "entries exceed float-exact range; use exact path"):
        super().__init__(message)


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float) and not math.isfinite(value):
        raise ValueError(f"non-finite entry {value!r}")
    return Fraction(value)


@dataclass(frozen=True)
class CirculantSpec:
    first_row: tuple[Fraction, ...]

    def __init__(self, first_row):
        row = tuple(as_fraction(v) for v in first_row)
        if not row:
            raise ValueError("circulant needs at least one entry")
        object.__setattr__(self, "first_row", row)

    @property
    def n(self) -> int:
        return len(self.first_row)

    def __len__(self):
        return len(self.first_row)

    def __neg__(self):
        return CirculantSpec(-v for v in self.first_row)


def _spec(x) -> CirculantSpec:
    return x if isinstance(x, CirculantSpec) else CirculantSpec(x)


@dataclass(frozen=True)
class ComplexApprox:
    re: float
    im: float

    def __complex__(self):
        return complex(self.re, self.im)

    def __abs__(self):
        return math.hypot(self.re, self.im)


@dataclass(frozen=True)
class SpectrumApprox:
    eigenvalues: tuple[ComplexApprox, ...]
    singular_values: tuple[float, ...]
    max_singular: float
    error_bound: float


def cyclic_index(m: int, n: int) -> int:
    """Floored remainder ``m - floor(m/n)*n``, always in ``[0, n)``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return m - (m // n) * n


def materialize(spec) -> list[list[Fraction]]:
    x = _spec(spec).first_row
    n = len(x)
    return [[x[cyclic_index(j - k, n)] for j in range(n)] for k in range(n)]


def matvec(spec, v) -> list[Fraction]:
    x = _spec(spec).first_row
    n = len(x)
    v = [as_fraction(t) for t in v]
    if len(v) != n:
        raise ValueError(f"dimension mismatch: matrix is {n}x{n}, vector has length {len(v)}")
    return [sum(x[cyclic_index(j - k, n)] * v[j] for j in range(n)) for k in range(n)]


def to_float_row(spec) -> np.ndarray:
    """First row as doubles; refuses magnitudes above 2**53."""
    x = _spec(spec).first_row
    if any(abs(v) > FLOAT_EXACT_LIMIT for v in x):
        raise FloatRangeError()
    return np.array([float(v) for v in x], dtype=np.float64)


def _dft(xf: np.ndarray) -> np.ndarray:
    # O(n^2) direct sum; powers reduced mod n before taking cos/sin to keep
    # every root accurate to one rounding.
    n = len(xf)
    k = np.arange(n)
    roots = np.exp(-2j * np.pi * k / n)  # w**(-k)
    i = np.arange(1, n + 1)
    out = np.empty(n, dtype=np.complex128)
    for start in range(0, n, _ROW_BLOCK):
        rows = i[start:start + _ROW_BLOCK]
        idx = (rows[:, None] * k[None, :]) % n
        out[start:start + _ROW_BLOCK] = roots[idx] @ xf
    return out


def eigenvalues_dft(spec) -> list[ComplexApprox]:
    """Eigenvalues in the order ``lam_1, ..., lam_n``; the last one is the row sum."""
    xf = to_float_row(spec)
    return [ComplexApprox(float(z.real), float(z.imag)) for z in _dft(xf)]


def dft_error_bound(n: int, max_abs: float) -> float:
    return DFT_ERROR_CONSTANT * n * n * sys.float_info.epsilon * max_abs


def spectral_norm_dft(spec) -> SpectrumApprox:
    xf = to_float_row(spec)
    lam = _dft(xf)
    sing = np.abs(lam)
    max_abs = float(np.max(np.abs(xf)))
    return SpectrumApprox(
        eigenvalues=tuple(ComplexApprox(float(z.real), float(z.imag)) for z in lam),
        singular_values=tuple(float(s) for s in sing),
        max_singular=float(np.max(sing)),
        error_bound=dft_error_bound(len(xf), max_abs),
    )
