"""Exact spectral norms of circulants, certified by checkable conditions.

Three sufficient conditions give ``||C(x)||`` exactly:

* ``x >= 0``: the norm is ``sum(x)``;
* every cyclic autocorrelation ``sum_i x_i * x_[(i+j-1) mod n]`` (``j = 1..n``)
  is ``>= 0``: the norm is ``|sum(x)|``;
* for a general nonnegative matrix whose row and column sums all equal ``s``:
  the norm (and Perron root) is ``s``.

When none holds, :func:`norm_exact` falls back to the floating-point DFT and
says so in ``method``.  The literature formulas in :class:`Formula` are only
*evaluated* here; a value from them is never returned as a norm.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from . import oracle
from .circulant import (
    _dft,
    as_fraction,
    cyclic_index,
    spectral_norm_dft,
    to_float_row,
)
from .horadam import (
    FIBONACCI,
    LUCAS,
    EmptyWindowError,
    RecurrenceParams,
    _terms,
    generate,
    sum_closed_form,
)


class Method(enum.Enum):
    THM_NONNEG = "THM_NONNEG"
    THM_AUTOCORR = "THM_AUTOCORR"
    THM_EQUAL_SUMS = "THM_EQUAL_SUMS"
    DFT_NUMERIC = "DFT_NUMERIC"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class ConditionReport:
    nonnegative: bool
    autocorrelation_ok: bool
    failing_shift: int | None
    correlations: tuple[Fraction, ...]
    equal_sums: Fraction | None = None


@dataclass(frozen=True)
class NormResult:
    method: Method
    certificate: ConditionReport
    value_exact: Fraction | None = None
    value_approx: float | None = None
    error_bound: float | None = None

    @property
    def exact(self) -> bool:
        return self.value_exact is not None

    @property
    def value(self):
        return self.value_exact if self.exact else self.value_approx


def _vector(x) -> list[Fraction]:
    if hasattr(x, "first_row"):
        x = x.first_row
    v = [as_fraction(t) for t in x]
    if not v:
        raise EmptyWindowError("empty vector")
    return v


def cyclic_autocorrelations(x) -> list[Fraction]:
    """``[sum_i x_i * x_[(i+j-1) mod n] for j in 1..n]``, exactly."""
    v = _vector(x)
    n = len(v)
    return [sum(v[i] * v[cyclic_index(i + j - 1, n)] for i in range(n)) for j in range(1, n + 1)]


def check_autocorrelation(x) -> ConditionReport:
    v = _vector(x)
    corr = cyclic_autocorrelations(v)
    failing = next((j for j, c in enumerate(corr, start=1) if c < 0), None)
    return ConditionReport(
        nonnegative=all(t >= 0 for t in v),
        autocorrelation_ok=failing is None,
        failing_shift=failing,
        correlations=tuple(corr),
    )


def _common_sum(a: list[list[Fraction]]) -> Fraction:
    n = len(a)
    s = sum(a[0])
    for i in range(n):
        if sum(a[i]) != s:
            raise ValueError(f"row/column sums differ: row {i} sums to {sum(a[i])}, expected {s}")
    for j in range(n):
        col = sum(a[i][j] for i in range(n))
        if col != s:
            raise ValueError(f"row/column sums differ: column {j} sums to {col}, expected {s}")
    return s


def norm_equal_sums(a, debug_oracle: bool = False) -> NormResult:
    """Norm of a nonnegative matrix whose row and column sums are all equal."""
    rows = oracle._check_nonnegative(a)
    s = _common_sum(rows)
    if debug_oracle:
        est = oracle.perron_root(rows)
        assert math.isclose(est.max_singular, float(s), rel_tol=1e-9, abs_tol=1e-12), (
            f"Perron root {est.max_singular} disagrees with common sum {s}"
        )
    cert = ConditionReport(
        nonnegative=True,
        autocorrelation_ok=True,
        failing_shift=None,
        correlations=(),
        equal_sums=s,
    )
    return NormResult(Method.THM_EQUAL_SUMS, cert, value_exact=s)


def norm_exact(x, debug_oracle: bool = False,
               config: oracle.OracleConfig = oracle.DEFAULT_CONFIG) -> NormResult:
    """Spectral norm of ``C(x)``: exact when a certificate holds, else numeric.

    Nonnegativity is tried before the autocorrelation condition; when both
    hold they give the same value and the method names the first.
    """
    v = _vector(x)
    cert = check_autocorrelation(v)
    total = sum(v)
    if cert.nonnegative:
        result = NormResult(Method.THM_NONNEG, cert, value_exact=total)
    elif cert.autocorrelation_ok:
        result = NormResult(Method.THM_AUTOCORR, cert, value_exact=abs(total))
    else:
        spectrum = spectral_norm_dft(v)
        return NormResult(
            Method.DFT_NUMERIC,
            cert,
            value_approx=spectrum.max_singular,
            error_bound=spectrum.error_bound,
        )
    if debug_oracle and len(v) <= config.max_n:
        est = oracle.max_singular_value(v, config.tol, config.max_iter, config.max_n)
        assert math.isclose(est.max_singular, float(result.value_exact), rel_tol=1e-9, abs_tol=1e-9), (
            f"oracle {est.max_singular} disagrees with certified {result.value_exact}"
        )
    return result


def norm_horadam(params: RecurrenceParams, n: int, debug_oracle: bool = False,
                 config: oracle.OracleConfig = oracle.DEFAULT_CONFIG) -> NormResult:
    """Norm of ``C(h)`` for the window ``(h0, ..., h[n-1])``.

    A certified value is also recomputed from the partial-sum closed form and
    the two must match exactly.
    """
    window = generate(params, n)
    result = norm_exact(window.terms, debug_oracle=debug_oracle, config=config)
    if result.exact:
        closed = sum_closed_form(params, n)
        expected = closed if result.method is Method.THM_NONNEG else abs(closed)
        assert expected == result.value_exact, (
            f"closed-form sum {closed} disagrees with direct sum for {params}, n={n}"
        )
    return result


class PreconditionError(ValueError):
    """A published formula's stated hypothesis does not hold for the input."""


class Formula(enum.Enum):
    KOCER_EQ1 = "KOCER_EQ1"
    KOCER_MAX = "KOCER_MAX"
    LIU_GENERAL = "LIU_GENERAL"
    LIU_PQ1 = "LIU_PQ1"
    IPEK_FIB = "IPEK_FIB"
    IPEK_LUCAS = "IPEK_LUCAS"
    BAHSI_FIB = "BAHSI_FIB"
    BAHSI_LUCAS = "BAHSI_LUCAS"

    def __str__(self):
        return self.value


def _require(cond: bool, formula: Formula, hypothesis: str):
    if not cond:
        raise PreconditionError(f"{formula}: hypothesis '{hypothesis}' does not hold")


def formula_hypotheses(formula: Formula, params: RecurrenceParams) -> str | None:
    """The first violated hypothesis of ``formula`` at ``params``, or None."""
    try:
        _check_hypotheses(Formula(formula), params)
    except PreconditionError as exc:
        return str(exc)
    return None


def _check_hypotheses(formula: Formula, params: RecurrenceParams):
    a, b, p, q = params
    if formula is Formula.KOCER_EQ1:
        _require(p >= 1 and q >= 1, formula, "p, q >= 1")
        _require(b == 1, formula, "b = 1")
        _require(a >= 0, formula, "a >= 0")
    elif formula is Formula.LIU_GENERAL:
        _require(p + q != 1, formula, "p + q != 1")
    elif formula is Formula.LIU_PQ1:
        _require(p + q == 1, formula, "p + q = 1")
        _require(q != -1, formula, "q != -1")
    elif formula is Formula.BAHSI_FIB:
        _require(p >= 1 and q >= 1, formula, "p, q >= 1")
        _require((a, b) == (0, 1), formula, "(a, b) = (0, 1)")
    elif formula is Formula.BAHSI_LUCAS:
        _require(p >= 1 and q >= 1, formula, "p, q >= 1")
        _require((a, b) == (2, p), formula, "(a, b) = (2, p)")


def _kocer_max(params: RecurrenceParams, n: int) -> float:
    a, b, p, q = params
    h = _terms(params, n + 1)
    to_float_row(h)  # same float-range contract as the DFT
    h_n = float(h[n])
    coeff = float(p * a - b + q * h[n - 1])
    lam_direct = None
    best = 0.0
    for i in range(n):
        z = cmath.exp(-2j * math.pi * i / n)
        den = q * z * z + p * z - 1
        if abs(den) <= 1e-9:
            # singular denominator: use the direct DFT sum for this i
            if lam_direct is None:
                lam_direct = _dft(to_float_row(h[:n]))
            lam = lam_direct[(i - 1) % n]  # position k holds lam_(k+1)
        else:
            lam = (h_n + coeff * z - a) / den
        best = max(best, abs(lam))
    return best


def evaluate_published_formula(formula: Formula, params: RecurrenceParams, n: int):
    """Literal value of a literature formula for ``||C(h)||``.

    Exact :class:`~fractions.Fraction` for every formula except ``KOCER_MAX``
    (a float).  Raises :class:`PreconditionError` when the formula's stated
    hypothesis fails.  Agreement with the true norm is *not* implied.
    """
    formula = Formula(formula)
    if n < 1:
        raise EmptyWindowError()
    _check_hypotheses(formula, params)
    a, b, p, q = params
    if formula is Formula.KOCER_MAX:
        return _kocer_max(params, n)
    if formula is Formula.IPEK_FIB:
        f = _terms(FIBONACCI, n + 2)
        return Fraction(f[n + 1] - 1)
    if formula is Formula.IPEK_LUCAS:
        f = _terms(FIBONACCI, n + 3)
        return Fraction(f[n + 2] + f[n] - 1)
    h = _terms(params, n + 1)
    h_n, h_last = h[n], h[n - 1]
    if formula is Formula.KOCER_EQ1:
        return Fraction(h_n + q * h_last + (p - 1) * a - 1, p + q - 1)
    if formula is Formula.LIU_GENERAL:
        return Fraction(h_n + q * h_last + (p - 1) * a - b, p + q - 1)
    if formula is Formula.LIU_PQ1:
        return Fraction(q * h_last + (n - 1) * (q * a + b) + a, q + 1)
    if formula is Formula.BAHSI_FIB:
        return Fraction(h_n + q * h_last - 1, p + q - 1)
    return Fraction(h_n + q * h_last + p - 2, p + q - 1)


def applicable_formulas(params: RecurrenceParams) -> list[Formula]:
    """Formulas whose hypotheses hold at ``params`` and which describe ``C(h)``.

    The Ipek formulas are about the plain Fibonacci and Lucas windows, so
    they only count when ``params`` is exactly one of those.
    """
    out = []
    for formula in Formula:
        if formula is Formula.IPEK_FIB and params != FIBONACCI:
            continue
        if formula is Formula.IPEK_LUCAS and params != LUCAS:
            continue
        if formula_hypotheses(formula, params) is None:
            out.append(formula)
    return out
