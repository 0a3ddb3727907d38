"""Exact Horadam sequences and their partial sums.

A Horadam sequence ``h(a, b; p, q)`` starts ``h0 = a, h1 = b`` and continues
with ``h[k] = p*h[k-1] + q*h[k-2]``.  Everything here uses Python integers,
so windows of any length are exact.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass


class EmptyWindowError(ValueError):
    """Raised when a window of length 0 is requested."""

    def __init__(self, message: str = "empty window"):
        super().__init__(message)


@dataclass(frozen=True)
class RecurrenceParams:
    a: int
    b: int
    p: int
    q: int

    def __post_init__(self):
        for name in ("a", "b", "p", "q"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise TypeError(f"{name} must be an int, got {value!r}")

    def __iter__(self):
        return iter((self.a, self.b, self.p, self.q))


FIBONACCI = RecurrenceParams(0, 1, 1, 1)
LUCAS = RecurrenceParams(2, 1, 1, 1)


@dataclass(frozen=True)
class SequenceWindow:
    """The first ``n`` terms ``(h0, ..., h[n-1])`` of a Horadam sequence."""

    params: RecurrenceParams
    terms: tuple[int, ...]

    def __post_init__(self):
        if not self.terms:
            raise EmptyWindowError()
        if self.terms[0] != self.params.a:
            raise ValueError("terms[0] must equal a")
        if len(self.terms) > 1 and self.terms[1] != self.params.b:
            raise ValueError("terms[1] must equal b")

    def __len__(self):
        return len(self.terms)

    def __getitem__(self, i):
        return self.terms[i]

    def __iter__(self):
        return iter(self.terms)


def _terms(params: RecurrenceParams, n: int) -> list[int]:
    if n < 1:
        raise EmptyWindowError()
    a, b, p, q = params
    out = [a, b][:n]
    prev2, prev1 = a, b
    for _ in range(2, n):
        prev2, prev1 = prev1, p * prev1 + q * prev2
        out.append(prev1)
    return out


def generate(params: RecurrenceParams, n: int) -> SequenceWindow:
    """Return the exact window ``(h0, ..., h[n-1])``.

    >>> generate(FIBONACCI, 5).terms
    (0, 1, 1, 2, 3)
    """
    return SequenceWindow(params, tuple(_terms(params, n)))


class SequenceKind(enum.Enum):
    FIBONACCI = "fibonacci"
    GEN_FIBONACCI = "gen_fibonacci"
    LUCAS = "lucas"
    GEN_LUCAS = "gen_lucas"


def named_params(kind: SequenceKind, p: int | None = None, q: int | None = None) -> RecurrenceParams:
    kind = SequenceKind(kind)
    if kind is SequenceKind.FIBONACCI:
        return FIBONACCI
    if kind is SequenceKind.LUCAS:
        return LUCAS
    if p is None or q is None:
        raise ValueError(f"{kind.value} needs both p and q")
    if kind is SequenceKind.GEN_FIBONACCI:
        return RecurrenceParams(0, 1, p, q)
    return RecurrenceParams(2, p, p, q)


def named_sequence(kind: SequenceKind, n: int, p: int | None = None, q: int | None = None) -> SequenceWindow:
    """Fibonacci ``(0,1;1,1)``, Lucas ``(2,1;1,1)`` or their ``(p, q)`` generalizations
    ``(0,1;p,q)`` and ``(2,p;p,q)``."""
    return generate(named_params(kind, p, q), n)


def lemma_branch(p: int, q: int) -> int:
    """Which partial-sum formula applies to ``(p, q)``: 1, 2 or 3.

    The three cases ``p+q != 1``, ``p+q == 1 and p != 2`` and ``(p, q) == (2, -1)``
    partition the integer plane.
    """
    if p + q != 1:
        return 1
    if p != 2:
        return 2
    return 3


BRANCH_LABELS = {
    1: "p+q != 1",
    2: "p+q = 1, p != 2",
    3: "p=2, q=-1 arithmetic",
}


def _exact_div(num: int, den: int) -> int:
    quotient, remainder = divmod(num, den)
    assert remainder == 0, f"non-exact division {num}/{den} in partial-sum formula"
    return quotient


def sum_closed_form(params: RecurrenceParams, n: int) -> int:
    """``h0 + ... + h[n-1]`` from the closed forms, without adding the terms."""
    if n < 1:
        raise EmptyWindowError()
    a, b, p, q = params
    terms = _terms(params, n + 1)
    h_n, h_last = terms[n], terms[n - 1]
    branch = lemma_branch(p, q)
    if branch == 1:
        return _exact_div(h_n + q * h_last + (p - 1) * a - b, p + q - 1)
    if branch == 2:
        return _exact_div(q * h_last + (n - 1) * (q * a + b) + a, q + 1)
    return _exact_div(n * (h_last + a), 2)


def sum_direct(window) -> int:
    terms = list(window)
    if not terms:
        raise EmptyWindowError()
    return sum(terms)
