"""Locating indifference points along mixture lines.

Both the continuity checks and the elicitation procedures reduce to one
problem: given a monotone family of comparisons ``v(lam)`` in
``{-1, 0, +1}``, find the ``lam`` where the verdict is ``0``. The oracle's
indifference band has positive width, so the search brackets both edges
of the band and returns its centre. For a linear oracle the band is
symmetric about the exact root.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

Verdict = Callable[[float], int]


@dataclass(frozen=True)
class Band:
    """Indifference band ``[left, right]`` with ``centre`` the reported point."""

    left: float
    right: float
    queries: int

    @property
    def centre(self) -> float:
        return 0.5 * (self.left + self.right)


def _midpoint(a: float, b: float) -> float | None:
    m = 0.5 * (a + b)
    if m <= min(a, b) or m >= max(a, b):
        return None
    return m


def _edge(verdict: Verdict, outside: float, inside: float, tol: float, counter: list[int]) -> float:
    """Shrink ``[outside, inside]`` towards the first indifferent point."""
    while abs(inside - outside) > tol:
        m = _midpoint(outside, inside)
        if m is None:
            break
        counter[0] += 1
        if verdict(m) == 0:
            inside = m
        else:
            outside = m
    return inside


def find_indifference(
    verdict: Verdict,
    lo: float = 0.0,
    hi: float = 1.0,
    tol: float = 0.0,
    v_lo: int | None = None,
    v_hi: int | None = None,
) -> Band | None:
    """Bisect for the indifference band of ``verdict`` on ``[lo, hi]``.

    Args:
        verdict: comparison outcome at a mixture weight; must change sign at
            most once on the interval.
        lo, hi: bracket.
        tol: width at which each edge search stops; ``0`` runs to float
            resolution.
        v_lo, v_hi: verdicts at the endpoints if already known.

    Returns:
        The band, or ``None`` when the endpoints do not straddle an
        indifference point or when the bracket collapses without ever
        producing one (a strict jump: the closedness property fails).
    """
    counter = [0]
    if v_lo is None:
        counter[0] += 1
        v_lo = verdict(lo)
    if v_hi is None:
        counter[0] += 1
        v_hi = verdict(hi)
    if v_lo == 0 and v_hi == 0:
        return Band(lo, hi, counter[0])
    if v_lo == 0:
        return Band(lo, _edge(verdict, hi, lo, tol, counter), counter[0])
    if v_hi == 0:
        return Band(_edge(verdict, lo, hi, tol, counter), hi, counter[0])
    if v_lo == v_hi:
        return None
    a, b, m, q = locate_switch(verdict, lo, hi, v_lo)
    counter[0] += q
    if m is None:
        return None
    left = _edge(verdict, a, m, tol, counter)
    right = _edge(verdict, b, m, tol, counter)
    return Band(left, right, counter[0])


def locate_switch(verdict: Verdict, lo: float, hi: float, v_lo: int) -> tuple[float, float, float | None, int]:
    """Bisect a strict sign change until an indifferent point appears.

    Returns ``(a, b, m, queries)``: ``m`` is the indifferent point, or ``None``
    when ``[a, b]`` shrank to adjacent floats with strict verdicts of opposite
    sign at its ends.
    """
    a, b, q = lo, hi, 0
    while True:
        m = _midpoint(a, b)
        if m is None:
            return a, b, None, q
        q += 1
        v = verdict(m)
        if v == 0:
            return a, b, m, q
        if v == v_lo:
            a = m
        else:
            b = m


def linear_root(f_lo: float, f_hi: float, lo: float = 0.0, hi: float = 1.0) -> float | None:
    """Root of the affine function through ``(lo, f_lo)`` and ``(hi, f_hi)``."""
    if not (math.isfinite(f_lo) and math.isfinite(f_hi)) or f_lo == f_hi:
        return None
    lam = lo + (hi - lo) * f_lo / (f_lo - f_hi)
    if not lo <= lam <= hi:
        return None
    return lam
