"""R-charges and the consistency class of a tiling.

An R-charge assigns each arrow a value in (0, 1] (consistent) or (0, 1)
(geometrically consistent) so that every face sums to 2 and, at every
vertex, ``sum(1 - R_a)`` over arrow endpoints is 2.  The strict bounds are
handled by maximizing a margin ``eps`` with an exact rational simplex.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Mapping

from .errors import InfeasibleError
from .lp import LPInfeasible, maximize
from .tiling import DualQuiver

Mode = Literal["consistent", "geometric"]


@dataclass(frozen=True)
class RCharge:
    values: Mapping[str, Fraction]
    epsilon: Fraction
    mode: Mode


def _endpoint_count(q: DualQuiver, arrow: str, vertex: str) -> int:
    return (q.source[arrow] == vertex) + (q.target[arrow] == vertex)


def find_r_charge(q: DualQuiver, mode: Mode = "geometric") -> RCharge:
    """Exact R-charge maximizing the distance to the open bounds.

    Raises :class:`InfeasibleError` when no R-charge exists in ``mode``.
    """
    if mode not in ("consistent", "geometric"):
        raise ValueError(f"unknown mode {mode!r}")
    n = len(q.arrows)
    index = {a: k for k, a in enumerate(q.arrows)}
    # columns: one R per arrow, then eps; all nonnegative
    a_eq, b_eq = [], []
    for cyc in q.faces.values():
        row = [0] * (n + 1)
        for a in cyc:
            row[index[a]] += 1
        a_eq.append(row)
        b_eq.append(2)
    for v in q.vertices:
        row = [0] * (n + 1)
        ends = 0
        for a in q.arrows:
            c = _endpoint_count(q, a, v)
            row[index[a]] -= c
            ends += c
        a_eq.append(row)
        b_eq.append(2 - ends)
    a_ub, b_ub = [], []
    for a in q.arrows:
        low = [0] * (n + 1)
        low[index[a]], low[n] = -1, 1
        high = [0] * (n + 1)
        high[index[a]] = 1
        if mode == "geometric":
            high[n] = 1
        a_ub += [low, high]
        b_ub += [0, 1]
    try:
        epsilon, x = maximize([0] * n + [1], a_eq, b_eq, a_ub, b_ub)
    except LPInfeasible:
        raise InfeasibleError(f"no R-charge exists ({mode} mode)") from None
    if epsilon <= 0:
        raise InfeasibleError(
            f"no R-charge exists ({mode} mode): best margin is {epsilon}"
        )
    values = {a: x[index[a]] for a in q.arrows}
    charge = RCharge(values, epsilon, mode)
    check_r_charge(q, values, mode)
    return charge


def check_r_charge(q: DualQuiver, values: Mapping[str, Fraction], mode: Mode = "geometric") -> Fraction:
    """Verify an R-charge exactly and return its margin.

    The margin is ``min R_a`` (and also ``1 - max R_a`` in geometric mode);
    a :class:`InfeasibleError` is raised if an equation fails or the margin
    is not positive.
    """
    for fid, cyc in q.faces.items():
        total = sum((Fraction(values[a]) for a in cyc), Fraction(0))
        if total != 2:
            raise InfeasibleError(f"face {fid!r} sums to {total}, not 2")
    for v in q.vertices:
        total = sum(
            (_endpoint_count(q, a, v) * (1 - Fraction(values[a])) for a in q.arrows),
            Fraction(0),
        )
        if total != 2:
            raise InfeasibleError(f"vertex {v!r}: sum of (1 - R) is {total}, not 2")
    low = min(Fraction(x) for x in values.values())
    high = max(Fraction(x) for x in values.values())
    if high > 1:
        raise InfeasibleError(f"R-charge exceeds 1 ({high})")
    margin = min(low, 1 - high) if mode == "geometric" else low
    if margin <= 0:
        raise InfeasibleError(f"R-charge margin {margin} is not positive ({mode} mode)")
    # summing the face equations gives sum(R) = |Q2|
    assert sum(Fraction(x) for x in values.values()) == len(q.faces)
    return margin


def consistency_class(q: DualQuiver) -> str:
    """``"geometric"``, ``"consistent-only"`` or ``"inconsistent"``."""
    try:
        find_r_charge(q, "geometric")
        return "geometric"
    except InfeasibleError:
        pass
    try:
        find_r_charge(q, "consistent")
        return "consistent-only"
    except InfeasibleError:
        return "inconsistent"
