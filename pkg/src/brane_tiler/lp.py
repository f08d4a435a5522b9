"""Exact two-phase simplex over the rationals (Bland's rule).

Small and dense; meant for the R-charge problems, which have a few dozen
variables.  Every result is re-checked by the caller.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Row = list[Fraction]


class LPInfeasible(Exception):
    pass


class LPUnbounded(Exception):
    pass


def _pivot(tab: list[Row], basis: list[int], r: int, j: int) -> None:
    piv = tab[r][j]
    tab[r] = [x / piv for x in tab[r]]
    for i, row in enumerate(tab):
        if i != r and row[j] != 0:
            f = row[j]
            tab[i] = [a - f * b for a, b in zip(row, tab[r])]
    basis[r] = j


def _optimize(tab: list[Row], basis: list[int], allowed: int) -> None:
    """Run simplex iterations; the last row of ``tab`` is the objective row
    ``z - c.x`` and only the first ``allowed`` columns may enter."""
    while True:
        z = tab[-1]
        entering = next((j for j in range(allowed) if z[j] < 0), None)
        if entering is None:
            return
        best = None
        for i in range(len(tab) - 1):
            a = tab[i][entering]
            if a > 0:
                key = (tab[i][-1] / a, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            raise LPUnbounded("objective is unbounded")
        _pivot(tab, basis, best[1], entering)


def maximize(
    c: Sequence[int | Fraction],
    a_eq: Sequence[Sequence[int | Fraction]] = (),
    b_eq: Sequence[int | Fraction] = (),
    a_ub: Sequence[Sequence[int | Fraction]] = (),
    b_ub: Sequence[int | Fraction] = (),
) -> tuple[Fraction, list[Fraction]]:
    """Maximize ``c.x`` subject to ``a_eq x = b_eq``, ``a_ub x <= b_ub`` and
    ``x >= 0``.  Returns ``(value, x)``."""
    n = len(c)
    n_ub = len(a_ub)
    width = n + n_ub
    rows: list[Row] = []
    for k, (row, rhs) in enumerate(zip(a_ub, b_ub)):
        slack = [Fraction(0)] * n_ub
        slack[k] = Fraction(1)
        rows.append([Fraction(x) for x in row] + slack + [Fraction(rhs)])
    for row, rhs in zip(a_eq, b_eq):
        rows.append([Fraction(x) for x in row] + [Fraction(0)] * n_ub + [Fraction(rhs)])
    rows = [r if r[-1] >= 0 else [-x for x in r] for r in rows]
    m = len(rows)

    # phase 1: one artificial per row
    tab = []
    for i, r in enumerate(rows):
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        tab.append(r[:-1] + art + [r[-1]])
    z = [Fraction(0)] * width + [Fraction(1)] * m + [Fraction(0)]
    for r in tab:
        z = [a - b for a, b in zip(z, r)]
    tab.append(z)
    basis = list(range(width, width + m))
    _optimize(tab, basis, width + m)
    if tab[-1][-1] != 0:
        raise LPInfeasible("constraints are infeasible")

    # drive remaining artificials out, dropping redundant rows
    keep = []
    for i in range(m):
        if basis[i] >= width:
            j = next((j for j in range(width) if tab[i][j] != 0), None)
            if j is None:
                continue
            _pivot(tab, basis, i, j)
        keep.append(i)
    tab = [tab[i][:width] + [tab[i][-1]] for i in keep]
    basis = [basis[i] for i in keep]

    # phase 2
    z = [-Fraction(x) for x in c] + [Fraction(0)] * n_ub + [Fraction(0)]
    for i, b in enumerate(basis):
        if z[b] != 0:
            f = z[b]
            z = [a - f * x for a, x in zip(z, tab[i])]
    tab.append(z)
    _optimize(tab, basis, width)

    x = [Fraction(0)] * width
    for i, b in enumerate(basis):
        x[b] = tab[i][-1]
    return tab[-1][-1], x[:n]
