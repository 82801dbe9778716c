"""Exact phase-one simplex over the rationals (Bland's rule).

Only feasibility of ``A x = b, x >= 0`` is needed here.  A feasible point or a
Farkas certificate ``y`` (``y^T A <= 0`` and ``y^T b > 0``) is returned, and
both are checked by substitution before they leave this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence


@dataclass(frozen=True)
class FeasibilityResult:
    x: Optional[tuple[Fraction, ...]]
    farkas: Optional[tuple[Fraction, ...]]
    pivots: int

    @property
    def feasible(self) -> bool:
        return self.x is not None


def check_point(a, b, x) -> bool:
    if any(v < 0 for v in x):
        return False
    return all(sum(r[j] * x[j] for j in range(len(x)) if r[j]) == bi for r, bi in zip(a, b))


def check_farkas(a, b, y) -> bool:
    ncols = len(a[0]) if a else 0
    if sum(yi * bi for yi, bi in zip(y, b)) <= 0:
        return False
    return all(sum(y[i] * a[i][j] for i in range(len(a))) <= 0 for j in range(ncols))


def find_feasible(a: Sequence[Sequence[int]], b: Sequence[int], max_pivots: int = 100_000) -> FeasibilityResult:
    """Phase one on an integer tableau with a common denominator.

    Every tableau entry is an integer; the true value is entry / ``den``.
    Pivoting on (r, c) replaces each other row by (row * p - row[c] * prow) / den,
    which divides exactly (the Bareiss identity), and ``den`` becomes p.
    """
    m = len(a)
    ncols = len(a[0]) if m else 0
    sigma = [(-1 if bi < 0 else 1) for bi in b]
    width = ncols + m + 1
    tab = []
    for i in range(m):
        row = [sigma[i] * int(v) for v in a[i]] + [0] * m + [sigma[i] * int(b[i])]
        row[ncols + i] = 1
        tab.append(row)
    basis = [ncols + i for i in range(m)]
    # phase-one costs: 1 on each artificial; reduced cost r_j = c_j - sum_i tab[i][j]
    obj = [0] * width
    for j in range(width):
        if j < ncols or j == width - 1:
            obj[j] = -sum(tab[i][j] for i in range(m))
    den = 1
    pivots = 0
    while True:
        enter = next((j for j in range(width - 1) if obj[j] < 0), None)
        if enter is None:
            break
        leave = None
        for i in range(m):
            aij = tab[i][enter]
            if aij > 0:
                if leave is None:
                    leave = i
                    continue
                # compare rhs_i / aij against rhs_leave / a_leave
                lhs = tab[i][-1] * tab[leave][enter]
                rhs = tab[leave][-1] * aij
                if lhs < rhs or (lhs == rhs and basis[i] < basis[leave]):
                    leave = i
        if leave is None:
            raise RuntimeError("phase-one objective unbounded; this cannot happen")
        den = _pivot(tab, obj, leave, enter, den)
        basis[leave] = enter
        pivots += 1
        if pivots > max_pivots:
            raise RuntimeError("simplex pivot limit exceeded")
    if obj[-1] == 0:
        x = [Fraction(0)] * ncols
        for i, j in enumerate(basis):
            if j < ncols:
                x[j] = Fraction(tab[i][-1], den)
        x = tuple(x)
        assert check_point(a, b, x), "simplex returned a point that fails substitution"
        return FeasibilityResult(x, None, pivots)
    # duals of the sign-normalised rows: y'_i = 1 - (reduced cost of artificial i)
    y = tuple(sigma[i] * (1 - Fraction(obj[ncols + i], den)) for i in range(m))
    assert check_farkas(a, b, y), "simplex returned an invalid infeasibility certificate"
    return FeasibilityResult(None, y, pivots)


def _pivot(tab, obj, r, c, den):
    prow = tab[r]
    p = prow[c]
    for i, row in enumerate(tab):
        if i != r:
            f = row[c]
            if f:
                row[:] = [(x * p - f * y) // den for x, y in zip(row, prow)]
            elif p != den:
                row[:] = [x * p // den for x in row]
    f = obj[c]
    obj[:] = [(x * p - f * y) // den for x, y in zip(obj, prow)]
    return p
