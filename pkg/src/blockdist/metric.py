"""Finite integral metrics: cuts, products, negative type, hypermetric search, l1.

Quadratic forms are always the ordered-pair sum
``sum_x sum_y w(x) w(y) d(x, y)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from functools import reduce
from math import gcd, lcm
from typing import Optional, Sequence

import numpy as np

from .graph import Graph, distance_matrix
from .linalg import IntMatrix, Inertia, char_poly, inertia_from_charpoly
from .simplex import find_feasible

__all__ = [
    "Metric",
    "MetricError",
    "SearchTooLarge",
    "Witness",
    "CutDecomposition",
    "HierarchyReport",
    "quadratic_form",
    "cut_semimetric",
    "direct_product",
    "gram_matrix",
    "is_negative_type",
    "hypermetric_falsify",
    "l1_decompose",
    "hierarchy_report",
]

L1_MAX_N = 12
HYPER_BOUND = 3
HYPER_MAX_CANDIDATES = 20_000_000


class MetricError(ValueError):
    pass


class SearchTooLarge(RuntimeError):
    """A bounded search or LP was refused because it exceeds its size cap."""


@dataclass(frozen=True)
class Metric:
    """Integral metric on points 0..n-1 (validated on construction)."""

    d: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.d)
        for i, row in enumerate(self.d):
            if len(row) != n:
                raise MetricError("distance matrix must be square")
            for j, x in enumerate(row):
                if not isinstance(x, int):
                    raise MetricError(f"d({i},{j}) = {x!r} is not an integer")
                if x != self.d[j][i]:
                    raise MetricError(f"d({i},{j}) != d({j},{i})")
                if (x == 0) != (i == j):
                    raise MetricError(f"d({i},{j}) = {x} violates d(i,j) = 0 iff i = j")
                if x < 0:
                    raise MetricError(f"negative distance d({i},{j})")
        for i in range(n):
            for j in range(n):
                dij = self.d[i][j]
                for k in range(n):
                    if self.d[i][k] > dij + self.d[j][k]:
                        raise MetricError(f"triangle inequality fails at ({i},{j},{k})")

    @classmethod
    def from_rows(cls, rows) -> "Metric":
        return cls(tuple(tuple(int(x) for x in r) for r in rows))

    @classmethod
    def from_graph(cls, g: Graph) -> "Metric":
        return cls(distance_matrix(g).rows)

    @property
    def n(self) -> int:
        return len(self.d)

    def matrix(self) -> IntMatrix:
        return IntMatrix(self.d)


def quadratic_form(d: Sequence[Sequence[int]], w: Sequence[int]) -> int:
    n = len(w)
    return sum(w[x] * w[y] * d[x][y] for x in range(n) if w[x] for y in range(n) if w[y])


@dataclass(frozen=True)
class Witness:
    """Integer weights violating the negative-type (sum 0) or hypermetric (sum 1) inequality."""

    w: tuple[int, ...]
    value: int
    kind: str  # "negative_type_violation" | "hypermetric_violation"

    def verify(self, m: Metric) -> bool:
        target = 0 if self.kind == "negative_type_violation" else 1
        return (
            sum(self.w) == target
            and self.value > 0
            and quadratic_form(m.d, self.w) == self.value
        )


def cut_semimetric(n: int, s) -> tuple[tuple[int, ...], ...]:
    """delta_S as a 0/1 matrix; S must be a nonempty proper subset of 0..n-1."""
    s = frozenset(s)
    if not s or len(s) >= n or not s <= set(range(n)):
        raise MetricError("S must be a nonempty proper subset of the points")
    return tuple(tuple(int((i in s) != (j in s)) for j in range(n)) for i in range(n))


def direct_product(m1: Metric, m2: Metric) -> Metric:
    """d((x1,x2),(y1,y2)) = d1(x1,y1) + d2(x2,y2); point (a, b) is a * n2 + b."""
    n1, n2 = m1.n, m2.n
    rows = []
    for a in range(n1):
        for b in range(n2):
            rows.append(
                tuple(m1.d[a][c] + m2.d[b][e] for c in range(n1) for e in range(n2))
            )
    return Metric(tuple(rows))


@dataclass(frozen=True)
class CutDecomposition:
    """d = sum_S a_S delta_S, with every S a nonempty subset avoiding point 0."""

    n: int
    coefficients: dict = field(hash=False)

    def matrix(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.n for _ in range(self.n)]
        for s, a in self.coefficients.items():
            for i in range(self.n):
                for j in range(self.n):
                    if (i in s) != (j in s):
                        out[i][j] += a
        return out

    def verify(self, m: Metric) -> bool:
        if any(a < 0 for a in self.coefficients.values()):
            return False
        if any(0 in s or not s for s in self.coefficients):
            return False
        return self.matrix() == [[Fraction(x) for x in r] for r in m.d]


# --- negative type -----------------------------------------------------------


def gram_matrix(m: Metric, base: int = 0) -> list[list[int]]:
    """2 * G_b with G_b(i,j) = (d(b,i) + d(b,j) - d(i,j)) / 2, base row/column dropped."""
    idx = [i for i in range(m.n) if i != base]
    d = m.d
    return [[d[base][i] + d[base][j] - d[i][j] for j in idx] for i in idx]


def _negative_direction(g: list[list[Fraction]]) -> Optional[list[Fraction]]:
    """A rational v with v^T g v < 0, or None if g is positive semidefinite."""
    n = len(g)
    if n == 0:
        return None
    for i in range(n):
        if g[i][i] < 0:
            return [Fraction(int(k == i)) for k in range(n)]
    for i in range(n):
        if g[i][i] == 0:
            for j in range(n):
                if g[i][j] != 0:
                    # (a e_i + e_j)^T g (a e_i + e_j) = 2 a g_ij + g_jj
                    a = -(g[j][j] + 1) / (2 * g[i][j])
                    v = [Fraction(0)] * n
                    v[i], v[j] = a, Fraction(1)
                    return v
    piv = next((i for i in range(n) if g[i][i] > 0), None)
    if piv is None:
        return None  # zero matrix
    rest = [k for k in range(n) if k != piv]
    gp = g[piv][piv]
    schur = [[g[a][b] - g[a][piv] * g[piv][b] / gp for b in rest] for a in rest]
    u = _negative_direction(schur)
    if u is None:
        return None
    v = [Fraction(0)] * n
    for k, val in zip(rest, u):
        v[k] = val
    v[piv] = -sum(g[piv][k] * val for k, val in zip(rest, u)) / gp
    return v


def is_negative_type(m: Metric, base: int = 0) -> tuple[bool, Optional[Witness]]:
    """Exact negative-type test through the base-point Gram matrix.

    The verdict comes from the inertia of the integral matrix 2 G_b; a failing
    metric also gets an integer witness extracted by exact symmetric
    elimination.  For weights with sum zero,
    sum w_x w_y d(x,y) = -2 sum w_x w_y G_b(x,y).
    """
    if m.n <= 1:
        return True, None
    g2 = gram_matrix(m, base)
    inertia = inertia_from_charpoly(char_poly(IntMatrix.from_rows(g2)))
    psd = inertia.n_neg == 0
    v = _negative_direction([[Fraction(x) for x in r] for r in g2])
    assert (v is None) == psd, "elimination and inertia disagree on positive semidefiniteness"
    if psd:
        return True, None
    scale = lcm(*(x.denominator for x in v))
    ints = [int(x * scale) for x in v]
    idx = [i for i in range(m.n) if i != base]
    w = [0] * m.n
    for i, val in zip(idx, ints):
        w[i] = val
    w[base] = -sum(ints)
    common = reduce(gcd, w)
    w = tuple(x // common for x in w)
    wit = Witness(w, quadratic_form(m.d, w), "negative_type_violation")
    assert wit.verify(m), "extracted negative-type witness does not verify"
    return False, wit


# --- hypermetric falsification -------------------------------------------------


def hypermetric_falsify(
    m: Metric, bound: int = HYPER_BOUND, max_candidates: int = HYPER_MAX_CANDIDATES
) -> Optional[Witness]:
    """Search integer weights with sum 1 and |w_i| <= bound for a violation.

    Finding nothing proves nothing beyond the searched box.  Among violations
    the one with the smallest l1 norm, then lexicographically smallest, wins.
    """
    if bound < 1:
        raise ValueError("bound must be at least 1")
    n = m.n
    if n <= 1:
        return None
    size = (2 * bound + 1) ** (n - 1)
    if size > max_candidates:
        raise SearchTooLarge(f"hypermetric search space {size} exceeds {max_candidates}")
    dmax = max(max(r) for r in m.d)
    use_int = dmax * (n * bound) ** 2 < 2**62
    d_arr = np.array(m.d, dtype=np.int64 if use_int else object)
    values = np.arange(-bound, bound + 1, dtype=np.int64)
    # free coordinates 0..n-2; the last one is fixed by the weight sum
    tail_len = min(n - 1, 6)
    head_len = n - 1 - tail_len
    tail = np.array(list(product(values, repeat=tail_len)), dtype=np.int64).reshape(-1, tail_len)
    best = None
    for head in product(range(-bound, bound + 1), repeat=head_len):
        head_arr = np.broadcast_to(np.array(head, dtype=np.int64), (tail.shape[0], head_len))
        free = np.hstack([head_arr, tail])
        last = 1 - free.sum(axis=1)
        ok = np.abs(last) <= bound
        if not ok.any():
            continue
        w = np.hstack([free[ok], last[ok, None]])
        wq = w if use_int else w.astype(object)
        q = np.einsum("ij,jk,ik->i", wq, d_arr, wq) if use_int else ((wq @ d_arr) * wq).sum(axis=1)
        hits = np.nonzero(q > 0)[0]
        for h in hits:
            cand = tuple(int(x) for x in w[h])
            key = (sum(abs(x) for x in cand), cand)
            if best is None or key < best[0]:
                best = (key, cand)
    if best is None:
        return None
    wit = Witness(best[1], quadratic_form(m.d, best[1]), "hypermetric_violation")
    assert wit.verify(m), "hypermetric witness does not verify"
    return wit


# --- l1 embeddability ----------------------------------------------------------


def l1_decompose(m: Metric, cap: int = L1_MAX_N) -> Optional[CutDecomposition]:
    """Exact LP over the cut cone; None means provably not l1-embeddable."""
    n = m.n
    if n > cap:
        raise SearchTooLarge(f"l1 LP has 2^{n - 1} - 1 cut variables; n = {n} exceeds cap {cap}")
    if n <= 1:
        return CutDecomposition(n, {})
    cuts = []
    for mask in range(1, 1 << (n - 1)):
        cuts.append(frozenset(i + 1 for i in range(n - 1) if mask >> i & 1))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    a = [[int((i in s) != (j in s)) for s in cuts] for i, j in pairs]
    b = [m.d[i][j] for i, j in pairs]
    res = find_feasible(a, b)
    if not res.feasible:
        return None
    dec = CutDecomposition(n, {s: x for s, x in zip(cuts, res.x) if x})
    assert dec.verify(m), "cut decomposition fails substitution"
    return dec


# --- the hierarchy -------------------------------------------------------------


@dataclass(frozen=True)
class HierarchyReport:
    n: int
    l1: Optional[bool]
    l1_certificate: Optional[CutDecomposition]
    hypermetric_violated: Optional[bool]
    hypermetric_witness: Optional[Witness]
    negative_type: bool
    negative_type_witness: Optional[Witness]
    inertia: Inertia
    one_positive_eigenvalue: bool

    def ladder_ok(self) -> bool:
        """Implications that hold whatever the search bounds were."""
        if self.l1 and self.hypermetric_violated:
            return False
        if self.l1 and not self.negative_type:
            return False
        if self.negative_type and self.n >= 2 and not self.one_positive_eigenvalue:
            return False
        return True

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "l1": self.l1,
            "l1_certificate": None
            if self.l1_certificate is None
            else [
                {"S": sorted(s), "a": str(a)}
                for s, a in sorted(self.l1_certificate.coefficients.items(), key=lambda kv: sorted(kv[0]))
            ],
            "hypermetric_violated": self.hypermetric_violated,
            "hypermetric_witness": None if self.hypermetric_witness is None else _wit_json(self.hypermetric_witness),
            "negative_type": self.negative_type,
            "negative_type_witness": None
            if self.negative_type_witness is None
            else _wit_json(self.negative_type_witness),
            "inertia": list(self.inertia.as_tuple()),
            "one_positive_eigenvalue": self.one_positive_eigenvalue,
        }


def _wit_json(w: Witness) -> dict:
    return {"w": list(w.w), "value": str(w.value), "kind": w.kind}


def hierarchy_report(
    m: Metric, l1_max_n: int = L1_MAX_N, hyper_bound: int = HYPER_BOUND
) -> HierarchyReport:
    l1 = cert = None
    if m.n <= l1_max_n:
        cert = l1_decompose(m, cap=l1_max_n)
        l1 = cert is not None
    try:
        hw = hypermetric_falsify(m, hyper_bound)
        hv: Optional[bool] = hw is not None
    except SearchTooLarge:
        hw, hv = None, None
    neg, nw = is_negative_type(m)
    inertia = inertia_from_charpoly(char_poly(m.matrix()))
    rep = HierarchyReport(
        n=m.n,
        l1=l1,
        l1_certificate=cert,
        hypermetric_violated=hv,
        hypermetric_witness=hw,
        negative_type=neg,
        negative_type_witness=nw,
        inertia=inertia,
        one_positive_eigenvalue=inertia.n_pos == 1,
    )
    assert rep.ladder_ok(), f"metric hierarchy implications violated: {rep}"
    return rep
