"""Coefficient sequences of distance characteristic polynomials.

Sign convention: polynomials are always stored as the monic det(xI - D).
``c_k`` denotes the x^k coefficient of det(D - xI) = (-1)^n det(xI - D), and
the analysed sequence is s_k = (-1)^(n-1) c_k for 0 <= k <= n-2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import isqrt
from typing import Optional, Sequence

from .graph import Graph, GraphError, block_cut_tree, distance_matrix, non_clique_block
from .graph import BlockCutTree
from .linalg import (
    IntMatrix,
    IntPolynomial,
    Inertia,
    bareiss_determinant,
    char_poly,
    cofactor_sum,
    inertia_from_charpoly,
    poly_divmod,
)

__all__ = [
    "CoefficientSequence",
    "SequenceReport",
    "PeakWindow",
    "ConjectureVerdict",
    "signed_coefficients",
    "sequence_report",
    "clique_det_cof",
    "ghh_det_cof",
    "windmill_closed_form",
    "two_clique_hub_closed_form",
    "barbell_closed_form",
    "QuotientMatrix",
    "quotient_matrix",
    "quotient_divides",
    "tree_normalized_coefficients",
    "block_graph_window",
    "tree_window",
    "conjecture_verdict",
    "principal_minor_coefficient",
    "uniform_divisibility_probe",
]

PRINCIPAL_MINOR_CAP = 12


@dataclass(frozen=True)
class CoefficientSequence:
    n: int
    s: tuple[int, ...]
    trace_zero: bool = True

    def __len__(self):
        return len(self.s)


@dataclass(frozen=True)
class PeakWindow:
    lo: int
    hi: int

    def __contains__(self, k: int) -> bool:
        return self.lo <= k <= self.hi


@dataclass(frozen=True)
class SequenceReport:
    unimodal: bool
    log_concave: bool
    positive: bool
    peak_index: int
    argmax: tuple[int, int]  # inclusive interval when unimodal
    first_violation: Optional[int] = None

    @property
    def tied(self) -> bool:
        return self.argmax[0] != self.argmax[1]


def signed_coefficients(p: IntPolynomial, n: int) -> CoefficientSequence:
    """s_k = (-1)^(n-1) c_k for k = 0..n-2, from the monic det(xI - D)."""
    if p.degree != n or not p.is_monic():
        raise ValueError(f"expected a monic polynomial of degree {n}")
    sign_c = -1 if n % 2 else 1  # c_k = (-1)^n p_k
    sign_s = -1 if (n - 1) % 2 else 1
    c = [sign_c * p.coeff(k) for k in range(n + 1)]
    s = tuple(sign_s * c[k] for k in range(max(n - 1, 0)))
    return CoefficientSequence(n, s, trace_zero=(n == 0 or c[n - 1] == 0))


def sequence_report(seq: CoefficientSequence | Sequence[int]) -> SequenceReport:
    s = list(seq.s if isinstance(seq, CoefficientSequence) else seq)
    if not s:
        raise ValueError("empty coefficient sequence")
    positive = all(x > 0 for x in s)
    log_concave = all(s[j] * s[j] >= s[j - 1] * s[j + 1] for j in range(1, len(s) - 1))
    top = max(s)
    peak = s.index(top)
    last = len(s) - 1 - s[::-1].index(top)
    # rises weakly up to the first maximum, then falls weakly
    violation = None
    for i in range(1, peak + 1):
        if s[i - 1] > s[i]:
            violation = i
            break
    if violation is None:
        for i in range(peak + 1, len(s)):
            if s[i - 1] < s[i]:
                violation = i
                break
    unimodal = violation is None
    if log_concave and positive:
        assert unimodal, "positive log-concave sequence reported non-unimodal"
    return SequenceReport(unimodal, log_concave, positive, peak, (peak, last), violation)


# --- Graham-Hoffman-Hosoya ---------------------------------------------------


def clique_det_cof(t: int) -> tuple[int, int]:
    """(det, cof) of D(K_t): ((-1)^(t-1) (t-1), (-1)^(t-1) t)."""
    sign = -1 if (t - 1) % 2 else 1
    return sign * (t - 1), sign * t


def ghh_det_cof(
    bct: BlockCutTree,
    block_values: Optional[Sequence[tuple[int, int]]] = None,
    graph: Optional[Graph] = None,
) -> tuple[int, int]:
    """det D(G) and cof D(G) assembled from per-block (det, cof) pairs.

    Without ``block_values`` every block is treated as a clique, unless
    ``graph`` is supplied, in which case non-clique blocks fall back to exact
    elimination on their own distance matrices.
    """
    if not bct.blocks:
        raise ValueError("no blocks")
    if block_values is None:
        block_values = []
        for b in bct.blocks:
            if graph is not None:
                sub = graph.induced(b)
                if sub.m != len(b) * (len(b) - 1) // 2:
                    d = distance_matrix(sub)
                    block_values.append((bareiss_determinant(d), cofactor_sum(d)))
                    continue
            block_values.append(clique_det_cof(len(b)))
    if len(block_values) != len(bct.blocks):
        raise ValueError("one (det, cof) pair per block required")
    cof = 1
    for _, c in block_values:
        cof *= c
    det = 0
    for i, (d_i, _) in enumerate(block_values):
        term = d_i
        for j, (_, c_j) in enumerate(block_values):
            if j != i:
                term *= c_j
        det += term
    return det, cof


# --- closed forms ------------------------------------------------------------


def windmill_closed_form(k: int, t: int) -> IntPolynomial:
    """det(xI - D) for W(k, t):
    (x+1)^((t-2)k) (x+t)^(k-1) (x^2 - (t-2+2(t-1)(k-1)) x - k(t-1))."""
    if k < 2 or t < 2:
        raise ValueError(f"windmill needs k >= 2, t >= 2, got k={k}, t={t}")
    quad = IntPolynomial((-k * (t - 1), -(t - 2 + 2 * (t - 1) * (k - 1)), 1))
    return IntPolynomial.x_plus(1, (t - 2) * k) * IntPolynomial.x_plus(t, k - 1) * quad


def two_clique_hub_closed_form(t: int) -> IntPolynomial:
    """The product (x+1)^(2t-2) (-(t+1)-x) (x^2 - (3t-1)x - 2t) as written for
    two K_t plus a universal vertex (n = 2t+1); equals -det(xI - D)."""
    lin = IntPolynomial((-(t + 1), -1))
    quad = IntPolynomial((-2 * t, -(3 * t - 1), 1))
    return IntPolynomial.x_plus(1, 2 * t - 2) * lin * quad


def barbell_closed_form(t: int) -> IntPolynomial:
    """det(xI - D) for B(t, 2): (x+1)^(2t-4) times the quotient's quartic."""
    if t < 2:
        raise ValueError("barbell needs t >= 2")
    quartic = IntPolynomial(
        (-(5 * t * t - 4 * t), -(14 * t * t - 12 * t), -(8 * t * t - 4 * t - 4), -(2 * t - 4), 1)
    )
    return IntPolynomial.x_plus(1, 2 * t - 4) * quartic


# --- quotient matrices -------------------------------------------------------


@dataclass(frozen=True)
class QuotientMatrix:
    entries: tuple[tuple[Fraction, ...], ...]
    equitable: bool

    @property
    def order(self) -> int:
        return len(self.entries)

    def char_poly(self) -> list[Fraction]:
        """Ascending coefficients of det(xI - B) over the rationals."""
        return _rational_charpoly([list(r) for r in self.entries])

    def integer_rows(self) -> Optional[list[list[int]]]:
        if all(x.denominator == 1 for r in self.entries for x in r):
            return [[int(x) for x in r] for r in self.entries]
        return None


def _rational_charpoly(a: list[list[Fraction]]) -> list[Fraction]:
    n = len(a)
    c = [Fraction(0)] * (n + 1)
    c[n] = Fraction(1)
    mk = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for k in range(1, n + 1):
        if k > 1:
            cols = list(zip(*mk))
            mk = [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in cols] for row in a]
            for i in range(n):
                mk[i][i] += c[n - k + 1]
        tr = sum((a[i][j] * mk[j][i] for i in range(n) for j in range(n)), Fraction(0))
        c[n - k] = -tr / k
    return c


def quotient_matrix(d: IntMatrix, partition: Sequence[Sequence[int]]) -> QuotientMatrix:
    """Average row sums of D between classes; flags whether the partition is equitable."""
    n = d.order
    flat = [v for cls in partition for v in cls]
    if sorted(flat) != list(range(n)) or any(len(c) == 0 for c in partition):
        raise ValueError("partition must split 0..n-1 into nonempty disjoint classes")
    equitable = True
    rows = []
    for ci in partition:
        row = []
        for cj in partition:
            sums = [sum(d[i, j] for j in cj) for i in ci]
            if len(set(sums)) > 1:
                equitable = False
            row.append(Fraction(sum(sums), len(ci)))
        rows.append(tuple(row))
    return QuotientMatrix(tuple(rows), equitable)


def quotient_divides(q: QuotientMatrix, p: IntPolynomial) -> bool:
    _, rem = poly_divmod(list(p.coeffs), q.char_poly())
    return not rem


# --- normalised tree coefficients --------------------------------------------


def _is_tree(g: Graph) -> bool:
    return g.is_connected and g.m == g.n - 1


def tree_normalized_coefficients(g: Graph, p: Optional[IntPolynomial] = None) -> list[int]:
    """d_k = s_k / 2^(n-k-2) for a tree; every division must be exact."""
    if not _is_tree(g):
        raise GraphError("normalised coefficients are defined for trees only")
    if p is None:
        p = char_poly(distance_matrix(g))
    seq = signed_coefficients(p, g.n)
    out = []
    for k, s in enumerate(seq.s):
        q, r = divmod(s, 1 << (g.n - k - 2))
        if r:
            raise ArithmeticError(f"s_{k} = {s} is not divisible by 2^{g.n - k - 2}")
        out.append(q)
    return out


def uniform_divisibility_probe(g: Graph, base: int = 2) -> list[int]:
    """Largest power e_k with base^e_k | s_k, for each k (diagnostic only)."""
    seq = signed_coefficients(char_poly(distance_matrix(g)), g.n)
    out = []
    for s in seq.s:
        e = 0
        while s and s % base == 0:
            s //= base
            e += 1
        out.append(e)
    return out


# --- verdicts ------------------------------------------------------------------


def block_graph_window(n: int) -> PeakWindow:
    return PeakWindow(n // 3, n // 2)


def tree_window(n: int) -> PeakWindow:
    """[floor(n/2), ceil((1 - 1/sqrt5) n)] with integer arithmetic only.

    n/sqrt(5) is irrational for n > 0, so the ceiling is n - floor(n/sqrt5)
    and floor(n/sqrt5) = isqrt(floor(n^2/5)).
    """
    hi = n - isqrt(n * n // 5) if n > 0 else 0
    return PeakWindow(n // 2, hi)


@dataclass(frozen=True)
class ConjectureVerdict:
    n: int
    polynomial: IntPolynomial
    sequence: CoefficientSequence
    report: SequenceReport
    inertia: Inertia
    det: int
    cof: int
    window: PeakWindow
    positivity_ok: bool
    trace_zero_ok: bool
    log_concave_ok: bool
    unimodal_ok: bool
    inertia_ok: bool
    peak_in_window: bool
    ghh_ok: bool
    tree_coefficients: Optional[tuple[int, ...]] = None
    tree_report: Optional[SequenceReport] = None
    tree_window: Optional[PeakWindow] = None
    tree_peak_in_window: Optional[bool] = None
    failures: tuple[str, ...] = field(default=())

    @property
    def peak_index(self) -> int:
        return self.report.peak_index

    @property
    def ok(self) -> bool:
        return not self.failures


def conjecture_verdict(g: Graph) -> ConjectureVerdict:
    """Run the whole pipeline on a block graph with at least two vertices."""
    if g.n < 2:
        raise GraphError("the coefficient sequence is empty for n < 2")
    bct = block_cut_tree(g)
    bad = non_clique_block(g, bct)
    if bad is not None:
        raise GraphError(f"not a block graph: block {sorted(bad)} is not a clique")
    d = distance_matrix(g)
    p = char_poly(d)
    seq = signed_coefficients(p, g.n)
    rep = sequence_report(seq)
    inertia = inertia_from_charpoly(p)
    window = block_graph_window(g.n)
    det, cof = ghh_det_cof(bct)
    # det D = (-1)^n p(0)
    ghh_ok = det == (-1) ** g.n * p.coeff(0)
    tree_coeffs = tree_rep = twin = tree_ok = None
    if g.m == g.n - 1:
        tree_coeffs = tuple(tree_normalized_coefficients(g, p))
        tree_rep = sequence_report(tree_coeffs)
        twin = tree_window(g.n)
        # the window lies past the last index when n = 2
        tree_ok = tree_rep.peak_index in twin and not tree_rep.tied if g.n >= 3 else None
    checks = {
        "positivity": rep.positive,
        "trace_zero": seq.trace_zero,
        "log_concave": rep.log_concave,
        "unimodal": rep.unimodal,
        "inertia": inertia.as_tuple() == (1, 0, g.n - 1),
        "peak_window": rep.peak_index in window,
        "ghh": ghh_ok,
    }
    failures = [name for name, ok in checks.items() if not ok]
    if tree_ok is False:
        failures.append("tree_peak_window")
    return ConjectureVerdict(
        n=g.n,
        polynomial=p,
        sequence=seq,
        report=rep,
        inertia=inertia,
        det=det,
        cof=cof,
        window=window,
        positivity_ok=checks["positivity"],
        trace_zero_ok=checks["trace_zero"],
        log_concave_ok=checks["log_concave"],
        unimodal_ok=checks["unimodal"],
        inertia_ok=checks["inertia"],
        peak_in_window=checks["peak_window"],
        ghh_ok=ghh_ok,
        tree_coefficients=tree_coeffs,
        tree_report=tree_rep,
        tree_window=twin,
        tree_peak_in_window=tree_ok,
        failures=tuple(failures),
    )


def principal_minor_coefficient(d: IntMatrix, k: int, cap: int = PRINCIPAL_MINOR_CAP) -> int:
    """c_{n-k} = (-1)^(n-k) * (sum of all k x k principal minors of D).

    A brute-force oracle: it evaluates C(n, k) determinants.
    """
    n = d.order
    if not 0 <= k <= n:
        raise ValueError(f"k must lie in 0..{n}")
    if n > cap:
        raise ValueError(f"refusing principal-minor expansion for n = {n} > cap {cap}")
    total = sum(bareiss_determinant(d.principal_submatrix(idx)) for idx in combinations(range(n), k))
    return (-1) ** (n - k) * total
