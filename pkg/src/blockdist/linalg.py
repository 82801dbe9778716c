"""Exact integer linear algebra.

Everything here works over Python's arbitrary-precision ``int`` (and
``fractions.Fraction`` where a field is needed), so determinants and
characteristic polynomial coefficients are never rounded.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import comb, isqrt
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "IntMatrix",
    "IntPolynomial",
    "Inertia",
    "bareiss_determinant",
    "rank",
    "cofactor_sum",
    "char_poly",
    "charpoly_faddeev_leverrier",
    "charpoly_multimodular",
    "inertia_from_charpoly",
    "matrix_inertia",
    "parse_matrix",
    "format_matrix",
]


class InexactDivisionError(ArithmeticError):
    """An exact-division step produced a remainder (an implementation bug)."""


@dataclass(frozen=True)
class IntMatrix:
    """Dense square matrix of Python ints."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.rows)
        for r in self.rows:
            if len(r) != n:
                raise ValueError(f"matrix is not square: row of length {len(r)} in order {n}")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "IntMatrix":
        return cls(tuple(tuple(int(x) for x in r) for r in rows))

    @classmethod
    def zeros(cls, n: int) -> "IntMatrix":
        return cls(tuple((0,) * n for _ in range(n)))

    @property
    def order(self) -> int:
        return len(self.rows)

    @cached_property
    def symmetric(self) -> bool:
        n = self.order
        return all(self.rows[i][j] == self.rows[j][i] for i in range(n) for j in range(i + 1, n))

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def trace(self) -> int:
        return sum(self.rows[i][i] for i in range(self.order))

    def principal_submatrix(self, idx: Sequence[int]) -> "IntMatrix":
        return IntMatrix(tuple(tuple(self.rows[i][j] for j in idx) for i in idx))

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows))
        )


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, coefficients in ascending order of degree."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(x) for x in c))

    @classmethod
    def x_plus(cls, a: int, power: int = 1) -> "IntPolynomial":
        """``(x + a) ** power`` expanded by the binomial theorem."""
        return cls(tuple(comb(power, k) * a ** (power - k) for k in range(power + 1)))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def coeff(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(tuple(-c for c in self.coeffs))

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        m = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial(tuple(self.coeff(k) + other.coeff(k) for k in range(m)))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other: "IntPolynomial | int") -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial(tuple(c * other for c in self.coeffs))
        if self.is_zero() or other.is_zero():
            return IntPolynomial(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "IntPolynomial":
        out = IntPolynomial((1,))
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def divmod(self, other: "IntPolynomial") -> tuple[list[Fraction], list[Fraction]]:
        """Polynomial long division over the rationals."""
        return poly_divmod(list(self.coeffs), list(other.coeffs))

    def divides(self, other: "IntPolynomial") -> bool:
        """True iff ``self`` divides ``other`` over the rationals."""
        _, r = poly_divmod(list(other.coeffs), list(self.coeffs))
        return all(x == 0 for x in r)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            body = str(a) if (a != 1 or k == 0) else ""
            terms.append((sign, body + mono))
        first_sign, first = terms[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, t in terms[1:]:
            s += f" {sign} {t}"
        return s


def poly_divmod(num: Sequence, den: Sequence) -> tuple[list[Fraction], list[Fraction]]:
    """Divide ascending-coefficient polynomials; returns (quotient, remainder)."""
    den = list(den)
    while den and den[-1] == 0:
        den.pop()
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(x) for x in num]
    while r and r[-1] == 0:
        r.pop()
    dq = len(den) - 1
    if len(r) - 1 < dq:
        return [], r
    q = [Fraction(0)] * (len(r) - dq)
    lead = Fraction(den[-1])
    for k in range(len(r) - 1, dq - 1, -1):
        c = r[k] / lead
        q[k - dq] = c
        if c:
            for i, d in enumerate(den):
                r[k - dq + i] -= c * d
    rem = r[:dq]
    while rem and rem[-1] == 0:
        rem.pop()
    return q, rem


@dataclass(frozen=True)
class Inertia:
    n_pos: int
    n_zero: int
    n_neg: int

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.n_pos, self.n_zero, self.n_neg)


def bareiss_determinant(m: IntMatrix | Sequence[Sequence[int]]) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    a = [list(r) for r in (m.rows if isinstance(m, IntMatrix) else m)]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            for j in range(k + 1, n):
                q, rem = divmod(ri[j] * akk - aik * rk[j], prev)
                if rem:
                    raise InexactDivisionError("Bareiss step left a remainder")
                ri[j] = q
        prev = akk
    return sign * a[n - 1][n - 1]


def rank(m: IntMatrix | Sequence[Sequence[int]]) -> int:
    """Rank over the rationals, by fraction-free elimination with row pivoting."""
    a = [list(r) for r in (m.rows if isinstance(m, IntMatrix) else m)]
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    r = 0
    prev = 1
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        for i in range(r + 1, nrows):
            aic = a[i][c]
            ri = a[i]
            rr = a[r]
            for j in range(c, ncols):
                q, rem = divmod(ri[j] * p - aic * rr[j], prev)
                if rem:
                    raise InexactDivisionError("fraction-free rank step left a remainder")
                ri[j] = q
        prev = p
        r += 1
        if r == nrows:
            break
    return r


def cofactor_sum(m: IntMatrix) -> int:
    """Sum of all cofactors of ``m``, as det(m + J) - det(m).

    det(m + xJ) is affine in x because J has rank one, and its slope is the
    cofactor sum.
    """
    n = m.order
    j = IntMatrix(tuple((1,) * n for _ in range(n)))
    return bareiss_determinant(m + j) - bareiss_determinant(m)


# --- characteristic polynomials -------------------------------------------------

_FADDEEV_MAX_ORDER = 16


def charpoly_faddeev_leverrier(m: IntMatrix) -> IntPolynomial:
    """det(xI - m) by the Faddeev-LeVerrier recurrence over exact ints."""
    n = m.order
    a = m.to_lists()
    c = [0] * (n + 1)
    c[n] = 1
    mk = [[int(i == j) for j in range(n)] for i in range(n)]
    for k in range(1, n + 1):
        if k > 1:
            cols = list(zip(*mk))
            mk = [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a]
            ck = c[n - k + 1]
            for i in range(n):
                mk[i][i] += ck
        tr = 0
        for i in range(n):
            row = a[i]
            tr += sum(row[j] * mk[j][i] for j in range(n))
        q, rem = divmod(-tr, k)
        if rem:
            raise InexactDivisionError(f"Faddeev-LeVerrier: trace not divisible by {k}")
        c[n - k] = q
    return IntPolynomial(tuple(c))


def _primes_below(limit: int):
    """Descending primes below ``limit`` (limit well under 2**32)."""
    small = [p for p in range(2, isqrt(limit) + 2) if all(p % q for q in range(2, isqrt(p) + 1))]
    x = limit - 1
    while x > 2:
        if all(x % p for p in small if p * p <= x):
            yield x
        x -= 1


def _coefficient_bound(rows: list[list[int]]) -> int:
    """Upper bound on |coefficients| of det(xI - m).

    The x^(n-k) coefficient is a signed sum of C(n, k) principal k-minors, each
    bounded (Hadamard) by the product of the k largest row norms.
    """
    n = len(rows)
    norms = sorted((isqrt(sum(x * x for x in r)) + 1 for r in rows), reverse=True)
    best = 1
    running = 1
    for k in range(1, n + 1):
        running *= norms[k - 1]
        best = max(best, comb(n, k) * running)
    return best


def _charpoly_mod_p(a: np.ndarray, p: int) -> np.ndarray:
    """det(xI - a) mod p via Hessenberg reduction; ascending coefficients."""
    n = a.shape[0]
    h = a % p
    for j in range(n - 2):
        nz = np.nonzero(h[j + 1 :, j])[0]
        if nz.size == 0:
            continue
        i = j + 1 + int(nz[0])
        if i != j + 1:
            h[[i, j + 1], :] = h[[j + 1, i], :]
            h[:, [i, j + 1]] = h[:, [j + 1, i]]
        inv = pow(int(h[j + 1, j]), -1, p)
        u = (h[j + 2 :, j] * inv) % p
        if not u.any():
            continue
        h[j + 2 :, :] = (h[j + 2 :, :] - np.outer(u, h[j + 1, :]) % p) % p
        h[:, j + 1] = (h[:, j + 1] + (h[:, j + 2 :] @ u) % p) % p
    # p_m = (x - h_mm) p_{m-1} - sum_i h_im * (prod of subdiagonal) * p_{i-1}
    polys = [np.zeros(n + 1, dtype=np.int64) for _ in range(n + 1)]
    polys[0][0] = 1
    for m in range(1, n + 1):
        prev = polys[m - 1]
        cur = np.zeros(n + 1, dtype=np.int64)
        cur[1:] = prev[:-1]
        cur = (cur - (int(h[m - 1, m - 1]) * prev) % p) % p
        t = 1
        for i in range(m - 1, 0, -1):
            t = (t * int(h[i, i - 1])) % p
            if t == 0:
                break
            coef = (t * int(h[i - 1, m - 1])) % p
            if coef:
                cur = (cur - (coef * polys[i - 1]) % p) % p
        polys[m] = cur
    return polys[n]


def charpoly_multimodular(m: IntMatrix) -> IntPolynomial:
    """det(xI - m) from Hessenberg reductions modulo word-size primes.

    Residues are combined by the Chinese remainder theorem until the modulus
    exceeds twice a proven bound on the coefficients, so the result is exact.
    """
    n = m.order
    if n == 0:
        return IntPolynomial((1,))
    rows = m.to_lists()
    bound = _coefficient_bound(rows)
    # keeps n * p^2 inside int64 for the column update
    limit = 1 << max(16, min(30, (62 - n.bit_length()) // 2))
    modulus = 1
    acc = [0] * (n + 1)
    for p in _primes_below(limit):
        a = np.array([[x % p for x in r] for r in rows], dtype=np.int64)
        res = _charpoly_mod_p(a, p)
        # CRT step: find x = acc mod modulus, x = res mod p
        inv = pow(modulus % p, -1, p)
        for k in range(n + 1):
            delta = ((int(res[k]) - acc[k]) * inv) % p
            acc[k] += modulus * delta
        modulus *= p
        if modulus > 2 * bound:
            break
    half = modulus // 2
    return IntPolynomial(tuple(x - modulus if x > half else x for x in acc))


def char_poly(m: IntMatrix, method: str = "auto") -> IntPolynomial:
    """Characteristic polynomial det(xI - m), monic with exact coefficients.

    ``method`` is ``"faddeev"``, ``"multimodular"`` or ``"auto"`` (Faddeev-LeVerrier
    for small orders, multimodular above that).
    """
    if method == "auto":
        method = "faddeev" if m.order <= _FADDEEV_MAX_ORDER else "multimodular"
    if method == "faddeev":
        return charpoly_faddeev_leverrier(m)
    if method == "multimodular":
        return charpoly_multimodular(m)
    raise ValueError(f"unknown char_poly method {method!r}")


def _sign_changes(seq: Iterable[int]) -> int:
    changes = 0
    last = 0
    for x in seq:
        if x == 0:
            continue
        if last and (x > 0) != (last > 0):
            changes += 1
        last = x
    return changes


def inertia_from_charpoly(p: IntPolynomial) -> Inertia:
    """Inertia of a symmetric matrix from its characteristic polynomial.

    Descartes' rule of signs is exact for real-rooted polynomials, which is
    what a symmetric matrix has; the caller is responsible for that.
    """
    if p.is_zero():
        raise ValueError("zero polynomial has no inertia")
    z = 0
    while p.coeffs[z] == 0:
        z += 1
    deflated = p.coeffs[z:]
    pos = _sign_changes(deflated)
    neg = len(deflated) - 1 - pos
    return Inertia(pos, z, neg)


def matrix_inertia(m: IntMatrix) -> Inertia:
    if not m.symmetric:
        raise ValueError("inertia is only defined here for symmetric matrices")
    return inertia_from_charpoly(char_poly(m))


# --- text format: first line n, then n rows ----------------------------------


def parse_matrix(text: str) -> IntMatrix:
    lines = [ln for ln in (s.strip() for s in text.splitlines()) if ln and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty matrix text")
    try:
        n = int(lines[0])
    except ValueError:
        raise ValueError(f"first line must be the order, got {lines[0]!r}") from None
    if len(lines) - 1 != n:
        raise ValueError(f"expected {n} rows, found {len(lines) - 1}")
    rows = []
    for i, ln in enumerate(lines[1:], start=1):
        parts = ln.split()
        if len(parts) != n:
            raise ValueError(f"row {i} has {len(parts)} entries, expected {n}")
        rows.append(tuple(int(x) for x in parts))
    return IntMatrix(tuple(rows))


def format_matrix(m: IntMatrix) -> str:
    out = [str(m.order)]
    out += [" ".join(str(x) for x in r) for r in m.rows]
    return "\n".join(out) + "\n"
