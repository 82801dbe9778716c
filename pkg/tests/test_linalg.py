import random
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, strategies as st

from blockdist.families import clique, enumerate_block_graphs, friendship, path
from blockdist.graph import distance_matrix
from blockdist.linalg import (
    IntMatrix,
    IntPolynomial,
    bareiss_determinant,
    char_poly,
    charpoly_faddeev_leverrier,
    charpoly_multimodular,
    cofactor_sum,
    format_matrix,
    inertia_from_charpoly,
    matrix_inertia,
    parse_matrix,
    rank,
)

DATA = Path(__file__).parent / "data"


def D(g):
    return distance_matrix(g)


def random_matrix(rng, n, lo=-5, hi=5, symmetric=False):
    rows = [[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)]
    if symmetric:
        for i in range(n):
            for j in range(i):
                rows[i][j] = rows[j][i]
    return IntMatrix.from_rows(rows)


# --- independent oracles --------------------------------------------------------


def det_fraction(rows):
    """Gaussian elimination over Fraction."""
    a = [[Fraction(x) for x in r] for r in rows]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            for k in range(c, n):
                a[r][k] -= f * a[c][k]
    return int(det)


def charpoly_by_interpolation(m: IntMatrix) -> list[int]:
    """det(xI - m) at x = 0..n by Bareiss, then Lagrange interpolation."""
    n = m.order
    xs = list(range(n + 1))
    ys = []
    for x in xs:
        rows = [[(x if i == j else 0) - m[i, j] for j in range(n)] for i in range(n)]
        ys.append(bareiss_determinant(rows))
    coeffs = [Fraction(0)] * (n + 1)
    for i, xi in enumerate(xs):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j == i:
                continue
            basis = [Fraction(0)] + basis  # multiply by x
            for k in range(len(basis) - 1):
                basis[k] -= xj * basis[k + 1]
            denom *= xi - xj
        for k in range(n + 1):
            coeffs[k] += ys[i] * basis[k] / denom
    assert all(c.denominator == 1 for c in coeffs)
    return [int(c) for c in coeffs]


def rational_inverse_sum(rows):
    n = len(rows)
    a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    for c in range(n):
        p = next(r for r in range(c, n) if a[r][c] != 0)
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return sum(a[i][n + j] for i in range(n) for j in range(n))


# --- determinant / rank / cofactor ----------------------------------------------


def test_determinant_examples():
    assert bareiss_determinant(D(clique(2))) == -1
    assert bareiss_determinant(D(path(3))) == 4
    assert bareiss_determinant(D(friendship(2))) == 12
    assert bareiss_determinant(IntMatrix.from_rows([])) == 1


def test_determinant_against_fraction_elimination():
    rng = random.Random(1)
    for _ in range(200):
        n = rng.randint(1, 7)
        m = random_matrix(rng, n)
        assert bareiss_determinant(m) == det_fraction(m.to_lists())


def test_rank_examples():
    assert rank(parse_matrix((DATA / "d_g.txt").read_text())) == 9
    assert rank(parse_matrix((DATA / "d_gprime.txt").read_text())) == 8
    assert rank(D(clique(3))) == 3
    assert rank(IntMatrix.zeros(3)) == 0


def test_rank_against_numpy():
    rng = random.Random(2)
    for _ in range(200):
        n = rng.randint(1, 7)
        base = random_matrix(rng, n, -2, 2)
        # force rank deficiency half the time by duplicating combinations of rows
        rows = base.to_lists()
        if rng.random() < 0.5 and n > 1:
            i, j = rng.sample(range(n), 2)
            rows[i] = [a + 2 * b for a, b in zip(rows[j], rows[rng.randrange(n)])]
        m = IntMatrix.from_rows(rows)
        assert rank(m) == np.linalg.matrix_rank(np.array(rows, dtype=float))


def test_cofactor_sum_examples():
    assert cofactor_sum(D(clique(2))) == -2
    assert cofactor_sum(D(clique(3))) == 3
    assert cofactor_sum(D(clique(4))) == -4


def test_cofactor_sum_against_inverse():
    rng = random.Random(3)
    done = 0
    while done < 100:
        m = random_matrix(rng, rng.randint(1, 6))
        det = bareiss_determinant(m)
        if det == 0:
            continue
        assert cofactor_sum(m) == det * rational_inverse_sum(m.to_lists())
        done += 1


# --- characteristic polynomial ---------------------------------------------------


def test_charpoly_examples():
    assert char_poly(D(clique(2))).coeffs == (-1, 0, 1)
    assert char_poly(D(path(3))).coeffs == (-4, -6, 0, 1)
    assert char_poly(D(friendship(2))).coeffs == (-12, -43, -52, -22, 0, 1)


def test_charpoly_methods_agree_with_interpolation():
    rng = random.Random(4)
    for _ in range(150):
        n = rng.randint(1, 8)
        m = random_matrix(rng, n, -9, 9, symmetric=rng.random() < 0.5)
        ref = charpoly_by_interpolation(m)
        assert list(charpoly_faddeev_leverrier(m).coeffs) == ref
        assert list(charpoly_multimodular(m).coeffs) == ref


def test_charpoly_large_entries_multimodular():
    rng = random.Random(5)
    for n in (9, 14, 20):
        m = random_matrix(rng, n, -10**6, 10**6)
        assert charpoly_multimodular(m) == charpoly_faddeev_leverrier(m)


def test_charpoly_invariants_on_random_symmetric():
    rng = random.Random(6)
    for _ in range(100):
        n = rng.randint(1, 8)
        m = random_matrix(rng, n, symmetric=True)
        p = char_poly(m)
        assert p.is_monic() and p.degree == n
        assert p(0) == (-1) ** n * bareiss_determinant(m)
        assert p.coeff(n - 1) == -m.trace()


def test_distance_charpoly_trace_zero():
    for n in range(2, 8):
        for g in enumerate_block_graphs(n):
            assert char_poly(D(g)).coeff(n - 1) == 0


def test_char_poly_rejects_unknown_method():
    with pytest.raises(ValueError):
        char_poly(D(path(3)), method="qr")


# --- inertia ---------------------------------------------------------------------


def test_inertia_examples():
    assert inertia_from_charpoly(IntPolynomial((-1, 0, 1))).as_tuple() == (1, 0, 1)
    assert inertia_from_charpoly(IntPolynomial((0, -1, 0, 1))).as_tuple() == (1, 1, 1)
    assert matrix_inertia(D(friendship(2))).as_tuple() == (1, 0, 4)
    with pytest.raises(ValueError):
        inertia_from_charpoly(IntPolynomial(()))
    with pytest.raises(ValueError):
        matrix_inertia(IntMatrix.from_rows([[0, 1], [2, 0]]))


def test_inertia_against_eigensolver():
    rng = random.Random(8)
    for trial in range(500):
        n = rng.randint(1, 8)
        if trial % 3 == 0:
            # low-rank matrices B^T diag B, with planted zero eigenvalues
            r = rng.randint(0, n)
            b = np.array([[rng.randint(-2, 2) for _ in range(n)] for _ in range(r)], dtype=np.int64).reshape(r, n)
            s = np.diag([rng.choice([-1, 1]) for _ in range(r)]).astype(np.int64)
            rows = (b.T @ s @ b).tolist() if r else [[0] * n for _ in range(n)]
            m = IntMatrix.from_rows(rows)
        else:
            m = random_matrix(rng, n, -4, 4, symmetric=True)
        ev = np.linalg.eigvalsh(np.array(m.to_lists(), dtype=float))
        zero = n - rank(m)
        nonzero = sorted(ev, key=abs)[zero:]
        expected = (sum(1 for e in nonzero if e > 0), zero, sum(1 for e in nonzero if e < 0))
        assert matrix_inertia(m).as_tuple() == expected


# --- polynomials and text format -------------------------------------------------


ints = st.integers(-50, 50)
polys = st.lists(ints, max_size=6).map(lambda c: IntPolynomial(tuple(c)))


@given(polys, polys, ints)
def test_polynomial_ring_laws(p, q, x):
    assert (p * q)(x) == p(x) * q(x)
    assert (p + q)(x) == p(x) + q(x)
    assert (p - q)(x) == p(x) - q(x)
    if not q.is_zero():
        quo, rem = p.divmod(q)
        # p = quo * q + rem at x
        val = sum(c * Fraction(x) ** k for k, c in enumerate(quo)) * q(x) + sum(
            c * Fraction(x) ** k for k, c in enumerate(rem)
        )
        assert val == p(x)


def test_polynomial_helpers():
    assert IntPolynomial.x_plus(1, 3).coeffs == (1, 3, 3, 1)
    assert IntPolynomial.x_plus(2) ** 2 == IntPolynomial((4, 4, 1))
    assert IntPolynomial((0, 0, 0)).is_zero()
    assert str(IntPolynomial((-4, -6, 0, 1))) == "x^3 - 6x - 4"
    assert IntPolynomial.x_plus(1).divides(IntPolynomial((-1, 0, 1)))
    assert not IntPolynomial.x_plus(2).divides(IntPolynomial((-1, 0, 1)))


def test_matrix_text_roundtrip():
    m = parse_matrix((DATA / "d_g.txt").read_text())
    assert m.order == 10 and m.symmetric
    assert parse_matrix(format_matrix(m)) == m
    for bad in ["", "2\n0 1\n", "2\n0 1\n1\n", "x\n"]:
        with pytest.raises(ValueError):
            parse_matrix(bad)
