import random
from fractions import Fraction

import numpy as np
from scipy.optimize import linprog

from blockdist.simplex import check_farkas, check_point, find_feasible


def random_system(rng, m, k):
    a = [[rng.randint(-3, 3) for _ in range(k)] for _ in range(m)]
    if rng.random() < 0.5:
        x = [rng.randint(0, 3) for _ in range(k)]
        b = [sum(r[j] * x[j] for j in range(k)) for r in a]
    else:
        b = [rng.randint(-5, 5) for _ in range(m)]
    return a, b


def test_feasibility_agrees_with_scipy():
    rng = random.Random(21)
    for _ in range(300):
        m, k = rng.randint(1, 5), rng.randint(1, 7)
        a, b = random_system(rng, m, k)
        res = find_feasible(a, b)
        ref = linprog(np.zeros(k), A_eq=np.array(a, float), b_eq=np.array(b, float), bounds=[(0, None)] * k, method="highs")
        assert res.feasible == (ref.status == 0)
        if res.feasible:
            assert check_point(a, b, res.x)
        else:
            assert check_farkas(a, b, res.farkas)


def test_degenerate_cycling_example():
    # Beale's classic cycling example turned into a feasibility problem
    a = [
        [Fraction(1, 4), -60, Fraction(-1, 25), 9, 1, 0, 0],
        [Fraction(1, 2), -90, Fraction(-1, 50), 3, 0, 1, 0],
        [0, 0, 1, 0, 0, 0, 1],
    ]
    a = [[int(x * 100) for x in r] for r in a]
    b = [0, 0, 100]
    res = find_feasible(a, b)
    assert res.feasible and check_point(a, b, res.x)


def test_checkers_reject_bad_certificates():
    a, b = [[1, 1]], [2]
    assert check_point(a, b, (Fraction(1), Fraction(1)))
    assert not check_point(a, b, (Fraction(3), Fraction(-1)))
    assert not check_farkas(a, b, (Fraction(1),))
    res = find_feasible([[1, 1]], [-1])
    assert not res.feasible and check_farkas([[1, 1]], [-1], res.farkas)
