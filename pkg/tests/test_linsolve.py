"""Exact linear solving over fields and componentwise over products."""

from fractions import Fraction

import pytest

from skewlie.errors import UnsupportedOperationError
from skewlie.linsolve import (
    INCONSISTENT,
    UNDERDETERMINED,
    UNIQUE,
    LinearSystem,
    Solution,
    solve,
)
from skewlie.rings import PolynomialRing, PrimeField, ProductRing, Rationals

Q = Rationals()
G5 = PrimeField(5)


def F(x):
    return Fraction(x)


def test_unique_solution_rationals():
    # x + y = 3, x - y = 1  ->  x = 2, y = 1
    sys = LinearSystem(Q, 2, [([F(1), F(1)], F(3)), ([F(1), F(-1)], F(1))])
    sol = solve(sys)
    assert sol.status == UNIQUE
    assert sol.values == [F(2), F(1)]
    assert sol.ok


def test_unique_solution_prime_field():
    # over GF(5): x + 2y = 0, 3x + 4y = 1  ->  x = 1, y = 2  (checked by hand)
    sys = LinearSystem(G5, 2, [([1, 2], 0), ([3, 4], 1)])
    sol = solve(sys)
    assert sol.status == UNIQUE
    assert sol.values == [1, 2]
    assert (1 + 2 * 2) % 5 == 0
    assert (3 * 1 + 4 * 2) % 5 == 1


def test_inconsistent_system():
    sys = LinearSystem(Q, 2, [([F(1), F(1)], F(1)), ([F(2), F(2)], F(3))])
    sol = solve(sys)
    assert sol.status == INCONSISTENT
    assert not sol.ok
    assert sol.values is None


def test_underdetermined_zeroes_free_variables():
    """Free variables are pinned to zero so answers are reproducible."""
    sys = LinearSystem(Q, 3, [([F(1), F(1), F(0)], F(5))])
    sol = solve(sys)
    assert sol.status == UNDERDETERMINED
    assert sol.ok
    # pivot on the first column, the rest are free and zeroed
    assert sol.values == [F(5), F(0), F(0)]


def test_deterministic_repeat():
    rows = [([2, 1, 4], 3), ([1, 0, 2], 1)]
    a = solve(LinearSystem(G5, 3, rows))
    b = solve(LinearSystem(G5, 3, rows))
    assert a.status == b.status
    assert a.values == b.values


def test_solution_satisfies_system():
    import random

    rng = random.Random(42)
    for _ in range(50):
        m = rng.randint(1, 5)
        k = rng.randint(1, 5)
        rows = []
        for _ in range(m):
            rows.append(([rng.randrange(5) for _ in range(k)], rng.randrange(5)))
        sol = solve(LinearSystem(G5, k, rows))
        if sol.ok:
            for coeffs, rhs in rows:
                acc = 0
                for c, v in zip(coeffs, sol.values):
                    acc = (acc + c * v) % 5
                assert acc == rhs


def test_zero_rows_and_empty_system():
    sol = solve(LinearSystem(Q, 2, []))
    assert sol.status == UNDERDETERMINED
    assert sol.values == [F(0), F(0)]
    sol = solve(LinearSystem(Q, 2, [([F(0), F(0)], F(0))]))
    assert sol.ok
    sol = solve(LinearSystem(Q, 2, [([F(0), F(0)], F(1))]))
    assert sol.status == INCONSISTENT


def test_product_ring_componentwise():
    pr = ProductRing(PrimeField(3), 2)
    # component 0: x = 1; component 1: x = 2
    sys = LinearSystem(pr, 1, [([(1, 1)], (1, 2))])
    sol = solve(sys)
    assert sol.ok
    assert sol.values == [(1, 2)]


def test_product_ring_inconsistent_in_one_component():
    pr = ProductRing(PrimeField(3), 2)
    # component 0 solvable, component 1 reads 0 = 1
    sys = LinearSystem(pr, 1, [([(1, 0)], (1, 1))])
    sol = solve(sys)
    assert sol.status == INCONSISTENT


def test_product_of_products():
    pr = ProductRing(ProductRing(PrimeField(3), 2), 2)
    one = pr.one()
    sys = LinearSystem(pr, 1, [([one], one)])
    sol = solve(sys)
    assert sol.ok
    assert sol.values == [one]


def test_polynomial_ring_unsupported():
    pr = PolynomialRing(("t",), Rationals())
    sys = LinearSystem(pr, 1, [([pr.one()], pr.one())])
    with pytest.raises(UnsupportedOperationError):
        solve(sys)


def test_row_length_validation():
    with pytest.raises(ValueError):
        LinearSystem(Q, 2, [([F(1)], F(0))])


def test_solution_ok_property():
    assert Solution(UNIQUE, [F(1)]).ok
    assert Solution(UNDERDETERMINED, [F(0)]).ok
    assert not Solution(INCONSISTENT, None).ok
