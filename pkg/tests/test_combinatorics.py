from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hullwalk.combinatorics import (
    IntPolynomial,
    alternating_tail,
    b_poly,
    bridge_face_poly,
    corrupted_stirling_first,
    hat_c,
    joint_absorption_poly,
    ordered_bell,
    poly_eval,
    poly_mul,
    rising_factorial_poly,
    shifted_rising_poly,
    stirling_first,
    stirling_second,
    walk_face_poly,
)
from oracles import set_partitions, stirling_first_brute, stirling_second_brute

small_polys = st.lists(st.integers(-50, 50), max_size=6).map(IntPolynomial)


@pytest.mark.parametrize("n", range(0, 8))
def test_stirling_first_matches_cycle_enumeration(n):
    for m in range(0, n + 1):
        assert stirling_first(n, m) == stirling_first_brute(n, m)


@pytest.mark.parametrize("n", range(0, 8))
def test_stirling_second_matches_partition_enumeration(n):
    for m in range(0, n + 1):
        assert stirling_second(n, m) == stirling_second_brute(n, m)


def test_stirling_known_values():
    assert stirling_first(4, 2) == 11
    assert stirling_second(4, 2) == 7
    assert stirling_first(7, 7) == stirling_second(7, 7) == 1
    assert stirling_first(5, 0) == 0
    assert stirling_first(0, 0) == 1


def test_stirling_out_of_range_is_zero():
    assert stirling_first(3, 5) == 0
    assert stirling_first(-1, 0) == 0
    assert stirling_second(2, -1) == 0


def test_stirling_first_large_second_column():
    # c(n, 2) = (n-1)! H_{n-1}
    n = 2001
    h = sum(Fraction(1, j) for j in range(1, n))
    assert stirling_first(n, 2) == factorial(n - 1) * h


@given(st.integers(1, 30))
def test_stirling_rows_sum_to_factorial_and_bell(n):
    assert sum(stirling_first(n, m) for m in range(n + 1)) == factorial(n)
    assert sum(factorial(m) * stirling_second(n, m) for m in range(n + 1)) == ordered_bell(n)


def test_corruption_hook_is_scoped():
    good = stirling_first(5, 2)
    with corrupted_stirling_first(5, 2, good + 1):
        assert stirling_first(5, 2) == good + 1
    assert stirling_first(5, 2) == good


def test_b_poly_coefficients():
    assert b_poly(2) == [3, 4, 1]
    assert b_poly(0) == [1]
    assert poly_eval(b_poly(3), 1) == 2**3 * factorial(3)


def test_rising_polys():
    assert rising_factorial_poly(3) == [0, 2, 3, 1]
    for n in range(1, 8):
        assert list(rising_factorial_poly(n)) == [stirling_first(n, m) for m in range(n + 1)]
    assert shifted_rising_poly(1) == [1]
    assert shifted_rising_poly(3) == [2, 3, 1]


def test_hat_c_and_ordered_bell():
    assert hat_c(3) == 6
    assert ordered_bell(3) == 13
    # ordered Bell numbers count ordered set partitions
    for N in range(1, 6):
        parts = list(set_partitions(list(range(N))))
        assert ordered_bell(N) == sum(factorial(len(p)) for p in parts)
        assert hat_c(N) == sum(factorial(len(p) - 1) for p in parts)


def test_face_polys():
    assert walk_face_poly(2, (1,)) == b_poly(1) * b_poly(1)
    assert bridge_face_poly(4, (0, 2)) == IntPolynomial([1, 1]) * IntPolynomial([1, 1])
    with pytest.raises(ValueError):
        walk_face_poly(3, (2, 1))
    with pytest.raises(ValueError):
        bridge_face_poly(3, (0, 3))


def test_joint_absorption_poly():
    assert joint_absorption_poly([2], []) == [3, 4, 1]
    assert joint_absorption_poly([], [3]) == [2, 3, 1]
    with pytest.raises(ValueError):
        joint_absorption_poly([], [1])
    with pytest.raises(ValueError):
        joint_absorption_poly([], [])


def test_alternating_tail():
    p = IntPolynomial([1, 2, 3, 4])
    assert alternating_tail(p, 3) == 4 + 2
    assert alternating_tail(p, 2) == 3 + 1
    assert alternating_tail(p, -1) == 0
    assert alternating_tail(p, 9) == 0 + 4 + 2


def test_polynomial_basics():
    p = IntPolynomial([1, 2, 0, 0])
    assert p.degree == 1
    assert p.coeff(7) == 0
    assert p == (1, 2)
    assert IntPolynomial([0, 0]).degree == -1
    assert str(IntPolynomial([3, -4, 1])) == "t^2 - 4*t + 3"
    assert poly_mul((1, 1), (1, 1)) == [1, 2, 1]


@settings(max_examples=60)
@given(small_polys, small_polys, st.integers(-5, 5))
def test_multiplication_is_evaluation_homomorphism(a, b, t):
    assert poly_eval(a * b, t) == poly_eval(a, t) * poly_eval(b, t)
    assert a * b == b * a
    assert poly_eval(a + b, t) == poly_eval(a, t) + poly_eval(b, t)


@given(small_polys, st.fractions(max_denominator=20))
def test_eval_is_exact_on_fractions(p, t):
    expected = sum((Fraction(c) * t**j for j, c in enumerate(p.coeffs)), Fraction(0))
    assert poly_eval(p, t) == expected
