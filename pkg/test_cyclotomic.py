from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gradalg.cyclotomic import (
    CyclotomicNumber,
    coefficient_field,
    cyclotomic_polynomial,
    euler_phi,
    invert,
    is_irreducible,
    matrix_rank,
    nullspace,
    solve_linear_system,
    zeta_power,
)


@pytest.mark.parametrize("n, coefficients", [
    (1, (-1, 1)),
    (2, (1, 1)),
    (4, (1, 0, 1)),
    (6, (1, -1, 1)),
    (8, (1, 0, 0, 0, 1)),
    (12, (1, 0, -1, 0, 1)),
])
def test_cyclotomic_polynomials(n, coefficients):
    assert cyclotomic_polynomial(n) == coefficients
    assert len(coefficients) - 1 == euler_phi(n)


def test_roots_of_unity_relations():
    assert zeta_power(4, 2) == -1
    assert zeta_power(3, 1) + zeta_power(3, 2) == -1
    assert zeta_power(8, 8) == 1
    assert zeta_power(5, 1) ** 5 == 1
    assert zeta_power(6, -1) == zeta_power(6, 5)


def test_mixed_conductors_are_promoted():
    assert zeta_power(3, 1) * zeta_power(4, 1) == zeta_power(12, 7)
    assert zeta_power(2, 1).promote(4) == zeta_power(4, 2)
    assert (zeta_power(3, 1) + zeta_power(4, 1)).n == 12


def test_conjugation_inverts_roots():
    assert zeta_power(5, 1).conj() == zeta_power(5, 4)
    x = zeta_power(8, 1) + 3
    assert (x * x.conj()).conj() == x * x.conj()


cyclotomic_numbers = st.integers(min_value=1, max_value=12).flatmap(
    lambda n: st.lists(
        st.fractions(min_value=-5, max_value=5, max_denominator=4),
        min_size=euler_phi(n), max_size=euler_phi(n),
    ).map(lambda coeffs: CyclotomicNumber(n, tuple(coeffs)))
)


@given(cyclotomic_numbers)
def test_nonzero_numbers_are_invertible(x):
    if x.is_zero():
        with pytest.raises(ZeroDivisionError):
            invert(x)
    else:
        assert x * invert(x) == 1
        assert x / x == 1


@given(cyclotomic_numbers, cyclotomic_numbers)
def test_field_operations_distribute(x, y):
    assert x * (x + y) == x * x + x * y
    assert (x - y) + y == x


def test_to_complex_matches_the_root():
    value = zeta_power(4, 1).to_complex()
    assert abs(value - 1j) < 1e-12
    assert str(CyclotomicNumber.from_rational(3, Fraction(1, 2))) == "1/2"


def test_solve_linear_system_over_q():
    solution = solve_linear_system([[1, 1], [1, -1]], [2, 0])
    assert solution.consistent
    assert solution.particular == [1, 1]
    assert solution.nullspace == []
    assert not solve_linear_system([[1], [1]], [1, 2]).consistent


def test_solve_linear_system_over_a_cyclotomic_field():
    i = zeta_power(4, 1)
    solution = solve_linear_system([[1, i]], [1 + i])
    assert solution.consistent
    x, y = solution.particular
    assert x + i * y == 1 + i
    assert len(solution.nullspace) == 1


def test_nullspace_and_rank():
    i = zeta_power(4, 1)
    basis = nullspace([[1, i]])
    assert len(basis) == 1
    v = basis[0]
    assert v[0] + i * v[1] == 0
    assert matrix_rank([[1, 2], [2, 4]]) == 1
    assert matrix_rank([[1, i], [i, -1]]) == 1
    assert matrix_rank([[1, 0], [0, 1]]) == 2


def test_irreducibility_depends_on_the_roots_available():
    one, zero = CyclotomicNumber.one(1), CyclotomicNumber.zero(1)
    # x^2 + 1 splits once zeta_4 is present
    assert is_irreducible([one, zero, one], 1)
    assert not is_irreducible([one, zero, one], 4)
    # x^2 - zeta_4 splits only over Q(zeta_8)
    square = [-zeta_power(4, 1), CyclotomicNumber.zero(4), CyclotomicNumber.one(4)]
    assert is_irreducible(square, 4)
    assert not is_irreducible(square, 8)


def test_field_elements_follow_the_power_basis():
    x = zeta_power(5, 2) + Fraction(1, 3)
    assert CyclotomicNumber.from_field(5, x.to_field()) == x
    K = coefficient_field(5)
    assert CyclotomicNumber.from_field(5, x.to_field() * K([1, 0])) == x * zeta_power(5, 1)
    assert coefficient_field(2).is_QQ
