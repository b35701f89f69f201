# In tests/test_padic_core.py

import math
from fractions import Fraction

import numpy as np
import pytest

from padiclab.lib.exceptions import (
    BaseMismatchError,
    InvalidPrimeError,
    LiteralParseError,
    PrecisionExhaustedError,
    UnsupportedBaseError,
)
from padiclab.lib.padic_core import (
    PAdicApprox,
    PrimeBase,
    add,
    approximate,
    distance,
    format_literal,
    from_digits,
    hensel_sqrt,
    imaginary_unit,
    is_prime,
    mul,
    norm,
    parse_literal,
    parse_rational,
    render,
    sqrt_mod_prime,
    to_digits,
    valuation,
)


@pytest.mark.parametrize("n", [2, 3, 5, 7, 13, 1997, 2**61 - 1])
def test_is_prime_accepts_primes(n):
    assert is_prime(n)


@pytest.mark.parametrize("n", [-7, 0, 1, 4, 561, 1105, 2**61 + 1])
def test_is_prime_rejects_composites(n):
    assert not is_prime(n)


@pytest.mark.parametrize("p", [0, 1, 4, 9, 2**64 + 13])
def test_prime_base_rejects_non_primes(p):
    with pytest.raises(InvalidPrimeError):
        PrimeBase(p)


def test_valuation_and_norm():
    assert valuation(12, 2) == 2
    assert valuation(Fraction(1, 12), 2) == -2
    assert valuation(Fraction(5, 3), 3) == -1
    assert valuation(0, 5) == math.inf
    assert norm(12, 2) == Fraction(1, 4)
    assert norm(Fraction(5, 3), 3) == 3
    assert norm(0, 7) == 0


def test_distance_is_ultrametric():
    assert distance(5, 1, 2) == Fraction(1, 4)
    a, b, c = Fraction(1, 3), Fraction(7, 5), Fraction(-2)
    assert distance(a, c, 3) <= max(distance(a, b, 3), distance(b, c, 3))


def test_to_digits_of_one_third():
    x = to_digits(Fraction(1, 3), 2, 6)
    assert x.valuation == 0
    assert list(x.digits) == [1, 1, 0, 1, 0, 1]
    assert render(x) == "...101011"


def test_minus_one_is_all_top_digits(prime):
    x = to_digits(-1, prime, 5)
    assert x.digits == (prime - 1,) * 5
    assert from_digits(x) == prime**5 - 1


def test_negative_valuation_expansion():
    x = to_digits(Fraction(1, 2), 2, 3)
    assert (x.valuation, x.digits) == (-1, (1, 0, 0))
    assert x.to_rational() == Fraction(1, 2)
    assert render(x) == "...00,1"


def test_truncation_is_close_in_the_metric():
    q = Fraction(-7, 9)
    x = to_digits(q, 5, 8)
    assert distance(x.to_rational(), q, 5) <= Fraction(1, 5**8)


def test_digit_and_leading_zero_checks():
    base = PrimeBase(3)
    with pytest.raises(ValueError):
        PAdicApprox(base, 0, (3, 1))
    with pytest.raises(ValueError):
        PAdicApprox(base, 0, (0, 1))


def test_addition_can_cancel_to_zero():
    total = to_digits(1, 2, 4) + to_digits(-1, 2, 4)
    assert total.is_zero
    assert total.absolute_precision == 4


def test_multiplication_keeps_relative_precision():
    product = to_digits(2, 3, 4) * to_digits(3, 3, 4)
    assert product.valuation == 1
    assert product.digits == (2, 0, 0, 0)


def test_division_tracks_valuations():
    quotient = to_digits(1, 3, 4) / to_digits(3, 3, 4)
    assert quotient.valuation == -1
    assert quotient.to_rational() == Fraction(1, 3)


def test_division_by_vanishing_value():
    zero = to_digits(1, 2, 4) - to_digits(1, 2, 4)
    with pytest.raises(PrecisionExhaustedError):
        to_digits(1, 2, 4) / zero


def test_mixed_bases_are_rejected():
    with pytest.raises(BaseMismatchError):
        to_digits(1, 2, 4) + to_digits(1, 3, 4)


def test_arithmetic_matches_rationals():
    a, b = Fraction(2, 7), Fraction(-3, 5)
    x, y = to_digits(a, 3, 10), to_digits(b, 3, 10)
    for approx, exact in [(x + y, a + b), (x - y, a - b), (x * y, a * b), (x / y, a / b)]:
        assert distance(approx.to_rational(), exact, 3) <= Fraction(1, 3**approx.absolute_precision)


def test_approximate_cuts_at_absolute_position():
    x = approximate(Fraction(1, 3), 2, 4)
    assert x.digits == (1, 1, 0, 1)
    assert approximate(16, 2, 4).is_zero


def test_sqrt_mod_prime():
    assert sqrt_mod_prime(4, 5) == 2
    assert sqrt_mod_prime(2, 5) is None
    assert sqrt_mod_prime(0, 11) == 0
    root = sqrt_mod_prime(10, 13)
    assert root is not None and root * root % 13 == 10


def test_hensel_lifts_square_root_of_minus_one():
    root = hensel_sqrt(-1, 5, 6)
    assert root is not None
    assert root.digits[0] == 2
    assert root.unit_integer() ** 2 % 5**6 == 5**6 - 1


def test_hensel_root_of_a_square():
    root = hensel_sqrt(Fraction(4, 9), 7, 6)
    assert root is not None
    squared = root * root
    assert distance(squared.to_rational(), Fraction(4, 9), 7) <= Fraction(1, 7**6)


@pytest.mark.parametrize("value, p", [(2, 5), (5, 5), (Fraction(3, 25), 5)])
def test_hensel_reports_missing_roots(value, p):
    assert hensel_sqrt(value, p, 4) is None


def test_hensel_does_not_support_two():
    with pytest.raises(UnsupportedBaseError):
        hensel_sqrt(17, 2, 4)


def test_imaginary_unit():
    i = imaginary_unit(13, 5)
    assert (i * i + to_digits(1, 13, 5)).is_zero
    with pytest.raises(UnsupportedBaseError):
        imaginary_unit(7, 5)


def test_parse_rational():
    assert parse_rational("5/3") == Fraction(5, 3)
    assert parse_rational(" -1 ") == -1
    assert parse_rational("+4/6") == Fraction(2, 3)


@pytest.mark.parametrize(
    "text, position",
    [("12/x", 3), ("1/0", 2), ("a", 0), ("", 0)],
)
def test_parse_rational_reports_position(text, position):
    with pytest.raises(LiteralParseError) as excinfo:
        parse_rational(text)
    assert excinfo.value.position == position


def test_literal_form():
    x = to_digits(-1, 2, 4)
    assert format_literal(x) == "p:2 v:0 d:1,1,1,1"
    assert parse_literal("p:2 v:0 d:1,1,1,1") == x
    y = to_digits(Fraction(5, 9), 3, 5)
    assert parse_literal(format_literal(y)) == y


@pytest.mark.parametrize(
    "text",
    ["p:2 v:0", "p:2 v:0 d:1,2", "p:2 v:x d:1", "p:2 q:1 d:1", "p:2 p:3 v:0 d:1"],
)
def test_parse_literal_rejects_malformed(text):
    with pytest.raises(LiteralParseError):
        parse_literal(text)


# -------------Properties over random rationals---------------

PROPERTY_PRIMES = [2, 3, 5, 1997]


def random_rationals(rng: np.random.Generator, count: int, p: int, nonzero: bool = False) -> list[Fraction]:
    """Rationals with numerators and denominators up to 10^6, shifted by p^-3 .. p^3."""
    low = 1 if nonzero else 0
    numerators = rng.integers(low, 10**6, size=count) * rng.choice([-1, 1], size=count)
    denominators = rng.integers(1, 10**6, size=count)
    shifts = rng.integers(-3, 4, size=count)
    values = []
    for numerator, denominator, shift in zip(numerators.tolist(), denominators.tolist(), shifts.tolist()):
        if shift >= 0:
            values.append(Fraction(numerator * p**shift, denominator))
        else:
            values.append(Fraction(numerator, denominator * p**-shift))
    return values


@pytest.mark.parametrize("p", PROPERTY_PRIMES)
@pytest.mark.parametrize("pairs", [2_000, pytest.param(100_000, marks=pytest.mark.slow)])
def test_norm_is_ultrametric_and_multiplicative(p, pairs):
    rng = np.random.default_rng(p)
    xs, ys = random_rationals(rng, pairs, p), random_rationals(rng, pairs, p)
    ultrametric = []
    multiplicative = []
    for x, y in zip(xs, ys, strict=True):
        nx, ny = norm(x, p), norm(y, p)
        if norm(x + y, p) > max(nx, ny):
            ultrametric.append((x, y))
        if norm(x * y, p) != nx * ny:
            multiplicative.append((x, y))
    assert ultrametric == []
    assert multiplicative == []


@pytest.mark.parametrize("p", PROPERTY_PRIMES)
def test_digit_expansion_is_congruent_to_its_value(p):
    rng = np.random.default_rng(100 + p)
    values = random_rationals(rng, 2_000, p, nonzero=True)
    precisions = rng.integers(1, 13, size=len(values)).tolist()
    for q, precision in zip(values, precisions, strict=True):
        x = to_digits(q, p, precision)
        assert x.valuation == valuation(q, p)
        assert x.digits[0] != 0
        assert distance(from_digits(x), q, p) <= Fraction(p) ** -x.absolute_precision


@pytest.mark.parametrize("p", PROPERTY_PRIMES)
def test_add_and_mul_commute_with_expansion(p):
    rng = np.random.default_rng(200 + p)
    xs = random_rationals(rng, 1_000, p, nonzero=True)
    ys = random_rationals(rng, 1_000, p, nonzero=True)
    precisions = rng.integers(1, 13, size=len(xs)).tolist()
    for x, y, precision in zip(xs, ys, precisions, strict=True):
        a, b = to_digits(x, p, precision), to_digits(y, p, precision)
        total = add(a, b)
        assert total.absolute_precision == min(a.absolute_precision, b.absolute_precision)
        assert distance(total.to_rational(), x + y, p) <= Fraction(p) ** -total.absolute_precision
        product = mul(a, b)
        assert product.absolute_precision == valuation(x * y, p) + precision
        assert distance(product.to_rational(), x * y, p) <= Fraction(p) ** -product.absolute_precision
