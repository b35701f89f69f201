# In src/padiclab/lib/padic_core.py
"""
Exact arithmetic on rationals and finite-precision p-adic numbers.

A PAdicApprox stores the canonical expansion x = sum a_j p^(v+j) truncated
after `precision` digits, i.e. x is known modulo p^(v+precision). Every ring
operation tracks the precision it can justify from its operands and never
reports more digits than that.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from padiclab.lib.constants import (
    LITERAL_ELLIPSIS,
    MAX_PRIME_EXCLUSIVE,
    MILLER_RABIN_WITNESSES,
)
from padiclab.lib.exceptions import (
    BaseMismatchError,
    InvalidPrimeError,
    LiteralParseError,
    PrecisionExhaustedError,
    UnsupportedBaseError,
)

ExactRational = Fraction
INFINITE_VALUATION = math.inf

_DIGIT_SYMBOLS = "0123456789abcdefghijklmnopqrstuvwxyz"


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for every n < 2**64."""
    if n < 2:
        return False
    for small in MILLER_RABIN_WITNESSES:
        if n % small == 0:
            return n == small
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for witness in MILLER_RABIN_WITNESSES:
        x = pow(witness, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimeBase:
    """The prime p fixing the p-adic topology."""

    p: int

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or isinstance(self.p, bool):
            raise InvalidPrimeError(f"Base must be an integer, got {self.p!r}")
        if self.p >= MAX_PRIME_EXCLUSIVE:
            raise InvalidPrimeError(f"Base {self.p} is outside the supported range (< 2**64)")
        if not is_prime(self.p):
            raise InvalidPrimeError(f"Base {self.p} is not prime")

    def __int__(self) -> int:
        return self.p

    def __str__(self) -> str:
        return str(self.p)


def as_base(base: "PrimeBase | int") -> PrimeBase:
    return base if isinstance(base, PrimeBase) else PrimeBase(base)


def _int_valuation(n: int, p: int) -> int:
    n = abs(n)
    count = 0
    while n % p == 0:
        n //= p
        count += 1
    return count


def valuation(q: Fraction | int, base: PrimeBase | int) -> int | float:
    """Return ord_p(q); +inf for q = 0."""
    q = Fraction(q)
    p = as_base(base).p
    if q == 0:
        return INFINITE_VALUATION
    return _int_valuation(q.numerator, p) - _int_valuation(q.denominator, p)


def _power(p: int, exponent: int) -> Fraction:
    return Fraction(p) ** exponent


def norm(q: Fraction | int, base: PrimeBase | int) -> Fraction:
    """Return |q|_p = p^(-ord_p(q)) as an exact rational."""
    v = valuation(q, base)
    if v == INFINITE_VALUATION:
        return Fraction(0)
    return _power(as_base(base).p, -int(v))


def distance(a: Fraction | int, b: Fraction | int, base: PrimeBase | int) -> Fraction:
    """The p-adic metric |a - b|_p."""
    return norm(Fraction(a) - Fraction(b), base)


def _int_digits(value: int, p: int, count: int) -> tuple[int, ...]:
    digits = []
    for _ in range(count):
        value, digit = divmod(value, p)
        digits.append(digit)
    return tuple(digits)


@dataclass(frozen=True)
class PAdicApprox:
    """A p-adic number known to `precision` digits, least-significant first."""

    base: PrimeBase
    valuation: int
    digits: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "digits", tuple(self.digits))
        p = self.base.p
        for position, digit in enumerate(self.digits):
            if not 0 <= digit < p:
                raise ValueError(f"Digit {digit} at position {position} is outside [0, {p - 1}]")
        if any(self.digits) and self.digits[0] == 0:
            raise ValueError("Nonzero p-adic value must have a nonzero leading digit")

    @property
    def p(self) -> int:
        return self.base.p

    @property
    def precision(self) -> int:
        return len(self.digits)

    @property
    def absolute_precision(self) -> int:
        """The value is known modulo p^absolute_precision."""
        return self.valuation + self.precision

    @property
    def is_zero(self) -> bool:
        """True when the value is indistinguishable from zero at its precision."""
        return not any(self.digits)

    def unit_integer(self) -> int:
        return sum(digit * self.p**j for j, digit in enumerate(self.digits))

    def to_rational(self) -> Fraction:
        return from_digits(self)

    def __add__(self, other: "PAdicApprox") -> "PAdicApprox":
        return add(self, other)

    def __sub__(self, other: "PAdicApprox") -> "PAdicApprox":
        return sub(self, other)

    def __mul__(self, other: "PAdicApprox") -> "PAdicApprox":
        return mul(self, other)

    def __truediv__(self, other: "PAdicApprox") -> "PAdicApprox":
        return div(self, other)

    def __neg__(self) -> "PAdicApprox":
        return negate(self)

    def __str__(self) -> str:
        return render(self)


def to_digits(q: Fraction | int, base: PrimeBase | int, precision: int) -> PAdicApprox:
    """Expand q into its canonical p-adic digits, `precision` digits from its valuation."""
    if precision < 1:
        raise ValueError(f"precision must be positive, got {precision}")
    q = Fraction(q)
    base = as_base(base)
    p = base.p
    if q == 0:
        return PAdicApprox(base, 0, (0,) * precision)
    v = int(valuation(q, base))
    unit = q / _power(p, v)
    modulus = p**precision
    # Negative units land on their "infinite complement" expansion here.
    residue = unit.numerator * pow(unit.denominator, -1, modulus) % modulus
    return PAdicApprox(base, v, _int_digits(residue, p, precision))


def from_digits(x: PAdicApprox) -> Fraction:
    """Evaluate the truncated expansion sum a_j p^(v+j) exactly."""
    return Fraction(x.unit_integer()) * _power(x.p, x.valuation)


def _reduce(q: Fraction, base: PrimeBase, absolute_precision: int, floor: int) -> PAdicApprox:
    """Represent q modulo p^absolute_precision."""
    v = valuation(q, base)
    if v >= absolute_precision:
        start = min(floor, absolute_precision)
        return PAdicApprox(base, start, (0,) * (absolute_precision - start))
    v = int(v)
    return to_digits(q, base, absolute_precision - v)


def approximate(q: Fraction | int, base: PrimeBase | int, absolute_precision: int) -> PAdicApprox:
    """Truncate q to the digits below position `absolute_precision`."""
    return _reduce(Fraction(q), as_base(base), absolute_precision, min(0, absolute_precision))


def _check_same_base(a: PAdicApprox, b: PAdicApprox) -> PrimeBase:
    if a.base != b.base:
        raise BaseMismatchError(f"Operands use different primes: {a.p} and {b.p}")
    return a.base


def add(a: PAdicApprox, b: PAdicApprox) -> PAdicApprox:
    base = _check_same_base(a, b)
    absolute = min(a.absolute_precision, b.absolute_precision)
    return _reduce(a.to_rational() + b.to_rational(), base, absolute, min(a.valuation, b.valuation))


def negate(a: PAdicApprox) -> PAdicApprox:
    return _reduce(-a.to_rational(), a.base, a.absolute_precision, a.valuation)


def sub(a: PAdicApprox, b: PAdicApprox) -> PAdicApprox:
    base = _check_same_base(a, b)
    absolute = min(a.absolute_precision, b.absolute_precision)
    return _reduce(a.to_rational() - b.to_rational(), base, absolute, min(a.valuation, b.valuation))


def mul(a: PAdicApprox, b: PAdicApprox) -> PAdicApprox:
    base = _check_same_base(a, b)
    # x(1 + O(p^k)) * y(1 + O(p^l)) is known to relative precision min(k, l).
    absolute = min(a.valuation + b.absolute_precision, b.valuation + a.absolute_precision)
    return _reduce(a.to_rational() * b.to_rational(), base, absolute, a.valuation + b.valuation)


def div(a: PAdicApprox, b: PAdicApprox) -> PAdicApprox:
    base = _check_same_base(a, b)
    if b.is_zero:
        raise PrecisionExhaustedError(
            f"Divisor is zero to its precision O({b.p}^{b.absolute_precision})"
        )
    if a.is_zero:
        absolute = a.absolute_precision - b.valuation
    else:
        absolute = a.valuation - b.valuation + min(a.precision, b.precision)
    return _reduce(a.to_rational() / b.to_rational(), base, absolute, a.valuation - b.valuation)


def sqrt_mod_prime(a: int, p: int) -> int | None:
    """Tonelli-Shanks: the smaller square root of a modulo an odd prime p, or None."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return min(r, p - r)


def hensel_sqrt(a: Fraction | int, base: PrimeBase | int, precision: int) -> PAdicApprox | None:
    """
    Square root of a in Q_p lifted from a root modulo p.

    Returns None when no root exists (odd valuation or non-residue unit).
    The branch whose leading digit is the smaller residue is returned; the
    square matches a to absolute precision valuation(a) + precision.
    """
    base = as_base(base)
    p = base.p
    if p == 2:
        raise UnsupportedBaseError("Square roots for p = 2 need the mod-8 variant and are not supported")
    if precision < 1:
        raise ValueError(f"precision must be positive, got {precision}")
    a = Fraction(a)
    if a == 0:
        return to_digits(0, base, precision)
    v = int(valuation(a, base))
    if v % 2:
        return None
    unit = a / _power(p, v)
    modulus = p**precision
    target = unit.numerator * pow(unit.denominator, -1, modulus) % modulus
    root = sqrt_mod_prime(target, p)
    if root is None:
        return None
    exponent = 1
    while exponent < precision:
        exponent = min(2 * exponent, precision)
        lift_modulus = p**exponent
        root = (root - (root * root - target) * pow(2 * root, -1, lift_modulus)) % lift_modulus
    return PAdicApprox(base, v // 2, _int_digits(root, p, precision))


def imaginary_unit(base: PrimeBase | int, precision: int) -> PAdicApprox:
    """i_p = sqrt(-1), which lies in Q_p exactly when p = 1 mod 4."""
    base = as_base(base)
    root = hensel_sqrt(-1, base, precision) if base.p != 2 else None
    if root is None:
        raise UnsupportedBaseError(f"-1 has no square root in Q_{base.p} (need p = 1 mod 4)")
    return root


# -------------Rendering and literals---------------


def _digit_symbol(digit: int, p: int) -> str:
    if p <= len(_DIGIT_SYMBOLS):
        return _DIGIT_SYMBOLS[digit]
    return f"[{digit}]"


def render(x: PAdicApprox) -> str:
    """Render as ...a_k...a_0,a_-1...a_-n, most-significant known digit first."""
    if x.precision == 0:
        return LITERAL_ELLIPSIS
    high = x.absolute_precision - 1
    low = min(x.valuation, 0)

    def digit_at(position: int) -> str:
        if position < x.valuation:
            return "0"
        return _digit_symbol(x.digits[position - x.valuation], x.p)

    integer_part = "".join(digit_at(pos) for pos in range(high, -1, -1))
    if low >= 0:
        return LITERAL_ELLIPSIS + integer_part
    unknown = "?" * max(0, -1 - high)
    fraction_part = "".join(digit_at(pos) for pos in range(min(high, -1), low - 1, -1))
    return f"{LITERAL_ELLIPSIS}{integer_part},{unknown}{fraction_part}"


def format_literal(x: PAdicApprox) -> str:
    """The CLI literal form `p:<prime> v:<valuation> d:<a0,a1,...>`."""
    return f"p:{x.p} v:{x.valuation} d:{','.join(str(d) for d in x.digits)}"


def _first_bad_position(text: str, allowed: str, offset: int = 0) -> int:
    for index, char in enumerate(text):
        if char not in allowed:
            return offset + index
    return offset + len(text)


def parse_rational(text: str) -> Fraction:
    """Parse `<num>/<den>` or a plain integer into an exact rational."""
    stripped = text.strip()
    lead = len(text) - len(text.lstrip())
    if not stripped:
        raise LiteralParseError("Empty rational literal", text, 0)
    numerator_text, slash, denominator_text = stripped.partition("/")
    sign = numerator_text[:1] if numerator_text[:1] in "+-" else ""
    magnitude = numerator_text[len(sign):]
    if not magnitude.isdigit():
        position = _first_bad_position(magnitude, "0123456789", lead + len(sign))
        raise LiteralParseError("Expected digits in numerator", text, position)
    if not slash:
        return Fraction(int(numerator_text))
    denominator_offset = lead + len(numerator_text) + 1
    if not denominator_text.isdigit():
        position = _first_bad_position(denominator_text, "0123456789", denominator_offset)
        raise LiteralParseError("Expected digits in denominator", text, position)
    if int(denominator_text) == 0:
        raise LiteralParseError("Zero denominator", text, denominator_offset)
    return Fraction(int(numerator_text), int(denominator_text))


def parse_literal(text: str) -> PAdicApprox:
    """Parse `p:<prime> v:<valuation> d:<a0,a1,...>` (least-significant digit first)."""
    fields: dict[str, tuple[str, int]] = {}
    position = 0
    for token in text.split():
        start = text.index(token, position)
        position = start + len(token)
        key, colon, value = token.partition(":")
        if not colon or key not in ("p", "v", "d"):
            raise LiteralParseError("Expected one of p:, v:, d:", text, start)
        if key in fields:
            raise LiteralParseError(f"Duplicate field {key}:", text, start)
        fields[key] = (value, start + len(key) + 1)
    for key in ("p", "v", "d"):
        if key not in fields:
            raise LiteralParseError(f"Missing field {key}:", text, len(text))

    p_text, p_offset = fields["p"]
    if not p_text.isdigit():
        raise LiteralParseError(
            "Expected a prime", text, _first_bad_position(p_text, "0123456789", p_offset)
        )
    v_text, v_offset = fields["v"]
    if not v_text.lstrip("-").isdigit():
        raise LiteralParseError(
            "Expected an integer valuation",
            text,
            _first_bad_position(v_text.lstrip("-"), "0123456789", v_offset + v_text.count("-")),
        )
    d_text, d_offset = fields["d"]
    bad = _first_bad_position(d_text, "0123456789,", d_offset)
    if bad < d_offset + len(d_text):
        raise LiteralParseError("Expected comma-separated digits", text, bad)
    digits = tuple(int(part) for part in d_text.split(",") if part)
    base = PrimeBase(int(p_text))
    try:
        return PAdicApprox(base, int(v_text), digits)
    except ValueError as e:
        raise LiteralParseError(str(e), text, d_offset) from e
