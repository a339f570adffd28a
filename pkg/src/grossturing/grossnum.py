"""Exact arithmetic over grossone-based numbers.

A gross-number is a finite sum of monomials ``c * B^G * G^(r*G + f)`` where
``G`` is grossone, ``c`` is a nonzero rational, ``B >= 1`` is a rational base
and ``r >= 0``, ``f`` are rationals.  Monomials are ordered by the magnitude
key ``(r, B, f)``; the sign of the leading coefficient of a difference decides
every comparison, which gives a decidable total order.

Values are immutable.  Python operators are overloaded, and the module-level
functions (``add``, ``sub``, ``mul``, ``div``, ``pow``, ``compare``) are thin
wrappers kept for callers who prefer a functional style.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Union

__all__ = [
    "GrossError",
    "DivisionByZero",
    "UnsupportedResult",
    "UnsupportedExponent",
    "GrossSyntaxError",
    "GrossExponent",
    "Monomial",
    "GrossNumber",
    "Ordering",
    "Classification",
    "G",
    "ZERO",
    "ONE",
    "LONG_DIVISION_CAP",
    "add",
    "sub",
    "mul",
    "div",
    "pow",
    "compare",
    "classify",
    "parse_gross",
    "format_gross",
]

LONG_DIVISION_CAP = 64

Number = Union[int, Fraction, "GrossNumber"]


class GrossError(ArithmeticError):
    """Base class for gross-number arithmetic failures."""


class DivisionByZero(GrossError, ZeroDivisionError):
    pass


class UnsupportedResult(GrossError):
    """The exact result lies outside the representable set."""


class UnsupportedExponent(GrossError):
    """``pow`` was called with a base/exponent shape it cannot evaluate exactly."""


class GrossSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


def _rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


@dataclass(frozen=True)
class GrossExponent:
    """Exponent ``r*G + f`` of grossone inside a monomial."""

    r: Fraction = Fraction(0)
    f: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "r", _rational(self.r))
        object.__setattr__(self, "f", _rational(self.f))
        if self.r < 0:
            raise UnsupportedResult(f"grossone exponent with negative infinite part {self.r}*G")

    def __add__(self, other: GrossExponent) -> GrossExponent:
        return GrossExponent(self.r + other.r, self.f + other.f)

    def __sub__(self, other: GrossExponent) -> GrossExponent:
        return GrossExponent(self.r - other.r, self.f - other.f)


_UNIT_EXP = GrossExponent()


@dataclass(frozen=True)
class Monomial:
    coeff: Fraction
    base: Fraction = Fraction(1)
    gexp: GrossExponent = _UNIT_EXP

    def __post_init__(self):
        object.__setattr__(self, "coeff", _rational(self.coeff))
        object.__setattr__(self, "base", _rational(self.base))
        if self.coeff == 0:
            raise ValueError("monomial coefficient must be nonzero")
        if self.base < 1:
            raise UnsupportedResult(f"exponential base {self.base} < 1 is not representable")

    @property
    def key(self) -> tuple[Fraction, Fraction, Fraction]:
        """Magnitude key; larger keys dominate smaller ones absolutely."""
        return (self.gexp.r, self.base, self.gexp.f)

    def __mul__(self, other: Monomial) -> Monomial:
        return Monomial(self.coeff * other.coeff, self.base * other.base, self.gexp + other.gexp)

    def __truediv__(self, other: Monomial) -> Monomial:
        return Monomial(self.coeff / other.coeff, self.base / other.base, self.gexp - other.gexp)

    def __neg__(self) -> Monomial:
        return Monomial(-self.coeff, self.base, self.gexp)


_FINITE_KEY = (Fraction(0), Fraction(1), Fraction(0))
_GROSSONE_KEY = (Fraction(0), Fraction(1), Fraction(1))


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


class Classification(NamedTuple):
    kind: str  # "zero" | "finite" | "infinitesimal" | "infinite"
    infinite_part: GrossNumber
    finite_part: GrossNumber
    infinitesimal_part: GrossNumber


def _normalize(monomials: Iterable[Monomial]) -> tuple[Monomial, ...]:
    # Fraction hashing is slow, so like terms are grouped on integer pairs
    acc: dict[tuple[int, ...], list] = {}
    for m in monomials:
        r, b, f = m.key
        ik = (r.numerator, r.denominator, b.numerator, b.denominator, f.numerator, f.denominator)
        slot = acc.get(ik)
        if slot is None:
            acc[ik] = [m.key, m.coeff, m]
        else:
            slot[1] += m.coeff
    merged = sorted((slot for slot in acc.values() if slot[1] != 0), key=lambda slot: slot[0], reverse=True)
    return tuple(m if m.coeff == c else Monomial(c, m.base, m.gexp) for _, c, m in merged)


@dataclass(frozen=True, eq=False)
class GrossNumber:
    """Normalized sum of monomials, stored in strictly decreasing key order.

    ``GrossNumber(3)``, ``GrossNumber(Fraction(1, 2))`` build finite values;
    use :data:`G` and arithmetic for the rest, or :func:`parse_gross`.
    """

    terms: tuple[Monomial, ...] = field(default=())

    def __init__(self, value: Union[int, Fraction, Monomial, Iterable[Monomial], GrossNumber] = 0):
        if isinstance(value, GrossNumber):
            terms = value.terms
        elif isinstance(value, (int, Fraction)):
            terms = (Monomial(value),) if value != 0 else ()
        elif isinstance(value, Monomial):
            terms = (value,)
        else:
            terms = _normalize(value)
        object.__setattr__(self, "terms", terms)

    @classmethod
    def monomial(cls, coeff=1, base=1, r=0, f=0) -> GrossNumber:
        """Build ``coeff * base^G * G^(r*G + f)``."""
        if coeff == 0:
            return ZERO
        return cls(Monomial(coeff, base, GrossExponent(r, f)))

    # -- inspection -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def leading(self) -> Monomial:
        if not self.terms:
            raise ValueError("zero has no leading term")
        return self.terms[0]

    def sign(self) -> int:
        if not self.terms:
            return 0
        return 1 if self.terms[0].coeff > 0 else -1

    def is_rational(self) -> bool:
        """True when the value is an ordinary finite rational number."""
        return not self.terms or (len(self.terms) == 1 and self.terms[0].key == _FINITE_KEY)

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{format_gross(self)} is not a finite rational")
        return self.terms[0].coeff if self.terms else Fraction(0)

    def is_integer(self) -> bool:
        """Conservative integrality test.

        Finite parts must be integers; infinite monomials count as integers
        when they have an integer base and a non-negative integer power of
        grossone (``G/n`` is an integer for every finite ``n``), infinitesimal
        terms never do.
        """
        for m in self.terms:
            k = m.key
            if k == _FINITE_KEY:
                if m.coeff.denominator != 1:
                    return False
            elif k < _FINITE_KEY:
                return False
            elif m.base.denominator != 1 or m.gexp.f.denominator != 1 or m.gexp.f < 0:
                return False
            elif m.gexp.r.denominator != 1:
                return False
        return True

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: Number) -> GrossNumber:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GrossNumber(self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self) -> GrossNumber:
        return GrossNumber(tuple(-m for m in self.terms))

    def __pos__(self) -> GrossNumber:
        return self

    def __sub__(self, other: Number) -> GrossNumber:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Number) -> GrossNumber:
        return _coerce(other) - self

    def __mul__(self, other: Number) -> GrossNumber:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GrossNumber(a * b for a in self.terms for b in other.terms)

    __rmul__ = __mul__

    def __truediv__(self, other: Number) -> GrossNumber:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return div(self, other)

    def __rtruediv__(self, other: Number) -> GrossNumber:
        return div(_coerce(other), self)

    def __pow__(self, other: Number) -> GrossNumber:
        return pow(self, other)

    def __rpow__(self, other: Number) -> GrossNumber:
        return pow(other, self)

    # -- ordering ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.as_rational())
        return hash(self.terms)

    def __lt__(self, other: Number) -> bool:
        return compare(self, other) is Ordering.LESS

    def __le__(self, other: Number) -> bool:
        return compare(self, other) is not Ordering.GREATER

    def __gt__(self, other: Number) -> bool:
        return compare(self, other) is Ordering.GREATER

    def __ge__(self, other: Number) -> bool:
        return compare(self, other) is not Ordering.LESS

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __str__(self) -> str:
        return format_gross(self)

    def __repr__(self) -> str:
        return f"GrossNumber({format_gross(self)!r})"


def _coerce(x):
    if isinstance(x, GrossNumber):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return GrossNumber(x)
    return NotImplemented


def _as_gross(x) -> GrossNumber:
    y = _coerce(x)
    if y is NotImplemented:
        raise TypeError(f"cannot interpret {x!r} as a gross-number")
    return y


ZERO = GrossNumber()
ONE = GrossNumber(1)
G = GrossNumber.monomial(1, 1, 0, 1)


# -- functional API ----------------------------------------------------------


def add(a: Number, b: Number) -> GrossNumber:
    return _as_gross(a) + _as_gross(b)


def sub(a: Number, b: Number) -> GrossNumber:
    return _as_gross(a) - _as_gross(b)


def mul(a: Number, b: Number) -> GrossNumber:
    return _as_gross(a) * _as_gross(b)


def div(a: Number, b: Number) -> GrossNumber:
    """Exact quotient.

    Monomial divisors divide termwise.  Divisors with several terms use
    leading-term long division, which must reach a zero remainder within
    ``LONG_DIVISION_CAP`` eliminations.
    """
    a, b = _as_gross(a), _as_gross(b)
    if b.is_zero():
        raise DivisionByZero("division by zero")
    if len(b.terms) == 1:
        d = b.terms[0]
        return GrossNumber(tuple(m / d for m in a.terms))
    lead = b.terms[0]
    quotient = ZERO
    remainder = a
    for _ in range(LONG_DIVISION_CAP):
        if remainder.is_zero():
            return quotient
        q = GrossNumber(remainder.terms[0] / lead)
        quotient = quotient + q
        remainder = remainder - q * b
    if remainder.is_zero():
        return quotient
    raise UnsupportedResult(
        f"long division of {format_gross(a)} by {format_gross(b)} does not terminate"
        f" within {LONG_DIVISION_CAP} steps"
    )


def _iroot(n: int, k: int) -> int | None:
    """Exact integer k-th root of n >= 0, or None."""
    if n < 2:
        return n
    lo, hi = 1, 1 << (n.bit_length() // k + 1)
    while lo <= hi:
        mid = (lo + hi) // 2
        p = mid**k
        if p == n:
            return mid
        if p < n:
            lo = mid + 1
        else:
            hi = mid - 1
    return None


def _rational_power(b: Fraction, e: Fraction) -> Fraction | None:
    """``b**e`` for rational ``b > 0`` when the result is rational."""
    num = _iroot(b.numerator, e.denominator)
    den = _iroot(b.denominator, e.denominator)
    if num is None or den is None:
        return None
    return Fraction(num, den) ** e.numerator


def _linear_in_grossone(x: GrossNumber) -> tuple[Fraction, Fraction]:
    r = f = Fraction(0)
    for m in x.terms:
        if m.key == _GROSSONE_KEY:
            r = m.coeff
        elif m.key == _FINITE_KEY:
            f = m.coeff
        else:
            raise UnsupportedExponent(
                f"exponent {format_gross(x)} is not of the form r*G + f"
            )
    return r, f


def pow(base: Number, exp: Number) -> GrossNumber:  # noqa: A001 - mirrors the operator
    """Exact power for the shapes the number system supports.

    * finite integer exponent: repeated multiplication (negative ones divide);
    * base 0 or 1 with any positive exponent;
    * finite rational base ``b`` with exponent ``r*G + f``: ``b^f * (b^r)^G``,
      provided ``b^r`` and ``b^f`` are rational and ``b^r >= 1``;
    * a pure power ``G^p`` raised to ``r*G + f``: ``G^(p*r*G + p*f)``.

    Anything else raises :class:`UnsupportedExponent`.
    """
    base, exp = _as_gross(base), _as_gross(exp)
    if exp.is_zero():
        if base.is_zero():
            raise UnsupportedExponent("0^0 is undefined")
        return ONE
    if exp.is_rational() and exp.as_rational().denominator == 1:
        n = int(exp.as_rational())
        if n < 0:
            return div(ONE, pow(base, -n))
        result, square = ONE, base
        while n:
            if n & 1:
                result = result * square
            n >>= 1
            if n:
                square = square * square
        return result
    if base.is_zero():
        if exp > 0:
            return ZERO
        raise UnsupportedExponent(f"0^({format_gross(exp)}) is undefined")
    if base == ONE:
        return ONE
    r, f = _linear_in_grossone(exp)
    if base.is_rational():
        b = base.as_rational()
        if b <= 0:
            raise UnsupportedExponent(f"non-integer power of non-positive base {b}")
        if r != 0 and b < 1:
            raise UnsupportedExponent(f"base {b} < 1 raised to an infinite power")
        coeff = _rational_power(b, f)
        new_base = _rational_power(b, r)
        if coeff is None or new_base is None:
            raise UnsupportedExponent(f"{b}^({format_gross(exp)}) is not exactly representable")
        return GrossNumber.monomial(coeff, new_base)
    if len(base.terms) == 1:
        m = base.terms[0]
        if m.coeff == 1 and m.base == 1 and m.gexp.r == 0:
            p = m.gexp.f
            if p * r < 0:
                raise UnsupportedExponent("power with negative infinite exponent part")
            return GrossNumber.monomial(1, 1, p * r, p * f)
    raise UnsupportedExponent(
        f"({format_gross(base)})^({format_gross(exp)}) is not a supported power shape"
    )


def compare(a: Number, b: Number) -> Ordering:
    d = _as_gross(a) - _as_gross(b)
    return Ordering(d.sign())


def classify(a: Number) -> Classification:
    a = _as_gross(a)
    inf = [m for m in a.terms if m.key > _FINITE_KEY]
    fin = [m for m in a.terms if m.key == _FINITE_KEY]
    small = [m for m in a.terms if m.key < _FINITE_KEY]
    if a.is_zero():
        kind = "zero"
    elif inf:
        kind = "infinite"
    elif fin:
        kind = "finite"
    else:
        kind = "infinitesimal"
    return Classification(kind, GrossNumber(inf), GrossNumber(fin), GrossNumber(small))


# -- text format -------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<g>[G①])|(?P<op>[-+*/^()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise GrossSyntaxError(f"unexpected character {text[start]!r}", start)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    # expr := term (('+'|'-') term)*
    # term := factor (('*'|'/') factor)*
    # factor := '-' factor | atom ('^' unary)?
    # unary := '-' unary | atom
    # atom := INT | 'G' | '(' expr ')'

    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str) -> None:
        kind, value, pos = self.take()
        if kind != "op" or value != op:
            raise GrossSyntaxError(f"expected {op!r}, found {value or 'end of input'!r}", pos)

    def parse(self) -> GrossNumber:
        value = self.expr()
        kind, value_text, pos = self.peek()
        if kind != "end":
            raise GrossSyntaxError(f"unexpected {value_text!r}", pos)
        return value

    def expr(self) -> GrossNumber:
        value = self.term()
        while True:
            kind, op, _ = self.peek()
            if kind == "op" and op in "+-":
                self.take()
                rhs = self.term()
                value = value + rhs if op == "+" else value - rhs
            else:
                return value

    def term(self) -> GrossNumber:
        value = self.factor()
        while True:
            kind, op, _ = self.peek()
            if kind == "op" and op in "*/":
                self.take()
                rhs = self.factor()
                value = value * rhs if op == "*" else div(value, rhs)
            else:
                return value

    def factor(self) -> GrossNumber:
        kind, op, _ = self.peek()
        if kind == "op" and op == "-":
            self.take()
            return -self.factor()
        value = self.atom()
        kind, op, _ = self.peek()
        if kind == "op" and op == "^":
            self.take()
            value = pow(value, self.unary())
        return value

    def unary(self) -> GrossNumber:
        kind, op, _ = self.peek()
        if kind == "op" and op == "-":
            self.take()
            return -self.unary()
        return self.atom()

    def atom(self) -> GrossNumber:
        kind, value, pos = self.take()
        if kind == "int":
            return GrossNumber(int(value))
        if kind == "g":
            return G
        if kind == "op" and value == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        raise GrossSyntaxError(f"unexpected {value or 'end of input'!r}", pos)


def parse_gross(text: str) -> GrossNumber:
    """Parse the gross-expression grammar; ``G`` (or ``①``) is grossone.

    >>> format_gross(parse_gross("2*G^2 + 1 + 1"))
    '2*G^2 + 2'
    """
    return _Parser(text).parse()


def _fmt_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


_PLAIN_EXPONENT = re.compile(r"-?\d+|G")


def _fmt_monomial(coeff: Fraction, m: Monomial) -> str:
    factors = []
    if m.base != 1:
        b = _fmt_rational(m.base)
        factors.append(f"{b}^G" if m.base.denominator == 1 else f"({b})^G")
    r, f = m.gexp.r, m.gexp.f
    if (r, f) == (0, 1):
        factors.append("G")
    elif (r, f) != (0, 0):
        e = format_gross(GrossNumber.monomial(r, 1, 0, 1) + GrossNumber(f))
        factors.append("G^" + (e if _PLAIN_EXPONENT.fullmatch(e) else f"({e})"))
    if coeff != 1 or not factors:
        factors.insert(0, _fmt_rational(coeff))
    return "*".join(factors)


def format_gross(a: Number) -> str:
    """Canonical text: terms in decreasing magnitude, e.g. ``G^G - 1``."""
    a = _as_gross(a)
    if a.is_zero():
        return "0"
    out = []
    for i, m in enumerate(a.terms):
        body = _fmt_monomial(abs(m.coeff), m)
        if i == 0:
            out.append(("-" if m.coeff < 0 else "") + body)
        else:
            out.append((" - " if m.coeff < 0 else " + ") + body)
    return "".join(out)
