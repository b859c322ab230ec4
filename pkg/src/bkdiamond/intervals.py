"""Outward-rounded multiprecision intervals on top of MPFR (via gmpy2).

Every operation rounds the lower endpoint toward -inf and the upper endpoint
toward +inf, so the result always encloses the exact real value. MPFR
functions are correctly rounded, which makes the enclosure rigorous.
Precision is carried explicitly on each value; no global context is touched.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational as _RationalABC
from typing import Union

import gmpy2
from gmpy2 import mpfr, mpq

Number = Union[int, Fraction, "BigInterval"]
_MPFR = type(mpfr(0))


@lru_cache(maxsize=None)
def _down(prec: int) -> gmpy2.context:
    return gmpy2.context(precision=prec, round=gmpy2.RoundDown)


@lru_cache(maxsize=None)
def _up(prec: int) -> gmpy2.context:
    return gmpy2.context(precision=prec, round=gmpy2.RoundUp)


def _exact_floor(x) -> int:
    num, den = x.as_integer_ratio()
    return num // den


def _exact_ceil(x) -> int:
    num, den = x.as_integer_ratio()
    return -((-num) // den)


def _decimal(x, digits: int, up: bool) -> str:
    """Scientific decimal with ``digits`` significant digits, rounded toward +inf if ``up``."""
    num, den = x.as_integer_ratio()
    if num == 0:
        return "0"
    # exponent estimate; the loop below corrects it by one if needed
    e = len(str(abs(num))) - len(str(den))
    while True:
        shift = digits - 1 - e
        scaled_num = num * 10 ** shift if shift >= 0 else num
        scaled_den = den if shift >= 0 else den * 10 ** (-shift)
        m = -((-scaled_num) // scaled_den) if up else scaled_num // scaled_den
        if abs(m) >= 10 ** digits:
            e += 1
        elif abs(m) < 10 ** (digits - 1):
            e -= 1
        else:
            break
    text = str(abs(m))
    sign = "-" if m < 0 else ""
    return f"{sign}{text[0]}.{text[1:]}e{e + len(text) - digits:+d}"


class BigInterval:
    """Closed interval ``[lo, hi]`` with MPFR endpoints at ``prec`` bits."""

    __slots__ = ("lo", "hi", "prec")

    def __init__(self, lo, hi, prec: int):
        if prec < 2:
            raise ValueError("precision must be at least 2 bits")
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi
        self.prec = prec

    # -- construction -----------------------------------------------------

    @classmethod
    def exact(cls, value, prec: int) -> "BigInterval":
        """Tightest enclosure of an int, Fraction, mpfr, or decimal string."""
        if isinstance(value, BigInterval):
            return value
        if isinstance(value, str):
            value = Fraction(value)
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int) or isinstance(value, _MPFR):
            q = value
        elif isinstance(value, _RationalABC):
            q = mpq(value.numerator, value.denominator)
        else:
            raise TypeError(f"cannot build an exact interval from {type(value).__name__}")
        return cls(mpfr(q, prec, _down(prec)), mpfr(q, prec, _up(prec)), prec)

    def _coerce(self, other) -> "BigInterval":
        if isinstance(other, BigInterval):
            return other
        return BigInterval.exact(other, self.prec)

    # -- inspection -------------------------------------------------------

    def __repr__(self) -> str:
        return f"BigInterval({str(self.lo)!r}, {str(self.hi)!r}, prec={self.prec})"

    def mid(self):
        # a representative point, not a bound
        return _down(self.prec + 1).div(_down(self.prec + 1).add(self.lo, self.hi), 2)

    def width(self):
        return _up(self.prec).sub(self.hi, self.lo)

    def contains(self, value) -> bool:
        if isinstance(value, BigInterval):
            return self.lo <= value.lo and value.hi <= self.hi
        if isinstance(value, Fraction):
            value = mpq(value.numerator, value.denominator)
        return self.lo <= value <= self.hi

    __contains__ = contains

    def integers(self) -> range:
        """All integers lying in the interval."""
        return range(_exact_ceil(self.lo), _exact_floor(self.hi) + 1)

    def unique_integer(self) -> int | None:
        lo, hi = _exact_ceil(self.lo), _exact_floor(self.hi)
        return lo if lo == hi else None

    def certainly_lt(self, other) -> bool:
        other = self._coerce(other)
        return self.hi < other.lo

    def certainly_le(self, other) -> bool:
        other = self._coerce(other)
        return self.hi <= other.lo

    def certainly_gt(self, other) -> bool:
        return self._coerce(other).certainly_lt(self)

    def certainly_ge(self, other) -> bool:
        return self._coerce(other).certainly_le(self)

    def is_positive(self) -> bool:
        return self.lo > 0

    def to_json(self) -> dict:
        """Decimal endpoints rounded outward, so the strings still enclose the value."""
        digits = math.ceil(self.prec * math.log10(2)) + 1
        return {"lo": _decimal(self.lo, digits, up=False), "hi": _decimal(self.hi, digits, up=True),
                "prec": self.prec}

    @classmethod
    def from_json(cls, data: dict) -> "BigInterval":
        p = int(data["prec"])
        return cls(mpfr(data["lo"], p, context=_down(p)), mpfr(data["hi"], p, context=_up(p)), p)

    def hull(self, other: "BigInterval") -> "BigInterval":
        return BigInterval(min(self.lo, other.lo), max(self.hi, other.hi),
                           max(self.prec, other.prec))

    def widen(self, radius) -> "BigInterval":
        """Grow both endpoints by a nonnegative radius."""
        r = self._coerce(radius)
        p = self.prec
        return BigInterval(_down(p).sub(self.lo, r.hi), _up(p).add(self.hi, r.hi), p)

    # -- arithmetic -------------------------------------------------------

    def __neg__(self) -> "BigInterval":
        # bare unary minus would round to gmpy2's global 53-bit context
        dn, up = _down(self.prec), _up(self.prec)
        return BigInterval(dn.minus(self.hi), up.minus(self.lo), self.prec)

    def __abs__(self) -> "BigInterval":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return BigInterval(mpfr(0), max(_up(self.prec).minus(self.lo), self.hi), self.prec)

    def __add__(self, other) -> "BigInterval":
        other = self._coerce(other)
        p = max(self.prec, other.prec)
        return BigInterval(_down(p).add(self.lo, other.lo), _up(p).add(self.hi, other.hi), p)

    __radd__ = __add__

    def __sub__(self, other) -> "BigInterval":
        other = self._coerce(other)
        p = max(self.prec, other.prec)
        return BigInterval(_down(p).sub(self.lo, other.hi), _up(p).sub(self.hi, other.lo), p)

    def __rsub__(self, other) -> "BigInterval":
        return self._coerce(other) - self

    def __mul__(self, other) -> "BigInterval":
        other = self._coerce(other)
        p = max(self.prec, other.prec)
        dn, up = _down(p), _up(p)
        if self.lo >= 0 and other.lo >= 0:
            return BigInterval(dn.mul(self.lo, other.lo), up.mul(self.hi, other.hi), p)
        pairs = [(a, b) for a in (self.lo, self.hi) for b in (other.lo, other.hi)]
        return BigInterval(min(dn.mul(a, b) for a, b in pairs),
                           max(up.mul(a, b) for a, b in pairs), p)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "BigInterval":
        other = self._coerce(other)
        if other.lo <= 0 <= other.hi:
            raise ZeroDivisionError("divisor interval contains zero")
        p = max(self.prec, other.prec)
        dn, up = _down(p), _up(p)
        if self.lo >= 0 and other.lo > 0:
            return BigInterval(dn.div(self.lo, other.hi), up.div(self.hi, other.lo), p)
        pairs = [(a, b) for a in (self.lo, self.hi) for b in (other.lo, other.hi)]
        return BigInterval(min(dn.div(a, b) for a, b in pairs),
                           max(up.div(a, b) for a, b in pairs), p)

    def __rtruediv__(self, other) -> "BigInterval":
        return self._coerce(other) / self

    def __pow__(self, e: int) -> "BigInterval":
        if not isinstance(e, int):
            raise TypeError("use pow_rational for non-integer exponents")
        if e < 0:
            return 1 / (self ** (-e))
        if e == 0:
            return BigInterval.exact(1, self.prec)
        p = self.prec
        if self.lo >= 0:
            return BigInterval(_down(p).pow(self.lo, e), _up(p).pow(self.hi, e), p)
        if e % 2:
            return BigInterval(_down(p).pow(self.lo, e), _up(p).pow(self.hi, e), p)
        a = abs(self)
        return BigInterval(_down(p).pow(a.lo, e), _up(p).pow(a.hi, e), p)

    def sqrt(self) -> "BigInterval":
        if self.hi < 0:
            raise ValueError("sqrt of a negative interval")
        p = self.prec
        lo = self.lo if self.lo > 0 else mpfr(0)
        return BigInterval(_down(p).sqrt(lo), _up(p).sqrt(self.hi), p)

    def exp(self) -> "BigInterval":
        p = self.prec
        return BigInterval(_down(p).exp(self.lo), _up(p).exp(self.hi), p)

    def log(self) -> "BigInterval":
        if self.lo <= 0:
            raise ValueError("log of an interval reaching zero")
        p = self.prec
        return BigInterval(_down(p).log(self.lo), _up(p).log(self.hi), p)

    def pow_rational(self, e: Fraction) -> "BigInterval":
        """``self ** e`` for a positive base and rational exponent."""
        e = Fraction(e)
        if e.denominator == 1:
            return self ** int(e)
        if e.denominator == 2:
            return (self ** e.numerator).sqrt() if e > 0 else 1 / (self ** (-e.numerator)).sqrt()
        return (self.log() * e).exp()

    def with_prec(self, prec: int) -> "BigInterval":
        return BigInterval(mpfr(self.lo, prec, _down(prec)), mpfr(self.hi, prec, _up(prec)), prec)


def pi_interval(prec: int) -> BigInterval:
    """Enclosure of pi; width at most one ulp at ``prec`` bits."""
    if prec < 2:
        raise ValueError("precision must be at least 2 bits")
    return BigInterval(_down(prec).const_pi(), _up(prec).const_pi(), prec)


def _reduce_mod2(theta: Fraction) -> Fraction:
    return theta - 2 * math.floor(theta / 2)


def cos_pi(theta: Fraction, prec: int) -> BigInterval:
    """Enclosure of cos(pi * theta) for an exact rational theta."""
    t = _reduce_mod2(Fraction(theta))
    if t > 1:
        t = 2 - t
    sign = 1
    if t > Fraction(1, 2):
        t, sign = 1 - t, -1
    # now t in [0, 1/2]: cos is decreasing there
    if t == 0:
        val = BigInterval.exact(1, prec)
    elif t == Fraction(1, 2):
        val = BigInterval.exact(0, prec)
    else:
        y = pi_interval(prec) * t
        lo = max(_down(prec).cos(y.hi), mpfr(0))
        hi = min(_up(prec).cos(y.lo), mpfr(1))
        val = BigInterval(lo, hi, prec)
    return val if sign > 0 else -val


def sin_pi(theta: Fraction, prec: int) -> BigInterval:
    """Enclosure of sin(pi * theta) for an exact rational theta."""
    t = _reduce_mod2(Fraction(theta))
    sign = 1
    if t >= 1:
        t, sign = t - 1, -1
    if t > Fraction(1, 2):
        t = 1 - t
    if t == 0:
        val = BigInterval.exact(0, prec)
    elif t == Fraction(1, 2):
        val = BigInterval.exact(1, prec)
    else:
        y = pi_interval(prec) * t
        lo = max(_down(prec).sin(y.lo), mpfr(0))
        hi = min(_up(prec).sin(y.hi), mpfr(1))
        val = BigInterval(lo, hi, prec)
    return val if sign > 0 else -val
