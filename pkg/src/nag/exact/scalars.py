"""Exact scalars: rationals (``fractions.Fraction``) and Gaussian rationals."""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational as _RationalABC

from ..errors import PreconditionError

Q = "Q"
QI = "QI"


def to_fraction(x) -> Fraction:
    """Coerce an int, Fraction or ``p/q`` string to a Fraction. Floats are refused."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        return Fraction(int(x))
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, _RationalABC):
        return Fraction(x.numerator, x.denominator)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise PreconditionError(f"not a rational literal: {x!r}") from exc
    if isinstance(x, GaussRational):
        if x.im != 0:
            raise PreconditionError("scalar kind mismatch: Gaussian rational where rational expected")
        return x.re
    raise PreconditionError(f"not an exact rational: {x!r}")


class GaussRational:
    """An element re + im*i of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", to_fraction(re))
        object.__setattr__(self, "im", to_fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussRational is immutable")

    @classmethod
    def coerce(cls, x) -> "GaussRational":
        if isinstance(x, GaussRational):
            return x
        if isinstance(x, str):
            return parse_scalar(x, force=QI)
        return cls(to_fraction(x), 0)

    def conjugate(self) -> "GaussRational":
        return GaussRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return self.im == 0

    def __add__(self, other):
        try:
            o = GaussRational.coerce(other)
        except PreconditionError:
            return NotImplemented
        return GaussRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            o = GaussRational.coerce(other)
        except PreconditionError:
            return NotImplemented
        return GaussRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return GaussRational.coerce(other) - self

    def __mul__(self, other):
        try:
            o = GaussRational.coerce(other)
        except PreconditionError:
            return NotImplemented
        return GaussRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            o = GaussRational.coerce(other)
        except PreconditionError:
            return NotImplemented
        d = o.abs2()
        if d == 0:
            raise ZeroDivisionError("GaussRational division by zero")
        num = self * o.conjugate()
        return GaussRational(num.re / d, num.im / d)

    def __rtruediv__(self, other):
        return GaussRational.coerce(other) / self

    def __neg__(self):
        return GaussRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __eq__(self, other):
        try:
            o = GaussRational.coerce(other)
        except PreconditionError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussRational({format_rational(self.re)!r}, {format_rational(self.im)!r})"

    def __str__(self):
        return format_scalar(self)


def format_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_scalar(x) -> str:
    """Text form: ``p/q`` for rationals, ``p/q+r/si`` for Gaussian rationals."""
    if isinstance(x, GaussRational):
        im = format_rational(x.im)
        sign = "" if im.startswith("-") else "+"
        return f"{format_rational(x.re)}{sign}{im}i"
    return format_rational(to_fraction(x))


_RAT = r"[+-]?\d+(?:/\d+)?"
_GAUSS = re.compile(rf"^(?:(?P<re>{_RAT})(?=[+-]))?(?P<im>[+-]?(?:\d+(?:/\d+)?)?)i$")


def parse_scalar(text: str, force: str | None = None):
    """Parse one scalar token. Tokens ending in ``i`` are Gaussian rationals."""
    t = text.strip()
    if t.endswith("i"):
        m = _GAUSS.match(t)
        if not m:
            raise PreconditionError(f"not a Gaussian rational literal: {text!r}")
        re_part = to_fraction(m.group("re")) if m.group("re") else Fraction(0)
        im_text = m.group("im")
        if im_text in ("", "+"):
            im_part = Fraction(1)
        elif im_text == "-":
            im_part = Fraction(-1)
        else:
            im_part = to_fraction(im_text)
        if force == Q:
            raise PreconditionError("scalar kind mismatch: Gaussian rational where rational expected")
        return GaussRational(re_part, im_part)
    value = to_fraction(t)
    return GaussRational(value, 0) if force == QI else value


def kind_of(x) -> str:
    return QI if isinstance(x, GaussRational) else Q


def coerce(x, kind: str):
    if kind == QI:
        return GaussRational.coerce(x)
    return to_fraction(x)


def zero(kind: str):
    return GaussRational(0, 0) if kind == QI else Fraction(0)


def one(kind: str):
    return GaussRational(1, 0) if kind == QI else Fraction(1)


def real_part(x) -> Fraction:
    return x.re if isinstance(x, GaussRational) else x
