"""Exact scalars: rational numbers and rational functions of one parameter.

Every coefficient in this package is either a ``fractions.Fraction`` or a
``RatFunc``, a reduced ratio p(t)/q(t) of univariate polynomials over Q in a
single formal parameter ``t``.  Construction always normalizes:

* rationals are reduced with positive denominator (``Fraction`` guarantees
  this);
* rational functions are reduced (gcd of numerator and denominator is 1)
  with monic denominator;
* a rational function that turns out to be constant collapses to a plain
  ``Fraction``.

Equality of scalars is therefore plain structural equality, and scalars are
hashable.  Arithmetic mixes freely: ``Fraction + RatFunc`` works through the
reflected operators.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Union

__all__ = [
    "Fraction",
    "RatFunc",
    "Scalar",
    "T",
    "as_scalar",
    "scalar_from_string",
    "scalar_str",
    "is_symbolic",
    "substitute_param",
    "t_polynomial_coeffs",
]

_F0 = Fraction(0)
_F1 = Fraction(1)

# Univariate polynomials over Q are tuples of Fractions, lowest degree first,
# with no trailing zeros; the zero polynomial is the empty tuple.
_UPoly = "tuple[Fraction, ...]"

_ONE_P = (_F1,)


def _strip(coeffs) -> tuple:
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def _padd(a, b):
    n = max(len(a), len(b))
    return _strip(
        (a[i] if i < len(a) else _F0) + (b[i] if i < len(b) else _F0) for i in range(n)
    )


def _pneg(a):
    return tuple(-c for c in a)


def _pscale(a, s):
    if s == 0:
        return ()
    return tuple(c * s for c in a)


def _pmul(a, b):
    if not a or not b:
        return ()
    out = [_F0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return _strip(out)


def _pdivmod(a, b):
    """Quotient and remainder of a by b over Q; b must be nonzero."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    if len(rem) < len(b):
        return (), _strip(rem)
    quot = [_F0] * (len(rem) - len(b) + 1)
    lead = b[-1]
    for k in range(len(quot) - 1, -1, -1):
        c = rem[k + len(b) - 1] / lead
        if c != 0:
            quot[k] = c
            for i, cb in enumerate(b):
                rem[k + i] -= c * cb
    return _strip(quot), _strip(rem)


def _pgcd(a, b):
    """Monic gcd of two polynomials over Q."""
    while b:
        a, b = b, _pdivmod(a, b)[1]
    if not a:
        return ()
    lead = a[-1]
    if lead != 1:
        a = tuple(c / lead for c in a)
    return a


def _peval(a, x: Fraction) -> Fraction:
    acc = _F0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _pstr(a) -> str:
    """Render a t-polynomial, highest degree first, e.g. ``2*t^2 - t + 1/3``."""
    if not a:
        return "0"
    pieces = []
    for k in range(len(a) - 1, -1, -1):
        c = a[k]
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            var = "t" if k == 1 else f"t^{k}"
            body = var if mag == 1 else f"{mag}*{var}"
        if not pieces:
            pieces.append(body if c > 0 else "-" + body)
        else:
            pieces.append(("+ " if c > 0 else "- ") + body)
    return " ".join(pieces)


class RatFunc:
    """A reduced, non-constant rational function p(t)/q(t) with monic q.

    Instances are immutable.  ``RatFunc.make`` is the only sanctioned
    constructor: it reduces the fraction, normalizes the denominator, and
    returns a plain ``Fraction`` when the result is constant, so a live
    ``RatFunc`` always carries a genuine dependence on t.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den, _token=None):
        if _token is not _MAKE_TOKEN:
            raise TypeError("use RatFunc.make(num, den)")
        self.num = num
        self.den = den
        self._hash = None

    @staticmethod
    def make(num, den=_ONE_P) -> Scalar:
        num = _strip(Fraction(c) for c in num)
        den = _strip(Fraction(c) for c in den)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            return _F0
        if den == _ONE_P:
            if len(num) == 1:
                return num[0]
            return RatFunc(num, den, _MAKE_TOKEN)
        if len(den) > 1 or len(num) > 1:
            g = _pgcd(num, den)
            if len(g) > 1:
                num = _pdivmod(num, g)[0]
                den = _pdivmod(den, g)[0]
        lead = den[-1]
        if lead != 1:
            num = tuple(c / lead for c in num)
            den = tuple(c / lead for c in den)
        if len(num) == 1 and len(den) == 1:
            return num[0]
        return RatFunc(num, den, _MAKE_TOKEN)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return None
            return _ConstView((Fraction(other),), _ONE_P)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o is None:
            return self
        return RatFunc.make(
            _padd(_pmul(self.num, o.den), _pmul(o.num, self.den)),
            _pmul(self.den, o.den),
        )

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(_pneg(self.num), self.den, _MAKE_TOKEN)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o is None:
            return self
        return RatFunc.make(
            _padd(_pmul(self.num, o.den), _pneg(_pmul(o.num, self.den))),
            _pmul(self.den, o.den),
        )

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o is None:
            return _F0
        return RatFunc.make(_pmul(self.num, o.num), _pmul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o is None:
            raise ZeroDivisionError("scalar division by zero")
        return RatFunc.make(_pmul(self.num, o.den), _pmul(self.den, o.num))

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return RatFunc.make(_pscale(self.den, Fraction(other)), self.num)
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return RatFunc.make(self.den, self.num) ** (-n)
        out: Scalar = _F1
        for _ in range(n):
            out = out * self
        return out

    # -- structure ----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return False  # live RatFunc is never constant
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self):
        return True

    def evaluate(self, x) -> Fraction:
        """Value at t = x; raises ZeroDivisionError at a pole."""
        x = Fraction(x)
        d = _peval(self.den, x)
        if d == 0:
            raise ZeroDivisionError(f"pole of rational function at t={x}")
        return _peval(self.num, x) / d

    def __str__(self):
        num = _pstr(self.num)
        if self.den == _ONE_P:
            return num
        return f"({num})/({_pstr(self.den)})"

    __repr__ = __str__


class _ConstView:
    """Internal light-weight (num, den) pair used to mix Fractions in."""

    __slots__ = ("num", "den")

    def __init__(self, num, den):
        self.num = num
        self.den = den


_MAKE_TOKEN = object()

Scalar = Union[Fraction, RatFunc]

#: The formal parameter t.
T: RatFunc = RatFunc((_F0, _F1), _ONE_P, _MAKE_TOKEN)


def as_scalar(value) -> Scalar:
    """Coerce an int, Fraction or RatFunc into a Scalar."""
    if isinstance(value, (Fraction, RatFunc)):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact scalar")


def scalar_from_string(text: str) -> Scalar:
    """Parse a command-line scalar: an integer, a fraction ``p/q``, or ``t``."""
    text = text.strip()
    if text == "t":
        return T
    if text == "-t":
        return -T
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"invalid scalar {text!r}: expected integer, p/q or t") from exc


def scalar_str(s: Scalar) -> str:
    """Plain-text form of a scalar (used in reports and certificates)."""
    return str(s)


def is_symbolic(s: Scalar) -> bool:
    return isinstance(s, RatFunc)


def substitute_param(s: Scalar, value) -> Fraction:
    """Evaluate a scalar at t = value (identity on plain rationals)."""
    if isinstance(s, RatFunc):
        return s.evaluate(value)
    return s


def t_polynomial_coeffs(s: Scalar) -> Optional[tuple]:
    """Coefficient tuple of s when s lies in Q[t]; None for true quotients.

    Plain rationals give a one-element tuple (or () for zero).
    """
    if isinstance(s, Fraction):
        return (s,) if s != 0 else ()
    if s.den == _ONE_P:
        return s.num
    return None
