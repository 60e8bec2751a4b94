"""Sparse exact polynomials in the three Eisenstein generators E2, E4, E6.

A quasimodular form is represented as a finite map from exponent triples
``(e2, e4, e6)`` to nonzero scalars (`fractions.Fraction` or ``RatFunc``):

    E4^3 - E6^2   ->   {(0, 3, 0): 1, (0, 0, 2): -1}

The representation is canonical: zero coefficients are never stored, so
equality of polynomials is equality of the underlying maps.  All values are
immutable after construction and every operation is a pure function; sharing
across threads is safe.

The generators carry weights 2, 4, 6 and the E2-exponent of a monomial is
its depth.  The canonical term order used for printing, bases and division
sorts by weight first, then by exponent triple in descending lexicographic
order; it is a genuine monomial order (multiplicative and well founded).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Optional, Tuple

from .scalars import RatFunc, Scalar, as_scalar, substitute_param

__all__ = [
    "Monomial",
    "Poly",
    "E2",
    "E4",
    "E6",
    "DELTA",
    "GENERATORS",
    "monomial_weight",
    "monomial_depth",
    "monomial_key",
    "monomial_str",
]

Monomial = Tuple[int, int, int]

GENERATORS = ("E2", "E4", "E6")
_GEN_INDEX = {"E2": 0, "E4": 1, "E6": 2}
_WEIGHTS = (2, 4, 6)

_F0 = Fraction(0)
_F1 = Fraction(1)


def monomial_weight(m: Monomial) -> int:
    return 2 * m[0] + 4 * m[1] + 6 * m[2]


def monomial_depth(m: Monomial) -> int:
    return m[0]


def monomial_key(m: Monomial):
    """Canonical sort key: weight ascending, then exponents lex descending."""
    return (2 * m[0] + 4 * m[1] + 6 * m[2], -m[0], -m[1], -m[2])


def monomial_str(m: Monomial) -> str:
    parts = []
    for name, e in zip(GENERATORS, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def _gen_index(gen) -> int:
    if isinstance(gen, str):
        try:
            return _GEN_INDEX[gen]
        except KeyError:
            raise ValueError(f"unknown generator {gen!r}; expected E2, E4 or E6")
    if gen in (0, 1, 2):
        return gen
    raise ValueError(f"unknown generator {gen!r}; expected E2, E4 or E6")


class Poly:
    """Immutable sparse polynomial in Q(t)[E2, E4, E6]."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Monomial, object]] = None):
        data = {}
        if terms:
            for m, c in terms.items():
                if not (isinstance(m, tuple) and len(m) == 3 and all(
                        isinstance(e, int) and e >= 0 for e in m)):
                    raise ValueError(f"bad monomial {m!r}")
                c = as_scalar(c)
                if c != 0:
                    data[m] = c
        self._terms = data
        self._hash = None

    @classmethod
    def _raw(cls, data: dict) -> "Poly":
        # Internal: trusts that data is canonical (no zero coefficients).
        self = object.__new__(cls)
        self._terms = data
        self._hash = None
        return self

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls) -> "Poly":
        return _ZERO

    @classmethod
    def one(cls) -> "Poly":
        return _ONE

    @classmethod
    def constant(cls, c) -> "Poly":
        c = as_scalar(c)
        if c == 0:
            return _ZERO
        return cls._raw({(0, 0, 0): c})

    @classmethod
    def generator(cls, gen) -> "Poly":
        i = _gen_index(gen)
        m = tuple(1 if j == i else 0 for j in range(3))
        return cls._raw({m: _F1})

    @classmethod
    def monomial(cls, m: Monomial, c=1) -> "Poly":
        c = as_scalar(c)
        if c == 0:
            return _ZERO
        return cls._raw({tuple(m): c})

    # -- ring operations -----------------------------------------------------

    def __add__(self, other) -> "Poly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self._terms:
            return other
        if not other._terms:
            return self
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, _F0) + c
            if s == 0:
                out.pop(m, None)
            else:
                out[m] = s
        return Poly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "Poly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.__add__(other.__neg__())

    def __rsub__(self, other) -> "Poly":
        return (-self).__add__(other)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction, RatFunc)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        if not self._terms or not other._terms:
            return _ZERO
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
                p = c1 * c2
                s = out.get(m)
                s = p if s is None else s + p
                if s == 0:
                    out.pop(m, None)
                else:
                    out[m] = s
        return Poly._raw(out)

    def __rmul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction, RatFunc)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c) -> "Poly":
        c = as_scalar(c)
        if c == 0:
            return _ZERO
        return Poly._raw({m: v * c for m, v in self._terms.items()})

    def __pow__(self, n: int) -> "Poly":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = _ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- calculus and grading --------------------------------------------------

    def partial(self, gen) -> "Poly":
        """Formal partial derivative with respect to E2, E4 or E6."""
        i = _gen_index(gen)
        out = {}
        for m, c in self._terms.items():
            e = m[i]
            if e == 0:
                continue
            lowered = list(m)
            lowered[i] = e - 1
            out[tuple(lowered)] = c * e
        return Poly._raw(out)

    def integrate(self, gen) -> "Poly":
        """Formal antiderivative with respect to one generator."""
        i = _gen_index(gen)
        out = {}
        for m, c in self._terms.items():
            raised = list(m)
            raised[i] = m[i] + 1
            out[tuple(raised)] = c / (m[i] + 1)
        return Poly._raw(out)

    def weight_components(self) -> list:
        """Split into weight-homogeneous parts, weights strictly increasing."""
        buckets: dict = {}
        for m, c in self._terms.items():
            buckets.setdefault(monomial_weight(m), {})[m] = c
        return [(w, Poly._raw(buckets[w])) for w in sorted(buckets)]

    def depth(self) -> int:
        """Degree in E2.  The zero polynomial has no depth."""
        if not self._terms:
            raise ValueError("the zero polynomial has no depth")
        return max(m[0] for m in self._terms)

    def max_weight(self) -> int:
        if not self._terms:
            raise ValueError("the zero polynomial has no weight")
        return max(monomial_weight(m) for m in self._terms)

    def is_weight_homogeneous(self) -> bool:
        weights = {monomial_weight(m) for m in self._terms}
        return len(weights) <= 1

    def weight(self) -> int:
        """Weight of a nonzero weight-homogeneous polynomial."""
        if not self._terms:
            raise ValueError("the zero polynomial has no weight")
        weights = {monomial_weight(m) for m in self._terms}
        if len(weights) != 1:
            raise ValueError("polynomial is not weight-homogeneous")
        return weights.pop()

    # -- division ---------------------------------------------------------------

    def div_exact(self, divisor: "Poly") -> "Poly":
        """Exact quotient self/divisor; raises ValueError if not divisible."""
        if not divisor._terms:
            raise ZeroDivisionError("polynomial division by zero")
        if not self._terms:
            return _ZERO
        lead_m = max(divisor._terms, key=monomial_key)
        lead_c = divisor._terms[lead_m]
        rem = dict(self._terms)
        quot: dict = {}
        while rem:
            m = max(rem, key=monomial_key)
            diff = (m[0] - lead_m[0], m[1] - lead_m[1], m[2] - lead_m[2])
            if min(diff) < 0:
                raise ValueError("polynomial division is not exact")
            c = rem[m] / lead_c
            quot[diff] = c
            for dm, dc in divisor._terms.items():
                tm = (diff[0] + dm[0], diff[1] + dm[1], diff[2] + dm[2])
                s = rem.get(tm, _F0) - c * dc
                if s == 0:
                    rem.pop(tm, None)
                else:
                    rem[tm] = s
        return Poly._raw(quot)

    # -- inspection ---------------------------------------------------------------

    def coefficient(self, m: Monomial) -> Scalar:
        return self._terms.get(tuple(m), _F0)

    def terms(self) -> Iterator[Tuple[Monomial, Scalar]]:
        """Terms in the canonical order."""
        for m in sorted(self._terms, key=monomial_key):
            yield m, self._terms[m]

    def raw_items(self):
        """Terms in arbitrary order (fast path for accumulation loops)."""
        return self._terms.items()

    def monomials(self) -> list:
        return sorted(self._terms, key=monomial_key)

    def num_terms(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def has_symbolic(self) -> bool:
        return any(isinstance(c, RatFunc) for c in self._terms.values())

    def substitute_param(self, value) -> "Poly":
        """Specialize the formal parameter t to a rational value."""
        out = {}
        for m, c in self._terms.items():
            v = substitute_param(c, value)
            if v != 0:
                out[m] = v
        return Poly._raw(out)

    def map_monomials(self, fn) -> "Poly":
        """Apply (m, c) -> scalar to each term; drops resulting zeros."""
        out = {}
        for m, c in self._terms.items():
            v = fn(m, c)
            if v != 0:
                out[m] = v
        return Poly._raw(out)

    # -- protocol ----------------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == Poly.constant(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __str__(self) -> str:
        from .exprio import format_poly

        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({self.__str__()})"


def _coerce(other):
    if isinstance(other, Poly):
        return other
    if isinstance(other, (int, Fraction, RatFunc)):
        return Poly.constant(other)
    return NotImplemented


_ZERO = Poly._raw({})
_ONE = Poly._raw({(0, 0, 0): _F1})

#: The three Eisenstein generators and the discriminant E4^3 - E6^2.
E2 = Poly.generator("E2")
E4 = Poly.generator("E4")
E6 = Poly.generator("E6")
DELTA = E4 ** 3 - E6 ** 2
