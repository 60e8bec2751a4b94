"""Derivations of the quasimodular algebra, given by generator values.

A derivation of C[E2, E4, E6] is determined by its values on the three
generators and extends by the Leibniz rule:

    d(f) = df/dE2 * d(E2) + df/dE4 * d(E4) + df/dE6 * d(E6).

This makes every identity between derivations decidable on generator values
alone.  The module provides the catalog used throughout the package:

* ``ramanujan_derivative`` -- D, acting as q d/dq on q-expansions; on the
  generators it is the Ramanujan system D(E2) = (E2^2 - E4)/12,
  D(E4) = (E4 E2 - E6)/3, D(E6) = (E6 E2 - E4^2)/2.
* ``serre_derivative`` -- D(f) - (k/12) f E2 on weight-k modular forms,
  extended by zero on E2; its kernel inside modular forms is C[Delta].
* weighted Euler derivations (``euler_weight``, ``euler_kappa``) and their
  E2-multiplied versions, which multiply a bigraded element by its weight
  or by the character kappa_alpha.
* the one-parameter derivations generating the first and second deformation
  families.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .poly import DELTA, E2, E4, E6, Poly
from .scalars import Scalar, as_scalar

__all__ = [
    "Derivation",
    "commutator",
    "is_solvable_pair",
    "ramanujan_derivative",
    "serre_derivative",
    "euler_weight",
    "euler_weight_e2",
    "euler_kappa",
    "euler_kappa_e2",
    "first_family_derivation",
    "second_family_derivation",
    "discriminant_euler",
]

_ZERO = Poly.zero()


class Derivation:
    """An immutable derivation, stored as its three generator values."""

    __slots__ = ("v_e2", "v_e4", "v_e6", "_hash", "_cache")

    def __init__(self, v_e2: Poly, v_e4: Poly, v_e6: Poly):
        self.v_e2 = v_e2
        self.v_e4 = v_e4
        self.v_e6 = v_e6
        self._hash = None
        self._cache: dict = {}

    def apply(self, f: Poly) -> Poly:
        return (
            f.partial("E2") * self.v_e2
            + f.partial("E4") * self.v_e4
            + f.partial("E6") * self.v_e6
        )

    __call__ = apply

    def apply_power(self, r: int, f: Poly) -> Poly:
        """Apply the derivation r times, memoizing per input polynomial."""
        if r < 0:
            raise ValueError("negative power of a derivation")
        if r == 0:
            return f
        key = (r, f)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        value = self.apply(self.apply_power(r - 1, f))
        self._cache[key] = value
        return value

    def values(self):
        return (self.v_e2, self.v_e4, self.v_e6)

    def is_zero(self) -> bool:
        return self.v_e2.is_zero() and self.v_e4.is_zero() and self.v_e6.is_zero()

    def is_weight_homogeneous_degree2(self) -> bool:
        """True when d maps weight-k elements into weight k+2."""
        for value, w in ((self.v_e2, 4), (self.v_e4, 6), (self.v_e6, 8)):
            if not value.is_zero() and (
                not value.is_weight_homogeneous() or value.weight() != w
            ):
                return False
        return True

    # -- linear structure ----------------------------------------------------

    def __add__(self, other: "Derivation") -> "Derivation":
        return Derivation(
            self.v_e2 + other.v_e2, self.v_e4 + other.v_e4, self.v_e6 + other.v_e6
        )

    def __sub__(self, other: "Derivation") -> "Derivation":
        return Derivation(
            self.v_e2 - other.v_e2, self.v_e4 - other.v_e4, self.v_e6 - other.v_e6
        )

    def __neg__(self) -> "Derivation":
        return Derivation(-self.v_e2, -self.v_e4, -self.v_e6)

    def scale(self, c) -> "Derivation":
        c = as_scalar(c)
        return Derivation(self.v_e2 * c, self.v_e4 * c, self.v_e6 * c)

    def __mul__(self, c) -> "Derivation":
        return self.scale(c)

    __rmul__ = __mul__

    def mul_poly(self, p: Poly) -> "Derivation":
        """Multiply by a polynomial (derivations form a module over the ring)."""
        return Derivation(self.v_e2 * p, self.v_e4 * p, self.v_e6 * p)

    # -- protocol --------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Derivation):
            return NotImplemented
        return (
            self.v_e2 == other.v_e2
            and self.v_e4 == other.v_e4
            and self.v_e6 == other.v_e6
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.v_e2, self.v_e4, self.v_e6))
        return self._hash

    def __repr__(self) -> str:
        return (
            f"Derivation(E2 -> {self.v_e2}, E4 -> {self.v_e4}, E6 -> {self.v_e6})"
        )


def commutator(d1: Derivation, d2: Derivation) -> Derivation:
    """The derivation d1 o d2 - d2 o d1, by its generator values."""
    return Derivation(
        d1.apply(d2.v_e2) - d2.apply(d1.v_e2),
        d1.apply(d2.v_e4) - d2.apply(d1.v_e4),
        d1.apply(d2.v_e6) - d2.apply(d1.v_e6),
    )


def _scalar_ratio(num: Poly, den: Poly) -> Optional[Scalar]:
    """The scalar c with num == c*den, if one exists."""
    if den.is_zero():
        return None
    lead = den.monomials()[-1]
    c = num.coefficient(lead) / den.coefficient(lead)
    return c if num == den.scale(c) else None


def is_solvable_pair(delta: Derivation, der: Derivation) -> Optional[Scalar]:
    """The scalar a with delta o der - der o delta = a * der, or None.

    A pair with such a scalar induces a Poisson bracket
    delta(f) der(g) - der(f) delta(g).
    """
    comm = commutator(delta, der)
    candidate: Optional[Scalar] = None
    for c_val, d_val in zip(comm.values(), der.values()):
        if d_val.is_zero():
            if not c_val.is_zero():
                return None
            continue
        ratio = _scalar_ratio(c_val, d_val)
        if ratio is None:
            return None
        if candidate is None:
            candidate = ratio
        elif candidate != ratio:
            return None
    return Fraction(0) if candidate is None else candidate


# -- catalog -------------------------------------------------------------------


def ramanujan_derivative() -> Derivation:
    """D = q d/dq on q-expansions, via the Ramanujan system."""
    return Derivation(
        (E2 * E2 - E4) * Fraction(1, 12),
        (E4 * E2 - E6) * Fraction(1, 3),
        (E6 * E2 - E4 * E4) * Fraction(1, 2),
    )


def serre_derivative() -> Derivation:
    """D(f) - (k/12) f E2 on weight-k modular forms; zero on E2."""
    return Derivation(
        _ZERO, E6 * Fraction(-1, 3), (E4 * E4) * Fraction(-1, 2)
    )


def euler_weight() -> Derivation:
    """f |-> k*f on weight-k homogeneous elements."""
    return Derivation(2 * E2, 4 * E4, 6 * E6)


def euler_weight_e2() -> Derivation:
    """f |-> k*f*E2 on weight-k homogeneous elements."""
    return Derivation(2 * E2 * E2, 4 * E4 * E2, 6 * E6 * E2)


def euler_kappa(alpha) -> Derivation:
    """f |-> kappa_alpha(f)*f on bigraded elements (a derivation because
    kappa_alpha is graded-additive)."""
    alpha = as_scalar(alpha)
    return Derivation((-3 * alpha) * E2, 4 * E4, 6 * E6)


def euler_kappa_e2(alpha) -> Derivation:
    """f |-> kappa_alpha(f)*f*E2 on bigraded elements."""
    alpha = as_scalar(alpha)
    return Derivation((-3 * alpha) * (E2 * E2), 4 * E4 * E2, 6 * E6 * E2)


def first_family_derivation(a) -> Derivation:
    """Generator of the first deformation family.

    For a = 0 this is the depth-non-increasing derivation obtained from the
    first-family bracket against Delta (see ``brackets.quotient_derivation``);
    the general member adds a times the weight Euler derivation times E2.
    """
    a = as_scalar(a)
    return Derivation(
        (2 * a) * (E2 * E2) - E4 * Fraction(1, 12),
        (4 * a) * (E4 * E2) - E6 * Fraction(1, 3),
        (6 * a) * (E6 * E2) - (E4 * E4) * Fraction(1, 2),
    )


def second_family_derivation(alpha, b) -> Derivation:
    """Generator of the second deformation family.

    For b = 0 this is the Serre derivative extended by zero on E2 (and is
    independent of alpha); the general member adds b times the kappa_alpha
    Euler derivation times E2.
    """
    alpha = as_scalar(alpha)
    b = as_scalar(b)
    return Derivation(
        (-3 * b * alpha) * (E2 * E2),
        (4 * b) * (E4 * E2) - E6 * Fraction(1, 3),
        (6 * b) * (E6 * E2) - (E4 * E4) * Fraction(1, 2),
    )


def discriminant_euler(f: Poly) -> Poly:
    """The Euler derivative Delta * d/dDelta on polynomials in Delta.

    Maps sum c_m Delta^m to sum m c_m Delta^m; raises ValueError when f is
    not a polynomial in Delta.
    """
    result = Poly.zero()
    for w, comp in f.weight_components():
        if w % 12 != 0:
            raise ValueError("not a polynomial in the discriminant")
        m = w // 12
        c = comp.coefficient((0, 3 * m, 0))
        if comp != (DELTA ** m).scale(c):
            raise ValueError("not a polynomial in the discriminant")
        result = result + (DELTA ** m).scale(c * m)
    return result
