"""The bigrading of quasimodular forms by weight and depth.

Weight-k forms of exact depth s form the space M_k^s = M_{k-2s} * E2^s: the
monomials E4^i * E6^j * E2^s with 4i + 6j = k - 2s.  Every polynomial in the
generators splits uniquely into such bigraded pieces, and the graded-additive
character

    kappa_alpha(f) = k - (3*alpha + 2)*s        (f in M_k^s)

attaches a scalar to each piece; it is additive on products of bigraded
elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Optional, Tuple

from .poly import Monomial, Poly, monomial_key, monomial_weight
from .scalars import Scalar, as_scalar

__all__ = [
    "BigradedComponent",
    "bigraded_pieces",
    "basis",
    "kappa_alpha",
    "monomial_grade",
    "monomials_of_weight",
    "monomials_up_to_weight",
]


@dataclass(frozen=True)
class BigradedComponent:
    """A weight- and depth-homogeneous part of a quasimodular form."""

    weight: int
    depth: int
    form: Poly


def monomial_grade(m: Monomial) -> Tuple[int, int]:
    """(weight, depth) of a single monomial."""
    return monomial_weight(m), m[0]


def bigraded_pieces(f: Poly) -> List[BigradedComponent]:
    """Decompose f into its bigraded components, sorted by (weight, depth).

    The components sum to f and each one lives in a single M_k^s.
    """
    buckets: dict = {}
    for m, c in f.terms():
        buckets.setdefault(monomial_grade(m), {})[m] = c
    return [
        BigradedComponent(k, s, Poly(buckets[(k, s)]))
        for (k, s) in sorted(buckets)
    ]


def basis(k: int, s: int) -> List[Monomial]:
    """Monomial basis of M_k^s, in the canonical term order.

    Requires k even and non-negative with 0 <= s <= k/2.
    """
    if k < 0 or k % 2 != 0:
        raise ValueError(f"weight must be a non-negative even integer, got {k}")
    if s < 0 or 2 * s > k:
        raise ValueError(f"depth {s} out of range for weight {k}")
    rest = k - 2 * s
    out = []
    for i in range(rest // 4 + 1):
        rem = rest - 4 * i
        if rem % 6 == 0:
            out.append((s, i, rem // 6))
    out.sort(key=monomial_key)
    return out


def kappa_alpha(alpha, k: int, s: int) -> Scalar:
    """The graded-additive character k - (3*alpha + 2)*s on M_k^s."""
    if k < 0 or k % 2 != 0 or s < 0 or 2 * s > k:
        raise ValueError(f"({k}, {s}) is not a valid bigrade")
    alpha = as_scalar(alpha)
    return k - (3 * alpha + 2) * s


def monomials_of_weight(w: int, max_depth: Optional[int] = None) -> List[Monomial]:
    """All monomials of weight w, optionally capping the E2-degree."""
    if w < 0 or w % 2 != 0:
        return []
    out: List[Monomial] = []
    top = w // 2 if max_depth is None else min(max_depth, w // 2)
    for s in range(top + 1):
        out.extend(basis(w, s))
    out.sort(key=monomial_key)
    return out


def monomials_up_to_weight(w_max: int, max_depth: Optional[int] = None) -> List[Monomial]:
    """All monomials of even weight <= w_max in the canonical order."""
    out: List[Monomial] = []
    for w in range(0, w_max + 1, 2):
        out.extend(monomials_of_weight(w, max_depth))
    return out
