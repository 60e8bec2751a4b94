"""Truncated star products and order-by-order associativity certification.

A star product on the algebra is a family of bilinear maps mu_n with mu_0
the ordinary product; the product f * g = sum mu_n(f, g) h^n is associative
exactly when, for every n,

    sum_{r=0}^n mu_{n-r}(mu_r(f, g), h) = sum_{r=0}^n mu_{n-r}(f, mu_r(g, h)).

``StarTruncation`` packages a term rule (n, f, g) -> mu_n(f, g) with a
truncation order.  The rules provided are the Rankin-Cohen (Eholzer) product
on modular forms, the binomial rule of a degree-2 derivation, its
kappa-weighted variant, the Connes-Moscovici rule, and the depth-aware
quasimodular Rankin-Cohen rule.  Every rule is bilinear, so certification
over all monomial triples up to a weight cap decides the identity on the
whole span; residuals are reported with reproducible witnesses.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple

from .brackets import cm_mu, kappa_bracket, rc_modular, rc_quasimodular, zagier_bracket
from .derivations import Derivation
from .grading import bigraded_pieces, monomials_up_to_weight
from .poly import Monomial, Poly, monomial_str
from .scalars import Scalar, as_scalar

__all__ = [
    "StarTruncation",
    "eholzer_rule",
    "zagier_rule",
    "kappa_rule",
    "cm_rule",
    "mr_rule",
    "star",
    "check_associativity",
    "AssociativityFailure",
    "DeformationReport",
    "certify_deformation",
    "depth_profile",
    "find_associativity_counterexample",
]


class StarTruncation:
    """A star-product truncation: a bilinear order-n term rule plus an order.

    Terms are memoized on monomial pairs; the bilinear extension makes that
    cache exact for arbitrary polynomial arguments.  Every rule satisfies
    term(0, f, g) = f*g.
    """

    def __init__(self, name: str, order: int,
                 term_on_monomials: Callable[[int, Poly, Poly], Poly],
                 modular_only: bool = False):
        self.name = name
        self.order = order
        self.modular_only = modular_only
        self._term_mono = term_on_monomials
        self._cache: dict = {}

    def term(self, n: int, f: Poly, g: Poly) -> Poly:
        """mu_n(f, g), extended bilinearly over monomials."""
        if n == 0:
            return f * g
        out = Poly.zero()
        for m1, c1 in f.terms():
            for m2, c2 in g.terms():
                key = (n, m1, m2)
                value = self._cache.get(key)
                if value is None:
                    value = self._term_mono(
                        n, Poly.monomial(m1), Poly.monomial(m2)
                    )
                    self._cache[key] = value
                if value:
                    out = out + value * (c1 * c2)
        return out

    def __repr__(self) -> str:
        return f"StarTruncation({self.name!r}, order={self.order})"


def eholzer_rule(order: int = 3) -> StarTruncation:
    """Rankin-Cohen terms on modular forms (the Eholzer product)."""
    return StarTruncation("eholzer", order, rc_modular, modular_only=True)


def zagier_rule(d: Derivation, order: int = 3, name: str = "zagier") -> StarTruncation:
    """Binomial terms of a degree-2 derivation with plain weight tops."""
    return StarTruncation(name, order, lambda n, f, g: zagier_bracket(d, n, f, g))


def kappa_rule(alpha, d: Derivation, order: int = 3) -> StarTruncation:
    """Binomial terms with kappa_alpha tops over bigraded pieces."""
    alpha = as_scalar(alpha)
    return StarTruncation(
        "kappa", order, lambda n, f, g: kappa_bracket(alpha, d, n, f, g)
    )


def cm_rule(E: Derivation, H: Derivation, order: int = 3) -> StarTruncation:
    """Connes-Moscovici terms for a pair with [H, E] = E."""
    return StarTruncation("cm", order, lambda n, f, g: cm_mu(E, H, n, f, g))


def mr_rule(order: int = 3) -> StarTruncation:
    """Depth-aware quasimodular Rankin-Cohen terms."""
    return StarTruncation("mr", order, rc_quasimodular)


def star(f: Poly, g: Poly, S: StarTruncation) -> List[Poly]:
    """All terms [mu_0(f,g), ..., mu_N(f,g)] of the truncated product."""
    return [S.term(n, f, g) for n in range(S.order + 1)]


def check_associativity(S: StarTruncation, n: int, f: Poly, g: Poly, h: Poly) -> Poly:
    """Order-n associativity residual; zero means the identity holds on
    (f, g, h) at order n."""
    if n > S.order:
        raise ValueError(f"order {n} exceeds the truncation order {S.order}")
    out = Poly.zero()
    for r in range(n + 1):
        out = out + S.term(n - r, S.term(r, f, g), h)
        out = out - S.term(n - r, f, S.term(r, g, h))
    return out


@dataclass(frozen=True)
class AssociativityFailure:
    """A reproducible nonzero residual of the order-n associativity check."""

    rule: str
    n: int
    f: Monomial
    g: Monomial
    h: Monomial
    residual: Poly

    def describe(self) -> str:
        return (
            f"rule={self.rule} n={self.n} "
            f"f={monomial_str(self.f)} g={monomial_str(self.g)} "
            f"h={monomial_str(self.h)} residual={self.residual}"
        )


@dataclass
class DeformationReport:
    """Aggregate result of associativity certification up to a weight cap."""

    rule: str
    n_max: int
    weight_max: int
    triples_checked: int = 0
    failures: List[AssociativityFailure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def _triple_universe(S: StarTruncation, weight_max: int) -> List[Monomial]:
    max_depth = 0 if S.modular_only else None
    return monomials_up_to_weight(weight_max, max_depth)


def certify_deformation(
    S: StarTruncation, n_max: int, weight_max: int
) -> DeformationReport:
    """Check order-n associativity, n <= n_max, on every monomial triple with
    factors of weight <= weight_max.

    Bilinearity of the terms makes the monomial check complete for all
    polynomials supported on those weights.  Each nonzero residual is
    recorded with its witness triple.
    """
    report = DeformationReport(S.name, n_max, weight_max)
    mons = _triple_universe(S, weight_max)
    polys = {m: Poly.monomial(m) for m in mons}
    # mu_r on ordered pairs, reused across the h loop.
    for m1 in mons:
        f = polys[m1]
        for m2 in mons:
            g = polys[m2]
            inner = [S.term(r, f, g) for r in range(n_max + 1)]
            for m3 in mons:
                h = polys[m3]
                inner_gh = None
                for n in range(n_max + 1):
                    lhs = Poly.zero()
                    for r in range(n + 1):
                        lhs = lhs + S.term(n - r, inner[r], h)
                    if inner_gh is None:
                        inner_gh = [S.term(r, g, h) for r in range(n_max + 1)]
                    rhs = Poly.zero()
                    for r in range(n + 1):
                        rhs = rhs + S.term(n - r, f, inner_gh[r])
                    residual = lhs - rhs
                    if not residual.is_zero():
                        report.failures.append(
                            AssociativityFailure(S.name, n, m1, m2, m3, residual)
                        )
                report.triples_checked += 1
    return report


def depth_profile(S: StarTruncation, n: int, f: Poly, g: Poly) -> Tuple[int, Optional[int]]:
    """(expected bound s+t, actual depth of mu_n(f,g) or None when zero).

    Inputs must be bigraded-homogeneous.
    """
    pf, pg = bigraded_pieces(f), bigraded_pieces(g)
    if len(pf) != 1 or len(pg) != 1:
        raise ValueError("depth_profile requires bigraded-homogeneous inputs")
    expected = pf[0].depth + pg[0].depth
    value = S.term(n, f, g)
    actual = None if value.is_zero() else value.depth()
    return expected, actual


def find_associativity_counterexample(
    S: StarTruncation, n: int, weight_max: int
) -> Optional[AssociativityFailure]:
    """First monomial triple (by total weight, then canonical order) with a
    nonzero order-n residual, or None if every triple passes."""
    mons = _triple_universe(S, weight_max)
    triples = [
        (m1, m2, m3)
        for m1 in mons
        for m2 in mons
        for m3 in mons
    ]
    weight = lambda m: 2 * m[0] + 4 * m[1] + 6 * m[2]
    triples.sort(key=lambda t: (weight(t[0]) + weight(t[1]) + weight(t[2]), t))
    for m1, m2, m3 in triples:
        residual = check_associativity(
            S, n, Poly.monomial(m1), Poly.monomial(m2), Poly.monomial(m3)
        )
        if not residual.is_zero():
            return AssociativityFailure(S.name, n, m1, m2, m3, residual)
    return None
