"""Poisson bracket constructions on the quasimodular algebra.

A candidate Poisson structure is a triple of generator brackets

    {E2, E4},   {E4, E6},   {E6, E2}

and extends to the whole algebra through the partial-derivative formula

    {f, g} = sum over generator pairs (u, v) of
             (df/du * dg/dv - dg/du * df/dv) * {u, v},

which is automatically bilinear, antisymmetric and Leibniz.  Whether the
result satisfies the Jacobi identity is a property of the triple (see
``structure``).

The module builds the three admissible one-parameter families, the
Rankin-Cohen brackets of modular and quasimodular forms, the binomial
deformation brackets attached to a derivation (plain weights, or the
kappa_alpha character), the Connes-Moscovici order-n terms, and the brackets
induced by a pair of derivations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .derivations import Derivation, commutator, ramanujan_derivative
from .grading import bigraded_pieces, kappa_alpha
from .poly import DELTA, E2, E4, E6, Poly
from .scalars import Scalar, as_scalar

__all__ = [
    "BracketTriple",
    "apply_bracket",
    "jacobiator",
    "family_first",
    "family_second",
    "family_third",
    "generalized_binomial",
    "rc_modular",
    "rc_quasimodular",
    "rc1_quasimodular_triple",
    "zagier_bracket",
    "kappa_bracket",
    "cm_mu",
    "bracket_from_pair",
    "quotient_derivation",
]


@dataclass(frozen=True)
class BracketTriple:
    """Generator brackets of a candidate Poisson structure."""

    e2_e4: Poly  # {E2, E4}
    e4_e6: Poly  # {E4, E6}
    e6_e2: Poly  # {E6, E2}

    def pqr(self):
        """The triple in the (p, q, r) = ({E4,E6}, {E6,E2}, {E2,E4}) order
        used by the curl criterion."""
        return self.e4_e6, self.e6_e2, self.e2_e4


def apply_bracket(B: BracketTriple, f: Poly, g: Poly) -> Poly:
    """Extend the generator brackets to arbitrary polynomials."""
    f2, f4, f6 = f.partial("E2"), f.partial("E4"), f.partial("E6")
    g2, g4, g6 = g.partial("E2"), g.partial("E4"), g.partial("E6")
    return (
        (f2 * g4 - g2 * f4) * B.e2_e4
        + (f4 * g6 - g4 * f6) * B.e4_e6
        + (f6 * g2 - g6 * f2) * B.e6_e2
    )


def jacobiator(B: BracketTriple, f: Poly, g: Poly, h: Poly) -> Poly:
    """{f,{g,h}} + {g,{h,f}} + {h,{f,g}}; identically zero iff B is Poisson."""
    return (
        apply_bracket(B, f, apply_bracket(B, g, h))
        + apply_bracket(B, g, apply_bracket(B, h, f))
        + apply_bracket(B, h, apply_bracket(B, f, g))
    )


# -- the three admissible families ---------------------------------------------


def family_first(lam) -> BracketTriple:
    """First family: {E2,E4} = (lam*E4^2 - 2*E2*E6)/3, {E4,E6} = -2*Delta,
    {E6,E2} = -(lam*E4*E6 - 2*E2*E4^2)/2."""
    lam = as_scalar(lam)
    return BracketTriple(
        e2_e4=(lam * (E4 * E4) - 2 * E2 * E6) * Fraction(1, 3),
        e4_e6=-2 * DELTA,
        e6_e2=(lam * (E4 * E6) - 2 * E2 * E4 * E4) * Fraction(-1, 2),
    )


def family_second(alpha) -> BracketTriple:
    """Second family: {E2,E4} = alpha*E2*E6, {E4,E6} = -2*Delta,
    {E6,E2} = -(3/2)*alpha*E2*E4^2."""
    alpha = as_scalar(alpha)
    return BracketTriple(
        e2_e4=alpha * (E2 * E6),
        e4_e6=-2 * DELTA,
        e6_e2=(Fraction(-3, 2) * alpha) * (E2 * E4 * E4),
    )


def family_third(mu) -> BracketTriple:
    """Third family: the gradient triple of -2*Delta*E2 + mu*E4^2*E6."""
    mu = as_scalar(mu)
    return BracketTriple(
        e2_e4=4 * E6 * E2 + mu * (E4 * E4),
        e4_e6=-2 * DELTA,
        e6_e2=-(6 * E4 * E4 * E2 - (2 * mu) * (E4 * E6)),
    )


# -- binomial machinery ----------------------------------------------------------


@lru_cache(maxsize=None)
def _binom_cached(top, lower: int):
    value: Scalar = Fraction(1)
    for i in range(lower):
        value = value * (top - i)
    return value / factorial(lower)


def generalized_binomial(top, lower: int) -> Scalar:
    """binomial(top, lower) = top*(top-1)*...*(top-lower+1) / lower!.

    ``top`` may be any scalar (integer, fraction or symbolic); ``lower`` must
    be a non-negative integer.  Non-negative integer tops reproduce ordinary
    binomial coefficients.
    """
    if lower < 0:
        raise ValueError("lower index of a binomial must be non-negative")
    return _binom_cached(as_scalar(top), lower)


# -- Rankin-Cohen brackets ---------------------------------------------------------

_D = ramanujan_derivative()


def _rc_sum(n: int, top_f, top_g, df_powers, dg_powers) -> Poly:
    out = Poly.zero()
    for r in range(n + 1):
        c = generalized_binomial(top_f, n - r) * generalized_binomial(top_g, r)
        if r % 2 == 1:
            c = -c
        if c != 0:
            out = out + (df_powers[r] * dg_powers[n - r]) * c
    return out


def rc_modular(n: int, f: Poly, g: Poly) -> Poly:
    """The n-th Rankin-Cohen bracket of modular forms.

    On weight-homogeneous depth-zero inputs of weights k and l this is

        sum_r (-1)^r C(k+n-1, n-r) C(l+n-1, r) D^r(f) D^(n-r)(g),

    a form of weight k + l + 2n; inputs of mixed weight extend bilinearly.
    Inputs involving E2 are rejected.
    """
    if n < 0:
        raise ValueError("bracket order must be non-negative")
    for h in (f, g):
        if not h.is_zero() and h.depth() > 0:
            raise ValueError("rc_modular requires depth-zero (modular) inputs")
    out = Poly.zero()
    for k, fk in f.weight_components():
        df = [fk]
        for _ in range(n):
            df.append(_D.apply(df[-1]))
        for l, gl in g.weight_components():
            dg = [gl]
            for _ in range(n):
                dg.append(_D.apply(dg[-1]))
            out = out + _rc_sum(n, k + n - 1, l + n - 1, df, dg)
    return out


def rc_quasimodular(n: int, f: Poly, g: Poly) -> Poly:
    """The depth-aware Rankin-Cohen bracket of quasimodular forms.

    Acts on bigraded pieces f in M_k^s, g in M_l^t with binomial tops
    k - s + n - 1 and l - t + n - 1; the result has weight k + l + 2n and
    depth at most s + t.
    """
    if n < 0:
        raise ValueError("bracket order must be non-negative")
    out = Poly.zero()
    for pf in bigraded_pieces(f):
        df = [pf.form]
        for _ in range(n):
            df.append(_D.apply(df[-1]))
        for pg in bigraded_pieces(g):
            dg = [pg.form]
            for _ in range(n):
                dg.append(_D.apply(dg[-1]))
            out = out + _rc_sum(
                n,
                pf.weight - pf.depth + n - 1,
                pg.weight - pg.depth + n - 1,
                df,
                dg,
            )
    return out


def rc1_quasimodular_triple() -> BracketTriple:
    """Generator triple induced by the order-1 quasimodular Rankin-Cohen
    bracket.  It fails the Jacobi identity, so it is not Poissonian."""
    return BracketTriple(
        e2_e4=rc_quasimodular(1, E2, E4),
        e4_e6=rc_quasimodular(1, E4, E6),
        e6_e2=rc_quasimodular(1, E6, E2),
    )


# -- deformation brackets from a derivation ------------------------------------------


def zagier_bracket(d: Derivation, n: int, f: Poly, g: Poly) -> Poly:
    """Order-n binomial bracket attached to a weight-raising derivation:

        sum_r (-1)^r C(k+n-1, n-r) C(l+n-1, r) d^r(f) d^(n-r)(g)

    on weight-homogeneous f, g of weights k, l, extended bilinearly.  The
    derivation must raise weights by exactly 2.
    """
    if n < 0:
        raise ValueError("bracket order must be non-negative")
    if not d.is_weight_homogeneous_degree2():
        raise ValueError("the derivation must be weight-homogeneous of degree 2")
    out = Poly.zero()
    for k, fk in f.weight_components():
        df = [fk]
        for _ in range(n):
            df.append(d.apply(df[-1]))
        for l, gl in g.weight_components():
            dg = [gl]
            for _ in range(n):
                dg.append(d.apply(dg[-1]))
            out = out + _rc_sum(n, k + n - 1, l + n - 1, df, dg)
    return out


def kappa_bracket(alpha, d: Derivation, n: int, f: Poly, g: Poly) -> Poly:
    """Order-n binomial bracket with kappa_alpha weights:

        sum_r (-1)^r C(K(f)+n-1, n-r) C(K(g)+n-1, r) d^r(f) d^(n-r)(g)

    over bigraded pieces, where K = kappa_alpha.  Binomial tops may be
    arbitrary scalars.
    """
    if n < 0:
        raise ValueError("bracket order must be non-negative")
    alpha = as_scalar(alpha)
    out = Poly.zero()
    for pf in bigraded_pieces(f):
        kf = kappa_alpha(alpha, pf.weight, pf.depth)
        df = [pf.form]
        for _ in range(n):
            df.append(d.apply(df[-1]))
        for pg in bigraded_pieces(g):
            kg = kappa_alpha(alpha, pg.weight, pg.depth)
            dg = [pg.form]
            for _ in range(n):
                dg.append(d.apply(dg[-1]))
            out = out + _rc_sum(n, kf + n - 1, kg + n - 1, df, dg)
    return out


def cm_mu(E: Derivation, H: Derivation, n: int, f: Poly, g: Poly) -> Poly:
    """Order-n term of the Connes-Moscovici deformation for HE - EH = E:

        mu_n(f,g) = sum_r (-1)^r / (r! (n-r)!)
                    [E^r (2H+r)^<n-r> f] * [E^(n-r) (2H+n-r)^<r> g]

    with F^<m> = F o (F+1) o ... o (F+m-1), where F + c acts as F plus
    multiplication by the scalar c.  Raises ValueError unless the commutator
    of H and E equals E exactly.
    """
    if n < 0:
        raise ValueError("bracket order must be non-negative")
    if commutator(H, E) != E:
        raise ValueError("cm_mu requires [H, E] = E on the generators")
    out = Poly.zero()
    for r in range(n + 1):
        left = _rising_then_power(E, H, r, r, n - r, f)
        right = _rising_then_power(E, H, n - r, n - r, r, g)
        c = Fraction((-1) ** r, factorial(r) * factorial(n - r))
        out = out + (left * right) * c
    return out


def _rising_then_power(E: Derivation, H: Derivation, e_power: int, shift: int,
                       m: int, f: Poly) -> Poly:
    """E^e_power applied to (2H + shift)^<m> (f)."""
    value = f
    for j in reversed(range(m)):
        value = 2 * H.apply(value) + value * (shift + j)
    for _ in range(e_power):
        value = E.apply(value)
    return value


def bracket_from_pair(delta: Derivation, der: Derivation, f: Poly, g: Poly) -> Poly:
    """delta(f) der(g) - der(f) delta(g); a Poisson bracket whenever the pair
    (delta, der) is solvable."""
    return delta.apply(f) * der.apply(g) - der.apply(f) * delta.apply(g)


def quotient_derivation(B: BracketTriple, g: Poly, denominator: Poly) -> Derivation:
    """The derivation f |-> B(g, f) / denominator.

    The division must be exact on all three generators; a failure raises
    ValueError.  With g = Delta and denominator = 12*Delta this recovers the
    canonical degree-2 derivation attached to an admissible bracket.
    """
    return Derivation(
        apply_bracket(B, g, E2).div_exact(denominator),
        apply_bracket(B, g, E4).div_exact(denominator),
        apply_bracket(B, g, E6).div_exact(denominator),
    )
