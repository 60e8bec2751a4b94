"""Structural analysis of bracket triples.

With coordinates (x, y, z) = (E2, E4, E6) and a triple

    p = {E4, E6},   q = {E6, E2},   r = {E2, E4},

the extension of the generator brackets satisfies the Jacobi identity if and
only if (p, q, r) . curl(p, q, r) = 0, where

    curl(p, q, r) = (dr/dy - dq/dz, dp/dz - dr/dx, dq/dx - dp/dy).

The triple is unimodular when curl(p, q, r) = (p, q, r) ^ grad k for some
polynomial k, and Jacobian (exact) when (p, q, r) = grad k; then the bracket
is the Jacobian determinant against the potential k.

This module decides these properties exactly: Jacobi via the curl dot
product, exactness via formal integration, unimodularity up to a weight
bound via an exact linear system with infeasibility certificates, Poisson
(sigma-)derivation identities on generator pairs, the Poisson-Ore extension
construction, truncated centers and centralizers through exact nullspaces,
the classification of admissible triples, scaling morphisms, and the
finite decision procedure showing which members of the third family have
the binomial-pair bracket shape.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .brackets import (
    BracketTriple,
    apply_bracket,
    family_third,
)
from .derivations import Derivation
from .grading import monomials_of_weight
from .linalg import nullspace, solve_linear
from .poly import DELTA, E2, E4, E6, Monomial, Poly, monomial_str
from .scalars import RatFunc, Scalar, as_scalar, t_polynomial_coeffs

__all__ = [
    "curl_triple",
    "is_poissonian",
    "recover_potential",
    "jacobian_determinant",
    "UnimodularityResult",
    "unimodularity_search",
    "is_admissible",
    "Classification",
    "classify_admissible",
    "classification_determinant",
    "is_poisson_derivation",
    "is_poisson_sigma_derivation",
    "modular_rc1_triple",
    "ore_extension_bracket",
    "truncated_centralizer",
    "truncated_center",
    "check_scaling_morphism",
    "RcShapeResult",
    "rc_shape_decision",
]

_GEN_PAIRS = ((E2, E4), (E4, E6), (E6, E2))


def curl_triple(p: Poly, q: Poly, r: Poly) -> Tuple[Poly, Poly, Poly]:
    """curl of (p, q, r) in the coordinates (E2, E4, E6)."""
    return (
        r.partial("E4") - q.partial("E6"),
        p.partial("E6") - r.partial("E2"),
        q.partial("E2") - p.partial("E4"),
    )


def is_poissonian(B: BracketTriple) -> bool:
    """Exact Jacobi test: (p, q, r) . curl(p, q, r) = 0."""
    p, q, r = B.pqr()
    c1, c2, c3 = curl_triple(p, q, r)
    return (p * c1 + q * c2 + r * c3).is_zero()


def recover_potential(B: BracketTriple) -> Optional[Poly]:
    """Potential k with grad k = (p, q, r), when the triple is exact.

    Returns None unless curl(p, q, r) = 0; otherwise integrates formally,
    normalizing the constant term to zero, and checks the gradient exactly.
    """
    p, q, r = B.pqr()
    if any(not c.is_zero() for c in curl_triple(p, q, r)):
        return None
    k = p.integrate("E2")
    k = k + (q - k.partial("E4")).integrate("E4")
    k = k + (r - k.partial("E6")).integrate("E6")
    if (k.partial("E2"), k.partial("E4"), k.partial("E6")) != (p, q, r):
        raise RuntimeError("integration of a curl-free triple failed")
    return k


def jacobian_determinant(f: Poly, g: Poly, k: Poly) -> Poly:
    """det of the Jacobian of (f, g, k) with respect to (E2, E4, E6)."""
    rows = [
        (h.partial("E2"), h.partial("E4"), h.partial("E6")) for h in (f, g, k)
    ]
    (a1, a2, a3), (b1, b2, b3), (c1, c2, c3) = rows
    return (
        a1 * (b2 * c3 - b3 * c2)
        - a2 * (b1 * c3 - b3 * c1)
        + a3 * (b1 * c2 - b2 * c1)
    )


# -- unimodularity up to a weight bound ------------------------------------------


@dataclass
class UnimodularityResult:
    """Result of the bounded search for curl(p,q,r) = (p,q,r) ^ grad k."""

    solution: Optional[Poly]
    #: When infeasible: a dict naming an equation that cannot be satisfied.
    certificate: Optional[dict] = None


def _wedge(v: Sequence[Poly], w: Sequence[Poly]) -> Tuple[Poly, Poly, Poly]:
    return (
        v[1] * w[2] - v[2] * w[1],
        v[2] * w[0] - v[0] * w[2],
        v[0] * w[1] - v[1] * w[0],
    )


def unimodularity_search(B: BracketTriple, W: int = 20) -> UnimodularityResult:
    """Search for k of weight <= W with curl(p,q,r) = (p,q,r) ^ grad k.

    Requires each generator bracket to be weight-homogeneous and W >= 14.
    An exact triple returns its potential (the natural nontrivial witness);
    otherwise the coefficients of all candidate monomials of weights 2..W
    form one exact linear system, solved with certificates.  Infeasibility
    of the bounded system is reported with the failing equation; weight
    decoupling makes each homogeneous weight exhaustive for its degree.
    """
    if W < 14:
        raise ValueError("the search bound W must be at least 14")
    for name, v in (("{E2,E4}", B.e2_e4), ("{E4,E6}", B.e4_e6), ("{E6,E2}", B.e6_e2)):
        if not v.is_weight_homogeneous():
            raise ValueError(f"{name} is not weight-homogeneous")
    p, q, r = B.pqr()
    curl = curl_triple(p, q, r)
    if all(c.is_zero() for c in curl):
        return UnimodularityResult(solution=recover_potential(B))

    candidates: List[Monomial] = []
    for w in range(2, W + 1, 2):
        candidates.extend(monomials_of_weight(w))
    columns = []
    target_index: dict = {}
    rows_of_column = []
    for m in candidates:
        km = Poly.monomial(m)
        grad = (km.partial("E2"), km.partial("E4"), km.partial("E6"))
        wedge = _wedge((p, q, r), grad)
        entries = {}
        for comp, poly in enumerate(wedge):
            for mono, c in poly.terms():
                key = (comp, mono)
                target_index.setdefault(key, len(target_index))
                entries[key] = c
        rows_of_column.append(entries)
    for comp, poly in enumerate(curl):
        for mono, c in poly.terms():
            key = (comp, mono)
            target_index.setdefault(key, len(target_index))

    nrows = len(target_index)
    matrix = [[Fraction(0)] * len(candidates) for _ in range(nrows)]
    rhs: List[Scalar] = [Fraction(0)] * nrows
    labels = [""] * nrows
    for key, i in target_index.items():
        comp, mono = key
        labels[i] = f"component {comp + 1}, coefficient of {monomial_str(mono)}"
    for j, entries in enumerate(rows_of_column):
        for key, c in entries.items():
            matrix[target_index[key]][j] = c
    for comp, poly in enumerate(curl):
        for mono, c in poly.terms():
            rhs[target_index[(comp, mono)]] = c

    result = solve_linear(matrix, rhs, labels)
    if result.solution is None:
        label, residual = result.inconsistent
        return UnimodularityResult(
            solution=None,
            certificate={
                "kind": "inconsistent-row",
                "equation": label or "derived equation after elimination",
                "residual": str(residual),
                "max_weight": W,
            },
        )
    k = Poly({m: c for m, c in zip(candidates, result.solution)})
    if _wedge((p, q, r), (k.partial("E2"), k.partial("E4"), k.partial("E6"))) != tuple(curl):
        raise RuntimeError("solver returned an invalid unimodularity witness")
    return UnimodularityResult(solution=k)


# -- admissibility and classification ----------------------------------------------


def _homogeneous_of(v: Poly, weight: int, max_depth: int) -> bool:
    if v.is_zero():
        return True
    return (
        v.is_weight_homogeneous()
        and v.weight() == weight
        and v.depth() <= max_depth
    )


def is_admissible(B: BracketTriple) -> bool:
    """Restriction to the first Rankin-Cohen bracket on modular forms plus
    the depth constraint on the mixed generator brackets, plus Jacobi."""
    return (
        B.e4_e6 == -2 * DELTA
        and _homogeneous_of(B.e2_e4, 8, 1)
        and _homogeneous_of(B.e6_e2, 10, 1)
        and is_poissonian(B)
    )


@dataclass(frozen=True)
class Classification:
    """Tag of an admissible triple: which family it belongs to."""

    tag: str  # "first" | "second" | "third" | "reject"
    parameter: Optional[Scalar] = None


def classification_determinant(alpha) -> Scalar:
    """Determinant 16 - (alpha-2)(3*alpha-4) = -(3*alpha+2)(alpha-4) of the
    compatibility system for the mixed-bracket coefficients."""
    alpha = as_scalar(alpha)
    return 16 - (alpha - 2) * (3 * alpha - 4)


def classify_admissible(B: BracketTriple) -> Classification:
    """Sort an admissible triple into the three families.

    Writing {E2,E4} = alpha*E2*E6 + beta*E4^2 and
    {E6,E2} = -(gamma*E2*E4^2 + eps*E4*E6), the Poisson-Ore conditions force
    3*alpha = 2*gamma together with the linear system

        4*beta + (alpha - 2)*eps = 0,
        (3*alpha - 4)*beta + 4*eps = 0,

    whose determinant is -(3*alpha+2)(alpha-4).  Solutions are: beta = eps = 0
    (second family, parameter alpha); alpha = -2/3 with eps = (3/2)*beta != 0
    (first family, parameter 3*beta); alpha = 4 with eps = -2*beta != 0
    (third family, parameter beta).  Anything else is rejected.
    """
    if not is_admissible(B):
        raise ValueError("classification requires an admissible triple")
    alpha = B.e2_e4.coefficient((1, 0, 1))
    beta = B.e2_e4.coefficient((0, 2, 0))
    gamma = -B.e6_e2.coefficient((1, 2, 0))
    eps = -B.e6_e2.coefficient((0, 1, 1))
    if 3 * alpha != 2 * gamma:
        return Classification("reject")
    if 4 * beta + (alpha - 2) * eps != 0 or (3 * alpha - 4) * beta + 4 * eps != 0:
        return Classification("reject")
    if beta == 0 and eps == 0:
        return Classification("second", alpha)
    if alpha == Fraction(-2, 3) and eps == Fraction(3, 2) * beta:
        return Classification("first", 3 * beta)
    if alpha == 4 and eps == -2 * beta:
        return Classification("third", beta)
    return Classification("reject")


# -- Poisson derivations and the Ore extension ---------------------------------------


def is_poisson_derivation(sigma: Derivation, B: BracketTriple) -> bool:
    """sigma{f,g} = {sigma f, g} + {f, sigma g}, checked on generator pairs.

    The defect is a biderivation, so generator pairs decide the identity.
    """
    for u, v in _GEN_PAIRS:
        lhs = sigma.apply(apply_bracket(B, u, v))
        rhs = apply_bracket(B, sigma.apply(u), v) + apply_bracket(B, u, sigma.apply(v))
        if lhs != rhs:
            return False
    return True


def is_poisson_sigma_derivation(
    delta: Derivation, sigma: Derivation, B: BracketTriple
) -> bool:
    """delta{f,g} = {delta f, g} + {f, delta g} + sigma(f) delta(g)
    - delta(f) sigma(g), checked on generator pairs."""
    for u, v in _GEN_PAIRS:
        lhs = delta.apply(apply_bracket(B, u, v))
        rhs = (
            apply_bracket(B, delta.apply(u), v)
            + apply_bracket(B, u, delta.apply(v))
            + sigma.apply(u) * delta.apply(v)
            - delta.apply(u) * sigma.apply(v)
        )
        if lhs != rhs:
            return False
    return True


def modular_rc1_triple() -> BracketTriple:
    """The first Rankin-Cohen structure of the modular subalgebra, viewed in
    the three-generator algebra ({E2, -} = 0)."""
    return BracketTriple(
        e2_e4=Poly.zero(), e4_e6=-2 * DELTA, e6_e2=Poly.zero()
    )


def ore_extension_bracket(sigma: Derivation, delta: Derivation) -> BracketTriple:
    """Poisson-Ore extension of the modular algebra by E2:

        {E2, f} = sigma(f) E2 + delta(f)      (f modular),

    which is Poisson exactly when sigma is a Poisson derivation and delta a
    Poisson sigma-derivation of the modular Rankin-Cohen structure; those
    conditions are checked and a violation raises ValueError.
    """
    for name, d in (("sigma", sigma), ("delta", delta)):
        if not d.v_e2.is_zero():
            raise ValueError(f"{name} must vanish on E2")
        for v in (d.v_e4, d.v_e6):
            if not v.is_zero() and v.depth() > 0:
                raise ValueError(f"{name} must map modular forms to modular forms")
    base = modular_rc1_triple()
    if not is_poisson_derivation(sigma, base):
        raise ValueError("sigma is not a Poisson derivation of the modular algebra")
    if not is_poisson_sigma_derivation(delta, sigma, base):
        raise ValueError("delta is not a Poisson sigma-derivation")
    return BracketTriple(
        e2_e4=sigma.apply(E4) * E2 + delta.apply(E4),
        e4_e6=-2 * DELTA,
        e6_e2=-(sigma.apply(E6) * E2 + delta.apply(E6)),
    )


# -- truncated centers and centralizers -----------------------------------------------


def _kernel_basis(images: List[Poly], mons: List[Monomial]) -> List[Poly]:
    """Exact kernel of the linear map sending candidate monomials to images."""
    target_index: dict = {}
    for img in images:
        for mono, _ in img.terms():
            target_index.setdefault(mono, len(target_index))
    if not target_index:
        return [_canonical_vector(Poly.monomial(m)) for m in mons]
    matrix = [[Fraction(0)] * len(mons) for _ in range(len(target_index))]
    for j, img in enumerate(images):
        for mono, c in img.terms():
            matrix[target_index[mono]][j] = c
    vectors = nullspace(matrix, len(mons))
    out = []
    for vec in vectors:
        poly = Poly({m: c for m, c in zip(mons, vec)})
        out.append(_canonical_vector(poly))
    return out


def _canonical_vector(poly: Poly) -> Poly:
    """Normalize a kernel vector: clear t-denominators, make the leading
    coefficient 1 (or monic in t)."""
    # Clear denominators so coefficients live in Q[t].
    while True:
        dens = [
            c.den for _, c in poly.terms()
            if isinstance(c, RatFunc) and c.den != (Fraction(1),)
        ]
        if not dens:
            break
        poly = poly.scale(RatFunc.make(dens[0]))
    if poly.is_zero():
        return poly
    lead = poly.coefficient(poly.monomials()[0])
    coeffs = t_polynomial_coeffs(lead)
    divisor = lead if coeffs is None or len(coeffs) == 1 else coeffs[-1]
    return poly.scale(1 / divisor)


def truncated_centralizer(
    B: BracketTriple,
    g: Poly,
    W: int,
    max_depth: Optional[int] = None,
) -> List[Tuple[int, List[Poly]]]:
    """Per weight w <= W, an exact basis of the weight-w part of the Poisson
    centralizer of g.  ``max_depth`` restricts candidates to bounded
    E2-degree (0 = inside the modular subalgebra)."""
    if W < 0 or W % 2 != 0:
        raise ValueError("the weight bound must be a non-negative even integer")
    out = []
    for w in range(0, W + 1, 2):
        mons = monomials_of_weight(w, max_depth)
        images = [apply_bracket(B, g, Poly.monomial(m)) for m in mons]
        out.append((w, _kernel_basis(images, mons)))
    return out


def truncated_center(
    B: BracketTriple,
    W: int,
    max_depth: Optional[int] = None,
) -> List[Tuple[int, List[Poly]]]:
    """Per weight w <= W, an exact basis of the weight-w part of the Poisson
    center (simultaneous kernel of the brackets against E2, E4, E6; by the
    Leibniz rule this is the center in that weight)."""
    if W < 0 or W % 2 != 0:
        raise ValueError("the weight bound must be a non-negative even integer")
    out = []
    for w in range(0, W + 1, 2):
        mons = monomials_of_weight(w, max_depth)
        # Intersect the kernels of the three generator brackets successively.
        basis_polys = [Poly.monomial(m) for m in mons]
        for gen in (E2, E4, E6):
            if not basis_polys:
                break
            imgs = [apply_bracket(B, gen, v) for v in basis_polys]
            kernel_coeffs = _kernel_vectors(imgs, len(basis_polys))
            basis_polys = [
                _canonical_vector(_combine(basis_polys, vec)) for vec in kernel_coeffs
            ]
        out.append((w, basis_polys))
    return out


def _kernel_vectors(images: List[Poly], n: int) -> List[List[Scalar]]:
    target_index: dict = {}
    for img in images:
        for mono, _ in img.terms():
            target_index.setdefault(mono, len(target_index))
    if not target_index:
        ident: List[List[Scalar]] = []
        for j in range(n):
            vec: List[Scalar] = [Fraction(0)] * n
            vec[j] = Fraction(1)
            ident.append(vec)
        return ident
    matrix = [[Fraction(0)] * n for _ in range(len(target_index))]
    for j, img in enumerate(images):
        for mono, c in img.terms():
            matrix[target_index[mono]][j] = c
    return nullspace(matrix, n)


def _combine(polys: List[Poly], coeffs: List[Scalar]) -> Poly:
    acc = Poly.zero()
    for p, c in zip(polys, coeffs):
        if c != 0:
            acc = acc + p.scale(c)
    return acc


# -- morphisms ------------------------------------------------------------------------


def check_scaling_morphism(eta, B_src: BracketTriple, B_dst: BracketTriple) -> bool:
    """Does E2 -> eta*E2, E4 -> E4, E6 -> E6 intertwine the two brackets?

    Checked on the three generator pairs, which decide the identity because
    the defect is a biderivation over the algebra map.  eta must be nonzero.
    """
    eta = as_scalar(eta)
    if eta == 0:
        raise ValueError("the scaling parameter must be nonzero")

    def phi(f: Poly) -> Poly:
        return f.map_monomials(lambda m, c: c * eta ** m[0])

    for u, v in _GEN_PAIRS:
        if phi(apply_bracket(B_src, u, v)) != apply_bracket(B_dst, phi(u), phi(v)):
            return False
    return True


# -- shape of the third family ----------------------------------------------------------


@dataclass
class RcShapeResult:
    """Outcome of the finite solvability decision for the bracket shape
    kappa(f) f delta(g) - kappa(g) g delta(f) matching the third family."""

    solvable: bool
    kappa: Optional[Tuple[Scalar, Scalar, Scalar]] = None
    derivation: Optional[Derivation] = None
    certificate: Optional[dict] = None


def rc_shape_decision(mu) -> RcShapeResult:
    """Decide whether the third-family bracket with parameter mu can be put
    in the binomial-pair shape kappa(f) f delta(g) - kappa(g) g delta(f)
    for scalars kappa(E2), kappa(E4), kappa(E6) and a weight-raising,
    depth-compatible derivation

        delta(E2) = A*E2^2 + B*E4,
        delta(E4) = C*E4*E2 + D*E6,
        delta(E6) = E*E6*E2 + F*E4^2.

    Matching coefficients against the three generator brackets gives nine
    product equations:

        k2*C - k4*A = 0        k2*D = 4          k4*B = -mu
        k2*E - k6*A = 0        k2*F = 6          k6*B = 2*mu
        k4*E - k6*C = 0        k4*F = -2         k6*D = -2

    The four inhomogeneous equations force k2, k4, k6 nonzero, and scaling
    (kappa, delta) -> (c*kappa, delta/c) is a symmetry, so k4 = 1 may be
    assumed; every remaining unknown is then forced in turn and the system
    collapses to the single condition (7/2)*mu = 0.  The decision is exact
    over the scalar field, symbolic mu included.
    """
    mu = as_scalar(mu)
    k4: Scalar = Fraction(1)
    f_coef = -2 / k4           # from k4*F = -2
    k2 = 6 / f_coef            # from k2*F = 6
    d_coef = 4 / k2            # from k2*D = 4
    k6 = -2 / d_coef           # from k6*D = -2
    b_coef = -mu / k4          # from k4*B = -mu
    residual = k6 * b_coef - 2 * mu  # equation k6*B = 2*mu
    if residual != 0:
        return RcShapeResult(
            solvable=False,
            certificate={
                "kind": "forced-elimination",
                "explanation": (
                    "k4*F=-2, k2*F=6, k2*D=4, k6*D=-2 force "
                    "kappa proportional to (-3, 1, 3/2); the pair of "
                    "equations k4*B=-mu, k6*B=2*mu then requires "
                    "-(7/2)*mu = 0"
                ),
                "residual": str(residual),
            },
        )
    # mu = 0: A = C = E = 0 solves the homogeneous equations; verify the
    # witness against the actual bracket on all generator pairs.
    kappa = (k2, k4, k6)
    delta = Derivation(
        Poly.zero(),
        E6.scale(d_coef),
        (E4 * E4).scale(f_coef),
    )
    B = family_third(mu)
    gens = (E2, E4, E6)
    for i, j, value in ((0, 1, B.e2_e4), (1, 2, B.e4_e6), (2, 0, B.e6_e2)):
        got = kappa[i] * gens[i] * delta.apply(gens[j]) - kappa[j] * gens[j] * delta.apply(gens[i])
        if got != value:
            raise RuntimeError("rc-shape witness failed verification")
    return RcShapeResult(solvable=True, kappa=kappa, derivation=delta)
