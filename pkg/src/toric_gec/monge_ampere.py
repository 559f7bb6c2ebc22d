"""The algebraic Monge-Ampere operator mu on Laurent polynomials.

For p = sum_j c_j chi^(m_j) with support of affine rank r, the operator is
the Cauchy-Binet expansion

    mu(p) = sum_J (r! vol(conv {m_j : j in J}))^2 prod_{j in J} c_j chi^(m_j)

over all (r+1)-element subsets J of the support, with the normalized
volume measured in the saturated difference lattice M_p of the support.
Each surviving term sits at the exponent sum of its subset, so rank
deficiency costs nothing: no re-embedding is needed and a monomial maps to
itself (the empty determinant is 1).

The other exports are the structural companions of mu: the closed form for
factored univariate inputs, the predicted Newton polytope of mu(p) (same
facet normals as NP(p), offsets (n+1)a - 1) together with its vertex
formula, initial parts along cones, and the facet adjunction identities
that descend mu to faces.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .lattice import (
    IntVector,
    difference_lattice_basis,
    dot,
    integer_determinant,
    lattice_coordinates,
    primitive_vector,
)
from .laurent import Exponent, LaurentPolynomial, Scalar
from .polytope import (
    Face,
    LatticePolytope,
    NormalCone,
    adjacent_polytope,
    from_inequalities,
    hull,
    min_weight_subset,
)

__all__ = [
    "MuResult",
    "mu",
    "mu_univariate_factored",
    "predicted_np_of_mu",
    "predicted_mu_vertices",
    "initial_part",
    "check_initial_factorization",
    "check_two_ray_factorization",
]


@dataclass(frozen=True)
class MuResult:
    """mu(p) together with the rank of the support and the chart (a basis of
    the saturated difference lattice) in which volumes were measured."""

    mu: LaurentPolynomial
    rank_r: int
    chart: tuple[IntVector, ...]


def mu(p: LaurentPolynomial) -> MuResult:
    """Cauchy-Binet evaluation of the Monge-Ampere operator.

    Subsets are enumerated depth-first over the lexicographically sorted
    support; a prefix whose points are affinely dependent can never grow
    into an independent (r+1)-subset, so such branches are pruned by
    keeping an exact echelon form of the difference vectors.
    """
    if p.is_zero():
        raise ValueError("mu of the zero polynomial is undefined")
    support = p.support()
    r, basis = difference_lattice_basis(support)
    if r == 0:
        return MuResult(p, 0, ())
    base = support[0]
    coords = [
        lattice_coordinates([a - b for a, b in zip(e, base)], basis) for e in support
    ]
    npts = len(support)
    terms: dict[Exponent, Fraction] = {}

    def leaf(chosen: list[int]) -> None:
        anchor = coords[chosen[0]]
        rows = [
            [coords[j][i] - anchor[i] for i in range(r)] for j in chosen[1:]
        ]
        vol = abs(integer_determinant(rows))
        coeff = Fraction(vol * vol)
        exponent = [0] * p.rank
        for j in chosen:
            coeff *= p.terms[support[j]]
            for i, x in enumerate(support[j]):
                exponent[i] += x
        e = tuple(exponent)
        s = terms.get(e, Fraction(0)) + coeff
        if s == 0:
            terms.pop(e, None)
        else:
            terms[e] = s

    def reduce_against(vec: list[Fraction], echelon: list[tuple[int, list[Fraction]]]):
        v = list(vec)
        for pivot, row in echelon:
            if v[pivot]:
                f = v[pivot] / row[pivot]
                v = [x - f * y for x, y in zip(v, row)]
        lead = next((i for i, x in enumerate(v) if x), None)
        if lead is None:
            return None
        return (lead, v)

    def extend(chosen: list[int], echelon: list[tuple[int, list[Fraction]]], start: int) -> None:
        if len(chosen) == r + 1:
            leaf(chosen)
            return
        remaining_needed = r + 1 - len(chosen)
        for j in range(start, npts):
            if npts - j < remaining_needed:
                break
            if not chosen:
                extend([j], [], j + 1)
                continue
            anchor = coords[chosen[0]]
            vec = [Fraction(coords[j][i] - anchor[i]) for i in range(r)]
            row = reduce_against(vec, echelon)
            if row is None:
                continue
            extend(chosen + [j], echelon + [row], j + 1)

    extend([], [], 0)
    return MuResult(LaurentPolynomial(p.rank, terms), r, tuple(tuple(b) for b in basis))


def mu_univariate_factored(
    c: Scalar, m: int, factors: Sequence[tuple[Scalar, int]]
) -> LaurentPolynomial:
    """mu of c * x^m * prod_k (x + xi_k)^(e_k) in closed form:

        c^2 x^(2m+1) sum_k e_k xi_k (x + xi_k)^(2 e_k - 2)
                          prod_{l != k} (x + xi_l)^(2 e_l).

    The roots -xi_k must be distinct and nonzero and every multiplicity
    positive; repeated or zero roots would silently break the formula, so
    they are rejected.
    """
    c = Fraction(c)
    if c == 0:
        raise ValueError("zero leading coefficient")
    xis = [Fraction(xi) for xi, _ in factors]
    mults = [int(e) for _, e in factors]
    if any(xi == 0 for xi in xis):
        raise ValueError("zero root: fold x factors into the monomial part")
    if len(set(xis)) != len(xis):
        raise ValueError("repeated roots are not allowed")
    if any(e < 1 for e in mults):
        raise ValueError("multiplicities must be positive")
    x = LaurentPolynomial.variable(1, 0)
    linear = [x + LaurentPolynomial.constant(1, xi) for xi in xis]
    total = LaurentPolynomial.zero(1)
    for k, (xi, e) in enumerate(zip(xis, mults)):
        term = LaurentPolynomial.constant(1, e * xi) * linear[k] ** (2 * e - 2)
        for l, other in enumerate(linear):
            if l != k:
                term = term * other ** (2 * mults[l])
        total = total + term
    prefactor = LaurentPolynomial.monomial((2 * m + 1,), c * c)
    return prefactor * total


def predicted_np_of_mu(np_p: LatticePolytope) -> LatticePolytope:
    """Newton polytope predicted for mu(p) from NP(p) alone: the same inner
    facet normals with offsets (n+1)a - 1, where n is the dimension.

    The formula is translation-equivariant, matching the equivariance of mu
    under monomial multiplication, so no positivity of the offsets is
    assumed. Only full-dimensional input polytopes are meaningful here."""
    if np_p.dim != np_p.rank:
        raise ValueError("prediction requires a full-dimensional Newton polytope")
    n = np_p.dim
    normals = [u for u, _ in np_p.facets]
    offsets = [(n + 1) * a - 1 for _, a in np_p.facets]
    return from_inequalities(np_p.rank, normals, offsets)


def predicted_mu_vertices(
    np_p: LatticePolytope, vertex_bases: dict[IntVector, tuple[IntVector, ...]]
) -> list[IntVector]:
    """Vertices predicted for NP(mu(p)) under unimodular support: the vertex
    of the prediction over a vertex v of NP(p) is (n+1)v + sum of the
    primitive edge steps at v. vertex_bases comes from unimodular_support."""
    if np_p.dim != np_p.rank:
        raise ValueError("prediction requires a full-dimensional Newton polytope")
    n = np_p.dim
    out = []
    for v in np_p.vertices:
        steps = vertex_bases[v]
        w = [(n + 1) * x for x in v]
        for s in steps:
            w = [a + b for a, b in zip(w, s)]
        out.append(tuple(w))
    return sorted(out)


def initial_part(
    p: LaurentPolynomial, sigma: NormalCone | Sequence[int] | Sequence[Sequence[int]]
) -> LaurentPolynomial:
    """Terms of p sitting on the face of NP(p) that the cone sigma selects:
    the support points where every ray of sigma attains its minimum."""
    if p.is_zero():
        raise ValueError("the zero polynomial has no initial part")
    keep = min_weight_subset(p.support(), sigma)
    return p.restrict(set(keep))


def _facet_index(np_p: LatticePolytope, tau: Sequence[int]) -> int:
    u = primitive_vector(tuple(int(x) for x in tau))
    if not any(u):
        raise ValueError("zero vector is not a facet normal")
    for i, (w, _) in enumerate(np_p.facets):
        if w == u:
            return i
    raise ValueError(f"{tuple(tau)} is not an inner facet normal of the Newton polytope")


def _facet_face(np_p: LatticePolytope, index: int) -> Face:
    u, a = np_p.facets[index]
    verts = [
        v for v, c in zip(np_p.vertices, np_p.cvertices) if dot(u, c) == -a
    ]
    return Face(np_p, (index,), verts)


def check_initial_factorization(
    p: LaurentPolynomial, tau: Sequence[int]
) -> tuple[LaurentPolynomial, LaurentPolynomial, bool]:
    """Facet adjunction: for a facet normal tau of NP(p),

        init_tau(mu(p)) = mu(init_tau(p)) * p|_F'

    where F' is the adjacent polytope of the facet (the lattice points of
    NP(p) at height one above it). Both sides are computed independently
    and returned along with their equality.
    """
    np_p = hull(p.support())
    if np_p.dim != np_p.rank:
        raise ValueError("adjunction check requires a full-dimensional Newton polytope")
    idx = _facet_index(np_p, tau)
    u = np_p.facets[idx][0]
    lhs = initial_part(mu(p).mu, [u])
    f_adj = adjacent_polytope(np_p, _facet_face(np_p, idx))
    rhs = mu(initial_part(p, [u])).mu * p.restrict(set(f_adj))
    return lhs, rhs, lhs == rhs


def check_two_ray_factorization(
    p: LaurentPolynomial, tau1: Sequence[int], tau2: Sequence[int]
) -> tuple[LaurentPolynomial, LaurentPolynomial, bool]:
    """Two-ray adjunction: for adjacent facet normals u1, u2 of NP(p)
    (spanning a 2-dimensional cone of the normal fan),

        init_sigma(mu(p)) = mu(init_sigma(p)) * p|_F'(1) * p|_F'(2)

    with F'(i) the lattice points of NP(p) on facet i at lattice height one
    above the common codimension-2 face in the other facet's direction.
    The caller is responsible for passing normals of facets that actually
    meet; both sides are computed independently.
    """
    np_p = hull(p.support())
    if np_p.dim != np_p.rank:
        raise ValueError("adjunction check requires a full-dimensional Newton polytope")
    i1 = _facet_index(np_p, tau1)
    i2 = _facet_index(np_p, tau2)
    if i1 == i2:
        raise ValueError("the two rays name the same facet")
    (u1, a1), (u2, a2) = np_p.facets[i1], np_p.facets[i2]
    lhs = initial_part(mu(p).mu, [u1, u2])
    rhs = mu(initial_part(p, [u1, u2])).mu
    points = np_p.lattice_points()
    for (ui, ai), (uj, aj) in (((u1, a1), (u2, a2)), ((u2, a2), (u1, a1))):
        strip = [
            x
            for x in points
            if dot(ui, np_p.to_chart(x)) == -ai and dot(uj, np_p.to_chart(x)) == -aj + 1
        ]
        rhs = rhs * p.restrict(set(strip))
    return lhs, rhs, lhs == rhs
