"""Lattice polytopes, faces, and the support geometry used by the
Monge-Ampere operator.

A LatticePolytope stores its vertices in ambient coordinates together with
an affine chart onto a full-dimensional polytope in Z^dim. For
full-dimensional polytopes the chart is the identity, and the facet data
(primitive inner normal u with offset a, meaning <u, x> >= -a) lives in
ambient coordinates. Lower-dimensional hulls record their affine span via
the chart and keep facet data in chart coordinates.

Vertex and facet enumeration are exact and deliberately brute force: the
polytopes in scope have at most a few dozen vertices in dimension at most
eight, where solving all n-subsets of facet equalities (or scanning all
n-subsets of points for supporting hyperplanes) is well within budget.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

from .lattice import (
    IntVector,
    difference_lattice_basis,
    dot,
    integer_determinant,
    lattice_coordinates,
    matrix_rank,
    primitive_vector,
    solve_linear_system,
)

Facet = tuple[IntVector, int]

__all__ = [
    "LatticePolytope",
    "Face",
    "NormalCone",
    "hull",
    "from_inequalities",
    "faces",
    "min_weight_subset",
    "adjacent_polytope",
    "lattice_length",
    "is_reflexive",
    "unimodular_support",
    "face_chart_polynomial",
]


class LatticePolytope:
    """Convex hull of lattice points, with exact facet data.

    vertices are ambient integer tuples in sorted order. base and basis give
    the affine chart: chart(x) = coordinates of x - base in the saturated
    difference lattice, a bijection between the polytope's affine span and
    Z^dim. facets are (u, a) pairs in chart coordinates with u primitive and
    the list irredundant; the polytope is {y : <u, y> >= -a for all facets}.
    """

    __slots__ = ("rank", "dim", "vertices", "base", "basis", "cvertices", "facets", "_points")

    def __init__(
        self,
        rank: int,
        dim: int,
        vertices: Sequence[IntVector],
        base: IntVector,
        basis: Sequence[IntVector],
        facets: Sequence[Facet],
    ):
        self.rank = rank
        self.dim = dim
        self.vertices = tuple(sorted(tuple(v) for v in vertices))
        self.base = tuple(base)
        self.basis = tuple(tuple(b) for b in basis)
        self.cvertices = tuple(self.to_chart(v) for v in self.vertices)
        self.facets = tuple((tuple(u), int(a)) for u, a in facets)
        self._points: tuple[IntVector, ...] | None = None

    def to_chart(self, point: Sequence[int]) -> IntVector:
        diff = [x - b for x, b in zip(point, self.base)]
        return lattice_coordinates(diff, self.basis)

    def from_chart(self, cpoint: Sequence[int]) -> IntVector:
        out = list(self.base)
        for coeff, row in zip(cpoint, self.basis):
            for i, x in enumerate(row):
                out[i] += coeff * x
        return tuple(out)

    def contains(self, point: Sequence[int]) -> bool:
        try:
            c = self.to_chart(point)
        except ValueError:
            return False
        return all(dot(u, c) >= -a for u, a in self.facets)

    def lattice_points(self) -> tuple[IntVector, ...]:
        """All lattice points, by scanning the chart bounding box. Fine for
        the low dimensions where this is actually called; the scan is cached.
        """
        if self._points is None:
            if self.dim == 0:
                self._points = self.vertices
            else:
                los = [min(v[i] for v in self.cvertices) for i in range(self.dim)]
                his = [max(v[i] for v in self.cvertices) for i in range(self.dim)]
                found = []
                stack: list[tuple[int, ...]] = [()]
                for lo, hi in zip(los, his):
                    stack = [pref + (t,) for pref in stack for t in range(lo, hi + 1)]
                for c in stack:
                    if all(dot(u, c) >= -a for u, a in self.facets):
                        found.append(self.from_chart(c))
                self._points = tuple(sorted(found))
        return self._points

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LatticePolytope):
            return NotImplemented
        return self.rank == other.rank and self.vertices == other.vertices

    def __repr__(self) -> str:
        return (
            f"LatticePolytope(rank={self.rank}, dim={self.dim}, "
            f"{len(self.vertices)} vertices, {len(self.facets)} facets)"
        )

    def to_obj(self) -> dict:
        return {
            "rank": self.rank,
            "dim": self.dim,
            "vertices": [list(v) for v in self.vertices],
            "facets": [{"u": list(u), "a": a} for u, a in self.facets],
        }


@dataclass(frozen=True)
class NormalCone:
    """Rays of the normal cone of a face: the active inner facet normals."""

    face: "Face"
    rays: tuple[IntVector, ...]


class Face:
    """A face of a polytope, named by the set of all facets containing it.

    active is the sorted tuple of parent facet indices active on the face
    (empty for the whole polytope). The chart maps the face bijectively
    onto a full-dimensional lattice polytope in Z^dim; by default it is
    built from the face's own vertices, but callers may supply a specific
    base point and basis when a particular plane model is wanted.
    """

    __slots__ = ("parent", "active", "vertices", "dim", "chart_base", "chart_basis", "_points")

    def __init__(
        self,
        parent: LatticePolytope,
        active: Sequence[int],
        vertices: Sequence[IntVector],
        chart_base: IntVector | None = None,
        chart_basis: Sequence[IntVector] | None = None,
    ):
        self.parent = parent
        self.active = tuple(sorted(active))
        self.vertices = tuple(sorted(tuple(v) for v in vertices))
        rank, basis = difference_lattice_basis(self.vertices)
        self.dim = rank
        if chart_base is None:
            chart_base = self.vertices[0]
        if chart_basis is None:
            chart_basis = basis
        elif len(chart_basis) != rank:
            raise ValueError("chart basis rank does not match the face dimension")
        self.chart_base = tuple(chart_base)
        self.chart_basis = tuple(tuple(b) for b in chart_basis)
        self._points: tuple[IntVector, ...] | None = None

    def to_chart(self, point: Sequence[int]) -> IntVector:
        diff = [x - b for x, b in zip(point, self.chart_base)]
        return lattice_coordinates(diff, self.chart_basis)

    def from_chart(self, cpoint: Sequence[int]) -> IntVector:
        out = list(self.chart_base)
        for coeff, row in zip(cpoint, self.chart_basis):
            for i, x in enumerate(row):
                out[i] += coeff * x
        return tuple(out)

    def chart_polytope(self) -> LatticePolytope:
        """The face as a full-dimensional polytope in its chart coordinates."""
        return hull([self.to_chart(v) for v in self.vertices])

    def lattice_points(self) -> tuple[IntVector, ...]:
        if self._points is None:
            if self.dim == 0:
                self._points = self.vertices
            else:
                q = self.chart_polytope()
                self._points = tuple(
                    sorted(self.from_chart(c) for c in q.lattice_points())
                )
        return self._points

    def normal_cone(self) -> NormalCone:
        return NormalCone(
            self, tuple(self.parent.facets[i][0] for i in self.active)
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Face):
            return NotImplemented
        return self.parent == other.parent and self.vertices == other.vertices

    def __repr__(self) -> str:
        return f"Face(dim={self.dim}, active={self.active}, vertices={self.vertices})"


def _monotone_chain(points: Sequence[IntVector]) -> list[IntVector]:
    """Counterclockwise convex hull vertices of a 2-d point set."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o: IntVector, a: IntVector, b: IntVector) -> int:
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: list[IntVector] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[IntVector] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _polygon_facets(ccw_vertices: Sequence[IntVector]) -> list[Facet]:
    out: list[Facet] = []
    k = len(ccw_vertices)
    for i in range(k):
        v = ccw_vertices[i]
        w = ccw_vertices[(i + 1) % k]
        d = (w[0] - v[0], w[1] - v[1])
        u = primitive_vector((-d[1], d[0]))
        out.append((u, -dot(u, v)))
    return out


def _brute_facets(cpts: Sequence[IntVector], r: int) -> list[Facet]:
    """Supporting hyperplanes through r affinely independent points, for a
    full-dimensional configuration in Z^r. Each facet of the hull contains r
    affinely independent input points, so all facets are found; conversely a
    supporting hyperplane spanned by input points meets the hull in a facet,
    so nothing redundant is produced.
    """
    seen: set[Facet] = set()
    for combo in combinations(range(len(cpts)), r):
        base = cpts[combo[0]]
        rows = [
            [cpts[j][i] - base[i] for i in range(r)] for j in combo[1:]
        ]
        # normal via (r-1)x(r-1) cofactors: u_k = (-1)^k det(rows minus col k)
        u = []
        for k in range(r):
            minor = [[row[i] for i in range(r) if i != k] for row in rows]
            u.append((-1) ** k * integer_determinant(minor))
        if not any(u):
            continue
        u_t = primitive_vector(u)
        vals = [dot(u_t, p) for p in cpts]
        m = dot(u_t, base)
        if all(v >= m for v in vals):
            pass
        elif all(v <= m for v in vals):
            u_t = tuple(-x for x in u_t)
            m = -m
        else:
            continue
        seen.add((u_t, -m))
    return sorted(seen)


def hull(points: Iterable[Sequence[int]]) -> LatticePolytope:
    """Convex hull of integer points, of any dimension.

    Lower-dimensional configurations are handled by first passing to the
    chart given by the saturated difference lattice, so the facet data is
    full-dimensional in chart coordinates.
    """
    pts = sorted({tuple(int(x) for x in p) for p in points})
    if not pts:
        raise ValueError("hull of an empty point set")
    rank = len(pts[0])
    if any(len(p) != rank for p in pts):
        raise ValueError("points of mixed rank")
    dim, basis = difference_lattice_basis(pts)
    if dim == rank:
        # Full-dimensional: keep the chart equal to the ambient coordinates
        # so facet data can be read off without unshifting.
        base = (0,) * rank
        basis = [tuple(1 if i == j else 0 for j in range(rank)) for i in range(rank)]
    else:
        base = pts[0]
    cpts = [lattice_coordinates([x - b for x, b in zip(p, base)], basis) for p in pts]

    if dim == 0:
        return LatticePolytope(rank, 0, pts, base, basis, [])
    if dim == 1:
        lo = min(c[0] for c in cpts)
        hi = max(c[0] for c in cpts)
        cverts = {(lo,), (hi,)}
        facets = [((1,), -lo), ((-1,), hi)]
    elif dim == 2:
        ccw = _monotone_chain(cpts)
        cverts = set(ccw)
        facets = sorted(_polygon_facets(ccw))
    else:
        facets = _brute_facets(cpts, dim)
        cverts = set()
        for c in cpts:
            active = [u for u, a in facets if dot(u, c) == -a]
            if len(active) >= dim and matrix_rank(active) == dim:
                cverts.add(c)

    idx = {c: p for c, p in zip(cpts, pts)}
    vertices = sorted(idx[c] for c in cverts)
    return LatticePolytope(rank, dim, vertices, base, basis, facets)


def from_inequalities(
    rank: int, normals: Sequence[Sequence[int]], offsets: Sequence[int]
) -> LatticePolytope:
    """Polytope {x : <u_i, x> >= -a_i} from inequality data.

    Vertices are enumerated by solving every rank-subset of equalities and
    keeping the feasible lattice solutions. When the result is
    full-dimensional the given inequalities are kept (in their given order)
    after pruning the redundant ones, so facet indices line up with the
    input; a lower-dimensional or empty solution set falls back to the hull
    of the solutions found. Rational (non-lattice) vertices are rejected.
    """
    normals = [tuple(int(x) for x in u) for u in normals]
    offsets = [int(a) for a in offsets]
    if len(normals) != len(offsets):
        raise ValueError("one offset per normal required")
    if any(len(u) != rank for u in normals):
        raise ValueError("normals of wrong rank")
    if any(u != primitive_vector(u) or not any(u) for u in normals):
        raise ValueError("normals must be primitive and nonzero")

    candidates: set[IntVector] = set()
    for combo in combinations(range(len(normals)), rank):
        sol = solve_linear_system(
            [list(normals[i]) for i in combo], [-offsets[i] for i in combo]
        )
        if sol is None:
            continue
        if any(
            sum(u[i] * sol[i] for i in range(rank)) < -a
            for u, a in zip(normals, offsets)
        ):
            continue
        if any(x.denominator != 1 for x in sol):
            raise ValueError("inequalities describe a polytope with non-lattice vertices")
        candidates.add(tuple(int(x) for x in sol))
    if not candidates:
        raise ValueError("inequalities have no feasible vertex")
    vertices = sorted(candidates)
    vdim, _ = difference_lattice_basis(vertices)
    if vdim < rank:
        return hull(vertices)

    kept: list[Facet] = []
    seen: set[Facet] = set()
    for u, a in zip(normals, offsets):
        if (u, a) in seen:
            continue
        active = [v for v in vertices if dot(u, v) == -a]
        if len(active) >= rank:
            adim, _ = difference_lattice_basis(active)
            if adim == rank - 1:
                kept.append((u, a))
                seen.add((u, a))
    base = (0,) * rank
    basis = [tuple(1 if i == j else 0 for j in range(rank)) for i in range(rank)]
    return LatticePolytope(rank, rank, vertices, base, basis, kept)


def faces(p: LatticePolytope, d: int) -> list[Face]:
    """All d-dimensional faces, canonically ordered by active facet set.

    Every d-face is the intersection of dim - d facets with independent
    normals, so enumerating facet subsets of that size finds everything;
    intersections of the wrong dimension are discarded and duplicates are
    merged under their maximal active set.
    """
    if d < 0 or d > p.dim:
        raise ValueError(f"no faces of dimension {d} in a {p.dim}-polytope")
    if d == p.dim:
        return [Face(p, (), p.vertices)]

    nfacets = len(p.facets)
    masks = []
    for u, a in p.facets:
        m = 0
        for i, c in enumerate(p.cvertices):
            if dot(u, c) == -a:
                m |= 1 << i
        masks.append(m)

    found: dict[int, tuple[int, ...]] = {}
    if d == 0:
        for i in range(len(p.cvertices)):
            bit = 1 << i
            active = tuple(j for j in range(nfacets) if masks[j] & bit)
            found[bit] = active
    else:
        need = p.dim - d
        for combo in combinations(range(nfacets), need):
            inter = masks[combo[0]]
            for j in combo[1:]:
                inter &= masks[j]
                if not inter:
                    break
            if not inter or inter in found:
                continue
            vs = [p.cvertices[i] for i in range(len(p.cvertices)) if inter & (1 << i)]
            if len(vs) < d + 1:
                continue
            vdim, _ = difference_lattice_basis(vs)
            if vdim != d:
                continue
            active = tuple(j for j in range(nfacets) if masks[j] & inter == inter)
            found[inter] = active

    out = []
    for mask, active in found.items():
        vs = [p.vertices[i] for i in range(len(p.vertices)) if mask & (1 << i)]
        out.append(Face(p, active, vs))
    out.sort(key=lambda f: f.active)
    return out


def min_weight_subset(
    points: Iterable[Sequence[int]], weights: NormalCone | Sequence[int] | Iterable[Sequence[int]]
) -> list[IntVector]:
    """Points where every weight vector attains its minimum over the set.

    weights may be a NormalCone, a single integer vector, or an iterable of
    vectors. This is the support of the initial part of a polynomial in the
    direction of a cone, computed without any hull machinery.
    """
    pts = [tuple(int(x) for x in p) for p in points]
    if not pts:
        raise ValueError("empty point set")
    if isinstance(weights, NormalCone):
        rays: list[IntVector] = [tuple(r) for r in weights.rays]
    else:
        ws = list(weights)
        if ws and isinstance(ws[0], int):
            rays = [tuple(ws)]  # a single vector was passed
        else:
            rays = [tuple(int(x) for x in w) for w in ws]
    keep = pts
    for u in rays:
        m = min(dot(u, p) for p in keep)
        keep = [p for p in keep if dot(u, p) == m]
    return sorted(set(keep))


def adjacent_polytope(p: LatticePolytope, facet: Face) -> list[IntVector]:
    """Lattice points of the polytope at lattice height one over a facet.

    For a reflexive polytope this set is nonempty for every facet since the
    origin lies at height one over all of them.
    """
    if facet.parent is not p and facet.parent != p:
        raise ValueError("facet does not belong to this polytope")
    if facet.dim != p.dim - 1 or len(facet.active) != 1:
        raise ValueError("face is not a facet")
    u, a = p.facets[facet.active[0]]
    return sorted(
        x for x in p.lattice_points() if dot(u, p.to_chart(x)) == -a + 1
    )


def lattice_length(points: Iterable[Sequence[int]]) -> int:
    """Number of lattice points on the segment spanned by a collinear set,
    minus one: the gcd of the coordinate span. A single point has length 0;
    a non-collinear set raises.
    """
    pts = sorted({tuple(int(x) for x in p) for p in points})
    if not pts:
        raise ValueError("empty point set")
    if len(pts) == 1:
        return 0
    lo, hi = pts[0], pts[-1]
    d = [b - a for a, b in zip(lo, hi)]
    g = 0
    for x in d:
        g = gcd(g, x)
    step = tuple(x // g for x in d)
    for q in pts:
        diff = [b - a for a, b in zip(lo, q)]
        ts = {di // si for di, si in zip(diff, step) if si != 0}
        t = ts.pop() if ts else 0
        if ts or any(di != t * si for di, si in zip(diff, step)) or not 0 <= t <= g:
            raise ValueError("points are not collinear on a common segment")
    return g


def is_reflexive(p: LatticePolytope) -> bool:
    """True when every facet has lattice distance one from the origin.
    Only meaningful (and only allowed) for full-dimensional polytopes."""
    if p.dim != p.rank:
        raise ValueError("reflexivity is undefined for lower-dimensional polytopes")
    return all(a == 1 for _, a in p.facets)


def unimodular_support(
    points: Iterable[Sequence[int]],
) -> tuple[bool, dict[IntVector, tuple[IntVector, ...]]]:
    """Check the vertex condition for supports: at every vertex v of the
    hull, the primitive steps along the incident edges must point to lattice
    points of the set and form a basis of the saturated difference lattice.

    Returns (ok, vertex_bases) with the edge steps in ambient coordinates;
    on failure the map is empty.
    """
    pts = {tuple(int(x) for x in p) for p in points}
    h = hull(pts)
    r = h.dim
    if r == 0:
        (v,) = h.vertices
        return True, {v: ()}
    cpts = {h.to_chart(q) for q in pts}
    edges = faces(_chart_image(h), 1)
    bases: dict[IntVector, tuple[IntVector, ...]] = {}
    for v, cv in zip(h.vertices, h.cvertices):
        steps: list[IntVector] = []
        for e in edges:
            if cv not in e.vertices:
                continue
            other = next(w for w in e.vertices if w != cv)
            steps.append(primitive_vector([b - a for a, b in zip(cv, other)]))
        if len(steps) != r:
            return False, {}
        if abs(integer_determinant([list(s) for s in steps])) != 1:
            return False, {}
        for s in steps:
            neighbor = tuple(a + b for a, b in zip(cv, s))
            if neighbor not in cpts:
                return False, {}
        ambient = tuple(
            tuple(sum(s[i] * h.basis[i][j] for i in range(r)) for j in range(h.rank))
            for s in steps
        )
        bases[v] = ambient
    return True, bases


def _chart_image(p: LatticePolytope) -> LatticePolytope:
    """The polytope seen in its own chart coordinates (full-dimensional)."""
    if p.dim == p.rank:
        return p
    base = (0,) * p.dim
    eye = [tuple(1 if i == j else 0 for j in range(p.dim)) for i in range(p.dim)]
    return LatticePolytope(p.dim, p.dim, p.cvertices, base, eye, p.facets)


def face_chart_polynomial(p, face: Face):
    """Restrict a Laurent polynomial to a face of its Newton polytope and
    rewrite it in the face chart, giving a polynomial of rank face.dim.

    Raises when the face does not come from the Newton polytope of p.
    """
    from .laurent import LaurentPolynomial

    np_p = hull(p.support())
    if face.parent != np_p:
        raise ValueError("face does not belong to the Newton polytope of p")
    allowed = set(face.lattice_points())
    terms = {}
    for e, c in p.terms.items():
        if e in allowed:
            terms[face.to_chart(e)] = c
    return LaurentPolynomial(face.dim, terms)
