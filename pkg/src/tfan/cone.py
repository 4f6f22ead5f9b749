"""Exact rational polyhedral cones and Groebner-cone extraction.

An ``HCone`` stores inequality rows A (a . v >= 0) and equation rows B
(b . v = 0) over Q^{1+n}; the halfspace v_0 <= 0 is implicit in every cone
and never stored, so the A/B matrices read off a basis stay pure.  The
V-side (``ConeData``) is produced by an exact double description sweep:
rays are primitive integer vectors, the lineality basis is in reduced
echelon form, and both are sorted, which makes ``ConeData`` a canonical form
suitable for cone equality.

``cone_from_basis`` realises the inequality/equation extraction from an
initially reduced standard basis: for each element the exponent vectors of
minimal t-power per x-monomial are collected; differences from the leading
exponent give inequality rows, differences within each initial form's
support give equation rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .division import StandardBasis
from .errors import InvalidInput
from .exact import dot, kernel_basis, primitive, rank, rref, vadd, vneg, vscale, vsub
from .poly import MonomialOrdering, Polynomial, leading_term, t_skeleton

Vec = tuple


def _halfspace_row(dim: int) -> Vec:
    return (-1,) + (0,) * (dim - 1)


@dataclass(frozen=True)
class HCone:
    """{v : A.v >= 0, B.v = 0, v_0 <= 0} in Q^{1+n}."""

    dim_ambient: int
    ineqs: tuple[Vec, ...] = ()
    eqs: tuple[Vec, ...] = ()

    def __post_init__(self):
        for row in self.ineqs + self.eqs:
            if len(row) != self.dim_ambient:
                raise InvalidInput("row has wrong length")

    def all_ineq_rows(self) -> tuple[Vec, ...]:
        return (_halfspace_row(self.dim_ambient),) + self.ineqs


@dataclass(frozen=True)
class ConeData:
    """Canonical V-description: sorted primitive rays, echelon lineality."""

    rays: tuple[Vec, ...]
    lineality: tuple[Vec, ...]
    dim: int


class Facet(NamedTuple):
    cone: HCone
    outer_normal: Vec
    in_boundary: bool  # facet contained in {0} x R^n


def _dedupe_rows(rows):
    seen = set()
    for r in rows:
        if any(x != 0 for x in r):
            seen.add(primitive(r))
    return tuple(sorted(seen))


def make_cone(dim_ambient: int, ineqs=(), eqs=()) -> HCone:
    """Canonical HCone: rows primitive, deduplicated and sorted."""
    return HCone(dim_ambient, _dedupe_rows(ineqs), _dedupe_rows(eqs))


# ---------------------------------------------------------------------------
# Double description
# ---------------------------------------------------------------------------


def _adjacent(r1, r2, rays, imposed):
    """Combinatorial adjacency: no third ray is tight on every constraint
    tight at both r1 and r2."""
    z = [a for a in imposed if dot(a, r1) == 0 and dot(a, r2) == 0]
    for r in rays:
        if r is r1 or r is r2:
            continue
        if all(dot(a, r) == 0 for a in z):
            return False
    return True


def _dd(ineq_rows, eq_rows, dim):
    """Core double description sweep; returns (rays, lineality_basis).

    Starts from the solution space of the equations (all lineality) and
    imposes inequalities one at a time.  While the current cone still has
    lineality meeting a new halfspace, one lineality generator is traded for
    a ray; afterwards the classical plus/zero/minus split with adjacent-pair
    combination applies.
    """
    L = [tuple(v) for v in kernel_basis(eq_rows, dim)]
    R: list[Vec] = []
    imposed: list[Vec] = []
    for a in ineq_rows:
        vals_l = [dot(a, l) for l in L]
        if any(v != 0 for v in vals_l):
            i0 = next(i for i, v in enumerate(vals_l) if v != 0)
            l0 = L[i0] if vals_l[i0] > 0 else vneg(L[i0])
            v0 = abs(vals_l[i0])
            L = [vsub(l, vscale(Fraction(dot(a, l), 1) / v0, l0))
                 for i, l in enumerate(L) if i != i0]
            R = [vsub(r, vscale(Fraction(dot(a, r), 1) / v0, l0)) for r in R]
            R.append(l0)
        else:
            vals = [dot(a, r) for r in R]
            if any(v < 0 for v in vals):
                plus = [(r, v) for r, v in zip(R, vals) if v > 0]
                zero = [r for r, v in zip(R, vals) if v == 0]
                minus = [(r, v) for r, v in zip(R, vals) if v < 0]
                new = [r for r, _ in plus] + zero
                for rp, vp in plus:
                    for rm, vm in minus:
                        if _adjacent(rp, rm, R, imposed):
                            new.append(vadd(vscale(vp, rm), vscale(-vm, rp)))
                R = []
                seen = set()
                for r in new:
                    if any(x != 0 for x in r):
                        p = primitive(r)
                        if p not in seen:
                            seen.add(p)
                            R.append(p)
        imposed.append(a)
    rays = sorted({primitive(r) for r in R if any(x != 0 for x in r)})
    lin_rows, _ = rref(L)
    lineality = tuple(primitive(row) for row in lin_rows)
    return tuple(rays), lineality


def dd_rays(cone: HCone) -> ConeData:
    """Exact V-description of an HCone (implicit halfspace included)."""
    rays, lineality = _dd(list(cone.all_ineq_rows()), list(cone.eqs), cone.dim_ambient)
    d = rank(list(rays) + list(lineality)) if (rays or lineality) else 0
    return ConeData(rays, lineality, d)


def dim(cone: HCone) -> int:
    return dd_rays(cone).dim


def contains(cone: HCone, w) -> bool:
    """Closure membership: all inequalities >= 0, equations = 0, w_0 <= 0."""
    if len(w) != cone.dim_ambient:
        raise InvalidInput("point has wrong dimension")
    if w[0] > 0:
        return False
    return all(dot(a, w) >= 0 for a in cone.ineqs) and all(dot(b, w) == 0 for b in cone.eqs)


def contains_strictly(cone: HCone, w) -> bool:
    """Relative-interior test: every non-implied inequality is strict."""
    if not contains(cone, w):
        return False
    data = dd_rays(cone)
    gens = list(data.rays) + list(data.lineality)
    for a in cone.all_ineq_rows():
        implied = all(dot(a, g) == 0 for g in gens)
        if not implied and dot(a, w) == 0:
            return False
    return True


def equal(c1: HCone, c2: HCone) -> bool:
    if c1.dim_ambient != c2.dim_ambient:
        return False
    d1, d2 = dd_rays(c1), dd_rays(c2)
    return d1.rays == d2.rays and d1.lineality == d2.lineality


def intersect(c1: HCone, c2: HCone) -> HCone:
    if c1.dim_ambient != c2.dim_ambient:
        raise InvalidInput("ambient dimensions differ")
    return make_cone(c1.dim_ambient, c1.ineqs + c2.ineqs, c1.eqs + c2.eqs)


def boundary_cone(cone: HCone) -> HCone:
    """The cone intersected with the boundary hyperplane {v_0 = 0}."""
    e0 = (1,) + (0,) * (cone.dim_ambient - 1)
    return make_cone(cone.dim_ambient, cone.ineqs, cone.eqs + (e0,))


def facets(cone: HCone) -> list[Facet]:
    """Codimension-1 faces with primitive outer normals.

    A row defines a facet exactly when its tight rays together with the
    lineality span one dimension less than the cone; rows tight on the whole
    cone are implied equations and rows sharing a tight set duplicate the
    same facet.  Facets inside {0} x R^n are flagged so fan traversal can
    skip them.
    """
    data = dd_rays(cone)
    if data.dim < 1:
        return []
    out: list[Facet] = []
    seen_tight: list[frozenset] = []
    for a in _dedupe_rows(cone.all_ineq_rows()):
        tight = [r for r in data.rays if dot(a, r) == 0]
        if len(tight) == len(data.rays):
            continue  # implied equation, not a proper face
        if rank(list(tight) + list(data.lineality)) != data.dim - 1:
            continue
        key = frozenset(tight)
        if key in seen_tight:
            continue
        seen_tight.append(key)
        fc = make_cone(cone.dim_ambient, cone.ineqs, cone.eqs + (a,))
        in_boundary = all(r[0] == 0 for r in tight)
        out.append(Facet(fc, primitive(vneg(a)), in_boundary))
    out.sort(key=lambda f: f.outer_normal)
    return out


def relative_interior_point(cone: HCone):
    """Deterministic rational point in the relative interior.

    Sum of all extreme rays (which satisfies every non-implied inequality
    strictly); for a pure lineality space, the sum of its basis.  Lineality
    vectors always have first coordinate 0 (both orientations must satisfy
    v_0 <= 0), so whenever the cone is not contained in the boundary
    hyperplane some ray has negative first coordinate and the sum does too.
    """
    data = dd_rays(cone)
    if not data.rays and not data.lineality:
        raise InvalidInput("cone is the origin; no useful interior point")
    if data.rays:
        return tuple(sum(col) for col in zip(*data.rays))
    return tuple(sum(col) for col in zip(*data.lineality))


def is_face(face: HCone, cone: HCone) -> bool:
    """Is `face` a face of `cone`?

    Rays of a face lie in the cone, its lineality inside the cone's
    lineality, and the cone's rows tight on the face must cut exactly the
    face back out.
    """
    fd = dd_rays(face)
    gens = list(fd.rays) + list(fd.lineality)
    if not gens:
        return True  # the origin is a face of every cone here
    if not all(contains(cone, r) for r in fd.rays):
        return False
    if not all(_in_lineality(cone, l) for l in fd.lineality):
        return False
    tight = [a for a in cone.all_ineq_rows() if all(dot(a, g) == 0 for g in gens)]
    candidate = make_cone(cone.dim_ambient, cone.ineqs, cone.eqs + tuple(tight))
    return equal(candidate, face)


def _in_lineality(cone: HCone, g) -> bool:
    return all(dot(a, g) == 0 for a in cone.all_ineq_rows()) and \
        all(dot(b, g) == 0 for b in cone.eqs)


# ---------------------------------------------------------------------------
# Groebner cones from bases
# ---------------------------------------------------------------------------


def cone_from_basis(ordering: MonomialOrdering, basis: Sequence[Polynomial],
                    initial_forms: Sequence[Polynomial]) -> HCone:
    """Inequalities and equations of the Groebner cone of an initially
    reduced standard basis, at the (undetermined) weight whose initial forms
    are given.

    For each basis element only the exponent vectors of minimal t-power per
    x-monomial matter (higher t-powers give redundant rows).  Leading
    exponent minus any other skeleton exponent is an inequality row; within
    each initial form, differences of its skeleton exponents are equation
    rows.
    """
    if len(basis) != len(initial_forms):
        raise InvalidInput("basis and initial forms differ in length")
    if not basis:
        raise InvalidInput("empty basis")
    d = 1 + basis[0].nvars
    ineqs: list[Vec] = []
    eqs: list[Vec] = []
    for g in basis:
        lead = leading_term(ordering, g).exp
        for term in t_skeleton(g).terms:
            if term.exp != lead:
                ineqs.append(vsub(lead, term.exp))
    for h in initial_forms:
        if h.is_zero:
            raise InvalidInput("zero initial form")
        lam = [t.exp for t in t_skeleton(h).terms]
        base = lam[0]
        for other in lam[1:]:
            eqs.append(vsub(base, other))
    return make_cone(d, ineqs, eqs)


@dataclass(frozen=True)
class GroebnerCone:
    """A maximal (or lower) Groebner cone with the data that produced it."""

    hcone: HCone
    data: ConeData
    basis: StandardBasis
    initial_forms: tuple[Polynomial, ...]
    interior_weight: Vec

    def leading_ideal_generators(self) -> tuple[Polynomial, ...]:
        return self.initial_forms

    def canonical_key(self):
        return (self.data.rays, self.data.lineality)


# ---------------------------------------------------------------------------
# Affine slices
# ---------------------------------------------------------------------------


class SlicePolyhedron(NamedTuple):
    vertices: tuple[Vec, ...]  # rational points
    rays: tuple[Vec, ...]      # primitive integer directions
    lines: tuple[Vec, ...]     # primitive integer two-sided directions


def affine_slice(cone: HCone, fixed: Sequence[tuple[int, object]]) -> SlicePolyhedron:
    """Intersect the cone with {v_i = c_i for (i, c_i) in fixed}.

    Returns an exact V-description of the resulting polyhedron via
    homogenisation: a fresh coordinate s >= 0 scales the affine part; rays of
    the lifted cone with s > 0 project to vertices, those with s = 0 to
    recession rays, lineality to lines.
    """
    d = cone.dim_ambient
    ineqs = [(0,) + tuple(a) for a in cone.all_ineq_rows()]
    ineqs.append((1,) + (0,) * d)
    eqs = [(0,) + tuple(b) for b in cone.eqs]
    for coord, value in fixed:
        if not 0 <= coord < d:
            raise InvalidInput("fixed coordinate out of range")
        row = [Fraction(0)] * (1 + d)
        row[0] = -Fraction(value)
        row[1 + coord] = Fraction(1)
        eqs.append(tuple(row))
    rays, lineality = _dd(ineqs, eqs, 1 + d)
    vertices = []
    recession = []
    for r in rays:
        if r[0] > 0:
            vertices.append(tuple(Fraction(x, r[0]) for x in r[1:]))
        else:
            recession.append(primitive(r[1:]))
    lines = []
    for l in lineality:
        assert l[0] == 0, "homogenisation coordinate cannot be two-sided"
        lines.append(primitive(l[1:]))
    if not vertices:
        # a nonempty polyhedron always yields a ray with positive
        # homogenisation coordinate, so this slice is empty
        return SlicePolyhedron((), (), ())
    return SlicePolyhedron(tuple(sorted(vertices)), tuple(sorted(recession)),
                           tuple(sorted(lines)))
