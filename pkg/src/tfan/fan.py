"""Witness lifting, basis flips across facets, and the fan traversal.

The traversal starts from one maximal Groebner cone and walks facet by
facet.  Crossing a facet means: take initial forms of the basis at a
relative interior point w of the facet, compute a standard basis of the
(much simpler, weighted homogeneous) initial ideal under the weight-chain
ordering (w, outer normal), pull each of its elements back to the full
ideal with a determinate division witness, and re-read the cone from the
initially reduced form of the lifted basis.  Facets whose relative interior
already lies in a known cone are recorded as adjacencies and skipped, and
facets inside the boundary hyperplane {0} x R^n are never crossed.

The lift itself returns the witnessed standard basis as computed; initial
re-reduction happens when the adjacent cone is constructed, which is where
it is actually needed.
"""

from __future__ import annotations

import random
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cone import (
    GroebnerCone,
    HCone,
    boundary_cone,
    cone_from_basis,
    contains,
    dd_rays,
    facets,
    relative_interior_point,
)
from .division import (
    DEFAULT_STEP_CAP,
    StandardBasis,
    hddwr,
    minimize,
    standard_basis,
)
from .errors import InvalidInput, NonGenericWeight, WitnessFailed
from .inred import ensure_initially_reduced
from .poly import (
    Ideal,
    MonomialOrdering,
    Polynomial,
    initial_form,
    is_x_homogeneous,
    leading_term,
)


@dataclass(frozen=True)
class Fan:
    """Maximal Groebner cones plus the facet-adjacency graph."""

    maximal_cones: tuple[GroebnerCone, ...]
    adjacency: tuple[tuple[int, int, HCone], ...]


def witness(h: Polynomial, H: Sequence[Polynomial], G: Sequence[Polynomial],
            ord_: MonomialOrdering, step_cap: int = DEFAULT_STEP_CAP) -> Polynomial:
    """Element of the ideal whose initial form at the shared weight is h.

    h is divided determinately by the initial forms H; replaying the
    quotients against the actual basis G produces the witness.  A nonzero
    remainder means h does not belong to the initial ideal (or the inputs
    are inconsistent).
    """
    if len(H) != len(G):
        raise InvalidInput("initial forms and basis differ in length")
    q, r = hddwr(ord_, h, H, step_cap)
    if not r.is_zero:
        raise WitnessFailed("division by the initial forms left a remainder")
    f = Polynomial.zero()
    for qi, gi in zip(q, G):
        f = f + qi * gi
    return f


def lift(H_new: Sequence[Polynomial], ord_new: MonomialOrdering,
         H: Sequence[Polynomial], G: StandardBasis, ord_: MonomialOrdering,
         step_cap: int = DEFAULT_STEP_CAP) -> StandardBasis:
    """Lift a standard basis of the initial ideal to one of the full ideal.

    Every element of ``H_new`` is witnessed through the old basis; the
    witnesses form a standard basis w.r.t. ``ord_new`` with the same leading
    terms as ``H_new``.  (Initial reduction is deliberately left to the cone
    constructor.)
    """
    lifted = tuple(witness(h, H, G.elements, ord_, step_cap) for h in H_new)
    return StandardBasis(lifted, ord_new)


def flip(G: StandardBasis, H: Sequence[Polynomial], v, ord_: MonomialOrdering,
         w, step_cap: int = DEFAULT_STEP_CAP) -> tuple[StandardBasis, MonomialOrdering]:
    """Cross the facet with relative interior point w and outer normal v.

    The weight-chain ordering (w, v) with the old tiebreak stands in for the
    perturbed weight w + eps*v; under it a minimal standard basis of the
    weighted homogeneous initial ideal <H> is computed honestly and lifted.
    """
    if w[0] >= 0:
        raise InvalidInput("facet interior point must have negative t-entry")
    ord_new = MonomialOrdering((tuple(w), tuple(v)), ord_.tiebreak)
    H_new = minimize(ord_new, standard_basis(ord_new, H, step_cap))
    return lift(H_new.elements, ord_new, H, G, ord_, step_cap), ord_new


def groebner_cone_at(ordering: MonomialOrdering, gens: Sequence[Polynomial],
                     prime: int | None = None,
                     step_cap: int = DEFAULT_STEP_CAP) -> GroebnerCone:
    """Maximal Groebner cone of the ordering's first weight.

    The weight must be generic, i.e. lie in the open equivalence class of a
    maximal cone; skeleton ties at the weight show up as equation rows and
    raise ``NonGenericWeight`` with those equations, so the caller can
    perturb.
    """
    if not ordering.weights or ordering.weights[0][0] >= 0:
        raise InvalidInput("need a weighted ordering with negative t-entry")
    w = ordering.weights[0]
    basis = ensure_initially_reduced(ordering, gens, prime, step_cap)
    H = tuple(initial_form(w, g) for g in basis.elements)
    hc = cone_from_basis(ordering, basis.elements, H)
    if hc.eqs:
        raise NonGenericWeight("weight lies on a lower-dimensional class", hc.eqs)
    return GroebnerCone(hc, dd_rays(hc), basis, H, tuple(w))


def _cone_from_adjacent(G_new: StandardBasis, ord_new: MonomialOrdering,
                        prime: int | None, step_cap: int) -> GroebnerCone:
    """Build the maximal cone on the far side of a flip.

    The lifted basis is initially reduced under the new ordering, the cone
    is read off with the leading terms as initial forms, and the ordering is
    re-anchored to a single interior weight so chains do not accumulate
    across many flips.
    """
    basis = ensure_initially_reduced(ord_new, G_new.elements, prime, step_cap)
    lts = tuple(Polynomial.term(*leading_term(ord_new, g)) for g in basis.elements)
    hc = cone_from_basis(ord_new, basis.elements, lts)
    assert not hc.eqs, "leading terms cannot produce equations"
    u = relative_interior_point(hc)
    if u[0] >= 0:
        raise NonGenericWeight("adjacent cone has no interior weight below the boundary")
    anchored = MonomialOrdering((tuple(u),), ord_new.tiebreak)
    for g, lt in zip(basis.elements, lts):
        if initial_form(u, g) != lt:
            raise NonGenericWeight("re-anchored weight is not interior", hc.ineqs)
    return GroebnerCone(hc, dd_rays(hc), StandardBasis(basis.elements, anchored),
                        lts, tuple(u))


def _start_ordering(n: int, tiebreak, start_weight):
    if start_weight is not None:
        return MonomialOrdering((tuple(start_weight),), tuple(tiebreak))
    return MonomialOrdering(((-1,) + (1,) * n,), tuple(tiebreak))


def _perturbed(base, k):
    """Deterministic genericity nudge, attempt k.

    A fixed direction like (0, 1, 2, ..., n) can lie inside a tie hyperplane
    (rows such as w1 - 2*w2 + w3 annihilate every arithmetic progression),
    so each attempt draws a fresh pseudo-random rational direction from a
    seeded generator; the sequence is reproducible across runs.
    """
    rng = random.Random(0xC0FFEE + k)
    return tuple(
        b + (Fraction(rng.randint(1, 97 * 97), 97 ** 3) if i > 0 else 0)
        for i, b in enumerate(base)
    )


def groebner_fan(ideal: Ideal, tiebreak=None, start_weight=None, threads: int = 1,
                 step_cap: int = DEFAULT_STEP_CAP) -> Fan:
    """All maximal Groebner cones of an x-homogeneous ideal, with adjacency.

    Breadth-first facet traversal with containment-based deduplication: a
    facet is crossed only when its relative interior point is in no other
    known cone.  ``threads > 1`` evaluates the flips of one cone's facets
    concurrently; insertion stays sequential, so the resulting set of cones
    and the serialised output are identical to a single-threaded run.
    """
    for g in ideal.gens:
        if not is_x_homogeneous(g):
            raise InvalidInput("generators must be x-homogeneous")
    n = ideal.nvars
    perm = tuple(tiebreak) if tiebreak is not None else tuple(range(n))
    base_ord = _start_ordering(n, perm, start_weight)
    base_w = base_ord.weights[0]
    start = None
    for k in range(200):
        try:
            w = base_w if k == 0 else _perturbed(base_w, k)
            start = groebner_cone_at(MonomialOrdering((w,), perm), ideal.gens,
                                     ideal.prime, step_cap)
            break
        except NonGenericWeight:
            continue
    if start is None:
        raise NonGenericWeight("could not find a generic starting weight")

    cones: list[GroebnerCone] = [start]
    adjacency: dict[frozenset, HCone] = {}
    queue: deque[int] = deque([0])
    executor = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None

    def expand(cone: GroebnerCone, facet):
        wpt = relative_interior_point(facet.cone)
        H = tuple(initial_form(wpt, g) for g in cone.basis.elements)
        flipped, ord_new = flip(cone.basis, H, facet.outer_normal,
                                cone.basis.ordering, wpt, step_cap)
        return wpt, _cone_from_adjacent(flipped, ord_new, ideal.prime, step_cap)

    try:
        while queue:
            idx = queue.popleft()
            cone = cones[idx]
            work = [f for f in facets(cone.hcone) if not f.in_boundary]
            known = list(cones)
            pending = []
            for facet in work:
                wpt = relative_interior_point(facet.cone)
                neighbor = next((j for j, c in enumerate(known)
                                 if j != idx and contains(c.hcone, wpt)), None)
                if neighbor is not None:
                    adjacency.setdefault(frozenset((idx, neighbor)), facet.cone)
                else:
                    pending.append(facet)
            if executor is not None:
                results = list(executor.map(lambda f: expand(cone, f), pending))
            else:
                results = [expand(cone, f) for f in pending]
            for facet, (wpt, new_cone) in zip(pending, results):
                dup = next((j for j, c in enumerate(cones)
                            if j != idx and contains(c.hcone, wpt)), None)
                if dup is not None:
                    adjacency.setdefault(frozenset((idx, dup)), facet.cone)
                    continue
                cones.append(new_cone)
                j = len(cones) - 1
                adjacency.setdefault(frozenset((idx, j)), facet.cone)
                queue.append(j)
    finally:
        if executor is not None:
            executor.shutdown()

    order = sorted(range(len(cones)), key=lambda i: cones[i].canonical_key())
    rename = {old: new for new, old in enumerate(order)}
    sorted_cones = tuple(cones[i] for i in order)
    adj = []
    for pair, fc in adjacency.items():
        i, j = sorted(rename[x] for x in pair)
        adj.append((i, j, fc))
    adj.sort(key=lambda t: (t[0], t[1]))
    return Fan(sorted_cones, tuple(adj))


def boundary_fan(fan: Fan) -> tuple[HCone, ...]:
    """Deduplicated boundary cones (v_0 = 0 slices) of the maximal cones."""
    out: list[tuple] = []
    seen = set()
    for cone in fan.maximal_cones:
        bc = boundary_cone(cone.hcone)
        data = dd_rays(bc)
        key = (data.rays, data.lineality)
        if key not in seen:
            seen.add(key)
            out.append((key, bc))
    out.sort(key=lambda kv: kv[0])
    return tuple(bc for _, bc in out)
