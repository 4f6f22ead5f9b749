import random
from fractions import Fraction

import pytest

from tfan import (
    Ideal,
    NonGenericWeight,
    Polynomial,
    StandardBasis,
    WitnessFailed,
    boundary_fan,
    contains,
    dd_rays,
    equal,
    flip,
    groebner_cone_at,
    groebner_fan,
    initial_form,
    intersect,
    is_face,
    leading_term,
    lift,
    max_weight_part,
    relative_interior_point,
    weighted_ordering,
    witness,
)

from helpers import P, XY, XYZ, polys, random_prime_ideal


def section3_data():
    o = weighted_ordering((-1, 3, 3, 3), 3)
    G = StandardBasis(polys(XYZ, "x - t^3*x + t^3*z - t^4*z", "y - t^3*y + t^2*z - t^4*z"), o)
    w = (-1, 2, -1, 1)
    H = tuple(initial_form(w, g) for g in G.elements)
    return o, G, w, H


class TestWitness:
    def test_initial_form_lifts_to_generator(self):
        o, G, w, H = section3_data()
        f = witness(P("x", XYZ), H, G.elements, o)
        assert f == G.elements[0]

    def test_listed_initial_form(self):
        o, G, w, H = section3_data()
        assert witness(H[0], H, G.elements, o) == G.elements[0]

    def test_term_multiple(self):
        o, G, w, H = section3_data()
        h = H[0].term_mul(1, (2, 0, 0, 0))  # t^2 * x
        f = witness(h, H, G.elements, o)
        assert initial_form(w, f) == h

    def test_witness_failed_outside_initial_ideal(self):
        o, G, w, H = section3_data()
        with pytest.raises(WitnessFailed):
            witness(P("z", XYZ), H, G.elements, o)


class TestLift:
    def test_identity_lift(self):
        o, G, w, H = section3_data()
        lifted = lift(H, o, H, G, o)
        assert set(lifted.elements) == set(G.elements)

    def test_flip_example_lift(self):
        o = weighted_ordering((-1, 1, 1), 2)
        G = StandardBasis(polys(XY, "2 - t", "x*y^2 - t^2*y^3", "x^2 - t^3*y^2", "t^3*y^4"), o)
        w = (-4, 1, 7)
        H = tuple(initial_form(w, g) for g in G.elements)
        ord2 = o.with_weights(w, (3, 5, 1))
        H_new = polys(XY, "2", "x*y^2", "t^3*y^2 - x^2", "x^3")
        lifted = lift(H_new, ord2, H, G, o)
        assert set(lifted.elements) == set(polys(
            XY, "2 - t", "x*y^2 - t^2*y^3", "-x^2 + t^3*y^2", "x^3 - t^5*y^3"))

    def test_3cone_lift_returns_same_polynomials(self):
        o = weighted_ordering((-1, 1, 1, 1), 3)
        G = StandardBasis(polys(XYZ, "x + z", "y + z"), o)
        w = (-1, 0, 1, 0)
        H = tuple(initial_form(w, g) for g in G.elements)
        assert H == polys(XYZ, "x + z", "y")
        ord2 = o.with_weights(w, (0, -1, 0, 1))
        lifted = lift(H, ord2, H, G, o)
        assert set(lifted.elements) == set(G.elements)


class TestFlip:
    def test_golden_flip(self):
        o = weighted_ordering((-1, 1, 1), 2)
        G = StandardBasis(polys(XY, "2 - t", "x*y^2 - t^2*y^3", "x^2 - t^3*y^2", "t^3*y^4"), o)
        w = (-4, 1, 7)
        H = [initial_form(w, g) for g in G.elements]
        assert H == list(polys(XY, "2", "x*y^2", "x^2 - t^3*y^2", "t^3*y^4"))
        G2, ord2 = flip(G, H, (3, 5, 1), o, w)
        got = {g if leading_term(ord2, g).coeff > 0 else -g for g in G2.elements}
        assert got == set(polys(XY, "2 - t", "x*y^2 - t^2*y^3", "t^3*y^2 - x^2",
                                "x^3 - t^5*y^3"))
        old = {leading_term(o, g) for g in G.elements}
        new = {leading_term(ord2, g) for g in G2.elements}
        assert old != new

    def test_double_flip_round_trip(self):
        # crossing the same facet twice lands on a cone equal to the original
        ideal = Ideal(polys(XY, "t*x^2 + x*y + t*y^2"), 2)
        fanres = groebner_fan(ideal)
        mid = next(c for c in fanres.maximal_cones
                   if c.initial_forms[0] == P("x*y", XY))
        from tfan.cone import facets, relative_interior_point
        facet = next(f for f in facets(mid.hcone) if not f.in_boundary)
        w = relative_interior_point(facet.cone)
        H = [initial_form(w, g) for g in mid.basis.elements]
        G2, ord2 = flip(mid.basis, H, facet.outer_normal, mid.basis.ordering, w)
        from tfan.fan import _cone_from_adjacent
        other = _cone_from_adjacent(G2, ord2, None, 10**6)
        H2 = [initial_form(w, g) for g in other.basis.elements]
        back_normal = tuple(-x for x in facet.outer_normal)
        G3, ord3 = flip(other.basis, H2, back_normal, other.basis.ordering, w)
        back = _cone_from_adjacent(G3, ord3, None, 10**6)
        assert equal(back.hcone, mid.hcone)

    def test_3cone_first_flip_leading_ideal(self):
        o = weighted_ordering((-1, 1, 1, 1), 3)
        G = StandardBasis(polys(XYZ, "x + z", "y + z"), o)
        w = (-1, 0, 1, 0)
        H = [initial_form(w, g) for g in G.elements]
        G2, ord2 = flip(G, H, (0, -1, 0, 1), o, w)
        from tfan.fan import _cone_from_adjacent
        cone = _cone_from_adjacent(G2, ord2, None, 10**6)
        lead = {leading_term(cone.basis.ordering, g) for g in cone.basis.elements}
        assert {(c, e[1:]) for c, e in lead} == {(1, (0, 0, 1)), (1, (0, 1, 0))}


class TestGroebnerConeAt:
    def test_section3_cone(self):
        o = weighted_ordering((-1, 3, 3, 3), 3)
        gc = groebner_cone_at(o, polys(XYZ, "x - t^3*x + t^3*z - t^4*z",
                                       "y - t^3*y + t^2*z - t^4*z"))
        assert gc.hcone.ineqs == ((-3, 1, 0, -1), (-2, 0, 1, -1))
        assert gc.interior_weight == (-1, 3, 3, 3)

    def test_fig1_middle(self):
        o = weighted_ordering((-1, 1, 1), 2)
        gc = groebner_cone_at(o, polys(XY, "t*x^2 + x*y + t*y^2"))
        assert gc.initial_forms == (P("x*y", XY),)
        assert set(gc.hcone.ineqs) == {(-1, -1, 1), (-1, 1, -1)}

    def test_single_term_halfspace(self):
        o = weighted_ordering((-1, 1, 1), 2)
        gc = groebner_cone_at(o, polys(XY, "3*t^2*x*y"))
        assert gc.hcone.ineqs == () and gc.data.dim == 3

    def test_nongeneric_weight_rejected(self):
        o = weighted_ordering((-1, 2, -1, 1), 3)  # lies on a facet
        with pytest.raises(NonGenericWeight) as err:
            groebner_cone_at(o, polys(XYZ, "x - t^3*x + t^3*z - t^4*z",
                                      "y - t^3*y + t^2*z - t^4*z"))
        assert err.value.equations


class TestFan:
    def test_principal_ideal_three_cones(self):
        result = groebner_fan(Ideal(polys(XY, "t*x^2 + x*y + t*y^2"), 2))
        assert len(result.maximal_cones) == 3
        leads = {c.initial_forms[0] for c in result.maximal_cones}
        assert leads == set(polys(XY, "t*x^2", "x*y", "t*y^2"))
        for c in result.maximal_cones:
            assert (0, 1, 1) in c.data.lineality
        outer = [c for c in result.maximal_cones
                 if c.initial_forms[0] != P("x*y", XY)]
        meet = intersect(outer[0].hcone, outer[1].hcone)
        for g in list(dd_rays(meet).rays) + list(dd_rays(meet).lineality):
            assert g[0] == 0

    def test_linear_ideal_three_cones_not_four(self):
        result = groebner_fan(Ideal(polys(XYZ, "x + z", "y + z"), 3))
        assert len(result.maximal_cones) == 3
        leads = {frozenset((c, e[1:]) for c, e in
                           (leading_term(gc.basis.ordering, g) for g in gc.basis.elements))
                 for gc in result.maximal_cones}
        assert leads == {
            frozenset({(1, (1, 0, 0)), (1, (0, 1, 0))}),  # <x, y>
            frozenset({(1, (0, 0, 1)), (1, (0, 1, 0))}),  # <z, y>
            frozenset({(1, (0, 0, 1)), (1, (1, 0, 0))}),  # <z, x>
        }

    def test_constant_ideal_single_halfspace(self):
        result = groebner_fan(Ideal(polys(XY, "5"), 2))
        assert len(result.maximal_cones) == 1
        assert result.maximal_cones[0].data.dim == 3

    def test_order_independence(self):
        ideal = Ideal(polys(XYZ, "x + z", "y + z"), 3)
        a = groebner_fan(ideal)
        b = groebner_fan(ideal, start_weight=(-2, 3, -1, 1))
        keys_a = [c.canonical_key() for c in a.maximal_cones]
        keys_b = [c.canonical_key() for c in b.maximal_cones]
        assert keys_a == keys_b

    def test_threads_same_set(self):
        ideal = Ideal(polys(XY, "t*x^2 + x*y + t*y^2"), 2)
        a = groebner_fan(ideal)
        b = groebner_fan(ideal, threads=4)
        assert [c.canonical_key() for c in a.maximal_cones] == \
               [c.canonical_key() for c in b.maximal_cones]
        assert [(i, j) for i, j, _ in a.adjacency] == [(i, j) for i, j, _ in b.adjacency]

    def test_adjacent_cones_share_facet(self):
        result = groebner_fan(Ideal(polys(XYZ, "x + z", "y + z"), 3))
        cones = result.maximal_cones
        for i, j, facet in result.adjacency:
            meet = intersect(cones[i].hcone, cones[j].hcone)
            assert equal(meet, facet)
            assert is_face(facet, cones[i].hcone)
            assert is_face(facet, cones[j].hcone)

    def test_coverage_sampled(self):
        result = groebner_fan(Ideal(polys(XY, "t*x^2 + x*y + t*y^2"), 2))
        rng = random.Random(1)
        for _ in range(300):
            w = (-Fraction(rng.randint(1, 20), rng.randint(1, 4)),
                 Fraction(rng.randint(-20, 20), rng.randint(1, 4)),
                 Fraction(rng.randint(-20, 20), rng.randint(1, 4)))
            assert any(contains(c.hcone, w) for c in result.maximal_cones)

    def test_random_prime_ideal_fan(self):
        rng = random.Random(2)
        ideal = random_prime_ideal(rng)
        result = groebner_fan(ideal, step_cap=500000)
        assert len(result.maximal_cones) >= 1

    def test_worked_ideal_six_cones(self):
        # richer fan: where t-terms lead, lifted bases gain elements whose
        # reduced forms need unit multipliers (e.g. x + t*x - t*y)
        gens = polys(XYZ, "x - t^3*x + t^3*z - t^4*z", "y - t^3*y + t^2*z - t^4*z")
        result = groebner_fan(Ideal(gens, 3))
        assert len(result.maximal_cones) == 6
        bases = [set(c.basis.elements) for c in result.maximal_cones]
        assert {P("y + t*y + t^2*y + t^2*z + t^3*z", XYZ),
                P("x + t*x - t*y", XYZ)} in bases
        # order independence from a second generic start
        again = groebner_fan(Ideal(gens, 3), start_weight=(-2, -5, 1, 3))
        assert [c.canonical_key() for c in again.maximal_cones] == \
               [c.canonical_key() for c in result.maximal_cones]
        # sampled coverage as the independent cross-check of completeness
        rng = random.Random(9)
        for _ in range(400):
            w = (-Fraction(rng.randint(1, 30), rng.randint(1, 3)),
                 *[Fraction(rng.randint(-30, 30), rng.randint(1, 3)) for _ in range(3)])
            assert any(contains(c.hcone, w) for c in result.maximal_cones)

    def test_leading_ideal_stable_on_cone_interior(self):
        # two interior weights of one cone give the same leading-term ideal
        from tfan import standard_basis, minimize
        gens = polys(XYZ, "x - t^3*x + t^3*z - t^4*z", "y - t^3*y + t^2*z - t^4*z")
        o1 = weighted_ordering((-1, 3, 3, 3), 3)
        gc = groebner_cone_at(o1, gens)
        w2 = relative_interior_point(gc.hcone)
        assert contains(gc.hcone, w2)
        o2 = weighted_ordering(w2, 3)
        lts1 = {leading_term(o1, g) for g in minimize(o1, standard_basis(o1, gens)).elements}
        lts2 = {leading_term(o2, g) for g in minimize(o2, standard_basis(o2, gens)).elements}
        assert lts1 == lts2

    def test_boundary_weight_keeps_leading_term_inside_initial_form(self):
        # for w in the cone (even on its boundary) the leading term of every
        # basis element survives as the leading term of its initial form
        o = weighted_ordering((-1, 3, 3, 3), 3)
        gens = polys(XYZ, "x - t^3*x + t^3*z - t^4*z", "y - t^3*y + t^2*z - t^4*z")
        gc = groebner_cone_at(o, gens)
        for w in ((-1, 3, 3, 3), (-1, 2, -1, 1)):
            assert contains(gc.hcone, w)
            for g in gc.basis.elements:
                assert leading_term(o, initial_form(w, g)) == leading_term(o, g)


class TestBoundaryFan:
    def test_fig1_boundary(self):
        result = groebner_fan(Ideal(polys(XY, "t*x^2 + x*y + t*y^2"), 2))
        bcones = boundary_fan(result)
        for bc in bcones:
            data = dd_rays(bc)
            for g in list(data.rays) + list(data.lineality):
                assert g[0] == 0
        # the middle cone meets the boundary in the lineality line R*(0,1,1)
        dims = sorted(dd_rays(bc).dim for bc in bcones)
        assert dims == [1, 2, 2]

    def test_halfspace_boundary(self):
        result = groebner_fan(Ideal(polys(XY, "5"), 2))
        bcones = boundary_fan(result)
        assert len(bcones) == 1
        assert dd_rays(bcones[0]).dim == 2  # all of {0} x R^2

    def test_boundary_cones_form_a_fan_and_cover(self):
        for gens, n in ((polys(XY, "t*x^2 + x*y + t*y^2"), 2),
                        (polys(XYZ, "x + z", "y + z"), 3)):
            bcones = boundary_fan(groebner_fan(Ideal(gens, n)))
            for i in range(len(bcones)):
                for j in range(i + 1, len(bcones)):
                    meet = intersect(bcones[i], bcones[j])
                    assert is_face(meet, bcones[i])
                    assert is_face(meet, bcones[j])
            rng = random.Random(4)
            for _ in range(200):
                w = (0, *[Fraction(rng.randint(-20, 20), rng.randint(1, 4))
                          for _ in range(n)])
                assert any(contains(b, w) for b in bcones)
