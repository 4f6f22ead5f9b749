"""Full Groebner fans by facet flips.

Two classics: the principal ideal <t*x^2 + x*y + t*y^2> whose fan has three
maximal cones (two of them meeting only in the boundary hyperplane), and
<x + z, y + z>, where a naive reading of the generators suggests four cones
but flipping shows there are exactly three.

Run:  python3 demos/05_fan_traversal.py
"""

from tfan import Ideal, boundary_fan, dd_rays, groebner_fan, leading_term
from tfan.cli import format_poly, parse_poly

names = ["x", "y"]
ideal = Ideal((parse_poly("t*x^2 + x*y + t*y^2", names),), 2)
fan = groebner_fan(ideal)
print(f"principal ideal: {len(fan.maximal_cones)} maximal cones")
for i, c in enumerate(fan.maximal_cones):
    print(f"  cone {i}: initial ideal <{format_poly(c.initial_forms[0], names)}>",
          " rays", c.data.rays, " lineality", c.data.lineality)
print("  adjacency:", [(i, j) for i, j, _ in fan.adjacency])
print("  boundary fan dims:", [dd_rays(b).dim for b in boundary_fan(fan)])

names3 = ["x", "y", "z"]
ideal3 = Ideal((parse_poly("x + z", names3), parse_poly("y + z", names3)), 3)
fan3 = groebner_fan(ideal3)
print(f"\nlinear ideal: {len(fan3.maximal_cones)} maximal cones (not four!)")
for i, c in enumerate(fan3.maximal_cones):
    basis = [format_poly(g, names3) for g in c.basis.elements]
    lead = [format_poly(h, names3) for h in c.initial_forms]
    print(f"  cone {i}: basis {basis}  leading ideal <{', '.join(lead)}>")
print("  adjacency:", [(i, j) for i, j, _ in fan3.adjacency])

# The prime regime: an ideal containing 2 - t.  The fan machinery runs the
# finite initial-reduction pipeline at every flip.
gens = tuple(parse_poly(s, names) for s in
             ("2 - t", "x*y^2 - t^2*y^3", "x^2 - t^3*y^2"))
fan_p = groebner_fan(Ideal(gens, 2, prime=2))
print(f"\nprime-regime ideal: {len(fan_p.maximal_cones)} maximal cones")
for i, c in enumerate(fan_p.maximal_cones):
    lead = [format_poly(h, names) for h in c.initial_forms]
    print(f"  cone {i}: leading ideal <{', '.join(lead)}>")
