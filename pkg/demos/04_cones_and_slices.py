"""Groebner cones as exact rational polyhedra: rays, facets, slices.

Run:  python3 demos/04_cones_and_slices.py
"""

from tfan import (
    affine_slice,
    boundary_cone,
    dd_rays,
    facets,
    groebner_cone_at,
    relative_interior_point,
    weighted_ordering,
)
from tfan.cli import format_poly, parse_poly, render_cone

names = ["x", "y"]
gens = [parse_poly("t*x^2 + x*y + t*y^2", names)]

# The maximal cone around the weight (-1, 1, 1): its initial ideal is <x*y>.
gc = groebner_cone_at(weighted_ordering((-1, 1, 1), 2), gens)
print("initial form:", format_poly(gc.initial_forms[0], names))
print(render_cone(gc.hcone))

# Facets carry primitive outer normals; the one inside the boundary
# hyperplane {w_t = 0} is flagged and never crossed by the fan traversal.
print("\nfacets:")
for f in facets(gc.hcone):
    print("  outer normal", f.outer_normal, " boundary?", f.in_boundary,
          " interior point", relative_interior_point(f.cone))

# Slicing at w_t = -1 gives the affine picture usually drawn for these
# fans: here a strip with two vertices and the diagonal as a line.
sl = affine_slice(gc.hcone, [(0, -1)])
print("\nslice at w_t = -1:")
print("  vertices:", sl.vertices)
print("  rays:", sl.rays, " lines:", sl.lines)

# The boundary cone is the recession cone of that slice.
print("\nboundary cone data:", dd_rays(boundary_cone(gc.hcone)))
