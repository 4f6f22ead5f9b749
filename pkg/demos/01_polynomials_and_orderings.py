"""Polynomials in Z[t, x, y, z], t-local orderings, and initial data.

Run:  python3 demos/01_polynomials_and_orderings.py
"""

from tfan import (
    initial_form,
    leading_term,
    t_skeleton,
    weighted_ordering,
)
from tfan.cli import format_poly, parse_poly

names = ["x", "y", "z"]

# The running example: two generators of an ideal in Z[[t]][x, y, z].
g1 = parse_poly("x - t^3*x + t^3*z - t^4*z", names)
g2 = parse_poly("y - t^3*y + t^2*z - t^4*z", names)
print("g1 =", format_poly(g1, names))
print("g2 =", format_poly(g2, names))

# A weighted t-local ordering: weight vector (-1, 3, 3, 3) on (t, x, y, z),
# refined by the lexicographic tiebreak x > y > z > 1 > t.  The first entry
# must be negative: low powers of t win, so t behaves like a local variable.
ordering = weighted_ordering((-1, 3, 3, 3), 3)
print("\nleading term of g1:", leading_term(ordering, g1))
print("leading term of g2:", leading_term(ordering, g2))

# Initial forms collect the terms of maximal weighted degree.  On the facet
# weight (-1, 2, -1, 1) the initial form of g2 keeps two terms.
w = (-1, 2, -1, 1)
print(f"\ninitial forms at w = {w}:")
print("  in_w(g1) =", format_poly(initial_form(w, g1), names))
print("  in_w(g2) =", format_poly(initial_form(w, g2), names))

# The t-skeleton keeps, for every x-monomial, only the term of lowest
# t-power.  Those are the only terms that can ever show up in an initial
# form, so they are exactly what cone extraction looks at.
print("\nt-skeleton of g1:", format_poly(t_skeleton(g1), names))
print("t-skeleton of g2:", format_poly(t_skeleton(g2), names))
