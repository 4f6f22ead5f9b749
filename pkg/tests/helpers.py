"""Shared test helpers: polynomial building and seeded random ideals."""

import random

from tfan import Ideal, Polynomial
from tfan.cli import parse_poly

XY = ["x", "y"]
XYZ = ["x", "y", "z"]


def P(text, names):
    return parse_poly(text, names)


def polys(names, *texts):
    return tuple(parse_poly(t, names) for t in texts)


def random_prime_ideal(rng: random.Random) -> Ideal:
    """Small random x-homogeneous ideal containing p - t for p in {2, 3}.

    Bounds: at most 3 generators (p - t included), x-degrees <= 3, at most
    3 x-variables, coefficients in [-3, 3], t-powers <= 3.
    """
    n = rng.randint(1, 3)
    p = rng.choice([2, 3])
    gens = [Polynomial.from_terms([(p, (0,) * (1 + n)), (-1, (1,) + (0,) * n)])]
    for _ in range(rng.randint(1, 2)):
        d = rng.randint(1, 3)
        terms = {}
        for _ in range(rng.randint(1, 4)):
            alpha = [0] * n
            for v in rng.choices(range(n), k=d):
                alpha[v] += 1
            beta = rng.randint(0, 3)
            c = rng.choice([c for c in range(-3, 4) if c])
            key = (beta, *alpha)
            terms[key] = terms.get(key, 0) + c
        g = Polynomial.from_terms([(c, e) for e, c in terms.items()])
        if g.is_zero:
            g = Polynomial.term(1, (0, 1) + (0,) * (n - 1))
        gens.append(g)
    return Ideal(tuple(gens), n, prime=p)
