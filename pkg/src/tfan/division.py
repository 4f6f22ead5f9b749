"""Division with remainder and standard bases over Z under t-local orderings.

Three engines live here:

* ``hddwr`` -- determinate division with remainder.  Deterministic: at every
  step the compare-greatest reducible term of the running remainder is
  reduced by the first list element whose leading term divides it (term
  divisibility over Z: coefficient divides and exponents are componentwise
  <=).  Terms nobody divides move to the remainder.  Termination is
  guaranteed when dividend and divisors are x-homogeneous and weighted
  homogeneous for one weight with negative t-entry; a step cap converts any
  other use into a diagnosable error.

* ``mora_weak_nf`` -- weak normal form with a unit multiplier u, lt(u) = 1.
  t-local orderings are not well-founded (1 > t > t^2 > ...), so plain tail
  chasing loops forever; the classical fix is to allow previously computed
  partial remainders as reducers, choosing among eligible reducers one of
  minimal t-ecart and recording the current state as a new reducer whenever
  the chosen ecart exceeds the current one.

* ``standard_basis`` -- completion with both S-pairs and GCD-pairs (the
  strong-basis pair set for coefficient rings like Z where leading ideals
  are generated by terms, not monomials).  The output is strong: every
  leading term of an ideal element is term-divisible by some basis leading
  term, which is what makes single-divisor division above sufficient.
"""

from __future__ import annotations

from math import gcd as _int_gcd
from typing import NamedTuple, Sequence

from .errors import DivisionDiverged, InvalidInput
from .exact import extended_gcd
from .poly import (
    MonomialOrdering,
    Polynomial,
    Term,
    exp_div,
    exp_lcm,
    exp_x_degree,
    leading_term,
    strip_unit_t_content,
    term_divides,
)

DEFAULT_STEP_CAP = 10**6


class DivisionResult(NamedTuple):
    quotients: tuple[Polynomial, ...]
    remainder: Polynomial


class WeakNFResult(NamedTuple):
    unit: Polynomial
    quotients: tuple[Polynomial, ...]
    remainder: Polynomial


class StandardBasis(NamedTuple):
    elements: tuple[Polynomial, ...]
    ordering: MonomialOrdering


def ecart(ord_: MonomialOrdering, f: Polynomial) -> int:
    """t-degree spread: max t-power in f minus the leading term's t-power."""
    lt = leading_term(ord_, f)
    return max(t.exp[0] for t in f.terms) - lt.exp[0]


def hddwr(ord_: MonomialOrdering, f: Polynomial, divisors: Sequence[Polynomial],
          step_cap: int = DEFAULT_STEP_CAP) -> DivisionResult:
    """Determinate division f = sum q_i g_i + r, no term of r divisible."""
    lts = [leading_term(ord_, g) for g in divisors]
    quotients = [Polynomial.zero() for _ in divisors]
    rem_parts: list[tuple[int, tuple]] = []
    h = f
    steps = 0
    while h:
        t = leading_term(ord_, h)
        for i, lt in enumerate(lts):
            if term_divides(lt, t):
                m = Term(t.coeff // lt.coeff, exp_div(t.exp, lt.exp))
                quotients[i] = quotients[i] + Polynomial.term(m.coeff, m.exp)
                h = h - divisors[i].term_mul(m.coeff, m.exp)
                break
        else:
            rem_parts.append((t.coeff, t.exp))
            h = Polynomial(tuple(u for u in h.terms if u.exp != t.exp))
        steps += 1
        if steps > step_cap:
            raise DivisionDiverged(
                f"determinate division exceeded {step_cap} steps",
                trace=[str(t.exp) for t in h.terms[:4]],
            )
    return DivisionResult(tuple(quotients), Polynomial.from_terms(rem_parts))


def mora_weak_nf(ord_: MonomialOrdering, f: Polynomial, divisors: Sequence[Polynomial],
                 step_cap: int = DEFAULT_STEP_CAP) -> WeakNFResult:
    """Weak normal form u*f = sum q_i g_i + r with lt(u) = 1.

    Reducer choice among the eligible: minimal t-ecart, then smallest
    absolute leading coefficient (coefficient-1 reducers always apply over Z
    and keep coefficient growth down), then order of entry.
    """
    k = len(divisors)
    if f.is_zero:
        return WeakNFResult(_one_like(divisors, f), (Polynomial.zero(),) * k, f)
    one = Polynomial.constant(1, f.nvars)
    # reducers: (ecart, |lc|, order-of-entry, lt, poly, payload); payload is
    # an index into divisors or a snapshot (h, u, quotients) of a state.
    reducers = []
    for i, g in enumerate(divisors):
        if g.is_zero:
            raise InvalidInput("zero divisor in weak normal form")
        lt = leading_term(ord_, g)
        reducers.append((ecart(ord_, g), abs(lt.coeff), len(reducers), lt, g, i))
    u = one
    q = [Polynomial.zero() for _ in divisors]
    h = f
    steps = 0
    while h:
        t = leading_term(ord_, h)
        eligible = [r for r in reducers if term_divides(r[3], t)]
        if not eligible:
            break
        e_h = ecart(ord_, h)
        red = min(eligible, key=lambda r: (r[0], r[1], r[2]))
        if red[0] > e_h:
            reducers.append((e_h, abs(t.coeff), len(reducers), t, h, (h, u, tuple(q))))
        m = Term(t.coeff // red[3].coeff, exp_div(t.exp, red[3].exp))
        if isinstance(red[5], int):
            q[red[5]] = q[red[5]] + Polynomial.term(m.coeff, m.exp)
            h = h - red[4].term_mul(m.coeff, m.exp)
        else:
            h_s, u_s, q_s = red[5]
            h = h - h_s.term_mul(m.coeff, m.exp)
            u = u - u_s.term_mul(m.coeff, m.exp)
            q = [qi - qs.term_mul(m.coeff, m.exp) for qi, qs in zip(q, q_s)]
        steps += 1
        if steps > step_cap:
            raise DivisionDiverged(
                f"weak normal form exceeded {step_cap} steps",
                trace=[str(t.exp) for t in h.terms[:4]],
            )
    return WeakNFResult(u, tuple(q), h)


def _one_like(divisors, f):
    for g in divisors:
        if not g.is_zero:
            return Polynomial.constant(1, g.nvars)
    if not f.is_zero:
        return Polynomial.constant(1, f.nvars)
    return Polynomial.zero()


def spair(ord_: MonomialOrdering, f: Polynomial, g: Polynomial) -> Polynomial:
    """S-polynomial over Z: cancel lcm of leading terms via coefficient lcm."""
    lf, lg = leading_term(ord_, f), leading_term(ord_, g)
    m = exp_lcm(lf.exp, lg.exp)
    a, b = lf.coeff, lg.coeff
    c = abs(a * b) // _gcd(a, b)
    return f.term_mul(c // a, exp_div(m, lf.exp)) - g.term_mul(c // b, exp_div(m, lg.exp))


def gpair(ord_: MonomialOrdering, f: Polynomial, g: Polynomial) -> Polynomial:
    """GCD-polynomial: leading coefficient becomes gcd of the two lc's."""
    lf, lg = leading_term(ord_, f), leading_term(ord_, g)
    m = exp_lcm(lf.exp, lg.exp)
    _, u, v = extended_gcd(lf.coeff, lg.coeff)
    return f.term_mul(u, exp_div(m, lf.exp)) + g.term_mul(v, exp_div(m, lg.exp))


def _gcd(a, b):
    return _int_gcd(abs(a), abs(b))


def normalize_element(ord_: MonomialOrdering, f: Polynomial) -> Polynomial:
    """Basis-element normalisation: strip unit t-content, make lc positive."""
    f = strip_unit_t_content(f)
    if leading_term(ord_, f).coeff < 0:
        f = -f
    return f


# --- standard bases via degree homogenisation -------------------------------
#
# Single-divisor reduction under a t-local ordering need not terminate over
# Z: a coefficient-1 reducer can force an eternal climb in t while the
# stored partial remainders never re-apply because integer divisibility
# fails.  The classical cure is to compute in one extra variable s that
# homogenises the t-degree: under an ordering graded by (s+t+x)-degree the
# monomial order is global, head reduction strictly descends in a
# well-order, and the strong-pair completion over Z terminates.  Setting
# s = 1 afterwards yields a strong standard basis for the t-local ordering
# (x-homogeneity and st-homogeneity are preserved throughout, so leading
# terms dehomogenise to leading terms).


def _hom_key(ord_: MonomialOrdering):
    """Sort key on homogenised exponents (sigma, beta, alpha...)."""

    def key(e):
        rest = e[1:]
        wpart, alpha, negbeta = ord_.key(rest)
        return (e[0] + e[1] + sum(e[2:]), wpart, alpha, negbeta)

    return key


def _homogenize(f: Polynomial) -> Polynomial:
    top = max(t.exp[0] for t in f.terms)
    return Polynomial.from_terms([(c, (top - e[0],) + e) for c, e in f.terms])


def _dehomogenize(f: Polynomial) -> Polynomial:
    return Polynomial.from_terms([(c, e[1:]) for c, e in f.terms])


def _head_reduce(key, h: Polynomial, basis, step_cap) -> Polynomial:
    """Weak head reduction under a global order: stop at the first leading
    term no basis leading term divides."""
    steps = 0
    while h:
        t = max(h.terms, key=lambda u: key(u.exp))
        hit = None
        for lt, g in basis:
            if term_divides(lt, t):
                hit = (lt, g)
                break
        if hit is None:
            return h
        lt, g = hit
        h = h - g.term_mul(t.coeff // lt.coeff, exp_div(t.exp, lt.exp))
        steps += 1
        if steps > step_cap:
            raise DivisionDiverged(f"head reduction exceeded {step_cap} steps")
    return h


def standard_basis(ord_: MonomialOrdering, gens: Sequence[Polynomial],
                   step_cap: int = DEFAULT_STEP_CAP) -> StandardBasis:
    """Strong standard basis of <gens> w.r.t. a t-local ordering.

    The completion runs on the t-degree homogenisation with both S- and
    GCD-pairs (the strong pair set needed over Z, where leading ideals are
    generated by terms rather than monomials); pairs are processed smallest
    lcm first under the graded order.  The dehomogenised elements are
    normalised by stripping Z[[t]]-unit content and fixing positive leading
    coefficients.
    """
    first = [normalize_element(ord_, f) for f in gens if not f.is_zero]
    if not first:
        raise InvalidInput("standard basis of the zero ideal is not represented")
    key = _hom_key(ord_)

    def hlt(f):
        return max(f.terms, key=lambda u: key(u.exp))

    G: list[Polynomial] = []
    lts: list[Term] = []
    for f in first:
        h = _homogenize(f)
        if h not in G:
            G.append(h)
            lts.append(hlt(h))
    pending = [(i, j) for j in range(len(G)) for i in range(j)]
    guard = 0
    while pending:
        pending.sort(key=lambda ij: (key(exp_lcm(lts[ij[0]].exp, lts[ij[1]].exp)),
                                     ij[0], ij[1]))
        i, j = pending.pop(0)
        a, b = lts[i].coeff, lts[j].coeff
        m = exp_lcm(lts[i].exp, lts[j].exp)
        c = abs(a * b) // _gcd(a, b)
        candidates = [G[i].term_mul(c // a, exp_div(m, lts[i].exp))
                      - G[j].term_mul(c // b, exp_div(m, lts[j].exp))]
        if a % b != 0 and b % a != 0:
            _, u, v = extended_gcd(a, b)
            candidates.append(G[i].term_mul(u, exp_div(m, lts[i].exp))
                              + G[j].term_mul(v, exp_div(m, lts[j].exp)))
        for h in candidates:
            if h.is_zero:
                continue
            r = _head_reduce(key, h, list(zip(lts, G)), step_cap)
            if r.is_zero:
                continue
            G.append(r)
            lts.append(hlt(r))
            pending.extend((k, len(G) - 1) for k in range(len(G) - 1))
        guard += 1
        if guard > step_cap:
            raise DivisionDiverged(f"pair processing exceeded {step_cap} pairs")
    out: list[Polynomial] = []
    for h in G:
        f = normalize_element(ord_, _dehomogenize(h))
        if f not in out:
            out.append(f)
    out.sort(key=lambda g: (ord_.key(leading_term(ord_, g).exp), g.terms), reverse=True)
    return StandardBasis(tuple(out), ord_)


def minimize(ord_: MonomialOrdering, basis: StandardBasis) -> StandardBasis:
    """Drop elements whose leading term is term-divisible by another's.

    The leading ideal is unchanged; minimal standard bases remain standard
    bases (and generating sets).  Potential divisors are processed first so
    the outcome is deterministic.
    """
    elems = list(basis.elements)

    def order(g):
        lt = leading_term(ord_, g)
        return (exp_x_degree(lt.exp), lt.exp[0], abs(lt.coeff), ord_.key(lt.exp), g.terms)

    kept: list[Polynomial] = []
    for g in sorted(elems, key=order):
        lt = leading_term(ord_, g)
        if any(term_divides(leading_term(ord_, h), lt) for h in kept):
            continue
        kept.append(g)
    kept.sort(key=lambda g: (ord_.key(leading_term(ord_, g).exp), g.terms), reverse=True)
    return StandardBasis(tuple(kept), ord_)
