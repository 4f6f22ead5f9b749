"""Initial reduction of standard bases.

A basis element g = sum g_alpha(t) x^alpha has a t-skeleton: the t-minimal
term of each Z[t]-coefficient.  A standard basis is *initially reduced* when
it is minimal and no tail term of any element's skeleton is term-divisible by
a basis leading term.  That is the exact property needed to read the
Groebner cone off the basis; full tail reduction would in general produce
power series, initial reduction keeps everything polynomial.

Two regimes:

* prime regime: the ideal contains p - t for a declared prime p.  Then
  ``initially_reduced_standard_basis`` terminates unconditionally.  The
  pipeline is (p - t)-reduction of single elements, mutual reduction of an
  equal-x-degree block (two triangular passes), lazy cross-degree reduction
  against lower strata via a working list, and a driver that walks x-degrees
  bottom up.

* generic regime: ``generic_initial_reduce`` chases skeleton tail terms
  directly.  Termination is not guaranteed without p - t; a step cap turns
  divergence into ``InredDiverged``.  Dividing out Z[[t]]-unit content after
  each elimination resolves the common benign loops (for example a pair like
  {x + t*y, y + t*x} reduces to {x, y} instead of cycling).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Sequence

from .division import (
    DEFAULT_STEP_CAP,
    StandardBasis,
    minimize,
    mora_weak_nf,
    standard_basis,
)
from .errors import InredDiverged, InvalidInput, RegimeError
from .exact import extended_gcd, p_valuation
from .poly import (
    MonomialOrdering,
    Polynomial,
    exp_divides,
    is_x_homogeneous,
    leading_term,
    mul_tpoly,
    strip_unit_t_content,
    t_coefficient,
    t_skeleton,
    term_div,
    term_divides,
    tpoly_min_beta,
    tpoly_shift,
    x_degree,
)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if p % q == 0:
            return p == q
    # deterministic Miller-Rabin for anything larger we would realistically see
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class InredContext:
    """Prime-regime parameters: the uniformising prime and the ordering."""

    p: int
    ord: MonomialOrdering

    def __post_init__(self):
        if not _is_prime(self.p):
            raise InvalidInput(f"{self.p} is not prime")

    def p_minus_t(self, nvars: int) -> Polynomial:
        return Polynomial.from_terms(
            [(self.p, (0,) * (1 + nvars)), (-1, (1,) + (0,) * nvars)]
        )


def p_reduce(ctx: InredContext, g: Polynomial) -> Polynomial:
    """Reduce g initially with respect to p - t.

    Walks the terms outside the leading x-monomial from the top down; a term
    whose coefficient is exactly divisible by p**l is traded for its t-shifted
    partner via c*t^b -> (c/p^l)*t^{b+l} (a multiple of p^l - t^l), otherwise
    the whole Z[t]-coefficient of that x-monomial is settled.  Leading term
    and the ideal generated together with p - t are unchanged, and no tail
    term of the result's skeleton is divisible by p.
    """
    if g.is_zero:
        raise InvalidInput("p_reduce of the zero polynomial")
    if not is_x_homogeneous(g):
        raise InvalidInput("p_reduce input must be x-homogeneous")
    ord_, p = ctx.ord, ctx.p
    gamma = leading_term(ord_, g).exp[1:]
    done = [(c, e) for c, e in g.terms if e[1:] == gamma]
    work = Polynomial(tuple(t for t in g.terms if t.exp[1:] != gamma))
    while work:
        top = leading_term(ord_, work)
        if top.coeff % p == 0:
            l = p_valuation(top.coeff, p)
            lifted = (top.exp[0] + l,) + top.exp[1:]
            work = work - Polynomial.term(top.coeff, top.exp) \
                        + Polynomial.term(top.coeff // p**l, lifted)
        else:
            alpha = top.exp[1:]
            done.extend((c, e) for c, e in work.terms if e[1:] == alpha)
            work = Polynomial(tuple(t for t in work.terms if t.exp[1:] != alpha))
    return Polynomial.from_terms(done)


def _check_block(ord_, G):
    """Shared preconditions of the same-degree reducers."""
    if not G:
        return
    degs = set()
    lms = []
    for g in G:
        if g.is_zero or not is_x_homogeneous(g):
            raise InvalidInput("block elements must be nonzero and x-homogeneous")
        degs.add(x_degree(g))
        lt = leading_term(ord_, g)
        if lt.coeff != 1:
            raise InvalidInput("block elements must have leading coefficient 1")
        lms.append(lt.exp)
    if len(degs) > 1:
        raise InvalidInput("block elements must share one x-degree")
    if len(set(lms)) != len(lms):
        raise InvalidInput("block elements must have distinct leading monomials")
    if len({lm[1:] for lm in lms}) != len(lms):
        raise InvalidInput("block elements must have distinct leading x-monomials")


def inred_same_degree(ctx: InredContext, G: Sequence[Polynomial]) -> list[Polynomial]:
    """Initially reduce a block of equal x-degree against itself and p - t.

    Two triangular passes over the block ordered by decreasing leading
    monomial: the first eliminates the x-monomial of each leading term from
    all later elements, the second clears reducible skeleton terms of earlier
    elements against later leading terms.  Every combination is (p - t)-
    reduced immediately.  Leading terms are preserved and the ideal generated
    together with p - t is unchanged.
    """
    ord_ = ctx.ord
    _check_block(ord_, G)
    g = [p_reduce(ctx, x) for x in G]
    g.sort(key=lambda f: ord_.key(leading_term(ord_, f).exp), reverse=True)
    k = len(g)
    lts = [leading_term(ord_, f) for f in g]
    beta = [lt.exp[0] for lt in lts]
    alpha = [lt.exp[1:] for lt in lts]
    for i in range(k):
        for j in range(i + 1, k):
            cj = t_coefficient(g[j], alpha[i])
            if not cj:
                continue
            ci = t_coefficient(g[i], alpha[i])
            assert tpoly_min_beta(cj) >= beta[i], "t-divisibility guaranteed by ordering"
            g[j] = mul_tpoly(g[j], tpoly_shift(ci, -beta[i])) \
                 - mul_tpoly(g[i], tpoly_shift(cj, -beta[i]))
            g[j] = p_reduce(ctx, g[j])
    for i in range(k):
        for j in range(i + 1, k):
            ci = t_coefficient(g[i], alpha[j])
            if not ci or tpoly_min_beta(ci) < beta[j]:
                continue
            cj = t_coefficient(g[j], alpha[j])
            g[i] = mul_tpoly(g[i], tpoly_shift(cj, -beta[j])) \
                 - mul_tpoly(g[j], tpoly_shift(ci, -beta[j]))
            g[i] = p_reduce(ctx, g[i])
    return g


def _check_cross(ord_, G, H):
    _check_block(ord_, H)
    if not H:
        raise InvalidInput("nothing to reduce")
    d = x_degree(H[0])
    for g in G:
        if g.is_zero or not is_x_homogeneous(g):
            raise InvalidInput("lower-degree elements must be nonzero and x-homogeneous")
        if x_degree(g) >= d:
            raise InvalidInput("lower-degree elements must have x-degree < the block's")
        if leading_term(ord_, g).coeff != 1:
            raise InvalidInput("lower-degree elements must have leading coefficient 1")
    glts = [leading_term(ord_, g) for g in G]
    for h in H:
        lm = leading_term(ord_, h).exp
        if any(exp_divides(lt.exp, lm) for lt in glts):
            raise InvalidInput("block leading monomial lies in the lower leading ideal")
    return d


def _split_by_lm(ord_, combined, h_lms, e_lms):
    by_lm = {leading_term(ord_, f).exp: f for f in combined}
    return [by_lm[lm] for lm in h_lms], [by_lm[lm] for lm in e_lms]


def inred_all_at_once(ctx: InredContext, G: Sequence[Polynomial],
                      H: Sequence[Polynomial]) -> list[Polynomial]:
    """Cross-degree reduction by brute force.

    Every x-monomial of the block's degree that is reachable from a lower
    leading term gets one minimal-t multiple of a lower element up front;
    the enlarged block then goes through ``inred_same_degree`` once.
    """
    ord_ = ctx.ord
    if not G:
        return inred_same_degree(ctx, H)
    d = _check_cross(ord_, G, H)
    n = H[0].nvars
    E = []
    for combo in combinations_with_replacement(range(n), d):
        alpha = [0] * n
        for v in combo:
            alpha[v] += 1
        alpha = tuple(alpha)
        best = None
        for g in G:
            lt = leading_term(ord_, g)
            if exp_divides(lt.exp[1:], alpha) and (best is None or lt.exp[0] < best[0]):
                best = (lt.exp[0], g, lt)
        if best is not None:
            _, g, lt = best
            E.append(g.term_mul(1, (0,) + tuple(a - b for a, b in zip(alpha, lt.exp[1:]))))
    h_lms = [leading_term(ord_, h).exp for h in H]
    e_lms = [leading_term(ord_, e).exp for e in E]
    combined = inred_same_degree(ctx, list(H) + E)
    new_h, _ = _split_by_lm(ord_, combined, h_lms, e_lms)
    return new_h


def inred_step_by_step(ctx: InredContext, G: Sequence[Polynomial],
                       H: Sequence[Polynomial]) -> list[Polynomial]:
    """Cross-degree reduction with a lazy working list.

    Skeleton tail terms of the block are checked top down; when one is
    divisible by a lower leading term, the matching multiple (carrying the
    maximal feasible t-power) joins the helper set and the whole block is
    re-reduced, after which the working list restarts strictly below the
    term just handled.
    """
    ord_ = ctx.ord
    if not G:
        return inred_same_degree(ctx, H)
    _check_cross(ord_, G, H)
    h = inred_same_degree(ctx, H)
    E: list[Polynomial] = []
    glts = [leading_term(ord_, g) for g in G]

    def worklist(block, below=None):
        items = []
        for i, f in enumerate(block):
            lt = leading_term(ord_, f)
            for term in t_skeleton(f).terms:
                if term.exp == lt.exp:
                    continue
                if below is not None and not ord_.key(term.exp) < ord_.key(below):
                    continue
                items.append((term, i))
        return items

    T = worklist(h)
    while T:
        s, i = max(T, key=lambda ti: (ord_.key(ti[0].exp), -ti[1]))
        hit = None
        for g, lt in zip(G, glts):
            if term_divides(lt, s):
                hit = (g, lt)
                break
        if hit is None:
            T.remove((s, i))
            continue
        g, lt = hit
        mult = g.term_mul(1, tuple(a - b for a, b in zip(s.exp, lt.exp)))
        assert leading_term(ord_, mult).exp not in {leading_term(ord_, e).exp for e in E}
        E.append(mult)
        h_lms = [leading_term(ord_, f).exp for f in h]
        e_lms = [leading_term(ord_, e).exp for e in E]
        combined = inred_same_degree(ctx, h + E)
        h, E = _split_by_lm(ord_, combined, h_lms, e_lms)
        T = worklist(h, below=s.exp)
    return h


def initially_reduced_standard_basis(ctx: InredContext, F: Sequence[Polynomial],
                                     step_cap: int = DEFAULT_STEP_CAP) -> StandardBasis:
    """Minimal initially reduced standard basis of <F>, prime regime.

    Computes a strong standard basis, drops elements whose leading
    coefficient the prime divides (p - t covers them), normalises the
    remaining leading coefficients to 1 via a Bezout combination with p - t,
    minimises, then reduces the x-degree strata bottom up against everything
    already finished.  The result always contains p - t.
    """
    ord_ = ctx.ord
    gens = [f for f in F if not f.is_zero]
    if not gens:
        raise InvalidInput("empty generating set")
    n = gens[0].nvars
    pt = ctx.p_minus_t(n)
    sb = standard_basis(ord_, gens, step_cap)
    if not mora_weak_nf(ord_, pt, sb.elements, step_cap).remainder.is_zero:
        raise RegimeError(
            f"{ctx.p} - t does not lie in the ideal; use generic_initial_reduce"
        )
    monic: list[Polynomial] = []
    for g in sb.elements:
        lc = leading_term(ord_, g).coeff
        if lc % ctx.p == 0:
            continue
        if lc != 1:
            lm = leading_term(ord_, g).exp
            _, a, b = extended_gcd(lc, ctx.p)
            g = g * a + pt.term_mul(b, lm)
            assert leading_term(ord_, g).coeff == 1
        monic.append(g)
    remaining = list(minimize(ord_, StandardBasis(tuple(monic), ord_)).elements)
    done: list[Polynomial] = []
    while remaining:
        d = min(x_degree(g) for g in remaining)
        stratum = [g for g in remaining if x_degree(g) == d]
        remaining = [g for g in remaining if x_degree(g) > d]
        done.extend(inred_step_by_step(ctx, done, stratum))
    return StandardBasis(tuple(done) + (pt,), ord_)


def _eliminate_tail(ord_, g, lt_g, term, h, lt_h):
    """One elimination of a reducible skeleton tail term of g against h.

    When h is monic up to sign, the whole Z[t]-coefficient of the offending
    x-monomial is cleared by cross-multiplication: (b/t^beta) * g minus
    (a/t^beta) * x^shift * h, where a and b are the Z[t]-coefficients of g
    and h at the relevant x-monomials.  The multiplier has unit leading term,
    so the ideal and (after a sign fix) the leading term are unchanged.  This
    is what finds polynomial reduced forms such as (1+t)*g - t*h where plain
    term-by-term subtraction would climb in t forever.  Reducers with bigger
    leading coefficients fall back to single-term subtraction.
    """
    if abs(lt_h.coeff) == 1:
        alpha = term.exp[1:]
        a = t_coefficient(g, alpha)
        b = t_coefficient(h, lt_h.exp[1:])
        beta = lt_h.exp[0]
        shift = (0,) + tuple(x - y for x, y in zip(alpha, lt_h.exp[1:]))
        out = mul_tpoly(g, tpoly_shift(b, -beta)) \
            - mul_tpoly(h.term_mul(1, shift), tpoly_shift(a, -beta))
        if lt_h.coeff < 0:
            out = -out
        return out
    m = term_div(term, lt_h)
    return g - h.term_mul(m.coeff, m.exp)


def generic_initial_reduce(ord_: MonomialOrdering, basis: StandardBasis,
                           step_cap: int = DEFAULT_STEP_CAP) -> StandardBasis:
    """Initially reduce a minimal standard basis without a declared prime.

    Repeatedly eliminates the compare-greatest reducible skeleton tail term
    (whole-coefficient elimination against monic reducers, single-term
    subtraction otherwise); unit t-content is stripped after every step.
    Termination is not guaranteed in this regime, so the loop is capped.
    """
    elems = list(minimize(ord_, basis).elements)
    # Divergence in this regime shows up as unbounded t-degree growth (each
    # pass trades a tail term for higher t-powers); catching it by degree
    # keeps the failure fast and diagnosable instead of grinding toward the
    # step cap on ever-larger polynomials.
    degree_limit = 32 + 8 * max(
        (t.exp[0] for g in elems for t in g.terms), default=0)
    steps = 0
    progress = True
    while progress:
        progress = False
        lts = [leading_term(ord_, g) for g in elems]
        for i, g in enumerate(elems):
            reduced_one = True
            while reduced_one:
                reduced_one = False
                lt_g = lts[i]
                candidates = sorted(
                    (t for t in t_skeleton(g).terms if t.exp != lt_g.exp),
                    key=lambda t: ord_.key(t.exp), reverse=True,
                )
                for term in candidates:
                    for j, lt in enumerate(lts):
                        if j == i or not term_divides(lt, term):
                            continue
                        g = strip_unit_t_content(
                            _eliminate_tail(ord_, g, lt_g, term, elems[j], lt))
                        elems[i] = g
                        lts[i] = leading_term(ord_, g)
                        assert lts[i] == lt_g, "initial reduction must preserve leading terms"
                        reduced_one = True
                        progress = True
                        steps += 1
                        if steps > step_cap or \
                                max(t.exp[0] for t in g.terms) > degree_limit:
                            raise InredDiverged(
                                "generic initial reduction diverged (no p - t in "
                                "the ideal guarantees termination); declare a "
                                "prime or raise the step cap"
                            )
                        break
                    if reduced_one:
                        break
    elems.sort(key=lambda g: (ord_.key(leading_term(ord_, g).exp), g.terms), reverse=True)
    return StandardBasis(tuple(elems), ord_)


def is_initially_reduced(ord_: MonomialOrdering, elements: Sequence[Polynomial]) -> bool:
    """Minimal, and no skeleton tail term lies under any leading term."""
    elems = [g for g in elements]
    if any(g.is_zero for g in elems):
        return False
    lts = [leading_term(ord_, g) for g in elems]
    for i, lt in enumerate(lts):
        if any(j != i and term_divides(lts[j], lt) for j in range(len(lts))):
            return False
    for g, lt_g in zip(elems, lts):
        for term in t_skeleton(g).terms:
            if term.exp == lt_g.exp:
                continue
            if any(term_divides(lt, term) for lt in lts):
                return False
    return True


def ensure_initially_reduced(ord_: MonomialOrdering, elements: Sequence[Polynomial],
                             prime: int | None = None,
                             step_cap: int = DEFAULT_STEP_CAP) -> StandardBasis:
    """Regime dispatch: produce an initially reduced standard basis of
    <elements> w.r.t. ord_, using the prime pipeline when one is declared."""
    if prime is not None:
        return initially_reduced_standard_basis(InredContext(prime, ord_), elements, step_cap)
    sb = standard_basis(ord_, elements, step_cap)
    return generic_initial_reduce(ord_, sb, step_cap)
