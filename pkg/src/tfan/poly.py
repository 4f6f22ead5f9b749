"""Sparse integer polynomials in Z[t, x1..xn] and t-local monomial orderings.

An exponent vector is a tuple ``(beta, alpha_1, ..., alpha_n)``: the t-power
first, then the x-powers.  A polynomial is an immutable, canonically sorted
tuple of terms with nonzero integer coefficients.  The storage order (x-degree
descending, then alpha lexicographically descending, then beta ascending) is
independent of any monomial ordering, so one Polynomial value can be used
under many orderings.

Orderings compare by a chain of rational weight vectors and fall back to a
t-local lexicographic tiebreaker: alpha compared along a fixed variable
priority (larger wins), then the smaller t-power wins, so 1 > t always holds.
The leading term of a polynomial is its compare-greatest term; under a
weighted ordering with first weight w (w_0 < 0) that is the term of maximal
w-degree, tiebroken lexicographically, which is the convention all cone and
reduction code in this package relies on.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, NamedTuple

from .errors import InvalidInput

Exp = tuple  # (beta, alpha_1, ..., alpha_n)


class Term(NamedTuple):
    coeff: int
    exp: Exp


def exp_mul(e1: Exp, e2: Exp) -> Exp:
    return tuple(a + b for a, b in zip(e1, e2))


def exp_divides(e1: Exp, e2: Exp) -> bool:
    """Componentwise e1 <= e2."""
    return all(a <= b for a, b in zip(e1, e2))


def exp_div(e1: Exp, e2: Exp) -> Exp:
    """e1 - e2; requires e2 | e1."""
    if not exp_divides(e2, e1):
        raise InvalidInput(f"{e2} does not divide {e1}")
    return tuple(a - b for a, b in zip(e1, e2))


def exp_lcm(e1: Exp, e2: Exp) -> Exp:
    return tuple(max(a, b) for a, b in zip(e1, e2))


def exp_x_degree(e: Exp) -> int:
    return sum(e[1:])


def term_divides(t1: Term, t2: Term) -> bool:
    """Term divisibility over Z: coefficient divides and exponents <=."""
    return t2.coeff % t1.coeff == 0 and exp_divides(t1.exp, t2.exp)


def term_div(t1: Term, t2: Term) -> Term:
    """t1 / t2 as a term; requires t2 | t1."""
    if t1.coeff % t2.coeff != 0:
        raise InvalidInput("coefficient does not divide")
    return Term(t1.coeff // t2.coeff, exp_div(t1.exp, t2.exp))


def _canon_key(e: Exp):
    # x-degree desc, alpha lex desc, beta asc
    return (-exp_x_degree(e), tuple(-a for a in e[1:]), e[0])


@dataclass(frozen=True)
class Polynomial:
    """Immutable sparse polynomial over Z in t, x1..xn."""

    terms: tuple[Term, ...] = ()

    @staticmethod
    def from_terms(items: Iterable[tuple[int, Exp]]) -> "Polynomial":
        acc: dict[Exp, int] = {}
        width = None
        for coeff, exp in items:
            exp = tuple(exp)
            if width is None:
                width = len(exp)
            elif len(exp) != width:
                raise InvalidInput("mixed exponent lengths")
            acc[exp] = acc.get(exp, 0) + coeff
        terms = tuple(
            Term(c, e) for e, c in sorted(acc.items(), key=lambda kv: _canon_key(kv[0])) if c != 0
        )
        return Polynomial(terms)

    @staticmethod
    def zero() -> "Polynomial":
        return Polynomial(())

    @staticmethod
    def constant(c: int, nvars: int) -> "Polynomial":
        return Polynomial.from_terms([(c, (0,) * (1 + nvars))])

    @staticmethod
    def term(coeff: int, exp: Exp) -> "Polynomial":
        return Polynomial.from_terms([(coeff, exp)])

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def nvars(self) -> int:
        if not self.terms:
            raise InvalidInput("zero polynomial has no fixed variable count")
        return len(self.terms[0].exp) - 1

    def __add__(self, other: "Polynomial") -> "Polynomial":
        if not self.terms:
            return other
        if not other.terms:
            return self
        return Polynomial.from_terms(
            [(c, e) for c, e in self.terms] + [(c, e) for c, e in other.terms]
        )

    def __neg__(self) -> "Polynomial":
        return Polynomial(tuple(Term(-c, e) for c, e in self.terms))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, int):
            if other == 0:
                return Polynomial.zero()
            return Polynomial(tuple(Term(c * other, e) for c, e in self.terms))
        acc: dict[Exp, int] = {}
        for c1, e1 in self.terms:
            for c2, e2 in other.terms:
                e = exp_mul(e1, e2)
                acc[e] = acc.get(e, 0) + c1 * c2
        return Polynomial.from_terms([(c, e) for e, c in acc.items()])

    __rmul__ = __mul__

    def term_mul(self, coeff: int, exp: Exp) -> "Polynomial":
        """Multiply by a single term coeff * t^.. x^..; stays canonical."""
        if coeff == 0:
            return Polynomial.zero()
        return Polynomial(tuple(Term(c * coeff, exp_mul(e, exp)) for c, e in self.terms))

    def monomials(self) -> tuple[Exp, ...]:
        return tuple(e for _, e in self.terms)


def is_x_homogeneous(f: Polynomial) -> bool:
    degs = {exp_x_degree(e) for _, e in f.terms}
    return len(degs) <= 1


def x_degree(f: Polynomial) -> int:
    """Common x-degree of an x-homogeneous polynomial."""
    if f.is_zero:
        raise InvalidInput("x_degree of the zero polynomial is undefined")
    degs = {exp_x_degree(e) for _, e in f.terms}
    if len(degs) != 1:
        raise InvalidInput("polynomial is not x-homogeneous")
    return degs.pop()


# ---------------------------------------------------------------------------
# Z[t]-coefficient view: f = sum_alpha g_alpha(t) * x^alpha
# ---------------------------------------------------------------------------

TPoly = tuple  # tuple of (beta, coeff) pairs, ascending beta, coeffs nonzero


def t_coefficient(f: Polynomial, alpha: tuple) -> TPoly:
    """The Z[t] coefficient of x^alpha in f, as ((beta, c), ...) ascending."""
    pairs = sorted((e[0], c) for c, e in f.terms if e[1:] == tuple(alpha))
    return tuple(pairs)


def x_support(f: Polynomial) -> tuple[tuple, ...]:
    """Distinct x-exponent vectors occurring in f, in canonical order."""
    seen: list[tuple] = []
    for _, e in f.terms:  # terms are canonically sorted, so alphas come out sorted
        a = e[1:]
        if not seen or seen[-1] != a:
            if a not in seen:
                seen.append(a)
    return tuple(seen)


def tpoly_shift(tp: TPoly, k: int) -> TPoly:
    """Multiply a Z[t] polynomial by t^k (k may be negative; must stay exact)."""
    out = []
    for beta, c in tp:
        nb = beta + k
        if nb < 0:
            raise InvalidInput("t-power would become negative")
        out.append((nb, c))
    return tuple(out)


def tpoly_min_beta(tp: TPoly) -> int:
    if not tp:
        raise InvalidInput("zero Z[t] coefficient")
    return tp[0][0]


def mul_tpoly(f: Polynomial, tp: TPoly) -> Polynomial:
    """f * sum_i c_i t^{beta_i}."""
    if not tp or f.is_zero:
        return Polynomial.zero()
    n = f.nvars
    acc: dict[Exp, int] = {}
    for beta, c in tp:
        shift = (beta,) + (0,) * n
        for c1, e1 in f.terms:
            e = exp_mul(e1, shift)
            acc[e] = acc.get(e, 0) + c1 * c
    return Polynomial.from_terms([(c, e) for e, c in acc.items()])


def t_skeleton(f: Polynomial) -> Polynomial:
    """Keep, for each x-monomial, only the term of minimal t-power.

    Writing f = sum g_alpha(t) x^alpha this is sum lt(g_alpha) x^alpha; it
    does not depend on any ordering and is idempotent.
    """
    if f.is_zero:
        raise InvalidInput("t_skeleton of the zero polynomial is undefined")
    best: dict[tuple, Term] = {}
    for c, e in f.terms:
        a = e[1:]
        cur = best.get(a)
        if cur is None or e[0] < cur.exp[0]:
            best[a] = Term(c, e)
    return Polynomial.from_terms([(t.coeff, t.exp) for t in best.values()])


# ---------------------------------------------------------------------------
# Monomial orderings
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MonomialOrdering:
    """A chain of weight vectors refined by a t-local lexicographic tiebreak.

    ``weights`` is a (possibly empty) tuple of vectors in Q^{1+n}; comparison
    goes weight by weight (larger dot product wins), then alpha is compared
    lexicographically along ``tiebreak`` (a permutation of 0..n-1, most
    significant variable first; larger exponent wins), and finally the smaller
    t-power wins.  The tiebreak alone is the ordering x_{p0} > x_{p1} > ... >
    1 > t; any weight chain refined by it is total and t-local as long as the
    first weight has nonpositive t-entry.
    """

    weights: tuple[tuple, ...]
    tiebreak: tuple[int, ...]

    def __post_init__(self):
        n = len(self.tiebreak)
        if sorted(self.tiebreak) != list(range(n)):
            raise InvalidInput("tiebreak must be a permutation of 0..n-1")
        for w in self.weights:
            if len(w) != 1 + n:
                raise InvalidInput("weight vector has wrong length")
        # t-locality (1 > t): the first weight with a nonzero t-entry must
        # have a negative one; if all t-entries vanish the tiebreak decides.
        for w in self.weights:
            if w[0] != 0:
                if w[0] > 0:
                    raise InvalidInput("ordering is not t-local: positive t-weight "
                                       "before any negative one")
                break

    @property
    def nvars(self) -> int:
        return len(self.tiebreak)

    def key(self, e: Exp):
        """Sort key realising the ordering: bigger key = greater monomial."""
        if len(e) != 1 + self.nvars:
            raise InvalidInput("exponent vector has wrong length")
        wpart = tuple(sum(wc * ec for wc, ec in zip(w, e)) for w in self.weights)
        return (wpart, tuple(e[1 + i] for i in self.tiebreak), -e[0])

    def compare(self, e1: Exp, e2: Exp) -> int:
        """-1, 0 or +1; zero only for equal exponent vectors."""
        k1, k2 = self.key(e1), self.key(e2)
        if k1 < k2:
            return -1
        if k1 > k2:
            return 1
        return 0

    def with_weights(self, *weights) -> "MonomialOrdering":
        return MonomialOrdering(tuple(tuple(w) for w in weights), self.tiebreak)


def lex_ordering(n: int, priority=None) -> MonomialOrdering:
    """Pure t-local lex ordering x_{p0} > ... > 1 > t (no weights)."""
    perm = tuple(priority) if priority is not None else tuple(range(n))
    return MonomialOrdering((), perm)


def weighted_ordering(w, n: int, priority=None) -> MonomialOrdering:
    return MonomialOrdering((tuple(w),), tuple(priority) if priority is not None else tuple(range(n)))


def leading_term(ord_: MonomialOrdering, f: Polynomial) -> Term:
    if f.is_zero:
        raise InvalidInput("leading term of the zero polynomial is undefined")
    return max(f.terms, key=lambda t: ord_.key(t.exp))


def leading_monomial(ord_: MonomialOrdering, f: Polynomial) -> Exp:
    return leading_term(ord_, f).exp


def leading_coefficient(ord_: MonomialOrdering, f: Polynomial) -> int:
    return leading_term(ord_, f).coeff


def tail(ord_: MonomialOrdering, f: Polynomial) -> Polynomial:
    if f.is_zero:
        return f
    lt = leading_term(ord_, f)
    return Polynomial(tuple(t for t in f.terms if t.exp != lt.exp))


def max_weight_part(w, f: Polynomial) -> Polynomial:
    """Sum of the terms of f with maximal w-weighted degree (any w)."""
    if f.is_zero:
        return f
    if len(w) != len(f.terms[0].exp):
        raise InvalidInput("weight vector has wrong length")
    degs = [sum(wc * ec for wc, ec in zip(w, e)) for _, e in f.terms]
    top = max(degs)
    return Polynomial(tuple(t for t, d in zip(f.terms, degs) if d == top))


def initial_form(w, f: Polynomial) -> Polynomial:
    """Initial form of f at a weight with strictly negative t-entry."""
    if len(w) == 0 or w[0] >= 0:
        raise InvalidInput("initial_form needs a weight with w_0 < 0")
    return max_weight_part(w, f)


# ---------------------------------------------------------------------------
# Z[t] content and unit normalisation
# ---------------------------------------------------------------------------


def _tp_dense(tp: TPoly) -> list[int]:
    if not tp:
        return []
    out = [0] * (tp[-1][0] + 1)
    for beta, c in tp:
        out[beta] = c
    return out


def _dense_tp(dense) -> TPoly:
    return tuple((i, c) for i, c in enumerate(dense) if c != 0)


def _dense_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _dense_content(a) -> int:
    g = 0
    for c in a:
        g = gcd(g, abs(c))
    return g


def _dense_primitive(a):
    g = _dense_content(a)
    return [c // g for c in a] if g > 1 else list(a)


def _dense_pseudo_rem(a, b):
    """Pseudo-remainder of a by b over Z (b nonzero)."""
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and _dense_trim(a):
        da, la = len(a) - 1, a[-1]
        a = [c * lb for c in a]
        for i, bc in enumerate(b):
            a[da - db + i] -= la * bc
        _dense_trim(a)
    return a


def tpoly_gcd(p: TPoly, q: TPoly) -> TPoly:
    """GCD in Z[t], normalised so the lowest nonzero coefficient is positive."""
    a, b = _dense_trim(_tp_dense(p)), _dense_trim(_tp_dense(q))
    if not a and not b:
        return ()
    if not a or not b:
        res = a or b
    else:
        ca, cb = _dense_content(a), _dense_content(b)
        a, b = _dense_primitive(a), _dense_primitive(b)
        while b:
            a, b = b, _dense_primitive(_dense_trim(_dense_pseudo_rem(a, b)))
        res = [c * gcd(ca, cb) for c in _dense_primitive(a)]
    low = next(c for c in res if c != 0)
    if low < 0:
        res = [-c for c in res]
    return _dense_tp(res)


def tpoly_divexact(p: TPoly, d: TPoly) -> TPoly:
    """Exact division in Z[t]; raises if the division is not exact."""
    a, b = _dense_trim(_tp_dense(p)), _dense_trim(_tp_dense(d))
    if not b:
        raise InvalidInput("division by zero in Z[t]")
    if not a:
        return ()
    q = [0] * (len(a) - len(b) + 1)
    while _dense_trim(a):
        da, db = len(a) - 1, len(b) - 1
        if da < db or a[-1] % b[-1] != 0:
            raise InvalidInput("inexact division in Z[t]")
        qc = a[-1] // b[-1]
        q[da - db] = qc
        for i, bc in enumerate(b):
            a[da - db + i] -= qc * bc
    return _dense_tp(q)


def t_content(f: Polynomial) -> TPoly:
    """GCD in Z[t] of all Z[t]-coefficients of f."""
    g: TPoly = ()
    for a in x_support(f):
        g = tpoly_gcd(g, t_coefficient(f, a))
    return g


def strip_unit_t_content(f: Polynomial) -> Polynomial:
    """Divide f by the Z[[t]]-unit part of its Z[t]-content.

    The content factors as t^k * u(t) * rest; whenever the t-free part u has
    u(0) = +-1 it is a unit of Z[[t]], so dividing by it changes neither the
    ideal generated nor any leading term (the sign is arranged so u(0) = 1).
    Contents whose t-free part has a nontrivial constant are left alone.
    """
    if f.is_zero:
        return f
    content = t_content(f)
    k = tpoly_min_beta(content)
    unit = tpoly_shift(content, -k)
    c0 = unit[0][1]
    if abs(c0) != 1 or len(unit) == 1:
        return f
    if c0 < 0:
        unit = tuple((b, -c) for b, c in unit)
    n = f.nvars
    parts = []
    for a in x_support(f):
        q = tpoly_divexact(t_coefficient(f, a), unit)
        for beta, c in q:
            parts.append((c, (beta,) + tuple(a)))
    return Polynomial.from_terms(parts)


# ---------------------------------------------------------------------------
# Ideals
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Ideal:
    """Generators of an x-homogeneous ideal, with an optional declared prime.

    When a prime p is declared the polynomial p - t must be among the
    generators; that is the regime in which initial reduction is guaranteed
    to terminate.
    """

    gens: tuple[Polynomial, ...]
    nvars: int
    prime: int | None = None

    def __post_init__(self):
        for g in self.gens:
            if g.is_zero:
                raise InvalidInput("zero generator")
            if g.nvars != self.nvars:
                raise InvalidInput("generator has wrong variable count")
            if not is_x_homogeneous(g):
                raise InvalidInput("generator is not x-homogeneous")
        if self.prime is not None:
            if self.prime < 2:
                raise InvalidInput("prime must be >= 2")
            pt = Polynomial.from_terms(
                [(self.prime, (0,) * (1 + self.nvars)), (-1, (1,) + (0,) * self.nvars)]
            )
            if pt not in self.gens:
                raise InvalidInput("declared prime p requires p - t among the generators")

    @property
    def p_minus_t(self) -> Polynomial | None:
        if self.prime is None:
            return None
        return Polynomial.from_terms(
            [(self.prime, (0,) * (1 + self.nvars)), (-1, (1,) + (0,) * self.nvars)]
        )
