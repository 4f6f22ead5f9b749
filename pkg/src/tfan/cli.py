"""Problem-file parsing, deterministic serialisation, and the tfan CLI.

Input format (line oriented, ``#`` starts a comment)::

    ring t; x, y, z
    prime 2
    order weights (-1,1,1,1); tiebreak x > y > z
    ideal
      2 - t
      x*y^2 - t^2*y^3
    end

Polynomials use integer coefficients, ``*`` for products and ``^`` for
powers.  The ``prime`` and ``order`` lines are optional; a declared prime p
requires ``p - t`` among the generators.

Output is plain text organised in blocks (``SB``, ``INITIAL``, ``CONE``,
``FAN``, ``V-POLYHEDRON``, ``CHECK``) with counted sections, primitive
integer rows sorted lexicographically, and canonical polynomial order, so
two runs with the same arguments are byte-identical.  Exit codes: 0 success,
1 computation error, 2 parse error.
"""

from __future__ import annotations

import argparse
import random
import re
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import fan as fan_mod
from .cone import (
    HCone,
    affine_slice,
    cone_from_basis,
    contains,
    dd_rays,
    intersect,
    is_face,
    make_cone,
)
from .division import DEFAULT_STEP_CAP, minimize, standard_basis
from .errors import InvalidInput, ParseError, TfanError
from .inred import ensure_initially_reduced
from .poly import (
    Ideal,
    MonomialOrdering,
    Polynomial,
    initial_form,
    is_x_homogeneous,
    max_weight_part,
)

# ---------------------------------------------------------------------------
# Polynomial text form
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|([*^+\-]))")


def parse_poly(text: str, names, line_no=None) -> Polynomial:
    """Parse a polynomial over t and the given x-variable names."""
    idx = {"t": 0}
    for i, nm in enumerate(names):
        idx[nm] = 1 + i
    n = len(names)
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise ParseError(f"unexpected character {text[pos:].lstrip()[0]!r}",
                                 line_no, pos + 1)
            break
        tokens.append((m.group(1), m.group(2), m.group(3), m.start()))
        pos = m.end()
    terms = []
    i = 0

    def error(msg, at):
        raise ParseError(msg, line_no, at + 1)

    sign = 1
    if i < len(tokens) and tokens[i][2] in ("+", "-"):
        sign = -1 if tokens[i][2] == "-" else 1
        i += 1
    while i < len(tokens):
        coeff = sign
        exp = [0] * (1 + n)
        saw_factor = False
        while True:
            if i >= len(tokens):
                error("unexpected end of polynomial", len(text) - 1)
            num, name, op, at = tokens[i]
            if num is not None:
                coeff *= int(num)
                i += 1
            elif name is not None:
                if name not in idx:
                    error(f"unknown variable {name!r}", at)
                power = 1
                i += 1
                if i < len(tokens) and tokens[i][2] == "^":
                    i += 1
                    if i >= len(tokens) or tokens[i][0] is None:
                        error("expected integer exponent after '^'", at)
                    power = int(tokens[i][0])
                    i += 1
                exp[idx[name]] += power
            else:
                error(f"unexpected {op!r}", at)
            saw_factor = True
            if i < len(tokens) and tokens[i][2] == "*":
                i += 1
                continue
            break
        if not saw_factor:
            error("empty term", 0)
        terms.append((coeff, tuple(exp)))
        if i >= len(tokens):
            break
        num, name, op, at = tokens[i]
        if op not in ("+", "-"):
            error(f"expected '+' or '-', found {op or num or name!r}", at)
        sign = -1 if op == "-" else 1
        i += 1
        if i >= len(tokens):
            error("dangling sign at end of polynomial", at)
    if not terms:
        raise ParseError("empty polynomial", line_no, 1)
    return Polynomial.from_terms(terms)


def format_frac(x) -> str:
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def format_poly(f: Polynomial, names) -> str:
    if f.is_zero:
        return "0"
    out = []
    for k, (coeff, exp) in enumerate(f.terms):
        mags = []
        if exp[0] > 0:
            mags.append("t" if exp[0] == 1 else f"t^{exp[0]}")
        for i, e in enumerate(exp[1:]):
            if e > 0:
                mags.append(names[i] if e == 1 else f"{names[i]}^{e}")
        mag = "*".join(mags)
        c = abs(coeff)
        body = mag if c == 1 and mag else (f"{c}*{mag}" if mag else str(c))
        if k == 0:
            out.append(("-" if coeff < 0 else "") + body)
        else:
            out.append(("- " if coeff < 0 else "+ ") + body)
    return " ".join(out)


# ---------------------------------------------------------------------------
# Problem files
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ProblemFile:
    names: tuple[str, ...]
    gens: tuple[Polynomial, ...]
    prime: int | None
    weights: tuple[tuple, ...]  # may be empty
    tiebreak: tuple[int, ...]

    @property
    def nvars(self) -> int:
        return len(self.names)

    def ideal(self) -> Ideal:
        return Ideal(self.gens, self.nvars, self.prime)

    def ordering(self, weight_override=None) -> MonomialOrdering:
        if weight_override is not None:
            return MonomialOrdering((tuple(weight_override),), self.tiebreak)
        if self.weights:
            return MonomialOrdering(self.weights, self.tiebreak)
        return MonomialOrdering(((-1,) + (1,) * self.nvars,), self.tiebreak)


def parse_weight_vector(text: str, expected_len=None):
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    parts = [p.strip() for p in body.split(",") if p.strip()]
    try:
        vec = tuple(Fraction(p) for p in parts)
    except ValueError as exc:
        raise ParseError(f"bad weight vector {text!r}: {exc}")
    if expected_len is not None and len(vec) != expected_len:
        raise ParseError(f"weight vector has length {len(vec)}, expected {expected_len}")
    return vec


def _parse_tiebreak(text: str, names, line_no):
    parts = [p.strip() for p in text.split(">")]
    parts = [p for p in parts if p not in ("", "1", "t")]
    if sorted(parts) != sorted(names):
        raise ParseError(
            f"tiebreak must list every x-variable once, got {parts}", line_no)
    return tuple(names.index(p) for p in parts)


def parse_problem(text: str) -> ProblemFile:
    names = None
    prime = None
    weights: tuple = ()
    tiebreak = None
    gens: list[Polynomial] = []
    in_ideal = False
    saw_end = False
    gen_lines: list[tuple[int, str]] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if in_ideal:
            if line == "end":
                in_ideal = False
                saw_end = True
            else:
                gen_lines.append((line_no, line))
            continue
        key = line.split(None, 1)[0]
        rest = line[len(key):].strip()
        if key == "ring":
            segs = [s.strip() for s in rest.split(";")]
            if len(segs) != 2 or segs[0] != "t":
                raise ParseError("ring line must look like 'ring t; x, y'", line_no)
            names = tuple(s.strip() for s in segs[1].split(",") if s.strip())
            if not names or len(set(names)) != len(names) or "t" in names:
                raise ParseError("x-variables must be distinct and differ from t", line_no)
        elif key == "prime":
            try:
                prime = int(rest)
            except ValueError:
                raise ParseError(f"bad prime {rest!r}", line_no)
        elif key == "order":
            if names is None:
                raise ParseError("order line before ring line", line_no)
            for seg in (s.strip() for s in rest.split(";")):
                if seg.startswith("weights"):
                    found = re.findall(r"\(([^()]*)\)", seg)
                    if not found:
                        raise ParseError("weights need at least one (..) vector", line_no)
                    weights = tuple(
                        parse_weight_vector(f"({body})", 1 + len(names)) for body in found
                    )
                elif seg.startswith("tiebreak"):
                    tiebreak = _parse_tiebreak(seg[len("tiebreak"):], list(names), line_no)
                elif seg:
                    raise ParseError(f"unknown order clause {seg!r}", line_no)
        elif key == "ideal":
            if names is None:
                raise ParseError("ideal block before ring line", line_no)
            in_ideal = True
        else:
            raise ParseError(f"unknown directive {key!r}", line_no)
    if names is None:
        raise ParseError("missing ring line")
    if in_ideal or not saw_end:
        raise ParseError("ideal block not closed with 'end'")
    for line_no, src in gen_lines:
        g = parse_poly(src, names, line_no)
        if not is_x_homogeneous(g):
            raise ParseError(f"generator is not x-homogeneous: {src}", line_no)
        gens.append(g)
    if not gens:
        raise ParseError("empty ideal section")
    if tiebreak is None:
        tiebreak = tuple(range(len(names)))
    pf = ProblemFile(names, tuple(gens), prime, weights, tiebreak)
    try:
        pf.ideal()  # validates the prime invariant
        pf.ordering()
    except InvalidInput as exc:
        raise ParseError(str(exc))
    return pf


# ---------------------------------------------------------------------------
# Output blocks
# ---------------------------------------------------------------------------


def _rows(label, rows, indent="  "):
    out = [f"{indent}{label} {len(rows)}"]
    for r in rows:
        out.append(f"{indent}  " + " ".join(format_frac(x) for x in r))
    return out


def render_sb(elements, names) -> str:
    lines = [f"SB {len(elements)}"]
    lines += ["  " + format_poly(g, names) for g in elements]
    lines.append("END SB")
    return "\n".join(lines)


def render_polys(label, polys, names) -> str:
    lines = [f"{label} {len(polys)}"]
    lines += ["  " + format_poly(g, names) for g in polys]
    lines.append(f"END {label}")
    return "\n".join(lines)


def render_cone(hc: HCone) -> str:
    data = dd_rays(hc)
    lines = [f"CONE {hc.dim_ambient}", f"  DIM {data.dim}"]
    lines += _rows("LINEALITY", data.lineality)
    lines += _rows("RAYS", data.rays)
    lines += _rows("INEQ", hc.ineqs)
    lines += _rows("EQ", hc.eqs)
    lines.append("END CONE")
    return "\n".join(lines)


def render_fan(result: fan_mod.Fan, names) -> str:
    lines = [f"FAN {len(result.maximal_cones)}"]
    for i, cone in enumerate(result.maximal_cones):
        lines.append(f"MAXCONE {i}")
        lines.append(render_polys("INITIAL", cone.initial_forms, names))
        lines.append(render_sb(cone.basis.elements, names))
        lines.append(render_cone(cone.hcone))
        lines.append("END MAXCONE")
    for i, j, _ in result.adjacency:
        lines.append(f"ADJ {i} {j}")
    lines.append("END FAN")
    return "\n".join(lines)


def render_slice(sl) -> str:
    rays = sorted(set(sl.rays) | {r for l in sl.lines for r in (l, tuple(-x for x in l))})
    lines = ["V-POLYHEDRON"]
    lines += _rows("VERTICES", sl.vertices)
    lines += _rows("RAYS", rays)
    lines.append("END V-POLYHEDRON")
    return "\n".join(lines)


def parse_sb_block(text: str, names):
    lines = [l for l in text.splitlines() if l.strip()]
    head = lines[0].split()
    if head[0] != "SB":
        raise ParseError("not an SB block")
    count = int(head[1])
    return tuple(parse_poly(l.strip(), names) for l in lines[1:1 + count])


def parse_cone_block(text: str) -> HCone:
    lines = [l.strip() for l in text.splitlines() if l.strip()]
    if not lines or not lines[0].startswith("CONE"):
        raise ParseError("not a CONE block")
    ambient = int(lines[0].split()[1])
    sections: dict[str, list[tuple]] = {}
    i = 1
    while i < len(lines) and lines[i] != "END CONE":
        head = lines[i].split()
        label = head[0]
        if label == "DIM":
            i += 1
            continue
        count = int(head[1])
        rows = []
        for j in range(count):
            rows.append(tuple(Fraction(x) for x in lines[i + 1 + j].split()))
        sections[label] = rows
        i += 1 + count
    return make_cone(ambient, sections.get("INEQ", ()), sections.get("EQ", ()))


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def _sampled_weights(rng: random.Random, n: int, count: int):
    for _ in range(count):
        w0 = -Fraction(rng.randint(1, 24), rng.randint(1, 4))
        rest = [Fraction(rng.randint(-24, 24), rng.randint(1, 4)) for _ in range(n)]
        yield (w0, *rest)


def run_check(problem: ProblemFile, seed: int, samples: int, step_cap: int, out,
              threads: int = 1) -> int:
    """Invariant suite for one ideal; one PASS/FAIL line per check."""
    failures = 0

    def report(name, ok, detail=""):
        nonlocal failures
        if ok:
            print(f"PASS {name}", file=out)
        else:
            failures += 1
            print(f"FAIL {name}: {detail}", file=out)

    ideal = problem.ideal()
    n = problem.nvars
    result = fan_mod.groebner_fan(ideal, tiebreak=problem.tiebreak,
                                  threads=threads, step_cap=step_cap)
    report("fan-computed", True)
    print(f"  maximal cones: {len(result.maximal_cones)}", file=out)

    rng = random.Random(seed)
    uncovered = 0
    for w in _sampled_weights(rng, n, samples):
        if not any(contains(c.hcone, w) for c in result.maximal_cones):
            uncovered += 1
    report("coverage", uncovered == 0, f"{uncovered} of {samples} weights uncovered")

    bad_faces = 0
    cones = result.maximal_cones
    for i in range(len(cones)):
        for j in range(i + 1, len(cones)):
            meet = intersect(cones[i].hcone, cones[j].hcone)
            if not (is_face(meet, cones[i].hcone) and is_face(meet, cones[j].hcone)):
                bad_faces += 1
    report("face-to-face", bad_faces == 0, f"{bad_faces} bad intersections")

    ones = (0,) + (1,) * n
    bad_lin = sum(
        1 for c in cones
        if not all(sum(a * b for a, b in zip(row, ones)) == 0
                   for row in c.hcone.all_ineq_rows() + c.hcone.eqs)
    )
    report("lineality-ones", bad_lin == 0, f"{bad_lin} cones miss (0,1,..,1)")

    bad_chain = 0
    for i, j, facet in result.adjacency:
        for a, b in ((i, j), (j, i)):
            w = fan_mod.relative_interior_point(facet)
            v = tuple(Fraction(x) - Fraction(y) for x, y in zip(cones[b].interior_weight, w))
            for g in cones[a].basis.elements:
                if not _chain_initial_consistent(w, v, g):
                    bad_chain += 1
    report("chain-initial", bad_chain == 0, f"{bad_chain} violations")
    return failures


def _chain_initial_consistent(w, v, g: Polynomial) -> bool:
    """in_{w+eps v}(g) == in_v(in_w(g)) for an exactly computed small eps."""
    chain = max_weight_part(v, initial_form(w, g))
    top = {t.exp for t in initial_form(w, g).terms}
    eps = None
    for t in g.terms:
        if t.exp in top:
            continue
        for s in initial_form(w, g).terms:
            gap_w = sum(a * (x - y) for a, x, y in zip(w, s.exp, t.exp))
            gap_v = sum(a * (x - y) for a, x, y in zip(v, s.exp, t.exp))
            if gap_v < 0:
                cand = Fraction(gap_w, -gap_v) / 2
                eps = cand if eps is None else min(eps, cand)
    if eps is None:
        eps = Fraction(1)
    wv = tuple(Fraction(a) + eps * Fraction(b) for a, b in zip(w, v))
    if wv[0] >= 0:
        return False
    return max_weight_part(wv, g) == chain


def _weight_for(problem: ProblemFile, args) -> tuple:
    if getattr(args, "weight", None):
        return parse_weight_vector(args.weight, 1 + problem.nvars)
    if problem.weights:
        return problem.weights[0]
    return (-1,) + (1,) * problem.nvars


def _basis_and_initials(problem: ProblemFile, weight, step_cap):
    ord_w = MonomialOrdering((tuple(weight),), problem.tiebreak)
    basis = ensure_initially_reduced(ord_w, problem.gens, problem.prime, step_cap)
    H = tuple(initial_form(weight, g) for g in basis.elements)
    return basis, H


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="tfan",
        description="Groebner fans of x-homogeneous ideals in Z[[t]][x], exactly.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("file")
        p.add_argument("--weight", help="weight vector, e.g. \"-1,2,-1,1\"")
        p.add_argument("--tiebreak", help="variable priority, e.g. \"x>y>z\"")
        p.add_argument("--prime", type=int, help="declare the uniformising prime")
        p.add_argument("--max-steps", type=int, default=DEFAULT_STEP_CAP)
        return p

    add("stdbasis", "minimal standard basis for the file's ordering")
    add("inred", "initially reduced standard basis")
    add("initial", "initial forms of the reduced basis at a weight")
    add("cone", "Groebner cone at a weight (H-rows and V-data)")
    p_fan = add("fan", "full Groebner fan with adjacency")
    p_fan.add_argument("--threads", type=int, default=1)
    p_slice = add("slice", "affine slice of the cone at a weight")
    p_slice.add_argument("--fix", required=True,
                         help="fixed coordinates, e.g. \"t=-1\" or \"t=-1,z=1\"")
    p_check = add("check", "run the invariant suite for this ideal")
    p_check.add_argument("--seed", type=int, default=0)
    p_check.add_argument("--samples", type=int, default=1000)
    p_check.add_argument("--threads", type=int, default=1)

    args = parser.parse_args(argv)
    try:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
        problem = parse_problem(text)
        if args.tiebreak:
            problem = ProblemFile(problem.names, problem.gens, problem.prime,
                                  problem.weights,
                                  _parse_tiebreak(args.tiebreak, list(problem.names), None))
        if args.prime is not None:
            problem = ProblemFile(problem.names, problem.gens, args.prime,
                                  problem.weights, problem.tiebreak)
            try:
                problem.ideal()
            except InvalidInput as exc:
                raise ParseError(str(exc))
        cap = args.max_steps
        if args.command == "stdbasis":
            ord_ = problem.ordering(parse_weight_vector(args.weight, 1 + problem.nvars)
                                    if args.weight else None)
            sb = minimize(ord_, standard_basis(ord_, problem.gens, cap))
            print(render_sb(sb.elements, problem.names))
        elif args.command == "inred":
            ord_ = problem.ordering(parse_weight_vector(args.weight, 1 + problem.nvars)
                                    if args.weight else None)
            basis = ensure_initially_reduced(ord_, problem.gens, problem.prime, cap)
            print(render_sb(basis.elements, problem.names))
        elif args.command == "initial":
            _, H = _basis_and_initials(problem, _weight_for(problem, args), cap)
            print(render_polys("INITIAL", H, problem.names))
        elif args.command == "cone":
            w = _weight_for(problem, args)
            basis, H = _basis_and_initials(problem, w, cap)
            hc = cone_from_basis(basis.ordering, basis.elements, H)
            print(render_cone(hc))
        elif args.command == "fan":
            result = fan_mod.groebner_fan(problem.ideal(), tiebreak=problem.tiebreak,
                                          start_weight=parse_weight_vector(
                                              args.weight, 1 + problem.nvars)
                                          if args.weight else None,
                                          threads=args.threads, step_cap=cap)
            print(render_fan(result, problem.names))
        elif args.command == "slice":
            w = _weight_for(problem, args)
            basis, H = _basis_and_initials(problem, w, cap)
            hc = cone_from_basis(basis.ordering, basis.elements, H)
            fixed = []
            name_to_coord = {"t": 0, **{nm: 1 + i for i, nm in enumerate(problem.names)}}
            for part in args.fix.split(","):
                nm, _, val = part.partition("=")
                nm = nm.strip()
                if nm not in name_to_coord:
                    raise ParseError(f"unknown coordinate {nm!r} in --fix")
                fixed.append((name_to_coord[nm], Fraction(val.strip())))
            print(render_slice(affine_slice(hc, fixed)))
        elif args.command == "check":
            failures = run_check(problem, args.seed, args.samples, cap, sys.stdout,
                                 threads=args.threads)
            return 1 if failures else 0
        return 0
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except TfanError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
