"""Degree-bounded polynomial calculus: decide whether a system has a
refutation of degree at most D, and produce a replayable certificate.

The span of everything derivable in degree D is built as a fixpoint: start
from the axioms, then keep adding ``x * q`` for every basis row ``q`` of
degree at most D - 1 and every variable ``x``. Rows are kept in
semi-echelon form with distinct leading monomials under a degree-first
order, so a polynomial of degree at most D - 1 in the span is always a
combination of rows of degree at most D - 1; multiplying only those rows
is therefore enough.
"""
from __future__ import annotations

import heapq
import warnings
from dataclasses import dataclass, field as dc_field
from itertools import combinations
from math import comb

from .algebra import BooleanAxiom, Polynomial, Variable
from .errors import DomainError, InvariantViolation, ResourceError
from .field import Field

DEFAULT_MONOMIAL_BUDGET = 2_000_000


@dataclass(frozen=True)
class PcDegreeResult:
    refutable: bool
    degree_tried: int
    span_dimension: int
    certificate: list | None = dc_field(default=None, repr=False)
    universe: int = 0
    fast_path: bool = False

    def to_json(self) -> dict:
        return {
            "refutable": self.refutable,
            "degree": self.degree_tried,
            "span_dimension": self.span_dimension,
            "certificate": self.certificate,
        }


def _split(P):
    polys, variables = [], set()
    maxdeg = 0
    for g in P:
        if isinstance(g, BooleanAxiom):
            variables.add(g.variable)
            maxdeg = max(maxdeg, 2)
        elif isinstance(g, Polynomial):
            variables.update(g.variables)
            maxdeg = max(maxdeg, g.degree)
            polys.append(g)
        else:
            raise TypeError(f"unsupported axiom {g!r}")
    return polys, sorted(variables), maxdeg


def universe_size(nvars: int, D: int) -> int:
    return sum(comb(nvars, i) for i in range(min(D, nvars) + 1))


class _Span:
    """Semi-echelon rows over GF(p) or Q keyed by leading mask."""

    def __init__(self, p):
        self.p = p
        self.rows: dict = {}  # lead mask -> (row dict with lead coefficient 1)

    def reduce(self, row: dict, track: dict | None = None):
        """Top-reduce ``row`` in place; return its leading mask (None if zero)."""
        p = self.p
        heap = [(-m.bit_count(), -m) for m in row]
        heapq.heapify(heap)
        while heap:
            _, nm = heapq.heappop(heap)
            m = -nm
            c = row.get(m)
            if c is None:
                continue
            piv = self.rows.get(m)
            if piv is None:
                heapq.heappush(heap, (-m.bit_count(), nm))
                return m
            prow, pcombo = piv
            for u, a in prow.items():
                old = row.get(u)
                v = (old or 0) - c * a
                if p is not None:
                    v %= p
                if v:
                    row[u] = v
                    if old is None:
                        heapq.heappush(heap, (-u.bit_count(), -u))
                elif old is not None:
                    del row[u]
            if track is not None:
                for line, a in pcombo.items():
                    v = track.get(line, 0) - c * a
                    if p is not None:
                        v %= p
                    if v:
                        track[line] = v
                    else:
                        track.pop(line, None)
        return None

    def insert(self, row: dict, lead: int, combo: dict | None):
        c = row[lead]
        p = self.p
        inv = pow(c, -1, p) if p is not None else 1 / c
        if p is not None:
            row = {m: a * inv % p for m, a in row.items()}
            combo = {l: a * inv % p for l, a in combo.items()} if combo is not None else None
        else:
            row = {m: a * inv for m, a in row.items()}
            combo = {l: a * inv for l, a in combo.items()} if combo is not None else None
        self.rows[lead] = (row, combo)
        return row, combo


def _times_var(row: dict, xb: int, p) -> dict:
    out: dict = {}
    for m, a in row.items():
        u = m | xb
        old = out.get(u)
        if old is None:
            out[u] = a
        else:
            v = old + a
            if p is not None:
                v %= p
            if v:
                out[u] = v
            else:
                del out[u]
    return out


def _generic(p, axioms: list, nvars: int, D: int, tracked: bool):
    """Returns (refutable, dimension, trace-or-None)."""
    span = _Span(p)
    trace: list = []
    queue: list = []

    def push(row, combo):
        lead = span.reduce(row, combo)
        if lead is None:
            return False
        row, combo = span.insert(row, lead, combo)
        if tracked:
            trace.append(("lincomb", combo, row))
            line = len(trace) - 1
        else:
            line = None
        if lead == 0:
            return True
        if lead.bit_count() <= D - 1:
            queue.append((row, line))
        return False

    for i, a in enumerate(axioms):
        if not a:
            continue
        combo = None
        if tracked:
            trace.append(("axiom", i, a))
            combo = {len(trace) - 1: 1}
        if push(dict(a), combo):
            return True, len(span.rows), trace
    head = 0
    while head < len(queue):
        row, line = queue[head]
        head += 1
        for x in range(nvars):
            xb = 1 << x
            prod = _times_var(row, xb, p)
            combo = None
            if tracked:
                trace.append(("mult", line, x, dict(prod)))
                combo = {len(trace) - 1: 1}
            if push(prod, combo):
                return True, len(span.rows), trace
    return False, len(span.rows), None


class _MonomialIndex:
    """Bijection between masks of degree <= D and positions in the
    degree-then-mask order, so a row's lead is its highest set bit."""

    def __init__(self, nvars: int, D: int):
        self.masks = []
        for d in range(min(D, nvars) + 1):
            block = [sum(1 << b for b in c) for c in combinations(range(nvars), d)]
            block.sort()
            self.masks.extend(block)
        self.index = {m: i for i, m in enumerate(self.masks)}

    def encode(self, row: dict) -> int:
        out = 0
        for m in row:
            out |= 1 << self.index[m]
        return out


def _gf2(axioms: list, nvars: int, D: int):
    idx = _MonomialIndex(nvars, D)
    masks, index = idx.masks, idx.index
    pivots: dict = {}
    queue: list = []

    def push(r: int) -> bool:
        while r:
            top = r.bit_length() - 1
            piv = pivots.get(top)
            if piv is None:
                break
            r ^= piv
        if not r:
            return False
        top = r.bit_length() - 1
        pivots[top] = r
        if top == 0:
            return True
        if masks[top].bit_count() <= D - 1:
            queue.append(r)
        return False

    for a in axioms:
        if a and push(idx.encode(a)):
            return True, len(pivots)
    head = 0
    while head < len(queue):
        r = queue[head]
        head += 1
        terms = []
        rr = r
        while rr:
            low = rr & -rr
            terms.append(masks[low.bit_length() - 1])
            rr ^= low
        for x in range(nvars):
            xb = 1 << x
            out = 0
            for m in terms:
                out ^= 1 << index[m | xb]
            if push(out):
                return True, len(pivots)
    return False, len(pivots)


def pc_degree_refutable(
    P,
    D: int,
    field: Field,
    budget: int = DEFAULT_MONOMIAL_BUDGET,
    certificate: bool = True,
    fast_path: bool = True,
) -> PcDegreeResult:
    """Decide whether ``P`` has a polynomial calculus refutation of degree <= D.

    Boolean axioms are built into the multilinear arithmetic. The variable
    universe is the set of variables mentioned by ``P``. When refutable and
    ``certificate`` is set, a second tracked run records a derivation trace
    (see :func:`replay_certificate`).
    """
    polys, variables, maxdeg = _split(P)
    for g in polys:
        if g.field != field:
            raise DomainError(f"axiom over {g.field}, expected {field}")
    if D < maxdeg:
        warnings.warn(f"degree {D} is below the axiom degree {maxdeg}; no refutation considered", stacklevel=2)
        return PcDegreeResult(False, D, 0, None, 0)
    size = universe_size(len(variables), D)
    if size > budget:
        raise ResourceError(f"monomial universe of {size} exceeds the budget of {budget}", bound=budget)
    pos = {v: i for i, v in enumerate(variables)}

    def to_mask(m):
        out = 0
        for v in m:
            out |= 1 << pos[v]
        return out

    axioms = [{to_mask(m): c for m, c in g.terms.items()} for g in polys]
    use_fast = fast_path and field.p == 2
    if use_fast:
        refutable, dim = _gf2(axioms, len(variables), D)
    else:
        refutable, dim, _ = _generic(field.p, axioms, len(variables), D, tracked=False)
    cert = None
    if refutable and certificate:
        ok, _, trace = _generic(field.p, axioms, len(variables), D, tracked=True)
        if not ok:
            raise InvariantViolation("tracked rerun disagrees with the decision run")
        cert = _export_trace(trace, variables, field)
    return PcDegreeResult(refutable, D, dim, cert, size, use_fast)


def _export_trace(trace, variables, field: Field) -> list:
    """Compact the raw trace to the lines reachable from the final one and
    serialize them as JSON-friendly rule applications."""
    needed = set()
    stack = [len(trace) - 1]
    while stack:
        i = stack.pop()
        if i in needed:
            continue
        needed.add(i)
        kind = trace[i][0]
        if kind == "mult":
            stack.append(trace[i][1])
        elif kind == "lincomb":
            stack.extend(trace[i][1])
    renumber = {}
    out = []

    def poly(row):
        return _row_poly(row, variables, field).to_json()

    for i in sorted(needed):
        entry = trace[i]
        renumber[i] = len(out)
        if entry[0] == "axiom":
            out.append({"rule": "axiom", "index": entry[1], "result": poly(entry[2])})
        elif entry[0] == "mult":
            v = variables[entry[2]]
            out.append({"rule": "mult", "line": renumber[entry[1]], "var": [v.vertex, v.colour], "result": poly(entry[3])})
        else:
            terms = [[renumber[l], field.to_str(c)] for l, c in sorted(entry[1].items())]
            out.append({"rule": "lincomb", "terms": terms, "result": poly(entry[2])})
    return out


def _row_poly(row: dict, variables, field: Field) -> Polynomial:
    terms = {}
    for m, c in row.items():
        terms[frozenset(variables[b] for b in range(m.bit_length()) if m >> b & 1)] = c
    return Polynomial(field, terms)


def replay_certificate(P, certificate: list, D: int, field: Field) -> bool:
    """Independently re-derive every line of a certificate.

    Checks that axiom lines quote the input, multiplication lines start
    from a line of degree <= D - 1, every recomputed result matches the
    recorded one and has degree <= D, and that the last line is 1.
    """
    polys = [g for g in P if isinstance(g, Polynomial)]
    lines: list = []
    for step in certificate:
        rule = step["rule"]
        claimed = Polynomial.from_json(step["result"])
        if rule == "axiom":
            value = polys[step["index"]]
        elif rule == "mult":
            parent = lines[step["line"]]
            if parent.degree > D - 1:
                return False
            value = parent * Polynomial.var(field, Variable(*step["var"]))
        elif rule == "lincomb":
            value = Polynomial.zero(field)
            for line, coef in step["terms"]:
                if line >= len(lines):
                    return False
                value = value + lines[line].scale(field(coef))
        else:
            return False
        if value != claimed or value.degree > D:
            return False
        lines.append(value)
    return bool(lines) and lines[-1] == Polynomial.constant(field, 1)


def min_refutation_degree(
    P, field: Field, D_max: int, budget: int = DEFAULT_MONOMIAL_BUDGET, D_min: int | None = None
) -> int | None:
    """Smallest D <= D_max admitting a refutation, or None."""
    _, variables, maxdeg = _split(P)
    start = max(maxdeg, 1) if D_min is None else D_min
    for D in range(start, D_max + 1):
        if pc_degree_refutable(P, D, field, budget=budget, certificate=False).refutable:
            return D
    return None
