"""The lower-bound construction as checkable objects.

A :class:`FrameworkContext` fixes a colouring instance together with the
high-degree set ``T``, a proper colouring of the rest, and the vertex
order that lists ``T`` first and then the remaining vertices colour class
by colour class. On top of it live the monomial closure, the support map
(colouring axioms of the closure), the pseudo-reduction operator, and
verifiers that hunt for counterexamples to each required property.

Universal statements are checked exhaustively when small and on seeded
samples otherwise, so a clean report means "no counterexample found".
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable

from .algebra import MonomialOrder, Polynomial, Variable
from .closure import closure, decreasing_path_bound, descendants, find_hop_or_lasso, is_closed
from .encodings import ColInstance, encode_polynomials
from .errors import DomainError, InvariantViolation, PreconditionError, ResourceError
from .field import Field
from .graphs import (
    Graph,
    VertexOrder,
    chromatic_number,
    contracted_graph,
    greedy_colouring,
    high_degree_cover,
    is_k_colourable,
    is_proper,
    rng_for,
)
from .ideal import basis_for

EXHAUSTIVE_LIMIT = 100_000
DEFAULT_SAMPLES = 2000


# ---------------------------------------------------------------------------
# context


@dataclass(frozen=True)
class FrameworkContext:
    instance: ColInstance
    delta: int
    T: frozenset
    c: int
    colouring: dict  # proper colouring of G - T with colours 1..c
    vertex_order: VertexOrder
    monomial_order: MonomialOrder
    c_exact: bool = True
    _memo: dict = dc_field(default_factory=dict, repr=False, compare=False)

    @property
    def graph(self) -> Graph:
        return self.instance.graph

    @property
    def k(self) -> int:
        return self.instance.k

    @property
    def field(self) -> Field:
        return self.instance.field

    @property
    def nvars(self) -> int:
        return self.graph.n * self.k

    # mask helpers: bit = rank * k + colour - 1
    def vertices_of_mask(self, mask: int) -> frozenset:
        seq, k = self.vertex_order.sequence, self.k
        out = set()
        while mask:
            low = mask & -mask
            out.add(seq[(low.bit_length() - 1) // k])
            mask ^= low
        return frozenset(out)

    def vertex_mask(self, A: Iterable) -> int:
        """All variable bits belonging to the vertices in ``A``."""
        k, rank = self.k, self.vertex_order.rank
        full = (1 << k) - 1
        out = 0
        for v in A:
            out |= full << (rank[v] * k)
        return out

    def closure_of_vertices(self, A: Iterable) -> frozenset:
        key = ("cl", frozenset(A))
        got = self._memo.get(key)
        if got is None:
            got = closure(self.graph, self.vertex_order, key[1] | self.T)
            self._memo[key] = got
        return got

    def closure_of_mask(self, mask: int) -> frozenset:
        key = ("clm", mask)
        got = self._memo.get(key)
        if got is None:
            got = self.closure_of_vertices(self.vertices_of_mask(mask))
            self._memo[key] = got
        return got

    def basis_of(self, W: frozenset):
        """Groebner basis (mask level) of the colouring ideal of ``G[W]``."""
        key = ("gb", W)
        got = self._memo.get(key)
        if got is None:
            order = self.monomial_order
            inst = encode_polynomials(self.graph, self.k, self.field, W)
            got = basis_for(self.field.p, [order.to_masks(g) for g in inst.polynomials])
            self._memo[key] = got
        return got

    def reduce_mask(self, mask: int) -> dict:
        """Normal form of the monomial ``mask`` modulo the ideal of its own support."""
        key = ("red", mask)
        got = self._memo.get(key)
        if got is None:
            got = self.basis_of(self.closure_of_mask(mask)).reduce({mask: self.field.one})
            self._memo[key] = got
        return got

    def clear_memo(self):
        self._memo.clear()


def build_context(G: Graph, k: int, field: Field, delta: int, budget: int = 5_000_000) -> FrameworkContext:
    """``T`` removes vertices until the rest has maximum degree <= delta;
    the rest is coloured with the fewest colours found by exact search."""
    if delta < 0:
        raise DomainError("delta must be >= 0")
    T = high_degree_cover(G, delta + 1)
    rest = [v for v in range(G.n) if v not in T]
    try:
        c, col = chromatic_number(G, rest, budget=budget)
        exact = True
    except ResourceError:
        col = greedy_colouring(G, rest)
        c, exact = max(col.values(), default=0), False
    seq = sorted(T) + sorted(rest, key=lambda v: (col[v], v))
    order = VertexOrder.from_sequence(seq)
    inst = encode_polynomials(G, k, field)
    ctx = FrameworkContext(inst, delta, frozenset(T), c, dict(col), order, order.monomial_order(k), exact)
    _check_context(ctx)
    return ctx


def _check_context(ctx: FrameworkContext):
    G, order, T = ctx.graph, ctx.vertex_order, ctx.T
    rest = [v for v in range(G.n) if v not in T]
    if T and rest and max(order.rank[t] for t in T) > min(order.rank[v] for v in rest):
        raise InvariantViolation("T must precede every other vertex")
    if not is_proper(G, ctx.colouring):
        raise InvariantViolation("residual colouring is not proper")
    for u, v in G.edges_within(rest):
        if ctx.colouring[u] != ctx.colouring[v] and (ctx.colouring[u] < ctx.colouring[v]) != order.before(u, v):
            raise InvariantViolation("vertex order does not follow colour classes")
    if G.max_degree(rest) > ctx.delta:
        raise InvariantViolation("residual degree exceeds delta")


def monomial_closure(ctx: FrameworkContext, m) -> frozenset:
    """Closure of the vertices of ``m`` together with ``T``."""
    return ctx.closure_of_vertices(v.vertex for v in m)


def support(ctx: FrameworkContext, m) -> ColInstance:
    """The colouring axioms of the subgraph induced by the monomial closure."""
    return encode_polynomials(ctx.graph, ctx.k, ctx.field, monomial_closure(ctx, m))


def support_contains(ctx: FrameworkContext, m_small, m_big) -> bool:
    """Is the support of ``m_small`` inside that of ``m_big``? Axiom sets of induced subgraphs nest
    exactly when the vertex sets do."""
    return monomial_closure(ctx, m_small) <= monomial_closure(ctx, m_big)


def pseudo_reduce(ctx: FrameworkContext, p: Polynomial) -> Polynomial:
    """Reduce each monomial modulo the ideal of its own support, linearly."""
    order, F = ctx.monomial_order, ctx.field
    return order.from_masks(F, _pseudo_reduce_masks(ctx, order.to_masks(p)))


def _pseudo_reduce_masks(ctx: FrameworkContext, poly: dict) -> dict:
    F = ctx.field
    out: dict = {}
    for mask, c in poly.items():
        for u, a in ctx.reduce_mask(mask).items():
            v = F.add(out.get(u, F.zero), F.mul(c, a))
            if v:
                out[u] = v
            else:
                out.pop(u, None)
    return out


def _times_var(poly: dict, xb: int, F: Field) -> dict:
    out: dict = {}
    for m, c in poly.items():
        u = m | xb
        v = F.add(out.get(u, F.zero), c)
        if v:
            out[u] = v
        else:
            out.pop(u, None)
    return out


# ---------------------------------------------------------------------------
# sampling


def monomial_count(nvars: int, D: int) -> int:
    return sum(comb(nvars, i) for i in range(min(D, nvars) + 1))


def sample_monomials(ctx: FrameworkContext, D: int, samples: int, seed: int) -> tuple:
    """``(masks, exhaustive)``: every monomial of degree <= D when there are
    at most EXHAUSTIVE_LIMIT of them, otherwise a seeded sample that always
    contains 1, every variable, and every axiom's leading monomial."""
    N = ctx.nvars
    if monomial_count(N, D) <= EXHAUSTIVE_LIMIT:
        masks = [sum(1 << b for b in c) for d in range(min(D, N) + 1) for c in combinations(range(N), d)]
        return masks, True
    rng = rng_for(seed)
    chosen = {0}
    chosen.update(1 << b for b in range(N))
    order = ctx.monomial_order
    for p in ctx.instance.polynomials:
        lm = order.mask(order.leading_monomial(p))
        if lm.bit_count() <= D:
            chosen.add(lm)
    base = sorted(chosen, key=lambda m: (m.bit_count(), m))
    extra = []
    seen = set(base)
    attempts = 0
    while len(extra) < samples and attempts < 20 * samples:
        attempts += 1
        d = int(rng.integers(2, D + 1)) if D >= 2 else int(rng.integers(0, D + 1))
        bits = rng.choice(N, size=d, replace=False)
        m = 0
        for b in bits.tolist():
            m |= 1 << b
        if m not in seen:
            seen.add(m)
            extra.append(m)
    return base + extra, False


def _random_submask(rng, mask: int) -> int:
    out = 0
    b = 0
    while mask >> b:
        if mask >> b & 1 and rng.random() < 0.5:
            out |= 1 << b
        b += 1
    return out


def _random_mask_in(rng, allowed: int, maxdeg: int) -> int:
    bits = [b for b in range(allowed.bit_length()) if allowed >> b & 1]
    if not bits or maxdeg <= 0:
        return 0
    d = int(rng.integers(0, min(maxdeg, len(bits)) + 1))
    pick = rng.choice(len(bits), size=d, replace=False)
    out = 0
    for i in pick.tolist():
        out |= 1 << bits[i]
    return out


def _test_variables(ctx: FrameworkContext, rng, *masks) -> list:
    N = ctx.nvars
    if N <= 64:
        return list(range(N))
    chosen = set(rng.choice(N, size=16, replace=False).tolist())
    for m in masks:
        chosen.update(b for b in range(m.bit_length()) if m >> b & 1)
    return sorted(chosen)


def _key(m: int):
    return (m.bit_count(), m)


# ---------------------------------------------------------------------------
# report


@dataclass
class Check:
    checked: int = 0
    failures: int = 0

    def record(self, ok: bool):
        self.checked += 1
        if not ok:
            self.failures += 1
        return ok

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def to_json(self) -> dict:
        return {
            "status": "no-counterexample" if self.ok else "counterexample",
            "checked": self.checked,
            "failures": self.failures,
        }


@dataclass
class FrameworkReport:
    degree: int
    seed: int
    samples: int
    exhaustive: bool = False
    support: dict = dc_field(default_factory=lambda: {k: Check() for k in ("item1", "item2", "item3")})
    claims: dict = dc_field(default_factory=lambda: {k: Check() for k in ("axiom_monomials", "subset_vars", "reduction_support")})
    satisfiability: Check = dc_field(default_factory=Check)
    reducibility: Check = dc_field(default_factory=Check)
    pseudo_reduction: dict = dc_field(default_factory=lambda: {k: Check() for k in ("r1", "axioms", "commute")})
    counterexamples: list = dc_field(default_factory=list)
    extra: dict = dc_field(default_factory=dict)
    max_counterexamples: int = 20

    def add_counterexample(self, entry: dict):
        if len(self.counterexamples) < self.max_counterexamples:
            self.counterexamples.append(entry)

    @property
    def support_ok(self) -> bool:
        return all(c.ok for c in self.support.values()) and all(c.ok for c in self.claims.values())

    @property
    def conditions_ok(self) -> bool:
        return self.satisfiability.ok and self.reducibility.ok

    @property
    def pseudo_reduction_ok(self) -> bool:
        return all(c.ok for c in self.pseudo_reduction.values())

    @property
    def all_green(self) -> bool:
        return self.support_ok and self.conditions_ok and self.pseudo_reduction_ok

    def to_json(self) -> dict:
        out = {
            "degree": self.degree,
            "support": {k: v.to_json() for k, v in self.support.items()},
            "satisfiability": self.satisfiability.to_json(),
            "reducibility": self.reducibility.to_json(),
            "pseudo_reduction": {k: v.to_json() for k, v in self.pseudo_reduction.items()},
            "counterexamples": self.counterexamples,
            "seed": self.seed,
            "samples": self.samples,
        }
        out["support"]["claims"] = {k: v.to_json() for k, v in self.claims.items()}
        out["exhaustive"] = self.exhaustive
        out.update(self.extra)
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _mon_json(ctx: FrameworkContext, mask: int) -> list:
    return [[v.vertex, v.colour] for v in sorted(ctx.monomial_order.monomial(mask))]


def _poly_json(ctx: FrameworkContext, poly: dict) -> list:
    F = ctx.field
    return [[_mon_json(ctx, m), F.to_str(c)] for m, c in sorted(poly.items(), key=lambda t: _key(t[0]))]


# ---------------------------------------------------------------------------
# verifiers


def verify_support(ctx: FrameworkContext, D: int, samples: int = DEFAULT_SAMPLES, seed: int = 0, report: FrameworkReport | None = None) -> FrameworkReport:
    report = report or FrameworkReport(D, seed, samples)
    rng = rng_for(seed, 1)
    masks, exhaustive = sample_monomials(ctx, D, samples, seed)
    report.exhaustive = exhaustive
    order = ctx.monomial_order
    cl = ctx.closure_of_mask
    k = ctx.k

    # item 3 and the claim about all monomials of an axiom: finite and exact
    for p in ctx.instance.axioms:
        if isinstance(p, Polynomial):
            pm = order.to_masks(p)
            lm = max(pm, key=_key)
            need = ctx.vertices_of_mask(_support_mask(pm))
        else:
            lm = 1 << order.bit(p.variable)
            need = frozenset([p.variable.vertex])
        if not report.support["item3"].record(need <= cl(lm)):
            report.add_counterexample({"check": "support.item3", "axiom": repr(p), "leading": _mon_json(ctx, lm)})
        if isinstance(p, Polynomial):
            for m in pm:
                if not report.claims["axiom_monomials"].record(cl(m) <= cl(lm)):
                    report.add_counterexample({"check": "support.claims.axiom_monomials", "axiom": repr(p), "monomial": _mon_json(ctx, m)})

    for m in masks:
        W = cl(m)
        allowed = ctx.vertex_mask(W)
        partners = {_random_submask(rng, m), _random_mask_in(rng, allowed, D), masks[int(rng.integers(len(masks)))]}
        for mp in partners:
            if mp == m:
                continue
            small, big = (mp, m) if _key(mp) < _key(m) else (m, mp)
            # item 2: vars(small) inside the support variables of big
            if not small & ~ctx.vertex_mask(cl(big)):
                if not report.support["item2"].record(cl(small) <= cl(big)):
                    report.add_counterexample({"check": "support.item2", "m_prime": _mon_json(ctx, small), "m": _mon_json(ctx, big)})
            # item 1: nesting survives multiplication by a variable
            if cl(small) <= cl(big):
                for x in _test_variables(ctx, rng, small, big):
                    xb = 1 << x
                    if not report.support["item1"].record(cl(small | xb) <= cl(big | xb)):
                        report.add_counterexample({"check": "support.item1", "m_prime": _mon_json(ctx, small), "m": _mon_json(ctx, big), "x": _mon_json(ctx, xb)})
                        break
        sub = _random_submask(rng, m)
        if not report.claims["subset_vars"].record(cl(sub) <= W):
            report.add_counterexample({"check": "support.claims.subset_vars", "m_prime": _mon_json(ctx, sub), "m": _mon_json(ctx, m)})
        for mp in ctx.reduce_mask(m):
            ok = cl(mp) <= W
            if ok:
                for x in _test_variables(ctx, rng, mp, m)[:8]:
                    if not cl(mp | 1 << x) <= cl(m | 1 << x):
                        ok = False
                        break
            if not report.claims["reduction_support"].record(ok):
                report.add_counterexample({"check": "support.claims.reduction_support", "m_prime": _mon_json(ctx, mp), "m": _mon_json(ctx, m)})
    return report


def _support_mask(poly: dict) -> int:
    out = 0
    for m in poly:
        out |= m
    return out


def verify_conditions(ctx: FrameworkContext, D: int, samples: int = DEFAULT_SAMPLES, seed: int = 0, report: FrameworkReport | None = None) -> FrameworkReport:
    """Satisfiability: each support is satisfiable. Reducibility: for each
    monomial m, every leading monomial L of the reduced basis of the
    support of m is already reducible modulo the support of L. Given the
    support properties this is equivalent to the pairwise statement over
    all m' whose support lies inside that of m: the pair (L, m) is the
    smallest possible counterexample, and any m' reducible modulo the
    support of m is a multiple of such an L."""
    report = report or FrameworkReport(D, seed, samples)
    masks, exhaustive = sample_monomials(ctx, D, samples, seed)
    report.exhaustive = exhaustive
    rng = rng_for(seed, 3)
    G, k = ctx.graph, ctx.k
    colourable_memo: dict = {}
    for m in masks:
        W = ctx.closure_of_mask(m)
        if W not in colourable_memo:
            col = is_k_colourable(G, k, W)
            gb = ctx.basis_of(W)
            if (col is not None) == gb.unit:
                raise InvariantViolation(f"colourability and Groebner basis disagree on {sorted(W)}")
            colourable_memo[W] = col is not None
        if not report.satisfiability.record(colourable_memo[W]):
            report.add_counterexample({"check": "satisfiability", "m": _mon_json(ctx, m), "closure": sorted(W)})
        gb = ctx.basis_of(W)
        ok = True
        for L in gb.lms():
            if not ctx.basis_of(ctx.closure_of_mask(L)).reducible(L):
                ok = False
                report.add_counterexample(
                    {"check": "reducibility", "m": _mon_json(ctx, m), "m_prime": _mon_json(ctx, L), "reducible_in_support_of_m": True, "reducible_in_support_of_m_prime": False}
                )
                break
        report.reducibility.record(ok)
        # direct pairwise check on a few partners with nested supports
        for mp in (_random_submask(rng, m), _random_mask_in(rng, ctx.vertex_mask(W), D)):
            Wp = ctx.closure_of_mask(mp)
            if not Wp <= W:
                continue
            a, b = ctx.basis_of(Wp).reducible(mp), gb.reducible(mp)
            if not report.reducibility.record(a == b):
                report.add_counterexample(
                    {"check": "reducibility", "m": _mon_json(ctx, m), "m_prime": _mon_json(ctx, mp), "reducible_in_support_of_m": b, "reducible_in_support_of_m_prime": a}
                )
    return report


def verify_pseudo_reduction(ctx: FrameworkContext, D: int, samples: int = DEFAULT_SAMPLES, seed: int = 0, report: FrameworkReport | None = None) -> FrameworkReport:
    report = report or FrameworkReport(D, seed, samples)
    rng = rng_for(seed, 2)
    F, order = ctx.field, ctx.monomial_order
    one = ctx.reduce_mask(0)
    if not report.pseudo_reduction["r1"].record(one == {0: F.one}):
        report.add_counterexample({"check": "pseudo_reduction.r1", "value": _poly_json(ctx, one)})
    for p in ctx.instance.polynomials:
        if p.degree > D:
            continue
        r = _pseudo_reduce_masks(ctx, order.to_masks(p))
        if not report.pseudo_reduction["axioms"].record(not r):
            report.add_counterexample({"check": "pseudo_reduction.axioms", "axiom": repr(p), "value": _poly_json(ctx, r)})
    masks, exhaustive = sample_monomials(ctx, max(D - 1, 0), samples, seed)
    for m in masks:
        if m.bit_count() > D - 1:
            continue
        rm = ctx.reduce_mask(m)
        for x in _test_variables(ctx, rng, m):
            xb = 1 << x
            lhs = ctx.reduce_mask(m | xb)
            rhs = _pseudo_reduce_masks(ctx, _times_var(rm, xb, F))
            if not report.pseudo_reduction["commute"].record(lhs == rhs):
                report.add_counterexample(
                    {"check": "pseudo_reduction.commute", "m": _mon_json(ctx, m), "x": _mon_json(ctx, xb), "lhs": _poly_json(ctx, lhs), "rhs": _poly_json(ctx, rhs)}
                )
    return report


def verify_all(ctx: FrameworkContext, D: int, samples: int = DEFAULT_SAMPLES, seed: int = 0) -> FrameworkReport:
    report = FrameworkReport(D, seed, samples)
    verify_support(ctx, D, samples, seed, report)
    verify_conditions(ctx, D, samples, seed, report)
    verify_pseudo_reduction(ctx, D, samples, seed, report)
    report.extra["context"] = {"delta": ctx.delta, "T": sorted(ctx.T), "c": ctx.c, "c_exact": ctx.c_exact, "k": ctx.k, "field": repr(ctx.field)}
    return report


# ---------------------------------------------------------------------------
# star colouring and the substitution


def boundary(G: Graph, U: Iterable, W: Iterable) -> set:
    """Vertices of ``U - W`` with a neighbour in ``W``."""
    U, W = set(U), set(W)
    return {u for u in U - W if G.adj[u] & W}


def star_colouring(G: Graph, U: Iterable, W: Iterable, delta: int, budget: int = 1_000_000) -> dict:
    """Proper 3-colouring of ``G[U - W - boundary]`` in which the outer
    neighbours of every boundary vertex share one colour.

    Each boundary vertex together with its neighbours in ``U - W`` forms a
    star; the stars are contracted, the contraction is 3-coloured, and
    each leaf inherits the colour of its star.
    """
    U, W = set(U), set(W)
    outer = U - W
    B = boundary(G, U, W)
    stars = {}
    owner = {}
    for u in sorted(B):
        if len(G.adj[u] & outer) > delta:
            raise PreconditionError(f"boundary vertex {u} has degree > {delta} outside W", witness=[u])
        leaves = sorted((G.adj[u] & outer))
        if G.edges_within(leaves):
            raise PreconditionError(f"neighbours of boundary vertex {u} are not independent (lasso)", witness=[u] + leaves)
        for x in [u] + leaves:
            if x in owner:
                raise PreconditionError(f"stars of {owner[x]} and {u} overlap (short hop)", witness=[owner[x], u, x])
            owner[x] = u
        stars[u] = leaves
    H, labels = G.induced(outer)
    pos = {v: i for i, v in enumerate(labels)}
    contract_edges = [(pos[u], pos[w]) for u, leaves in stars.items() for w in leaves]
    Hc, classes = contracted_graph(H, contract_edges)
    col = is_k_colourable(Hc, 3, budget=budget)
    if col is None:
        raise PreconditionError("contracted graph is not 3-colourable", witness=[[labels[i] for i in cls] for cls in classes])
    colour_of = {}
    for i, cls in enumerate(classes):
        for j in cls:
            colour_of[labels[j]] = col[i]
    far = outer - B
    out = {v: colour_of[v] for v in sorted(far)}
    # post-checks
    if not is_proper(G, out):
        raise InvariantViolation("star colouring is not proper")
    for u, leaves in stars.items():
        if len({out[w] for w in leaves}) > 1:
            raise InvariantViolation(f"neighbours of {u} are not monochromatic")
    return out


def substitution_rho(ctx: FrameworkContext, U: Iterable, W: Iterable, check_closed: bool = True) -> dict:
    """Variable substitution sending the colouring axioms of ``G[U]`` into
    the ideal of ``G[W]``.

    Far vertices get constants from :func:`star_colouring`. A boundary
    vertex ``u`` with unique ``W``-neighbour ``v`` uses the two smallest
    colours ``c1 < c2`` missing from its outer neighbourhood:
    ``x[u,c1] -> x[v,c2]``, ``x[u,c2] -> sum of x[v,i] over i != c2``,
    every other colour of ``u`` -> 0.
    """
    G, k, F = ctx.graph, ctx.k, ctx.field
    if k < 3:
        raise DomainError("the substitution needs k >= 3")
    U, W = set(U), set(W)
    if not W <= U:
        raise PreconditionError("W must be a subset of U")
    if check_closed and not is_closed(G, ctx.vertex_order, W):
        raise PreconditionError("W is not closed", witness=sorted(W))
    B = boundary(G, U, W)
    for u in B:
        if len(G.adj[u] & W) != 1:
            raise PreconditionError(f"boundary vertex {u} has {len(G.adj[u] & W)} neighbours in W", witness=[u] + sorted(G.adj[u] & W))
    chi = star_colouring(G, U, W, ctx.delta)
    rho = {}
    zero, one = Polynomial.zero(F), Polynomial.constant(F, 1)
    for v, c in chi.items():
        for i in range(1, k + 1):
            rho[Variable(v, i)] = one if i == c else zero
    outer = U - W
    for u in sorted(B):
        (v,) = G.adj[u] & W
        used = {chi[w] for w in G.adj[u] & outer}
        free = [c for c in range(1, k + 1) if c not in used]
        c1, c2 = free[0], free[1]
        for i in range(1, k + 1):
            if i == c1:
                rho[Variable(u, i)] = Polynomial.var(F, (v, c2))
            elif i == c2:
                rho[Variable(u, i)] = Polynomial(F, {frozenset([Variable(v, j)]): 1 for j in range(1, k + 1) if j != c2})
            else:
                rho[Variable(u, i)] = zero
    return rho


def rho_respects_order(ctx: FrameworkContext, rho: dict) -> bool:
    """Every monomial of every image is strictly smaller than its source."""
    order = ctx.monomial_order
    for x, img in rho.items():
        src = frozenset([x])
        for m in img.terms:
            if order.compare(m, src) >= 0:
                return False
    return True


# ---------------------------------------------------------------------------
# predictions


def predict_degree(ell, delta, c, t) -> Fraction:
    """``ell / (50 * delta^(c-1)) - t`` exactly."""
    return Fraction(ell) / (50 * Fraction(delta) ** (c - 1)) - t


def implied_size_exponent(D, d, n) -> Fraction:
    """``(D - d)^2 / n``; the size bound is exp of a constant times this,
    and that constant is not computed."""
    if n <= 0:
        raise DomainError("n must be positive")
    return Fraction(D - d) ** 2 / Fraction(n)


COROLLARY_DEGREE = "d^(-C*d) * n"  # C: an unspecified large enough constant


def closure_size_bound(delta, c, degree, t) -> int:
    """Right-hand side of the closure size estimate: 50 * delta^(c-1) * (degree + t)."""
    return 50 * delta ** (c - 1) * (degree + t)


# ---------------------------------------------------------------------------
# whole pipeline

CROSS_CHECK_MAX_VARIABLES = 24


def run_pipeline(
    G: Graph,
    k: int,
    field: Field,
    delta: int,
    D: int,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    dmax: int | None = None,
    budget: int = 2_000_000,
) -> FrameworkReport:
    """Context, the three verifiers, then (for at most 24 variables) the
    exact minimal refutation degree as an independent cross-check.

    A green report on an unsatisfiable instance predicts that no refutation
    of degree <= D exists; ``cross_check.consistent`` is False exactly
    when the exact computation contradicts that.
    """
    from .pcdegree import min_refutation_degree

    ctx = build_context(G, k, field, delta)
    report = verify_all(ctx, D, samples, seed)
    satisfiable = is_k_colourable(G, k) is not None
    cross = {"satisfiable": satisfiable, "min_refutation_degree": None, "searched_up_to": None}
    if not satisfiable and ctx.nvars <= CROSS_CHECK_MAX_VARIABLES:
        top = dmax if dmax is not None else max(D + 2, k + 2)
        inst = ctx.instance
        try:
            cross["min_refutation_degree"] = min_refutation_degree(inst.axioms, field, top, budget=budget)
            cross["searched_up_to"] = top
        except ResourceError as exc:
            cross["error"] = str(exc)
    md = cross["min_refutation_degree"]
    cross["consistent"] = not (report.all_green and not satisfiable and md is not None and md <= D)
    cross["all_green"] = report.all_green
    report.extra["cross_check"] = cross
    return report
