import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import instances
from pclab.algebra import Polynomial, Variable
from pclab.closure import decreasing_path_bound
from pclab.encodings import encode_polynomials
from pclab.errors import DomainError, PreconditionError
from pclab.field import GF2, QQ, Field
from pclab.framework import (
    boundary,
    build_context,
    closure_size_bound,
    implied_size_exponent,
    monomial_closure,
    monomial_count,
    predict_degree,
    pseudo_reduce,
    rho_respects_order,
    run_pipeline,
    sample_monomials,
    star_colouring,
    substitution_rho,
    support,
    support_contains,
    verify_all,
)
from pclab.graphs import Graph, is_proper, sample_gnp
from pclab.ideal import groebner


def x(v, c, F=QQ):
    return Polynomial.var(F, (v, c))


def test_context_layout():
    ctx = build_context(Graph.star(4), 3, QQ, 2)
    assert ctx.T == {0}
    assert ctx.vertex_order.sequence[0] == 0
    assert ctx.c == 1 and ctx.c_exact
    ctx = build_context(Graph.petersen(), 3, QQ, 3)
    assert ctx.T == frozenset() and ctx.c == 3
    # colour classes appear in increasing colour order
    cols = [ctx.colouring[v] for v in ctx.vertex_order.sequence]
    assert cols == sorted(cols)
    with pytest.raises(DomainError):
        build_context(Graph.path(3), 3, QQ, -1)


def test_order_paths_are_bounded_by_colour_count():
    for G, delta in [(Graph.petersen(), 3), (Graph.cycle(7), 2), (Graph.complete(5), 2), (Graph.path(6), 1)]:
        ctx = build_context(G, 3, GF2, delta)
        assert decreasing_path_bound(G, ctx.vertex_order, avoid=ctx.T) <= ctx.c
        assert is_proper(G, ctx.colouring)


def test_isolated_vertex_reduction():
    ctx = build_context(Graph.empty(1), 3, QQ, 1)
    assert pseudo_reduce(ctx, x(0, 3)) == 1 - x(0, 1) - x(0, 2)
    assert pseudo_reduce(ctx, x(0, 1)) == x(0, 1)
    assert pseudo_reduce(ctx, Polynomial.constant(QQ, 1)) == Polynomial.constant(QQ, 1)


def test_pseudo_reduction_kills_axioms_and_is_linear():
    ctx = build_context(Graph.path(4), 3, QQ, 2)
    for p in ctx.instance.polynomials:
        assert pseudo_reduce(ctx, p).is_zero()
    p, q = x(0, 1) * x(2, 2), x(3, 3) + x(1, 1)
    assert pseudo_reduce(ctx, p + q.scale(3)) == pseudo_reduce(ctx, p) + pseudo_reduce(ctx, q).scale(3)


def test_support_of_monomials():
    ctx = build_context(Graph.cycle(4), 3, QQ, 2)
    m = frozenset([Variable(0, 1), Variable(2, 1)])
    assert monomial_closure(ctx, m) == {0, 1, 2, 3}
    assert support(ctx, m).vertices == (0, 1, 2, 3)
    assert support_contains(ctx, frozenset(), m)
    assert support(ctx, frozenset()).vertices == ()


def test_sampling_is_exhaustive_when_small():
    ctx = build_context(Graph.path(3), 2, GF2, 2)
    masks, exhaustive = sample_monomials(ctx, 2, 10, 0)
    assert exhaustive and len(masks) == monomial_count(6, 2) == 22
    big = build_context(Graph.cycle(40), 3, GF2, 2)
    masks, exhaustive = sample_monomials(big, 4, 50, 1)
    assert not exhaustive and 0 in masks and len(set(masks)) == len(masks)
    assert sample_monomials(big, 4, 50, 1) == (masks, exhaustive)


@pytest.mark.parametrize(
    "G,k,delta,D",
    [(Graph.path(5), 3, 2, 2), (Graph.cycle(5), 3, 2, 2), (Graph.cycle(6), 3, 2, 3), (Graph.petersen(), 3, 3, 2)],
    ids=["P5", "C5", "C6", "petersen"],
)
def test_colourable_instances_are_green(G, k, delta, D):
    rep = verify_all(build_context(G, k, GF2, delta), D, 200, 0)
    assert rep.all_green and rep.exhaustive and not rep.counterexamples


def test_k4_fails_satisfiability():
    rep = run_pipeline(Graph.complete(4), 3, GF2, 3, 2, samples=100, seed=0)
    assert not rep.satisfiability.ok and not rep.all_green
    assert any(c["check"] == "satisfiability" for c in rep.counterexamples)
    cross = rep.extra["cross_check"]
    assert cross["min_refutation_degree"] == 3 and cross["consistent"] and not cross["satisfiable"]


def test_report_json_shape():
    rep = run_pipeline(Graph.cycle(5), 3, GF2, 2, 2, samples=50, seed=3)
    data = json.loads(rep.dumps())
    for key in ("degree", "support", "satisfiability", "reducibility", "pseudo_reduction", "counterexamples", "seed", "samples"):
        assert key in data
    assert set(data["support"]) == {"item1", "item2", "item3", "claims"}
    assert data["satisfiability"]["status"] == "no-counterexample"
    assert data["cross_check"]["satisfiable"] is True


def test_star_colouring_example():
    # W = {0}; 1 is the boundary vertex with outer neighbours 2 and 3
    G = Graph(6, [(0, 1), (1, 2), (1, 3), (2, 4), (3, 5), (4, 5)])
    assert boundary(G, range(6), {0}) == {1}
    col = star_colouring(G, range(6), {0}, 3)
    assert set(col) == {2, 3, 4, 5}
    assert col[2] == col[3] and is_proper(G, col)


def test_star_colouring_preconditions():
    G = Graph(4, [(0, 1), (1, 2), (1, 3), (2, 3)])
    with pytest.raises(PreconditionError) as info:
        star_colouring(G, range(4), {0}, 3)
    assert info.value.witness == [1, 2, 3]
    with pytest.raises(PreconditionError):
        star_colouring(Graph.star(4), range(5), {1}, 2)


def test_star_colourings_on_sampled_configurations():
    runs = list(instances.star_runs(40, seed=5))
    assert len(runs) == 40
    for ctx, U, W, col in runs:
        G = ctx.graph
        far = set(U) - set(W) - boundary(G, U, W)
        assert set(col) == far and set(col.values()) <= {1, 2, 3}
        assert is_proper(G, col)
        assert instances.monochromatic_ok(G, U, W, col)


@pytest.mark.parametrize("F", [Field.gf(2), Field.gf(3), Field.rationals()], ids=repr)
def test_substitution_sends_axioms_into_the_closed_ideal(F):
    for ctx, U, W in instances.configurations(12, seed=2, max_closed=8, field=F):
        rho = substitution_rho(ctx, U, W)
        assert rho_respects_order(ctx, rho)
        gb = groebner(encode_polynomials(ctx.graph, 3, F, W).polynomials, ctx.monomial_order, F)
        for p in encode_polynomials(ctx.graph, 3, F, U).polynomials:
            assert gb.contains(p.substitute(rho))


def test_substitution_on_a_path():
    # identity order on a path: W = {0} is closed, 1 is its boundary vertex
    G = Graph.path(4)
    ctx = build_context(G, 3, QQ, 2)
    W = {ctx.vertex_order.sequence[0]}
    rho = substitution_rho(ctx, range(4), W)
    assert rho_respects_order(ctx, rho)
    gb = groebner(encode_polynomials(G, 3, QQ, W).polynomials, ctx.monomial_order, QQ)
    for p in encode_polynomials(G, 3, QQ).polynomials:
        assert gb.contains(p.substitute(rho))


def test_substitution_preconditions():
    ctx = build_context(Graph.path(4), 3, QQ, 2)
    with pytest.raises(PreconditionError):
        substitution_rho(ctx, {0, 1}, {0, 2})
    with pytest.raises(DomainError):
        substitution_rho(build_context(Graph.path(4), 2, QQ, 2), range(4), {0})
    not_closed = {ctx.vertex_order.sequence[-1]}
    with pytest.raises(PreconditionError):
        substitution_rho(ctx, range(4), not_closed)


def test_formulas():
    assert predict_degree(5000, 6, 4, 0) == Fraction(5000, 10800)
    assert predict_degree(100, 1, 1, 2) == 0
    assert predict_degree(Fraction(1, 2), 2, 2, 0) == Fraction(1, 200)
    assert implied_size_exponent(10, 4, 12) == 3
    assert implied_size_exponent(4, 10, 9) == 4
    with pytest.raises(DomainError):
        implied_size_exponent(1, 0, 0)
    assert closure_size_bound(3, 3, 2, 1) == 50 * 9 * 3


def _monomial(entry):
    return frozenset(Variable(v, c) for v, c in entry)


def test_counterexamples_reverify_standalone():
    from pclab.closure import closure
    from pclab.graphs import is_k_colourable

    # satisfiability on K4: the closure of the flagged monomial is not 3-colourable
    G = Graph.complete(4)
    rep = run_pipeline(G, 3, GF2, 3, 2, samples=100, seed=0)
    ctx = build_context(G, 3, GF2, 3)
    for c in rep.counterexamples:
        if c["check"] == "satisfiability":
            W = closure(G, ctx.vertex_order, {v for v, _ in c["m"]} | ctx.T)
            assert sorted(W) == c["closure"] and is_k_colourable(G, 3, W) is None
    # reducibility on a 2-coloured odd cycle: recompute both bases from scratch
    G = Graph.cycle(9)
    rep = run_pipeline(G, 2, GF2, 2, 1, samples=100, seed=0)
    ctx = build_context(G, 2, GF2, 2)
    found = [c for c in rep.counterexamples if c["check"] == "reducibility"]
    assert found
    for c in found:
        m, mp = _monomial(c["m"]), _monomial(c["m_prime"])
        Wm = closure(G, ctx.vertex_order, {v.vertex for v in m} | ctx.T)
        Wp = closure(G, ctx.vertex_order, {v.vertex for v in mp} | ctx.T)
        assert Wp <= Wm
        gb_m = groebner(encode_polynomials(G, 2, GF2, Wm).polynomials, ctx.monomial_order, GF2)
        gb_p = groebner(encode_polynomials(G, 2, GF2, Wp).polynomials, ctx.monomial_order, GF2)
        assert gb_m.is_reducible(mp) == c["reducible_in_support_of_m"]
        assert gb_p.is_reducible(mp) == c["reducible_in_support_of_m_prime"]
        assert c["reducible_in_support_of_m"] != c["reducible_in_support_of_m_prime"]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 4))
def test_context_invariants(seed, delta):
    G = sample_gnp(14, 0.25, seed)
    ctx = build_context(G, 3, GF2, delta)
    order, T = ctx.vertex_order, ctx.T
    rest = [v for v in range(G.n) if v not in T]
    assert all(order.rank[t] < order.rank[v] for t in T for v in rest)
    seq = [v for v in order.sequence if v not in T]
    assert [ctx.colouring[v] for v in seq] == sorted(ctx.colouring[v] for v in seq)
    assert G.max_degree(rest) <= delta
    assert decreasing_path_bound(G, order, avoid=T) <= ctx.c
