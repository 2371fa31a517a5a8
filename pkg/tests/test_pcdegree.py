import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from pclab.algebra import BooleanAxiom, Polynomial, Variable
from pclab.encodings import encode_polynomials
from pclab.errors import DomainError, ResourceError
from pclab.field import GF2, QQ, Field
from pclab.graphs import Graph
from pclab.pcdegree import min_refutation_degree, pc_degree_refutable, replay_certificate, universe_size

FIELDS = [Field.gf(2), Field.gf(3), Field.rationals()]
VARS5 = [Variable(v, 1) for v in range(5)]


def wheel(rim: int) -> Graph:
    return Graph(rim + 1, [(i, (i + 1) % rim) for i in range(rim)] + [(rim, i) for i in range(rim)])


# Frozen minimum degrees. Each was cross-checked against the dense
# saturation oracle where that is affordable (see the oracle tests below).
FROZEN = [
    ("C5-k2", Graph.cycle(5), 2, 2),
    ("K3-k2", Graph.complete(3), 2, 2),
    ("K4-k3", Graph.complete(4), 3, 3),
    ("W5-k3", wheel(5), 3, 3),
    ("K5-k4", Graph.complete(5), 4, 3),
]


@pytest.mark.parametrize("F", FIELDS, ids=repr)
@pytest.mark.parametrize("name,G,k,d", FROZEN, ids=[f[0] for f in FROZEN])
def test_frozen_minimum_degrees(name, G, k, d, F):
    P = encode_polynomials(G, k, F).axioms
    assert min_refutation_degree(P, F, 6) == d


def test_colourable_graphs_are_not_refuted():
    for G, k in [(Graph.cycle(6), 2), (Graph.petersen(), 3), (Graph.complete(4), 4)]:
        P = encode_polynomials(G, k, GF2).axioms
        assert min_refutation_degree(P, GF2, 4) is None


@pytest.mark.parametrize("F", FIELDS, ids=repr)
def test_k4_agrees_with_dense_oracle(F):
    inst = encode_polynomials(Graph.complete(4), 3, F)
    for D in (2, 3):
        got = pc_degree_refutable(inst.axioms, D, F, certificate=False).refutable
        assert got == oracles.pc_span_refutes(inst.polynomials, inst.variables, D, F)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from(FIELDS), st.integers(2, 3))
def test_random_systems_agree_with_dense_oracle(seed, F, D):
    rng = np.random.default_rng(seed)
    gens = [g for g in oracles.random_system(rng, F, VARS5, int(rng.integers(2, 6))) if g.degree <= 2]
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return
    variables = sorted({v for g in gens for v in g.variables})
    P = gens + [BooleanAxiom(v) for v in variables]
    got = pc_degree_refutable(P, D, F, certificate=False).refutable
    assert got == oracles.pc_span_refutes(gens, variables, D, F)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000), st.integers(2, 3))
def test_gf2_fast_path_matches_generic(seed, D):
    rng = np.random.default_rng(seed)
    gens = [g for g in oracles.random_system(rng, GF2, VARS5, int(rng.integers(2, 7))) if not g.is_zero()]
    P = gens + [BooleanAxiom(v) for v in VARS5]
    fast = pc_degree_refutable(P, D, GF2, certificate=False, fast_path=True)
    slow = pc_degree_refutable(P, D, GF2, certificate=False, fast_path=False)
    assert fast.fast_path and not slow.fast_path
    assert fast.refutable == slow.refutable
    assert fast.span_dimension == slow.span_dimension


def test_refutation_implies_no_common_root():
    # soundness: a refutation of any degree excludes a common root
    rng = np.random.default_rng(3)
    for _ in range(60):
        F = FIELDS[int(rng.integers(0, 3))]
        gens = [g for g in oracles.random_system(rng, F, VARS5) if not g.is_zero()]
        if not gens:
            continue
        if pc_degree_refutable(gens, 3, F, certificate=False).refutable:
            variables = sorted({v for g in gens for v in g.variables})
            assert not oracles.common_zeros(gens, variables)


@pytest.mark.parametrize("F", FIELDS, ids=repr)
def test_certificates_replay(F):
    P = encode_polynomials(Graph.complete(4), 3, F).axioms
    res = pc_degree_refutable(P, 3, F)
    assert res.refutable and res.certificate
    assert replay_certificate(P, res.certificate, 3, F)
    # a certificate is degree bound specific
    assert not replay_certificate(P, res.certificate, 2, F)


def test_tampered_certificate_is_rejected():
    P = encode_polynomials(Graph.complete(3), 2, QQ).axioms
    cert = pc_degree_refutable(P, 2, QQ).certificate
    assert replay_certificate(P, cert, 2, QQ)
    bad = [dict(step) for step in cert]
    bad[-1] = dict(bad[-1], result=Polynomial.constant(QQ, 2).to_json())
    assert not replay_certificate(P, bad, 2, QQ)
    assert not replay_certificate(P, cert[:-1], 2, QQ)
    assert not replay_certificate(P, [], 2, QQ)


def test_degree_below_axioms_warns():
    P = encode_polynomials(Graph.complete(3), 2, GF2).axioms
    with pytest.warns(UserWarning):
        res = pc_degree_refutable(P, 1, GF2)
    assert not res.refutable
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert pc_degree_refutable(P, 2, GF2).refutable


def test_budget_and_field_checks():
    P = encode_polynomials(Graph.complete(5), 4, GF2).axioms
    assert universe_size(20, 3) == 1 + 20 + 190 + 1140
    with pytest.raises(ResourceError):
        pc_degree_refutable(P, 4, GF2, budget=100)
    with pytest.raises(DomainError):
        pc_degree_refutable(P, 4, QQ)


def test_result_json():
    P = encode_polynomials(Graph.complete(3), 2, GF2).axioms
    data = pc_degree_refutable(P, 2, GF2).to_json()
    assert data["refutable"] is True and data["degree"] == 2 and data["certificate"]
