"""Polynomial and CNF encodings of k-colourability."""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .algebra import BooleanAxiom, Polynomial, Variable
from .errors import DomainError
from .field import Field
from .graphs import Graph

KINDS = ("vertex", "conflict", "edge", "boolean")


def flat_id(v: Variable, k: int) -> int:
    """0-based flat index ``vertex*k + colour - 1``."""
    return v.vertex * k + v.colour - 1


def from_flat_id(i: int, k: int) -> Variable:
    return Variable(i // k, i % k + 1)


def vertex_axiom(field: Field, v: int, k: int) -> Polynomial:
    terms = {frozenset([Variable(v, i)]): 1 for i in range(1, k + 1)}
    terms[frozenset()] = -1
    return Polynomial(field, terms)


def conflict_axiom(field: Field, v: int, i: int, j: int) -> Polynomial:
    return Polynomial(field, {frozenset([Variable(v, i), Variable(v, j)]): 1})


def edge_axiom(field: Field, u: int, v: int, i: int) -> Polynomial:
    return Polynomial(field, {frozenset([Variable(u, i), Variable(v, i)]): 1})


@dataclass(frozen=True)
class ColInstance:
    """The colouring axioms of ``G[vertices]`` with ``k`` colours."""

    graph: Graph
    k: int
    field: Field
    vertices: tuple
    vertex_axioms: tuple
    conflict_axioms: tuple
    edge_axioms: tuple
    boolean_axioms: tuple

    @property
    def axioms(self) -> list:
        return list(self.vertex_axioms + self.conflict_axioms + self.edge_axioms + self.boolean_axioms)

    @property
    def polynomials(self) -> list:
        """All axioms except the (structurally implied) Boolean ones."""
        return list(self.vertex_axioms + self.conflict_axioms + self.edge_axioms)

    def partition(self) -> dict:
        return dict(zip(KINDS, (self.vertex_axioms, self.conflict_axioms, self.edge_axioms, self.boolean_axioms)))

    @property
    def variables(self) -> list:
        return [Variable(v, i) for v in self.vertices for i in range(1, self.k + 1)]

    def to_json(self) -> dict:
        return {
            "n": self.graph.n,
            "k": self.k,
            "field": self.field.to_json(),
            "vertices": list(self.vertices),
            "axioms": {kind: [p.to_json() for p in ax if isinstance(p, Polynomial)] for kind, ax in self.partition().items() if kind != "boolean"},
            "boolean": [[b.variable.vertex, b.variable.colour] for b in self.boolean_axioms],
        }


def encode_polynomials(G: Graph, k: int, field: Field, vertices: Iterable | None = None) -> ColInstance:
    """Colouring axioms of ``G`` (or of the induced subgraph on ``vertices``)."""
    if k < 1:
        raise DomainError("k must be >= 1")
    vs = tuple(range(G.n)) if vertices is None else tuple(sorted(set(vertices)))
    vertex_ax = tuple(vertex_axiom(field, v, k) for v in vs)
    conflict_ax = tuple(conflict_axiom(field, v, i, j) for v in vs for i, j in combinations(range(1, k + 1), 2))
    edges = G.edges if vertices is None else G.edges_within(vs)
    edge_ax = tuple(edge_axiom(field, u, v, i) for u, v in edges for i in range(1, k + 1))
    bool_ax = tuple(BooleanAxiom(Variable(v, i)) for v in vs for i in range(1, k + 1))
    return ColInstance(G, k, field, vs, vertex_ax, conflict_ax, edge_ax, bool_ax)


@dataclass(frozen=True)
class CnfFormula:
    """Clauses as tuples of non-zero DIMACS literals over ``nvars`` variables."""

    nvars: int
    clauses: tuple
    k: int | None = None

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.nvars} {len(self.clauses)}"]
        lines += [" ".join(str(l) for l in c) + " 0" for c in self.clauses]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_dimacs(cls, text: str) -> "CnfFormula":
        nvars, clauses, cur = None, [], []
        for ln in text.splitlines():
            ln = ln.strip()
            if not ln or ln.startswith("c"):
                continue
            if ln.startswith("p"):
                _, kind, nv, _nc = ln.split()
                if kind != "cnf":
                    raise DomainError("not a CNF header")
                nvars = int(nv)
                continue
            for tok in ln.split():
                lit = int(tok)
                if lit == 0:
                    clauses.append(tuple(cur))
                    cur = []
                else:
                    cur.append(lit)
        if nvars is None:
            raise DomainError("missing 'p cnf' header")
        return cls(nvars, tuple(clauses))

    def evaluate(self, assignment) -> bool:
        """``assignment[i]`` is the truth value of DIMACS variable ``i + 1``."""
        return all(any((assignment[abs(l) - 1] == 1) == (l > 0) for l in c) for c in self.clauses)

    def to_json(self) -> str:
        return json.dumps({"nvars": self.nvars, "clauses": [list(c) for c in self.clauses]})


def encode_cnf(G: Graph, k: int) -> CnfFormula:
    """Colour clauses per vertex, then at-most-one per vertex, then edge clauses."""
    if k < 1:
        raise DomainError("k must be >= 1")

    def lit(v, i):
        return v * k + i  # 1-based DIMACS literal of x[v, i]

    clauses = [tuple(lit(v, i) for i in range(1, k + 1)) for v in range(G.n)]
    clauses += [(-lit(v, i), -lit(v, j)) for v in range(G.n) for i, j in combinations(range(1, k + 1), 2)]
    clauses += [(-lit(u, i), -lit(v, i)) for u, v in G.edges for i in range(1, k + 1)]
    return CnfFormula(G.n * k, tuple(clauses), k)


def cnf_to_polynomials(F: CnfFormula, field: Field, k: int | None = None) -> list:
    """Standard translation: a clause becomes the product of ``1 - x`` over
    its positive literals and ``x`` over its negative ones, so it vanishes
    exactly when the clause is satisfied. Boolean axioms are appended.

    Variables are named through the flat index, so with ``k`` given (or
    recorded in ``F``) they coincide with the colouring variables.
    """
    k = k or F.k
    if k is None:
        raise DomainError("need k to name the CNF variables")
    one = Polynomial.constant(field, 1)
    out = []
    for clause in F.clauses:
        p = one
        for l in clause:
            x = Polynomial.var(field, from_flat_id(abs(l) - 1, k))
            p = p * (one - x if l > 0 else x)
        out.append(p)
    out += [BooleanAxiom(from_flat_id(i, k)) for i in range(F.nvars)]
    return out
