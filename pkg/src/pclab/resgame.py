"""Prover-adversary width game for k-colourability.

The prover remembers a partial colouring on at most ``w`` vertices and
either queries a vertex or forgets one. The adversary keeps a proper
colouring of the resolution closure of the remembered vertices and
answers queries from it. To extend, it peels vertices with at most two
neighbours in the new region and colours them back in reverse order, so
each vertex sees at most one coloured neighbour in the old closure and two
in the region, and four colours always suffice. Only the new region is
ever coloured; the existing closure keeps its colours.

If extension fails (the graph is too dense locally) the adversary falls
back to answering consistently with the prover's memory only, and the
prover wins once its memory holds an improper colouring.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field

from .closure import resolution_closure
from .errors import DomainError, InvariantViolation
from .graphs import Graph, is_k_colourable, rng_for

PROVERS = ("random", "greedy-conflict")


@dataclass
class GameState:
    graph: Graph
    k: int
    w: int
    memory: dict = dc_field(default_factory=dict)  # vertex -> colour, what the prover holds
    colouring: dict = dc_field(default_factory=dict)  # adversary colouring of the closure
    round: int = 0
    degraded: bool = False  # adversary could not keep a closure colouring

    @property
    def domain(self) -> frozenset:
        return frozenset(self.memory)

    def closure(self) -> frozenset:
        return resolution_closure(self.graph, self.memory)

    def check(self):
        """State invariants; only meaningful while not degraded."""
        if self.degraded:
            return
        G = self.graph
        if set(self.colouring) != set(self.closure()):
            raise InvariantViolation("adversary colouring is not defined on exactly the closure")
        for u, v in G.edges_within(self.colouring):
            if self.colouring[u] == self.colouring[v]:
                raise InvariantViolation(f"adversary colouring improper on edge {u}-{v}")
        for v, c in self.memory.items():
            if self.colouring[v] != c:
                raise InvariantViolation("memory disagrees with the adversary colouring")


@dataclass(frozen=True)
class Move:
    kind: str  # "query" or "forget"
    vertex: int

    def to_json(self) -> dict:
        return {"kind": self.kind, "vertex": self.vertex}


def peel_order(G: Graph, region) -> list | None:
    """Repeatedly remove a vertex with at most two neighbours left in the
    region (smallest id first). None if the peeling gets stuck."""
    left = set(region)
    deg = {v: len(G.adj[v] & left) for v in left}
    order = []
    while left:
        cand = [v for v in left if deg[v] <= 2]
        if not cand:
            return None
        v = min(cand)
        left.discard(v)
        order.append(v)
        for x in G.adj[v]:
            if x in left:
                deg[x] -= 1
    return order


def extend_colouring(G: Graph, k: int, colouring: dict, target) -> dict | None:
    """Proper colouring of ``target`` agreeing with ``colouring`` on the
    common part; only new vertices receive colours."""
    base = {v: c for v, c in colouring.items() if v in target}
    region = [v for v in target if v not in base]
    order = peel_order(G, region)
    if order is not None:
        out = dict(base)
        ok = True
        for v in reversed(order):
            used = {out[x] for x in G.adj[v] if x in out}
            free = [c for c in range(1, k + 1) if c not in used]
            if not free:
                ok = False
                break
            out[v] = free[0]
        if ok:
            return out
    got = is_k_colourable(G, k, vertices=target, precoloured=base)
    return dict(got) if got is not None else None


def adversary_step(state: GameState, move: Move):
    """Apply a move; returns the colour answered to a query (None on forget)."""
    G, k = state.graph, state.k
    v = move.vertex
    if not 0 <= v < G.n:
        raise DomainError(f"vertex {v} out of range")
    state.round += 1
    if move.kind == "forget":
        state.memory.pop(v, None)
        if not state.degraded:
            W = state.closure()
            state.colouring = {u: c for u, c in state.colouring.items() if u in W}
        state.check()
        return None
    if move.kind != "query":
        raise DomainError(f"unknown move {move.kind!r}")
    if len(state.memory) >= state.w and v not in state.memory:
        raise DomainError("memory is full; forget before querying")
    target = resolution_closure(G, set(state.memory) | {v})
    if not state.degraded and v in state.colouring:
        answer = state.colouring[v]
        state.memory[v] = answer
        state.colouring = {u: c for u, c in state.colouring.items() if u in target}
        state.check()
        return answer
    ext = None
    if not state.degraded:
        ext = extend_colouring(G, k, state.colouring, target)
    if ext is None:
        # try a fresh colouring that keeps the prover's memory
        ext = extend_colouring(G, k, state.memory, target) if _proper(G, state.memory) else None
    if ext is not None:
        state.degraded = False
        state.colouring = ext
        state.memory[v] = ext[v]
        state.check()
        return ext[v]
    state.degraded = True
    state.colouring = {}
    used = {state.memory[x] for x in G.adj[v] if x in state.memory}
    free = [c for c in range(1, k + 1) if c not in used]
    answer = free[0] if free else 1
    state.memory[v] = answer
    return answer


def _proper(G: Graph, colouring: dict) -> bool:
    return all(colouring[u] != colouring[v] for u, v in G.edges_within(colouring))


def conflict(G: Graph, colouring: dict):
    """First monochromatic edge inside ``colouring``, or None."""
    for u, v in G.edges_within(colouring):
        if colouring[u] == colouring[v]:
            return (u, v)
    return None


# provers


def _random_move(state: GameState, rng) -> Move | None:
    G = state.graph
    mem = sorted(state.memory)
    can_query = len(mem) < state.w and len(mem) < G.n
    if not can_query and not mem:
        return None
    if can_query and (not mem or rng.random() < 0.5):
        free = [u for u in range(G.n) if u not in state.memory]
        return Move("query", free[int(rng.integers(len(free)))])
    return Move("forget", mem[int(rng.integers(len(mem)))])


def _greedy_move(state: GameState, rng) -> Move | None:
    G = state.graph
    mem = state.memory
    if len(mem) < state.w and len(mem) < G.n:
        free = [u for u in range(G.n) if u not in mem]
        v = max(free, key=lambda u: (len(G.adj[u] & mem.keys()), -u))
        return Move("query", v)
    if not mem:
        return None
    v = min(mem, key=lambda u: (len(G.adj[u] & mem.keys()), u))
    return Move("forget", v)


@dataclass
class Outcome:
    result: str  # "adversary-survived" or "prover-won"
    rounds: int
    witness: dict | None = None
    edge: tuple | None = None
    transcript: list = dc_field(default_factory=list, repr=False)

    def to_json(self) -> dict:
        out = {"result": self.result, "rounds": self.rounds}
        if self.witness is not None:
            out["witness"] = {str(v): c for v, c in sorted(self.witness.items())}
            out["edge"] = list(self.edge)
        return out

    def transcript_lines(self) -> str:
        return "".join(json.dumps(r, sort_keys=True) + "\n" for r in self.transcript)


def play(G: Graph, k: int, w: int, prover: str = "greedy-conflict", rounds: int = 10_000, seed: int = 0, transcript: bool = False) -> Outcome:
    if prover not in PROVERS:
        raise DomainError(f"prover must be one of {PROVERS}")
    if k < 1 or w < 0:
        raise DomainError("need k >= 1 and w >= 0")
    rng = rng_for(seed)
    state = GameState(G, k, w)
    pick = _random_move if prover == "random" else _greedy_move
    log = []
    for r in range(1, rounds + 1):
        move = pick(state, rng)
        if move is None:
            break
        answer = adversary_step(state, move)
        if transcript:
            log.append({"round": r, "move": move.to_json(), "response": answer, "closure_size": len(state.closure())})
        bad = conflict(G, state.memory)
        if bad is not None:
            witness = dict(state.memory)
            if conflict(G, witness) is None:
                raise InvariantViolation("winning witness is not improper")
            return Outcome("prover-won", r, witness, bad, log)
    return Outcome("adversary-survived", rounds, None, None, log)
