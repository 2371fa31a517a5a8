"""Simple undirected graphs, vertex orders, random models, sparsity and
colouring searches."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Iterable, Mapping

import numpy as np

from .errors import DomainError, InvariantViolation, ResourceError


class Graph:
    """An immutable simple graph on vertices ``0..n-1``."""

    __slots__ = ("n", "edges", "adj")

    def __init__(self, n: int, edges: Iterable = ()):
        if n < 0:
            raise DomainError("vertex count must be non-negative")
        clean = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise DomainError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise DomainError(f"edge ({u}, {v}) outside 0..{n - 1}")
            clean.add((min(u, v), max(u, v)))
        self.n = n
        self.edges = tuple(sorted(clean))
        adj = [set() for _ in range(n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        self.adj = tuple(frozenset(a) for a in adj)

    # constructors -----------------------------------------------------
    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, combinations(range(n), 2))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def star(cls, leaves: int) -> "Graph":
        """``K_{1,leaves}`` with centre 0."""
        return cls(leaves + 1, [(0, i) for i in range(1, leaves + 1)])

    @classmethod
    def petersen(cls) -> "Graph":
        outer = [(i, (i + 1) % 5) for i in range(5)]
        spokes = [(i, i + 5) for i in range(5)]
        inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        return cls(10, outer + spokes + inner)

    # queries ----------------------------------------------------------
    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbours(self, v: int) -> frozenset:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def max_degree(self, within: Iterable | None = None) -> int:
        if within is None:
            return max((len(a) for a in self.adj), default=0)
        S = set(within)
        return max((len(self.adj[v] & S) for v in S), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def edges_within(self, U: Iterable) -> list:
        S = set(U)
        return [(u, v) for u, v in self.edges if u in S and v in S]

    def count_edges(self, U: Iterable) -> int:
        S = set(U)
        return sum(len(self.adj[v] & S) for v in S) // 2

    def neighbourhood(self, U: Iterable, within: Iterable | None = None) -> set:
        """``N(U)`` (vertices outside U adjacent to U), optionally restricted."""
        S = set(U)
        out = set()
        for v in S:
            out |= self.adj[v]
        out -= S
        if within is not None:
            out &= set(within)
        return out

    def components(self, U: Iterable | None = None) -> list:
        """Connected components of ``G[U]`` as sorted lists, ordered by minimum."""
        S = set(range(self.n)) if U is None else set(U)
        seen, out = set(), []
        for s in sorted(S):
            if s in seen:
                continue
            comp, stack = [], [s]
            seen.add(s)
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in self.adj[v]:
                    if w in S and w not in seen:
                        seen.add(w)
                        stack.append(w)
            out.append(sorted(comp))
        return out

    def induced(self, U: Iterable) -> tuple:
        """``(H, labels)``: ``G[U]`` relabelled to ``0..|U|-1``; ``labels[i]`` is the original id."""
        labels = sorted(set(U))
        pos = {v: i for i, v in enumerate(labels)}
        return Graph(len(labels), [(pos[u], pos[v]) for u, v in self.edges_within(labels)]), labels

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"

    # I/O --------------------------------------------------------------
    def to_text(self) -> str:
        lines = [f"{self.n} {self.m}"] + [f"{u} {v}" for u, v in self.edges]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Graph":
        rows = [ln.split() for ln in text.splitlines() if ln.strip()]
        if not rows or len(rows[0]) != 2:
            raise DomainError("graph header must be 'n m'")
        n, m = int(rows[0][0]), int(rows[0][1])
        body = rows[1:]
        if len(body) != m:
            raise DomainError(f"header announces {m} edges, found {len(body)}")
        g = cls(n, [(int(a), int(b)) for a, b in body])
        if g.m != m:
            raise DomainError("duplicate edges in graph file")
        return g

    def write(self, path) -> None:
        Path(path).write_text(self.to_text())

    @classmethod
    def read(cls, path) -> "Graph":
        return cls.from_text(Path(path).read_text())


class VertexOrder:
    """A linear order on ``0..n-1`` given by a rank bijection."""

    __slots__ = ("rank", "sequence")

    def __init__(self, rank: Iterable[int]):
        rank = tuple(int(r) for r in rank)
        if sorted(rank) != list(range(len(rank))):
            raise DomainError("ranks must form a permutation of 0..n-1")
        self.rank = rank
        seq = [0] * len(rank)
        for v, r in enumerate(rank):
            seq[r] = v
        self.sequence = tuple(seq)

    @classmethod
    def identity(cls, n: int) -> "VertexOrder":
        return cls(range(n))

    @classmethod
    def from_sequence(cls, seq: Iterable[int]) -> "VertexOrder":
        """Order in which ``seq[0]`` is smallest."""
        seq = list(seq)
        rank = [0] * len(seq)
        for r, v in enumerate(seq):
            rank[v] = r
        return cls(rank)

    def __len__(self):
        return len(self.rank)

    def before(self, u: int, v: int) -> bool:
        return self.rank[u] < self.rank[v]

    def monomial_order(self, k: int):
        from .algebra import MonomialOrder

        return MonomialOrder(dict(enumerate(self.rank)), k)

    def __eq__(self, other):
        return isinstance(other, VertexOrder) and self.rank == other.rank

    def __hash__(self):
        return hash(self.rank)

    def __repr__(self):
        return f"VertexOrder({list(self.sequence)})"

    def to_text(self) -> str:
        return "".join(f"{r}\n" for r in self.rank)

    @classmethod
    def from_text(cls, text: str) -> "VertexOrder":
        return cls(int(ln) for ln in text.split())

    def write(self, path) -> None:
        Path(path).write_text(self.to_text())

    @classmethod
    def read(cls, path) -> "VertexOrder":
        return cls.from_text(Path(path).read_text())


# ---------------------------------------------------------------------------
# random models


def rng_for(seed: int, trial: int = 0) -> np.random.Generator:
    """The single generator family used everywhere (PCG64, seed + trial)."""
    return np.random.default_rng(int(seed) + int(trial))


def sample_gnp(n: int, p: float, seed: int) -> Graph:
    if not 0 <= p <= 1:
        raise DomainError(f"edge probability {p} outside [0, 1]")
    rng = rng_for(seed)
    iu, ju = np.triu_indices(n, 1)
    keep = rng.random(iu.size) < p
    return Graph(n, zip(iu[keep].tolist(), ju[keep].tolist()))


def sample_regular(n: int, d: int, seed: int, max_attempts: int = 1_000_000) -> Graph:
    """Uniform d-regular graph: configuration model, rejecting non-simple pairings."""
    if d < 0 or (n > 0 and d >= n) or (n == 0 and d > 0):
        raise DomainError(f"need 0 <= d < n, got n={n}, d={d}")
    if (n * d) % 2:
        raise DomainError(f"n*d = {n * d} is odd")
    rng = rng_for(seed)
    stubs = np.repeat(np.arange(n), d)
    for _ in range(max_attempts):
        pairs = rng.permutation(stubs).reshape(-1, 2)
        a, b = pairs[:, 0], pairs[:, 1]
        if np.any(a == b):
            continue
        lo, hi = np.minimum(a, b), np.maximum(a, b)
        codes = lo.astype(np.int64) * n + hi
        if np.unique(codes).size != codes.size:
            continue
        g = Graph(n, zip(lo.tolist(), hi.tolist()))
        if any(len(x) != d for x in g.adj):
            raise InvariantViolation("configuration model produced a non-regular graph")
        return g
    raise ResourceError(f"no simple pairing within {max_attempts} attempts", bound=max_attempts)


# ---------------------------------------------------------------------------
# sparsity


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10**6)
    return Fraction(x)


@dataclass(frozen=True)
class SparsityReport:
    sparse: bool
    witness: tuple | None
    ell: int
    eps: Fraction
    mode: str
    examined: int

    def to_json(self) -> dict:
        return {
            "sparse": self.sparse,
            "witness": list(self.witness) if self.witness is not None else None,
            "ell": self.ell,
            "eps": str(self.eps),
            "mode": self.mode,
            "examined": self.examined,
        }


def violates(G: Graph, U: Iterable, eps) -> bool:
    U = set(U)
    return G.count_edges(U) > (1 + _as_fraction(eps)) * len(U)


def two_core(G: Graph) -> set:
    deg = [len(a) for a in G.adj]
    alive = set(range(G.n))
    stack = [v for v in alive if deg[v] <= 1]
    while stack:
        v = stack.pop()
        if v not in alive:
            continue
        alive.discard(v)
        for w in G.adj[v]:
            if w in alive:
                deg[w] -= 1
                if deg[w] <= 1:
                    stack.append(w)
    return alive


def check_sparsity(G: Graph, ell: int, eps, mode: str = "auto", budget: int = 20_000_000) -> SparsityReport:
    """Is every vertex set of size <= ell spanning at most (1+eps)|U| edges?

    ``exhaustive`` scans every subset (n <= 20). ``connected`` enumerates
    connected vertex sets inside the 2-core: an inclusion-minimal
    violating set is connected and has no vertex of degree <= 1, so it
    lies in the 2-core of G.
    """
    if ell < 1:
        raise DomainError("ell must be >= 1")
    eps = _as_fraction(eps)
    if mode == "auto":
        mode = "exhaustive" if G.n <= 20 else "connected"
    if mode == "exhaustive":
        if G.n > 20:
            raise ResourceError(f"exhaustive sparsity check limited to n <= 20 (n={G.n})", bound=20)
        witness, examined = _sparsity_exhaustive(G, ell, eps)
    elif mode == "connected":
        witness, examined = _sparsity_connected(G, ell, eps, budget)
    else:
        raise DomainError(f"unknown sparsity mode {mode!r}")
    if witness is not None:
        if not (len(witness) <= ell and violates(G, witness, eps)):
            raise InvariantViolation(f"sparsity witness {witness} does not re-verify")
    return SparsityReport(witness is None, witness, ell, eps, mode, examined)


def _sparsity_exhaustive(G: Graph, ell: int, eps: Fraction):
    n = G.n
    if n == 0:
        return None, 1
    adj = [sum(1 << w for w in G.adj[v]) for v in range(n)]
    e = np.zeros(1 << n, dtype=np.int32)
    for i in range(n):
        lo = np.arange(1 << i, dtype=np.int64)
        e[1 << i : 1 << (i + 1)] = e[: 1 << i] + np.bitwise_count(lo & adj[i]).astype(np.int32)
    masks = np.arange(1 << n, dtype=np.int64)
    size = np.bitwise_count(masks).astype(np.int64)
    num, den = eps.numerator, eps.denominator
    bad = (size <= ell) & (e.astype(np.int64) * den > (den + num) * size)
    hits = np.flatnonzero(bad)
    if hits.size == 0:
        return None, 1 << n
    best = min(hits.tolist(), key=lambda m: (m.bit_count(), m))
    return tuple(v for v in range(n) if best >> v & 1), 1 << n


def _sparsity_connected(G: Graph, ell: int, eps: Fraction, budget: int):
    core = two_core(G)
    adj = {v: G.adj[v] & core for v in core}
    examined = 0
    limit = 1 + eps
    # smallest violating set wins; search sizes in increasing order of the extension depth
    best = None
    for v in sorted(core):
        # ESU-style: connected sets whose minimum vertex is v
        stack = [((v,), frozenset(w for w in adj[v] if w > v), 0)]
        while stack:
            sub, ext, edges = stack.pop()
            examined += 1
            if examined > budget:
                raise ResourceError(f"connected-set enumeration exceeded {budget} sets", bound=budget)
            if edges > limit * len(sub):
                cand = tuple(sorted(sub))
                if best is None or (len(cand), cand) < (len(best), best):
                    best = cand
                continue
            if len(sub) == ell or (best is not None and len(sub) >= len(best)):
                continue
            subset = set(sub)
            nbhd = set()
            for u in sub:
                nbhd |= adj[u]
            ext = sorted(ext)
            for i, w in enumerate(ext):
                rest = set(ext[i + 1 :])
                new_ext = rest | {x for x in adj[w] if x > v and x not in subset and x not in nbhd}
                stack.append((sub + (w,), frozenset(new_ext), edges + len(adj[w] & subset)))
    return best, examined


# ---------------------------------------------------------------------------
# colouring


def is_proper(G: Graph, colouring: Mapping) -> bool:
    return all(colouring[u] != colouring[v] for u, v in G.edges if u in colouring and v in colouring)


def is_k_colourable(
    G: Graph,
    k: int,
    vertices: Iterable | None = None,
    precoloured: Mapping | None = None,
    budget: int = 5_000_000,
) -> dict | None:
    """A proper k-colouring of ``G[vertices]`` extending ``precoloured``, or None.

    Colours are ``1..k``. Exact DSatur-style backtracking, component by
    component; raises ResourceError once ``budget`` search nodes are used.
    """
    S = set(range(G.n)) if vertices is None else set(vertices)
    pre = dict(precoloured or {})
    for v, c in pre.items():
        if not 1 <= c <= k:
            raise DomainError(f"precoloured colour {c} outside 1..{k}")
    S |= set(pre)
    for u, v in G.edges_within(pre):
        if pre[u] == pre[v]:
            return None
    counter = [0]
    result = dict(pre)
    free = S - set(pre)
    for comp in G.components(free):
        got = _colour_component(G, k, comp, result, counter, budget, symmetric=not (G.neighbourhood(comp) & set(pre)))
        if got is None:
            return None
    return {v: result[v] for v in sorted(S)}


def _colour_component(G, k, comp, colouring, counter, budget, symmetric):
    comp_set = set(comp)
    order_key = {v: (-len(G.adj[v] & comp_set), v) for v in comp}

    def pick():
        best, best_key = None, None
        for v in comp:
            if v in colouring:
                continue
            used = {colouring[w] for w in G.adj[v] if w in colouring}
            key = (-len(used), order_key[v])
            if best_key is None or key < best_key:
                best, best_key = v, key
        return best

    assigned = []

    def rec(maxcol):
        counter[0] += 1
        if counter[0] > budget:
            raise ResourceError(f"colouring search exceeded {budget} nodes", bound=budget)
        v = pick()
        if v is None:
            return True
        used = {colouring[w] for w in G.adj[v] if w in colouring}
        top = min(k, maxcol + 1) if symmetric else k
        for c in range(1, top + 1):
            if c in used:
                continue
            colouring[v] = c
            if rec(max(maxcol, c)):
                return True
            del colouring[v]
        return False

    import sys

    limit = sys.getrecursionlimit()
    if len(comp) + 100 > limit:
        sys.setrecursionlimit(len(comp) + 200)
    try:
        return True if rec(0) else None
    finally:
        sys.setrecursionlimit(limit)


def chromatic_number(G: Graph, vertices: Iterable | None = None, budget: int = 5_000_000) -> tuple:
    """``(chi, colouring)`` for ``G[vertices]``; colouring uses colours 1..chi."""
    S = list(range(G.n)) if vertices is None else sorted(set(vertices))
    if not S:
        return 0, {}
    k = 1 if not G.edges_within(S) else 2
    while True:
        col = is_k_colourable(G, k, S, budget=budget)
        if col is not None:
            return k, col
        k += 1


def greedy_colouring(G: Graph, vertices: Iterable | None = None) -> dict:
    S = sorted(range(G.n) if vertices is None else set(vertices))
    S_set = set(S)
    out = {}
    for v in sorted(S, key=lambda v: (-len(G.adj[v] & S_set), v)):
        used = {out[w] for w in G.adj[v] if w in out}
        c = 1
        while c in used:
            c += 1
        out[v] = c
    return out


# ---------------------------------------------------------------------------
# contraction and high-degree cover


def contract(G: Graph, S: Iterable) -> tuple:
    """Contract the edges in ``S``.

    Returns ``(H, rep)``: ``H`` lives on the original ids (vertices merged
    away become isolated and are listed as absent in ``rep``), and ``rep``
    maps each vertex to the minimum id of its merged class. Use
    :func:`contracted_graph` for a compact relabelled copy.
    """
    S = [tuple(sorted(e)) for e in S]
    for u, v in S:
        if not G.has_edge(u, v):
            raise DomainError(f"({u}, {v}) is not an edge")
    parent = list(range(G.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in S:
        a, b = find(u), find(v)
        if a != b:
            parent[max(a, b)] = min(a, b)
    rep = {v: find(v) for v in range(G.n)}
    edges = {(min(rep[u], rep[v]), max(rep[u], rep[v])) for u, v in G.edges if rep[u] != rep[v]}
    return Graph(G.n, edges), rep


def contracted_graph(G: Graph, S: Iterable) -> tuple:
    """Compact version of :func:`contract`: ``(H, classes)`` where vertex i
    of ``H`` stands for the sorted merged class ``classes[i]``."""
    H, rep = contract(G, S)
    reps = sorted(set(rep.values()))
    pos = {r: i for i, r in enumerate(reps)}
    classes = [[] for _ in reps]
    for v in range(G.n):
        classes[pos[rep[v]]].append(v)
    return Graph(len(reps), [(pos[u], pos[v]) for u, v in H.edges]), classes


def high_degree_cover(G: Graph, delta: int) -> frozenset:
    """Scan vertices by id, deleting any whose current degree is >= delta.

    Afterwards the remaining graph has maximum degree <= delta - 1.
    """
    if delta < 1:
        raise DomainError("delta must be >= 1")
    deg = [len(a) for a in G.adj]
    removed = set()
    for v in range(G.n):
        if deg[v] >= delta:
            removed.add(v)
            for w in G.adj[v]:
                if w not in removed:
                    deg[w] -= 1
    rest = set(range(G.n)) - removed
    if G.max_degree(rest) > delta - 1:
        raise InvariantViolation("high-degree cover left a vertex of degree >= delta")
    return frozenset(removed)
