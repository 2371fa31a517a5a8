"""Descendants, hops, lassos and the closure operator on ordered graphs."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .graphs import Graph, VertexOrder


def descendants(G: Graph, order: VertexOrder, U: Iterable) -> frozenset:
    """Everything reachable from ``U`` along strictly rank-decreasing paths."""
    rank = order.rank
    seen = set(U)
    stack = list(seen)
    while stack:
        v = stack.pop()
        rv = rank[v]
        for w in G.adj[v]:
            if rank[w] < rv and w not in seen:
                seen.add(w)
                stack.append(w)
    return frozenset(seen)


@dataclass(frozen=True)
class HopOrLasso:
    """``kind`` is ``"hop"`` or ``"lasso"``; ``length`` counts edges.

    Hops list the walk from endpoint to endpoint (a cycle repeats its
    endpoint). A lasso lists ``(v1, v2, v3, v4, v2)``.
    """

    kind: str
    length: int
    vertices: tuple

    @property
    def vertex_set(self) -> frozenset:
        return frozenset(self.vertices)

    def is_valid(self, G: Graph, W) -> bool:
        W = set(W)
        vs = self.vertices
        if any(not G.has_edge(a, b) for a, b in zip(vs, vs[1:])):
            return False
        if self.kind == "hop":
            inner = vs[1:-1]
            return (
                self.length == len(vs) - 1
                and 2 <= self.length <= 4
                and vs[0] in W
                and vs[-1] in W
                and all(x not in W for x in inner)
                and len(set(inner)) == len(inner)
                and (vs[0] != vs[-1] or self.length >= 3)
            )
        if self.kind == "lasso":
            v1, v2, v3, v4, v5 = vs
            return v2 == v5 and len({v1, v2, v3, v4}) == 4 and v1 in W and not {v2, v3, v4} & W
        return False

    def to_json(self) -> dict:
        return {"kind": self.kind, "length": self.length, "vertices": list(self.vertices)}


def _attachments(G: Graph, W: frozenset) -> dict:
    """Outside vertices adjacent to W, mapped to their sorted W-neighbours."""
    out = {}
    for v in W:
        for x in G.adj[v]:
            if x not in W:
                out.setdefault(x, []).append(v)
    for x in out:
        out[x].sort()
    return out


def _hops_and_lassos(G: Graph, W: frozenset, first_only: bool):
    """Candidates in increasing (length, kind, vertex tuple) order per length class.

    With ``first_only`` the scan stops at the first non-empty class and
    returns its lexicographically smallest member.
    """
    att = _attachments(G, W)
    found = []

    # 2-hops: u - x - v
    two = []
    for x, A in att.items():
        for i in range(len(A)):
            for j in range(i + 1, len(A)):
                two.append(HopOrLasso("hop", 2, (A[i], x, A[j])))
    if two:
        if first_only:
            return [min(two, key=lambda q: q.vertices)]
        found.extend(two)

    # 3-hops: u - x - y - v (u may equal v)
    three = []
    for x, Ax in att.items():
        for y in G.adj[x]:
            if y in W or y == x:
                continue
            Ay = att.get(y)
            if not Ay:
                continue
            for u in Ax:
                for v in Ay:
                    three.append(HopOrLasso("hop", 3, (u, x, y, v)))
    if three:
        if first_only:
            return [min(three, key=lambda q: q.vertices)]
        found.extend(three)

    # 4-hops: u - x - z - y - v with x, y, z distinct outside W; lassos
    four = []
    for x, Ax in att.items():
        for z in G.adj[x]:
            if z in W:
                continue
            for y in G.adj[z]:
                if y in W or y == x:
                    continue
                Ay = att.get(y)
                if not Ay:
                    continue
                for u in Ax:
                    for v in Ay:
                        four.append(HopOrLasso("hop", 4, (u, x, z, y, v)))
    lassos = []
    for x, Ax in att.items():
        nx = [w for w in G.adj[x] if w not in W]
        for i in range(len(nx)):
            for j in range(len(nx)):
                a, b = nx[i], nx[j]
                if a != b and G.has_edge(a, b):
                    for u in Ax:
                        lassos.append(HopOrLasso("lasso", 4, (u, x, a, b, x)))
    if four or lassos:
        if first_only:
            if four:
                return [min(four, key=lambda q: q.vertices)]
            return [min(lassos, key=lambda q: q.vertices)]
        found.extend(four)
        found.extend(lassos)
    return found


def find_hop_or_lasso(G: Graph, W: Iterable) -> HopOrLasso | None:
    """The first 2-, 3-, 4-hop or lasso with respect to ``W``.

    Shorter hops come first, then 4-hops, then lassos; ties are broken by
    the lexicographically smallest vertex tuple.
    """
    got = _hops_and_lassos(G, frozenset(W), first_only=True)
    return got[0] if got else None


def is_closed(G: Graph, order: VertexOrder, W: Iterable) -> bool:
    W = frozenset(W)
    return descendants(G, order, W) == W and find_hop_or_lasso(G, W) is None


def closure(G: Graph, order: VertexOrder, U: Iterable) -> frozenset:
    """The unique minimal closed superset of ``U``.

    Every hop or lasso with respect to a set lies inside each closed
    superset of it, so all of them are added in one sweep.
    """
    W = descendants(G, order, U)
    while True:
        batch = _hops_and_lassos(G, W, first_only=False)
        if not batch:
            return W
        new = set(W)
        for q in batch:
            new.update(q.vertices)
        W = descendants(G, order, new)


@dataclass(frozen=True)
class ClosureTrace:
    closure: frozenset
    steps: tuple  # HopOrLasso per iteration
    witness: frozenset  # U plus the vertices each step adds beyond the current set

    def to_json(self) -> dict:
        return {
            "closure": sorted(self.closure),
            "steps": [q.to_json() for q in self.steps],
            "witness": sorted(self.witness),
        }


def closure_with_witness(G: Graph, order: VertexOrder, U: Iterable) -> ClosureTrace:
    """One-hop-at-a-time closure with its step list and witness set.

    The witness collects ``U`` and, for each step, the vertices of the hop
    or lasso that were not yet in the current set; its descendants are
    exactly the closure.
    """
    U = frozenset(U)
    W = descendants(G, order, U)
    Z = set(U)
    steps = []
    while True:
        q = find_hop_or_lasso(G, W)
        if q is None:
            break
        steps.append(q)
        Z.update(v for v in q.vertices if v not in W)
        W = descendants(G, order, W | q.vertex_set)
    return ClosureTrace(W, tuple(steps), frozenset(Z))


def resolution_closure(G: Graph, U: Iterable) -> frozenset:
    """Smallest superset of ``U`` in which every outside vertex has at most
    one neighbour inside (saturation: keep absorbing vertices with two)."""
    S = set(U)
    count = {}
    for v in S:
        for w in G.adj[v]:
            if w not in S:
                count[w] = count.get(w, 0) + 1
    stack = [w for w, c in count.items() if c >= 2]
    while stack:
        w = stack.pop()
        if w in S:
            continue
        S.add(w)
        for x in G.adj[w]:
            if x not in S:
                count[x] = count.get(x, 0) + 1
                if count[x] == 2:
                    stack.append(x)
    return frozenset(S)


def decreasing_path_bound(G: Graph, order: VertexOrder, avoid: Iterable = ()) -> int:
    """Number of vertices on a longest decreasing path in ``G - avoid``."""
    avoid = set(avoid)
    best = {}
    for v in order.sequence:  # increasing rank: lower neighbours already done
        if v in avoid:
            continue
        best[v] = 1 + max((best[w] for w in G.adj[v] if w in best and order.rank[w] < order.rank[v]), default=0)
    return max(best.values(), default=0)
