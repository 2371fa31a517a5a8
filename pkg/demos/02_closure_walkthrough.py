"""Closing a vertex set one hop at a time.

The closure of a set absorbs everything below it in the vertex order and
every short path (2, 3 or 4 edges) or small lasso that leaves the set and
comes back. The trace lists each such structure in the order it was
absorbed; the witness set is enough to regenerate the closure by taking
descendants once.
"""
from pclab import Graph, VertexOrder, closure, closure_with_witness, descendants, resolution_closure

# a 6-cycle with a pendant triangle hanging off vertex 3
G = Graph(9, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (3, 6), (6, 7), (7, 8), (8, 6)])
order = VertexOrder.from_sequence([0, 2, 4, 1, 3, 5, 6, 7, 8])

for U in ([1], [0, 3], [6]):
    trace = closure_with_witness(G, order, U)
    print(f"U = {U}")
    print("   descendants:", sorted(descendants(G, order, U)))
    for q in trace.steps:
        print(f"   absorb {q.kind} of length {q.length}: {q.vertices}")
    print("   closure:", sorted(trace.closure), " witness:", sorted(trace.witness))
    assert descendants(G, order, trace.witness) == trace.closure == closure(G, order, U)

# the resolution variant only absorbs vertices with two neighbours inside
print("resolution closure of {0, 2}:", sorted(resolution_closure(G, {0, 2})))
