"""How much degree does it take to refute a colouring instance?

For each graph we search for the smallest degree at which polynomial
calculus derives 1 from the colouring axioms, then replay the recorded
derivation with an independent checker.
"""
from pclab import Field, Graph, encode_polynomials, min_refutation_degree, pc_degree_refutable, replay_certificate

wheel5 = Graph(6, [(i, (i + 1) % 5) for i in range(5)] + [(5, i) for i in range(5)])
cases = [
    ("triangle, 2 colours", Graph.complete(3), 2),
    ("5-cycle, 2 colours", Graph.cycle(5), 2),
    ("K4, 3 colours", Graph.complete(4), 3),
    ("5-wheel, 3 colours", wheel5, 3),
    ("Petersen, 3 colours", Graph.petersen(), 3),
]

for F in (Field.gf(2), Field.gf(3), Field.rationals()):
    print(f"over {F!r}")
    for name, G, k in cases:
        P = encode_polynomials(G, k, F).axioms
        d = min_refutation_degree(P, F, 4)
        if d is None:
            print(f"   {name:22s} no refutation up to degree 4 (the graph is {k}-colourable)")
            continue
        res = pc_degree_refutable(P, d, F)
        ok = replay_certificate(P, res.certificate, d, F)
        print(f"   {name:22s} degree {d}, certificate of {len(res.certificate)} lines, replay {'ok' if ok else 'FAILED'}")
