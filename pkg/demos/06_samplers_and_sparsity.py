"""Random graphs and how sparse they are.

The lower-bound argument wants every small vertex set to span few edges.
Here we sample G(n, p) graphs at a few densities and count how many pass
a (12, 1/18) sparsity check, printing the smallest dense set when not.
"""
from fractions import Fraction

from pclab import check_sparsity, sample_gnp

n = 60
for d in (1.0, 1.5, 2.0, 3.0):
    passed = 0
    example = None
    for seed in range(20):
        G = sample_gnp(n, d / n, seed)
        rep = check_sparsity(G, 12, Fraction(1, 18), mode="connected")
        passed += rep.sparse
        if not rep.sparse and example is None:
            example = (seed, rep.witness, G.count_edges(rep.witness))
    print(f"average degree {d}: {passed}/20 sparse", end="")
    if example:
        seed, W, m = example
        print(f"; seed {seed} has {len(W)} vertices spanning {m} edges: {list(W)}")
    else:
        print()
