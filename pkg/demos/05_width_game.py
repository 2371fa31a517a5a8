"""The width game on a sparse cubic graph and on K5.

The prover may remember four coloured vertices at a time. On a sparse
cubic graph the adversary keeps a proper colouring of everything the
prover could reason about and survives; on K5 with four colours the
greedy prover corners it within five rounds.
"""
from fractions import Fraction

from pclab import Graph, check_sparsity, sample_regular
from pclab.resgame import play

G = sample_regular(20, 3, seed=0)
print("cubic graph on 20 vertices, (16, 9/20)-sparse:", check_sparsity(G, 16, Fraction(9, 20)).sparse)
for prover in ("random", "greedy-conflict"):
    out = play(G, k=4, w=4, prover=prover, rounds=10_000, seed=1)
    print(f"   {prover:16s} {out.result} after {out.rounds} rounds")

out = play(Graph.complete(5), k=4, w=5, prover="greedy-conflict", rounds=100, seed=0, transcript=True)
print("K5 with four colours:", out.result, "in round", out.rounds)
for row in out.transcript:
    print("   round", row["round"], row["move"]["kind"], row["move"]["vertex"], "->", row["response"])
print("   clash on edge", out.edge, "with memory", out.witness)
