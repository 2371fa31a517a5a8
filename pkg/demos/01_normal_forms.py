"""Normal forms in the colouring ideal of a small graph.

Three colours on a path a - b - c. We compute a Groebner basis under the
order induced by the vertex ids and watch how products of colour
variables collapse.
"""
from pclab import Field, Graph, MonomialOrder, Polynomial, common_roots, encode_polynomials, groebner

F = Field.rationals()
G = Graph.path(3)
order = MonomialOrder.identity(G.n, 3)
inst = encode_polynomials(G, 3, F)
print(f"{len(inst.polynomials)} generators, {len(inst.boolean_axioms)} Boolean axioms")

gb = groebner(inst.polynomials, order, F)
print("leading monomials of the reduced basis:")
for m in gb.leading_monomials():
    print("   ", " * ".join(f"x[{v.vertex},{v.colour}]" for v in sorted(m)))


def x(v, c):
    return Polynomial.var(F, (v, c))


# the last colour of a vertex is never standard: it equals 1 minus the others
print("x[0,3]            ->", gb.reduce(x(0, 3)))
# neighbours never share a colour
print("x[0,1] * x[1,1]   ->", gb.reduce(x(0, 1) * x(1, 1)))
# the endpoints of the path are independent, so this product survives
print("x[0,1] * x[2,1]   ->", gb.reduce(x(0, 1) * x(2, 1)))

# the ideal is radical, so it is determined by its common roots: the proper colourings
roots = common_roots(inst.axioms)
print(f"{len(roots)} proper colourings (3 * 2 * 2)")
