"""Brute-force reference implementations used only by the tests.

Each oracle recomputes a quantity from definitions, with no shared code
path beyond the basic data types: cube enumeration, dense linear algebra,
subset enumeration.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product

from pclab.algebra import Polynomial


# --- points and vanishing -----------------------------------------------------


def cube_points(variables):
    for bits in product((0, 1), repeat=len(variables)):
        yield dict(zip(variables, bits))


def eval_poly(p: Polynomial, point: dict):
    F = p.field
    total = F.zero
    for m, c in p.terms.items():
        if all(point[v] for v in m):
            total = F.add(total, c)
    return total


def common_zeros(polys, variables):
    return [pt for pt in cube_points(variables) if all(not eval_poly(g, pt) for g in polys)]


def vanishes_on_zeros(g: Polynomial, polys, variables) -> bool:
    """Membership in the ideal plus all x^2 - x (the Boolean ideal is radical)."""
    return all(not eval_poly(g, pt) for pt in common_zeros(polys, variables))


# --- dense linear algebra over GF(p) or Q --------------------------------------


def rref(rows, F):
    """Row echelon form with pivots (list of lists of field elements)."""
    rows = [list(r) for r in rows]
    piv = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        sel = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        inv = F.inv(rows[r][c])
        rows[r] = [F.mul(inv, a) for a in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(rows[i], rows[r])]
        piv.append(c)
        r += 1
    return rows[:r], piv


def normal_form_oracle(g: Polynomial, polys, variables, order):
    """Normal form via interpolation on the common zeros.

    Standard monomials are found greedily from the smallest monomial up:
    a monomial is standard iff its value vector on the zero set is
    independent of all smaller monomials' vectors. The normal form is the
    unique combination of standard monomials that agrees with ``g`` there.
    """
    F = g.field
    pts = common_zeros(polys, variables)
    if not pts:
        return Polynomial.zero(F)
    monos = [frozenset(c) for d in range(len(variables) + 1) for c in combinations(variables, d)]
    monos.sort(key=order.key)
    standard = []
    basis_rows = []  # current vectors of standard monomials
    for m in monos:
        vec = [F.one if all(pt[v] for v in m) else F.zero for pt in pts]
        trial = basis_rows + [vec]
        _, piv = rref(trial, F)
        if len(piv) == len(trial):
            standard.append(m)
            basis_rows.append(vec)
        if len(standard) == len(pts):
            break
    target = [eval_poly(g, pt) for pt in pts]
    # solve sum a_i vec_i = target: augmented system transposed
    nrow = len(pts)
    aug = [[basis_rows[j][i] for j in range(len(standard))] + [target[i]] for i in range(nrow)]
    red, piv = rref(aug, F)
    coeffs = [F.zero] * len(standard)
    for row, c in zip(red, piv):
        coeffs[c] = row[-1]
    return Polynomial(F, {m: a for m, a in zip(standard, coeffs) if a})


# --- polynomial calculus span ---------------------------------------------------


def pc_span_refutes(polys, variables, D, F) -> bool:
    """Degree-D PC derivability of 1, by dense saturation.

    Repeatedly: put all derived polynomials into reduced echelon form with
    columns ordered by decreasing degree, take every row whose leading
    column has degree <= D - 1 (these rows span the derived polynomials of
    degree <= D - 1), multiply by every variable, until nothing new.
    """
    monos = [frozenset(c) for d in range(D, -1, -1) for c in combinations(variables, d)]
    col = {m: i for i, m in enumerate(monos)}

    def vec(p):
        v = [F.zero] * len(monos)
        for m, c in p.terms.items():
            v[col[m]] = c
        return v

    rows = [vec(p) for p in polys if p.degree <= D and not p.is_zero()]
    if not rows:
        return False
    one = len(monos) - 1  # the constant monomial is the last column
    red, piv = rref(rows, F)
    while True:
        if one in piv:
            return True
        new = list(red)
        for row, c in zip(red, piv):
            if len(monos[c]) <= D - 1:
                p = Polynomial(F, {monos[i]: a for i, a in enumerate(row) if a})
                for x in variables:
                    new.append(vec(p * Polynomial.var(F, x)))
        red2, piv2 = rref(new, F)
        if len(piv2) == len(piv):
            return one in piv2
        red, piv = red2, piv2


# --- graphs ------------------------------------------------------------------


def brute_colourable(n, edges, k, vertices=None):
    vs = list(range(n)) if vertices is None else sorted(vertices)
    es = [(u, v) for u, v in edges if u in set(vs) and v in set(vs)]
    pos = {v: i for i, v in enumerate(vs)}
    for cols in product(range(k), repeat=len(vs)):
        if all(cols[pos[u]] != cols[pos[v]] for u, v in es):
            return True
    return False


def brute_chromatic(n, edges):
    for k in range(0, n + 1):
        if brute_colourable(n, edges, k):
            return k
    return n


def brute_descendants(n, edges, rank, U):
    adj = {v: set() for v in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    out = set(U)
    changed = True
    while changed:
        changed = False
        for v in list(out):
            for w in adj[v]:
                if rank[w] < rank[v] and w not in out:
                    out.add(w)
                    changed = True
    return out


def brute_has_hop_or_lasso(n, edges, W) -> bool:
    adj = {v: set() for v in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    W = set(W)
    outside = [v for v in range(n) if v not in W]
    # hops: endpoints in W, 1..3 distinct interior vertices outside W
    for t in (1, 2, 3):
        for inner in _permutations(outside, t):
            if any(inner[i + 1] not in adj[inner[i]] for i in range(t - 1)):
                continue
            a = [w for w in adj[inner[0]] if w in W]
            b = [w for w in adj[inner[-1]] if w in W]
            for u in a:
                for v in b:
                    if u != v or t >= 2:
                        return True
    # lasso: v1 in W, v2 v3 v4 outside, v1-v2, v2-v3, v3-v4, v4-v2
    for v2, v3, v4 in _permutations(outside, 3):
        if v3 in adj[v2] and v4 in adj[v3] and v2 in adj[v4] and adj[v2] & W:
            return True
    return False


def _permutations(items, t):
    from itertools import permutations

    return permutations(items, t)


def brute_minimal_closed_supersets(n, edges, rank, U):
    U = set(U)
    rest = [v for v in range(n) if v not in U]
    closed = []
    for r in range(len(rest) + 1):
        for extra in combinations(rest, r):
            W = U | set(extra)
            if brute_descendants(n, edges, rank, W) == W and not brute_has_hop_or_lasso(n, edges, W):
                closed.append(frozenset(W))
    return [W for W in closed if not any(X < W for X in closed)]


def brute_resolution_closure(n, edges, U):
    adj = {v: set() for v in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    U = set(U)
    rest = [v for v in range(n) if v not in U]
    good = []
    for r in range(len(rest) + 1):
        for extra in combinations(rest, r):
            W = U | set(extra)
            if all(len(adj[v] & W) <= 1 for v in range(n) if v not in W):
                good.append(frozenset(W))
    return [W for W in good if not any(X < W for X in good)]


def brute_sparse(n, edges, ell, eps: Fraction) -> bool:
    for s in range(1, min(ell, n) + 1):
        for U in combinations(range(n), s):
            S = set(U)
            e = sum(1 for u, v in edges if u in S and v in S)
            if e > (1 + eps) * s:
                return False
    return True


def random_graph(rng, n, p):
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return edges


# --- random systems ------------------------------------------------------------


def random_poly(rng, F, variables, max_terms=4, max_deg=3):
    terms = {}
    for _ in range(int(rng.integers(1, max_terms + 1))):
        d = int(rng.integers(0, max_deg + 1))
        idx = rng.choice(len(variables), size=min(d, len(variables)), replace=False)
        m = frozenset(variables[i] for i in idx.tolist())
        if F.p is None:
            c = Fraction(int(rng.integers(-3, 4)), int(rng.integers(1, 3)))
        else:
            c = int(rng.integers(0, F.p))
        terms[m] = c
    return Polynomial(F, terms)


def random_system(rng, F, variables, ngens=None):
    """A few sparse generators; roughly half the systems have common roots."""
    ngens = ngens or int(rng.integers(1, 5))
    return [random_poly(rng, F, variables, 3, 2) for _ in range(ngens)]


def random_member(rng, F, variables, gens):
    """A random combination sum h_i g_i (lies in the ideal)."""
    out = Polynomial.zero(F)
    for g in gens:
        out = out + random_poly(rng, F, variables, 3, 2) * g
    return out


def planted_system(rng, F, variables, ngens=None):
    """Like :func:`random_system`, but every generator vanishes at a random
    cube point, so the system is consistent."""
    point = {v: int(rng.integers(0, 2)) for v in variables}
    out = []
    for g in random_system(rng, F, variables, ngens):
        shift = eval_poly(g, point)
        out.append(g - Polynomial.constant(F, shift))
    return [g for g in out if not g.is_zero()] or [Polynomial.zero(F)]
