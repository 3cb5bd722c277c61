"""Lower bounds and closed-form constructions.

The clique-cover route: a cover of the edges of G by cc(G) cliques yields
an integer matrix of rank at most cc(G) whose graph is exactly G (the sum
of outer products of clique indicator vectors), so the maximum nullity over
matrices with one shared off-diagonal weak sign is at least n - cc(G).
Explicit signed forcing sets for line graphs of cliques and for Cartesian
products provide matching upper bounds on hypercubes and L(K_n).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .bitset import bit, bits, iter_bits, mask_of
from .exact import ExactMatrix
from .graphs import Graph, complete_graph, line_graph


@dataclass(frozen=True)
class CliqueCover:
    """Cliques (as vertex bitmasks) covering every edge of some graph."""

    cliques: tuple[int, ...]


def is_valid_cover(g: Graph, cover: CliqueCover) -> bool:
    for c in cover.cliques:
        for u in iter_bits(c):
            if (c & ~bit(u)) & ~g.adj[u]:
                return False  # not a clique
    covered = [0] * g.n
    for c in cover.cliques:
        for u in iter_bits(c):
            covered[u] |= c & ~bit(u)
    return all(covered[u] & g.adj[u] == g.adj[u] for u in range(g.n))


def maximal_cliques(g: Graph) -> list[int]:
    """All maximal cliques as bitmasks (Bron-Kerbosch with pivoting)."""
    out: list[int] = []

    def expand(r: int, p: int, x: int) -> None:
        if not p and not x:
            out.append(r)
            return
        pivot_pool = p | x
        pivot = max(iter_bits(pivot_pool), key=lambda u: (g.adj[u] & p).bit_count())
        for v in bits(p & ~g.adj[pivot]):
            vb = bit(v)
            expand(r | vb, p & g.adj[v], x & g.adj[v])
            p &= ~vb
            x |= vb

    if g.n:
        expand(0, (1 << g.n) - 1, 0)
    return out


def _greedy_packing_bound(g: Graph, uncovered_edges: list[tuple[int, int]]) -> int:
    """Edges no clique can share are a packing: each needs its own clique."""
    packing: list[tuple[int, int]] = []
    for e in uncovered_edges:
        eu, ev = e
        emask = bit(eu) | bit(ev)
        ok = True
        for f in packing:
            union = emask | bit(f[0]) | bit(f[1])
            if all((union & ~bit(u)) & ~g.adj[u] == 0 for u in iter_bits(union)):
                ok = False  # e and f fit in one clique
                break
        if ok:
            packing.append(e)
    return len(packing)


def clique_cover_number(g: Graph) -> tuple[int, CliqueCover]:
    """Exact minimum clique cover of the edges (branch and bound over
    maximal cliques; an edgeless graph has the empty cover)."""
    edges = g.edges()
    if not edges:
        return 0, CliqueCover(())
    cliques = [c for c in maximal_cliques(g) if c.bit_count() >= 2]
    edge_index = {e: i for i, e in enumerate(edges)}
    m = len(edges)
    clique_edges = []
    for c in cliques:
        em = 0
        vs = bits(c)
        for a in range(len(vs)):
            for b in range(a + 1, len(vs)):
                em |= 1 << edge_index[(vs[a], vs[b])]
        clique_edges.append(em)
    edge_cliques: list[list[int]] = [[] for _ in range(m)]
    for ci, em in enumerate(clique_edges):
        for e in iter_bits(em):
            edge_cliques[e].append(ci)

    # greedy initial solution: repeatedly take the clique covering the most
    best: list[int] = []
    uncovered = (1 << m) - 1
    while uncovered:
        ci = max(range(len(cliques)), key=lambda i: (clique_edges[i] & uncovered).bit_count())
        best.append(ci)
        uncovered &= ~clique_edges[ci]
    best_size = len(best)
    best_sol = list(best)

    def lower_bound(uncovered_mask: int) -> int:
        rem = [edges[e] for e in iter_bits(uncovered_mask)]
        return _greedy_packing_bound(g, rem)

    def search(uncovered_mask: int, chosen: list[int]) -> None:
        nonlocal best_size, best_sol
        if not uncovered_mask:
            if len(chosen) < best_size:
                best_size = len(chosen)
                best_sol = list(chosen)
            return
        if len(chosen) + lower_bound(uncovered_mask) >= best_size:
            return
        e = min(iter_bits(uncovered_mask), key=lambda i: len(edge_cliques[i]))
        for ci in edge_cliques[e]:
            chosen.append(ci)
            search(uncovered_mask & ~clique_edges[ci], chosen)
            chosen.pop()

    search((1 << m) - 1, [])
    return best_size, CliqueCover(tuple(cliques[ci] for ci in best_sol))


def greedy_clique_cover(g: Graph) -> CliqueCover:
    """Fast valid (not necessarily minimum) cover; used for large instances."""
    edges = g.edges()
    if not edges:
        return CliqueCover(())
    cliques = maximal_cliques(g)
    chosen = []
    uncovered = set(edges)
    while uncovered:
        def gain(c: int) -> int:
            return sum(1 for u, v in uncovered if c & bit(u) and c & bit(v))

        c = max(cliques, key=gain)
        chosen.append(c)
        uncovered = {e for e in uncovered if not (c & bit(e[0]) and c & bit(e[1]))}
    return CliqueCover(tuple(chosen))


def cc_nullity_lower_bound(g: Graph) -> int:
    """n - cc(G): a lower bound on the maximum nullity over matrices whose
    graph is G and whose nonzero off-diagonal entries share a weak sign."""
    cc, _ = clique_cover_number(g)
    return g.n - cc


def witness_matrix(g: Graph, cover: CliqueCover) -> ExactMatrix:
    """Sum of indicator outer products over the cover's cliques.

    The result is an entrywise nonnegative integer matrix whose graph is
    exactly ``g`` and whose rank is at most the number of cliques; its
    negation realizes the z-pattern of ``g``.  An empty cover (edgeless
    graph) yields the zero matrix.
    """
    if not is_valid_cover(g, cover):
        raise ValueError("cover is not a valid clique cover of the graph")
    a = [[0] * g.n for _ in range(g.n)]
    for c in cover.cliques:
        vs = bits(c)
        for u in vs:
            for v in vs:
                a[u][v] += 1
    return ExactMatrix.from_rows(a)


def lkn_forcing_set(n: int) -> int:
    """The explicit signed forcing set for the line graph of K_n.

    With line-graph vertices labelled by the pairs (i, j), 1 <= i < j <= n,
    in lexicographic order, the set is the complement of the n pairs
    {(i, n) : i <= n-3} and {(n-2, n-1), (n-2, n), (n-1, n)}; its size is
    C(n, 2) - n.  The set forces for n >= 6 (n = 4, 5 are allowed for
    experiments but carry no guarantee).
    """
    if n < 4:
        raise ValueError("needs n >= 4")
    _, labels = line_graph(complete_graph(n))
    index = {pair: k for k, pair in enumerate(labels)}
    removed = {(i - 1, n - 1) for i in range(1, n - 2)}
    removed |= {(n - 3, n - 2), (n - 3, n - 1), (n - 2, n - 1)}
    s = 0
    for pair, k in index.items():
        if pair not in removed:
            s |= bit(k)
    assert s.bit_count() == comb(n, 2) - n
    return s


def product_forcing_set(s_g: int, g: Graph, h: Graph) -> int:
    """Copy a forcing set of ``g`` into every fiber of the Cartesian product
    (row-major labelling (u, v) -> u*|V(h)| + v)."""
    out = 0
    for u in iter_bits(s_g):
        for v in range(h.n):
            out |= bit(u * h.n + v)
    return out


def known_formulas(family: str, k: int) -> int:
    """Published closed forms used as cross-checks.

    ``line_of_complete``: Z(L(K_n)) = C(n,2) - (n-2) for n >= 4.
    ``hypercube``:        Z(Q_d) = 2^(d-1) for d >= 1.
    """
    if family == "line_of_complete":
        if k < 4:
            raise ValueError("closed form holds for n >= 4")
        return comb(k, 2) - (k - 2)
    if family == "hypercube":
        if k < 1:
            raise ValueError("closed form holds for d >= 1")
        return 1 << (k - 1)
    raise ValueError(f"unknown formula family {family!r}")


def matrix_graph(a: ExactMatrix) -> Graph:
    """Graph of a square matrix: u ~ v iff the (u, v) entry is nonzero
    (diagonal ignored); requires a symmetric nonzero pattern."""
    if a.rows != a.cols:
        raise ValueError("graph of a matrix needs a square matrix")
    n = a.rows
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if (a.entries[u][v] != 0) != (a.entries[v][u] != 0):
                raise ValueError("nonzero pattern is not symmetric")
            if a.entries[u][v] != 0:
                edges.append((u, v))
    return Graph.from_edges(n, edges)


__all__ = [
    "CliqueCover",
    "is_valid_cover",
    "maximal_cliques",
    "clique_cover_number",
    "greedy_clique_cover",
    "cc_nullity_lower_bound",
    "witness_matrix",
    "lkn_forcing_set",
    "product_forcing_set",
    "known_formulas",
    "matrix_graph",
]
