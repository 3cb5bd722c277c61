"""Independent reference implementations and corpus utilities for tests.

Everything here deliberately avoids the package's own code paths so that
cross-checks are genuine: a string-based graph6 decoder, Fraction row
reduction, minor-expansion rank, and the networkx atlas as catalogue source.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from random import Random

from szf.engine import GameState, Transcript, applicable_instances, apply_instance
from szf.graphs import Graph


def reference_parse_graph6(record: str) -> tuple[int, list[tuple[int, int]]]:
    """Independent graph6 decoder via explicit bit strings."""
    n = ord(record[0]) - 63
    stream = "".join(format(ord(c) - 63, "06b") for c in record[1:])
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if stream[k] == "1":
                edges.append((i, j))
            k += 1
    return n, edges


def rref_rank(rows) -> int:
    """Plain Fraction Gauss-Jordan rank, independent of Bareiss elimination."""
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return 0
    n_rows, n_cols = len(m), len(m[0])
    rank = 0
    for c in range(n_cols):
        piv = next((r for r in range(rank, n_rows) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = Fraction(1) / m[rank][c]
        m[rank] = [x * inv for x in m[rank]]
        for r in range(n_rows):
            if r != rank and m[r][c] != 0:
                f = m[r][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def laplace_det(rows) -> Fraction:
    """Determinant by first-row Laplace expansion (small matrices only)."""
    n = len(rows)
    if n == 1:
        return Fraction(rows[0][0])
    total = Fraction(0)
    for j in range(n):
        if rows[0][j] == 0:
            continue
        minor = [[rows[i][k] for k in range(n) if k != j] for i in range(1, n)]
        total += (-1) ** j * Fraction(rows[0][j]) * laplace_det(minor)
    return total


def minor_expansion_rank(rows) -> int:
    """Largest k with a nonzero k x k minor; usable up to about 5 x 5."""
    n_rows, n_cols = len(rows), len(rows[0])
    for k in range(min(n_rows, n_cols), 0, -1):
        for ri in combinations(range(n_rows), k):
            for ci in combinations(range(n_cols), k):
                sub = [[rows[i][j] for j in ci] for i in ri]
                if laplace_det(sub) != 0:
                    return k
    return 0


@lru_cache(maxsize=1)
def _atlas():
    from networkx.generators.atlas import graph_atlas_g

    return graph_atlas_g()


def atlas_graphs(n: int) -> list[Graph]:
    """All graphs on n vertices up to isomorphism (from the published atlas)."""
    out = []
    for nxg in _atlas():
        if nxg.number_of_nodes() == n:
            out.append(Graph.from_edges(n, list(nxg.edges())))
    return out


def gnp(n: int, p: float, rng: Random) -> Graph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


def greedy_play(pattern, initial: int, max_moves: int = 200) -> Transcript:
    """A deterministic (not necessarily winning) play: first applicable
    instance each step, preferring blackening clauses."""
    st = GameState.initial(initial)
    moves = []
    for _ in range(max_moves):
        if st.is_all_black(pattern.n):
            break
        insts = applicable_instances(pattern, st)
        if not insts:
            break
        inst = next((i for i in insts if i.clause in ("A", "B")), insts[0])
        st = apply_instance(pattern, st, inst)
        moves.append(inst)
    return Transcript(pattern.n, initial, moves)
