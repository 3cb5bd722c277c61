"""Simple undirected graphs on at most 64 vertices.

Vertices are 0-based integers internally; every user-facing surface (CLI,
file formats, printed sets) is 1-based.  Adjacency is stored as one integer
bitmask per vertex, which keeps game-state hashing and neighbourhood
arithmetic cheap.
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass
from itertools import permutations

from .bitset import bit, bits, iter_bits, mask_of

MAX_VERTICES = 64


class Graph6Error(ValueError):
    """Malformed graph6 input; carries the offending byte offset."""

    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)
        self.offset = offset


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph: vertex count plus one adjacency bitmask per vertex."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 0 or self.n > MAX_VERTICES:
            raise ValueError(f"vertex count {self.n} outside supported range 0..{MAX_VERTICES}")
        if len(self.adj) != self.n:
            raise ValueError("adjacency table length does not match vertex count")
        full = (1 << self.n) - 1
        for u, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"vertex {u} adjacent to out-of-range vertex")
            if row & bit(u):
                raise ValueError(f"self-loop at vertex {u}")
        for u in range(self.n):
            for v in iter_bits(self.adj[u]):
                if not self.adj[v] & bit(u):
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            adj[u] |= bit(v)
            adj[v] |= bit(u)
        return cls(n, tuple(adj))

    def neighbors(self, u: int) -> int:
        return self.adj[u]

    def degree(self, u: int) -> int:
        return self.adj[u].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u in range(self.n):
            for v in iter_bits(self.adj[u]):
                if u < v:
                    out.append((u, v))
        return out

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] & bit(v))

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            for u in iter_bits(frontier):
                nxt |= self.adj[u]
            frontier = nxt & ~seen
            seen |= frontier
        return seen == (1 << self.n) - 1


# ---------------------------------------------------------------------------
# graph6 codec (McKay's format, short form, n <= 62)
# ---------------------------------------------------------------------------

_G6_HEADER = ">>graph6<<"


def parse_graph6(record: str | bytes) -> Graph:
    """Decode one graph6 record.

    Accepts the optional ``>>graph6<<`` prefix.  Only the short form
    (n <= 62) is supported; the long form is rejected with a clear error.
    """
    if isinstance(record, bytes):
        text = record.decode("ascii", errors="replace")
    else:
        text = record
    text = text.strip()
    if text.startswith(_G6_HEADER):
        text = text[len(_G6_HEADER):]
    if not text:
        raise Graph6Error("empty graph6 record")
    first = ord(text[0])
    if first == 126:
        raise Graph6Error("long-form graph6 records (n >= 63) are not supported", 0)
    if not 63 <= first <= 125:
        raise Graph6Error(f"header byte {first} outside graph6 range", 0)
    n = first - 63
    need_bits = n * (n - 1) // 2
    need_bytes = (need_bits + 5) // 6
    body = text[1:]
    if len(body) < need_bytes:
        raise Graph6Error(f"record too short: expected {need_bytes} body bytes, got {len(body)}", len(text))
    if len(body) > need_bytes:
        raise Graph6Error(f"record too long: {len(body) - need_bytes} trailing bytes", 1 + need_bytes)
    adj = [0] * n
    k = 0  # bit cursor over the column-major upper triangle
    pairs = [(i, j) for j in range(1, n) for i in range(j)]
    for idx, ch in enumerate(body):
        val = ord(ch) - 63
        if not 0 <= val <= 63:
            raise Graph6Error(f"body byte {ord(ch)} outside graph6 range", 1 + idx)
        for b in range(5, -1, -1):
            on = (val >> b) & 1
            if k < need_bits:
                if on:
                    i, j = pairs[k]
                    adj[i] |= bit(j)
                    adj[j] |= bit(i)
            elif on:
                raise Graph6Error("nonzero padding bit after edge data", 1 + idx)
            k += 1
    return Graph(n, tuple(adj))


def serialize_graph6(g: Graph) -> str:
    if g.n > 62:
        raise Graph6Error(f"short-form graph6 supports n <= 62, got {g.n}")
    out = [chr(63 + g.n)]
    acc = 0
    count = 0
    for j in range(1, g.n):
        for i in range(j):
            acc = (acc << 1) | (1 if g.has_edge(i, j) else 0)
            count += 1
            if count == 6:
                out.append(chr(63 + acc))
                acc = 0
                count = 0
    if count:
        acc <<= 6 - count
        out.append(chr(63 + acc))
    return "".join(out)


def read_graph6_lines(text: str):
    """Yield (line_number, record) for non-empty lines of a graph6 stream."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line:
            yield lineno, line


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------


def complete_graph(n: int) -> Graph:
    if n < 1:
        raise ValueError("complete graph needs n >= 1")
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~bit(u) for u in range(n)))


def hypercube(d: int) -> Graph:
    """Hypercube Q_d: vertex v is its binary code, adjacency = one differing bit."""
    if d < 0:
        raise ValueError("dimension must be >= 0")
    n = 1 << d
    if n > MAX_VERTICES:
        raise ValueError(f"hypercube of dimension {d} exceeds the {MAX_VERTICES}-vertex bitset cap")
    adj = []
    for v in range(n):
        row = 0
        for b in range(d):
            row |= bit(v ^ (1 << b))
        adj.append(row)
    return Graph(n, tuple(adj))


def line_graph(g: Graph) -> tuple[Graph, tuple[tuple[int, int], ...]]:
    """Line graph of ``g`` plus the vertex labelling map.

    Output vertex k corresponds to ``labels[k]``, the k-th edge of ``g`` in
    lexicographic (min, max) order.  Two output vertices are adjacent iff the
    edges share an endpoint.  An edgeless input yields the empty graph on 0
    vertices (the only place an empty graph arises).
    """
    labels = tuple(g.edges())
    m = len(labels)
    if m > MAX_VERTICES:
        raise ValueError(f"line graph would have {m} > {MAX_VERTICES} vertices")
    adj = [0] * m
    for a in range(m):
        ia, ja = labels[a]
        for b in range(a + 1, m):
            ib, jb = labels[b]
            if ia in (ib, jb) or ja in (ib, jb):
                adj[a] |= bit(b)
                adj[b] |= bit(a)
    return Graph(m, tuple(adj)), labels


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """Cartesian product with row-major vertex order: (u, v) -> u*|V(h)| + v."""
    if g.n == 0 or h.n == 0:
        raise ValueError("cartesian product needs nonempty factors")
    n = g.n * h.n
    if n > MAX_VERTICES:
        raise ValueError(f"product on {n} vertices exceeds the {MAX_VERTICES}-vertex cap")
    adj = [0] * n
    for u in range(g.n):
        for v in range(h.n):
            idx = u * h.n + v
            row = 0
            for v2 in iter_bits(h.adj[v]):
                row |= bit(u * h.n + v2)
            for u2 in iter_bits(g.adj[u]):
                row |= bit(u2 * h.n + v)
            adj[idx] = row
    return Graph(n, tuple(adj))


def random_tree(n: int, seed: int) -> Graph:
    """Uniform random labelled tree via Pruefer-sequence decoding; deterministic per seed."""
    if n < 1:
        raise ValueError("tree needs n >= 1")
    if n == 1:
        return Graph(1, (0,))
    if n == 2:
        return Graph.from_edges(2, [(0, 1)])
    rng = random.Random(seed)
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = []
    leaf_heap = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaf_heap)
    for v in seq:
        u = heapq.heappop(leaf_heap)
        edges.append((u, v))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(leaf_heap, v)
    u = heapq.heappop(leaf_heap)
    v = heapq.heappop(leaf_heap)
    edges.append((u, v))
    return Graph.from_edges(n, edges)


# ---------------------------------------------------------------------------
# Small-scale isomorphism (degree-refined brute force; used by tests and scan)
# ---------------------------------------------------------------------------


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.edge_count != h.edge_count:
        return False
    if sorted(map(g.degree, range(g.n))) != sorted(map(h.degree, range(h.n))):
        return False
    if g.n > 8:
        raise ValueError("brute-force isomorphism supported only for n <= 8")
    g_edges = {frozenset(e) for e in g.edges()}
    for perm in permutations(range(h.n)):
        if sum(1 for u, v in h.edges() if frozenset((perm[u], perm[v])) in g_edges) == len(g_edges):
            return True
    return False


def validate(g: Graph) -> None:
    """Re-run the structural invariants (symmetry, irreflexivity, range)."""
    Graph(g.n, g.adj)


__all__ = [
    "Graph",
    "Graph6Error",
    "MAX_VERTICES",
    "parse_graph6",
    "serialize_graph6",
    "read_graph6_lines",
    "complete_graph",
    "hypercube",
    "line_graph",
    "cartesian_product",
    "random_tree",
    "is_isomorphic",
    "validate",
    "bits",
    "mask_of",
]
