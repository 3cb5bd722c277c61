from random import Random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from szf.bitset import bits, mask_of, subsets_of_size
from szf.graphs import (
    Graph,
    Graph6Error,
    cartesian_product,
    complete_graph,
    hypercube,
    is_isomorphic,
    line_graph,
    parse_graph6,
    random_tree,
    serialize_graph6,
    validate,
)

from helpers import gnp, reference_parse_graph6


# --- graph6 codec ----------------------------------------------------------


def test_parse_k1():
    g = parse_graph6("@")
    assert g.n == 1 and g.edge_count == 0


def test_parse_k2():
    g = parse_graph6("A_")
    assert g.n == 2 and g.edges() == [(0, 1)]


def test_parse_accepts_header_and_bytes():
    assert parse_graph6(b">>graph6<<A_").edge_count == 1


@pytest.mark.parametrize(
    "record,fragment",
    [
        ("", "empty"),
        ("~??", "long-form"),
        ("A", "too short"),
        ("A_?", "too long"),
        ("AW", "padding"),  # K2 record with a stray padding bit
        (chr(20) + "_", "header"),
    ],
)
def test_parse_errors(record, fragment):
    with pytest.raises(Graph6Error) as err:
        parse_graph6(record)
    assert fragment in str(err.value)


def test_roundtrip_random_graphs():
    rng = Random(7)
    for _ in range(1000):
        g = gnp(rng.randint(1, 12), rng.random(), rng)
        assert parse_graph6(serialize_graph6(g)) == g


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 30), st.randoms(use_true_random=False))
def test_codec_against_networkx(n, rng):
    g = gnp(n, rng.random(), rng)
    record = serialize_graph6(g)
    # independent decoders agree with our encoder
    n_ref, edges_ref = reference_parse_graph6(record)
    assert n_ref == g.n and sorted(edges_ref) == g.edges()
    nxg = nx.from_graph6_bytes(record.encode())
    assert sorted(map(tuple, map(sorted, nxg.edges()))) == g.edges()
    # and our decoder agrees with networkx's encoder
    theirs = nx.to_graph6_bytes(nxg, header=False).strip().decode()
    assert parse_graph6(theirs) == g


# --- generators ------------------------------------------------------------


def test_complete_graph_sizes():
    assert complete_graph(1).edge_count == 0
    assert complete_graph(4).edge_count == 6
    assert complete_graph(6).edge_count == 15
    with pytest.raises(ValueError):
        complete_graph(0)


def test_hypercube_basics():
    assert hypercube(0) == complete_graph(1)
    q3 = hypercube(3)
    assert q3.n == 8 and q3.edge_count == 12
    q4 = hypercube(4)
    assert q4.n == 16 and q4.edge_count == 32
    assert all(q4.degree(v) == 4 for v in range(16))
    assert nx.is_bipartite(nx.Graph(q4.edges()))
    with pytest.raises(ValueError):
        hypercube(7)


def test_hypercube_is_product_with_k2():
    for d in range(1, 6):
        assert hypercube(d) == cartesian_product(hypercube(d - 1), complete_graph(2))


def test_line_graph_small():
    k3, labels = line_graph(complete_graph(3))
    assert is_isomorphic(k3, complete_graph(3))
    assert labels == ((0, 1), (0, 2), (1, 2))
    path3 = Graph.from_edges(3, [(0, 1), (1, 2)])
    lp, _ = line_graph(path3)
    assert lp == complete_graph(2)
    empty, labels = line_graph(Graph(3, (0, 0, 0)))
    assert empty.n == 0 and labels == ()


def test_line_graph_k4_is_octahedron(lk4):
    assert lk4.n == 6 and all(lk4.degree(v) == 4 for v in range(6))
    # complement is a perfect matching: each vertex misses exactly its mate
    assert lk4.edge_count == 12


def test_line_graph_of_clique_regularity():
    for n in range(2, 7):
        lg, labels = line_graph(complete_graph(n))
        assert lg.n == n * (n - 1) // 2
        assert len(labels) == lg.n
        assert all(lg.degree(v) == 2 * (n - 2) for v in range(lg.n))


def test_cartesian_product_small():
    c4 = cartesian_product(complete_graph(2), complete_graph(2))
    assert is_isomorphic(c4, Graph.from_edges(4, [(0, 1), (1, 3), (3, 2), (2, 0)]))
    assert cartesian_product(hypercube(2), complete_graph(2)) == hypercube(3)


def test_cartesian_product_edge_count_identity():
    rng = Random(11)
    for _ in range(25):
        g = gnp(rng.randint(1, 5), rng.random(), rng)
        h = gnp(rng.randint(1, 5), rng.random(), rng)
        prod = cartesian_product(g, h)
        assert prod.edge_count == g.n * h.edge_count + h.n * g.edge_count


def test_cartesian_product_cap():
    with pytest.raises(ValueError):
        cartesian_product(hypercube(6), complete_graph(2))


def test_random_tree():
    assert random_tree(1, 0) == complete_graph(1)
    assert random_tree(2, 0) == complete_graph(2)
    for seed in range(30):
        n = 3 + seed % 10
        t = random_tree(n, seed)
        assert t.edge_count == n - 1 and t.is_connected()
        assert t == random_tree(n, seed)  # deterministic per seed


# --- invariants ------------------------------------------------------------


def test_generated_graphs_validate():
    rng = Random(3)
    graphs = [complete_graph(5), hypercube(4), random_tree(9, 1),
              cartesian_product(complete_graph(3), complete_graph(2)),
              line_graph(complete_graph(5))[0]]
    graphs += [gnp(rng.randint(1, 10), rng.random(), rng) for _ in range(20)]
    for g in graphs:
        validate(g)


def test_graph_rejects_bad_structure():
    with pytest.raises(ValueError):
        Graph(2, (1, 0))  # self-loop at 0
    with pytest.raises(ValueError):
        Graph(2, (2, 0))  # asymmetric
    with pytest.raises(ValueError):
        Graph(1, (2,))  # out of range


def test_roundtrip_up_to_n30():
    rng = Random(23)
    for _ in range(50):
        g = gnp(rng.randint(13, 30), rng.random(), rng)
        assert parse_graph6(serialize_graph6(g)) == g


def test_subsets_of_size_is_colex():
    masks = list(subsets_of_size(5, 3))
    assert len(masks) == 10
    assert masks == sorted(masks)
    assert masks[0] == mask_of([0, 1, 2])
    assert all(m.bit_count() == 3 for m in masks)


def test_is_connected():
    assert complete_graph(4).is_connected()
    assert not Graph(3, (0, 0, 0)).is_connected()
    assert bits(hypercube(3).neighbors(0)) == (1, 2, 4)
