import json
from random import Random

import pytest

from szf.bitset import bit, bits, mask_of
from szf.engine import (
    GameState,
    RuleError,
    RuleInstance,
    Transcript,
    applicable_instances,
    apply_instance,
    classical_derived,
    eager_closure,
    signed_forces,
    verify_transcript,
)
from szf.graphs import Graph, complete_graph, hypercube
from szf.patterns import Sign, parse_pattern, z_pattern_of_graph

from helpers import atlas_graphs, gnp, greedy_play


def state(black=(), plus=(), minus=()):
    return GameState(mask_of(black), mask_of(plus), mask_of(minus))


# --- classical rule --------------------------------------------------------


def test_classical_path_endpoint_forces():
    path = Graph.from_edges(3, [(0, 1), (1, 2)])
    assert classical_derived(path, mask_of([0])) == mask_of([0, 1, 2])


def test_classical_q3_three_subsets_never_force(q3):
    from szf.bitset import subsets_of_size

    full = (1 << 8) - 1
    assert all(classical_derived(q3, s) != full for s in subsets_of_size(8, 3))


def test_classical_full_set_fixpoint(q3):
    full = (1 << 8) - 1
    assert classical_derived(q3, full) == full


def test_classical_order_independent():
    rng = Random(2)
    for _ in range(40):
        g = gnp(rng.randint(2, 9), rng.random(), rng)
        s = rng.getrandbits(g.n)
        base = classical_derived(g, s)
        for k in range(3):
            assert classical_derived(g, s, rng=Random(k)) == base


# --- applicable instances on the 4x4 hadamard pattern ----------------------


def test_instances_seeding_only(hadamard):
    insts = applicable_instances(hadamard, state(black=[0, 1]))
    assert all(i.clause == "D" for i in insts)
    assert {i.pivot for i in insts} == {2, 3}
    assert all(i.mark == (i.pivot, Sign.PLUS) for i in insts)


def test_instances_deduction_after_seed(hadamard):
    insts = applicable_instances(hadamard, state(black=[0, 1], plus=[2]))
    marks = {(i.pivot, i.mark) for i in insts if i.clause == "C"}
    # the pivot-2 derivation (white, minus diagonal) deduces vertex 3 is minus
    assert (2, (3, Sign.MINUS)) in marks
    # other pivots derive both weak signs for vertex 3; no seeding, no A/B
    assert {m for _, m in marks} == {(3, Sign.MINUS), (3, Sign.PLUS)}
    assert all(i.clause == "C" for i in insts)


def test_instances_blackening_when_fully_marked(hadamard):
    insts = applicable_instances(hadamard, state(black=[0, 1], plus=[2], minus=[3]))
    blackenings = {(i.pivot, i.blacken) for i in insts if i.clause == "B"}
    both = mask_of([2, 3])
    assert (1, both) in blackenings  # all-matching side at pivot 2
    assert (3, both) in blackenings  # all-opposite side at pivot 4
    assert not any(i.clause == "D" for i in insts)


def test_instances_require_fixed_periphery():
    p = parse_pattern("2\n??\n??\n")
    with pytest.raises(RuleError):
        applicable_instances(p, state())


def test_instance_singleton_forces_white_pivot():
    # a white vertex with a signed diagonal and no white in-neighbours
    # satisfies its own equation only at zero
    p = parse_pattern("1\n+\n")
    insts = applicable_instances(p, state())
    assert any(i.clause == "A" and i.blacken == bit(0) for i in insts)


# --- apply_instance --------------------------------------------------------


def test_apply_blacken_finishes_hadamard(hadamard):
    st = state(black=[0, 1], plus=[2], minus=[3])
    inst = next(i for i in applicable_instances(hadamard, st) if i.clause == "B")
    nxt = apply_instance(hadamard, st, inst)
    assert nxt.is_all_black(4)
    assert nxt.markers() == {}


def test_apply_mark(hadamard):
    st = state(black=[0, 1])
    inst = next(i for i in applicable_instances(hadamard, st) if i.clause == "D")
    nxt = apply_instance(hadamard, st, inst)
    assert nxt.markers() == {inst.pivot: Sign.PLUS}


def test_apply_blacken_erases_marker(hadamard):
    st = state(black=[0, 1], plus=[2], minus=[3])
    inst = next(i for i in applicable_instances(hadamard, st) if i.clause == "B")
    assert apply_instance(hadamard, st, inst).marked == 0


def test_apply_rejects_inapplicable(hadamard):
    st = state(black=[0, 1], plus=[2])
    with pytest.raises(RuleError):
        # seeding is illegal while a marker exists
        apply_instance(hadamard, st, RuleInstance("D", 3, mark=(3, Sign.PLUS)))


# --- eager closure ---------------------------------------------------------


def test_closure_contains_classical_derived():
    rng = Random(4)
    for _ in range(40):
        g = gnp(rng.randint(1, 8), rng.random(), rng)
        p = z_pattern_of_graph(g)
        s = rng.getrandbits(g.n)
        closed = eager_closure(p, GameState.initial(s))
        derived = classical_derived(g, s)
        assert closed.black & derived == derived


def test_closure_finishes_marked_hadamard(hadamard):
    closed = eager_closure(hadamard, state(black=[0, 1], plus=[2], minus=[3]))
    assert closed.is_all_black(4)


def test_closure_fixpoint_when_no_blackening(hadamard):
    st = state(black=[0, 1])
    assert eager_closure(hadamard, st) == st


def test_closure_order_independent(q3_pattern):
    rng = Random(6)
    for _ in range(30):
        s = rng.getrandbits(8)
        marks = rng.getrandbits(8) & ~s
        st = GameState(s, marks, 0)
        base = eager_closure(q3_pattern, st)
        for k in range(3):
            assert eager_closure(q3_pattern, st, rng=Random(k)) == base


# --- transcripts -----------------------------------------------------------


def test_transcript_roundtrip(hadamard):
    t = signed_forces(hadamard, mask_of([0, 1]))
    data = json.loads(json.dumps(t.to_json()))
    assert data["initial"] == [1, 2]
    back = Transcript.from_json(data, 4)
    assert back.initial == t.initial and back.moves == t.moves
    assert verify_transcript(hadamard, back)


def test_verify_rejects_seed_with_marker_present(hadamard):
    t = Transcript(
        4,
        mask_of([0, 1]),
        [
            RuleInstance("D", 2, mark=(2, Sign.PLUS)),
            RuleInstance("D", 3, mark=(3, Sign.PLUS)),
        ],
    )
    assert not verify_transcript(hadamard, t)


def test_verify_rejects_unfinished(hadamard):
    t = Transcript(4, mask_of([0, 1]), [RuleInstance("D", 2, mark=(2, Sign.PLUS))])
    assert not verify_transcript(hadamard, t)


def test_verify_accepts_search_output(hadamard, q3_pattern):
    for p, s in ((hadamard, mask_of([0, 1])), (q3_pattern, mask_of([0, 2, 6]))):
        t = signed_forces(p, s)
        assert t is not None and verify_transcript(p, t)


def test_monotonicity_along_plays():
    rng = Random(8)
    for _ in range(30):
        g = gnp(rng.randint(2, 8), rng.random(), rng)
        p = z_pattern_of_graph(g)
        t = greedy_play(p, rng.getrandbits(g.n))
        states = t.replay_states()
        for a, b in zip(states, states[1:]):
            assert a.black & ~b.black == 0  # black never shrinks
            # markers only disappear by blackening
            gone = a.marked & ~b.marked
            assert gone & ~b.black == 0
            # a surviving marker never flips
            assert a.plus & b.minus == 0 and a.minus & b.plus == 0
