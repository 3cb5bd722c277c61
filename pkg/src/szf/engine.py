"""The forcing games.

Classical zero forcing blackens the lone white neighbour of a black vertex.
The signed game generalizes it to sign patterns with fixed periphery: white
vertices may carry +/- markers recording *relative* weak signs of the entries
of a kernel vector, and four rule clauses either blacken vertices or mark
them.  For a pivot u (black, or white with a specified diagonal) let

    W  = white vertices w with a signed entry P[u][w], including u itself
         when u is white and its diagonal is + or -;
    W+ = marked members of W whose marker equals P[u][w];
    W- = marked members whose marker differs from P[u][w];
    W* = unmarked members.

Clause A: |W| = 1                      -> blacken the member.
Clause B: W nonempty, W+ = W or W- = W -> blacken all of W.
Clause C: one side of W+/W- nonempty, the other empty, W* = {w}
                                       -> mark w with P[u][w] * invert(side).
Clause D: no white vertex anywhere is marked and u is white
                                       -> mark u with + (seeding).

Seeding marks only + (a kernel vector and its negation give the same game),
and any white vertex may be seeded regardless of its diagonal.

``signed_forces`` searches for a winning play: clauses A/B are applied
eagerly (blackening dominates marking and never disables later moves), and
the search branches over clause-C deductions and clause-D seed choices.
``branched_forces`` additionally allows exhaustive three-way case splits
(+ / - / black) on a white unmarked vertex, all branches required to finish.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from random import Random

from .bitset import bit, bits, one_based, mask_from_one_based
from .graphs import Graph
from .patterns import Sign, SignPattern, invert, multiply


class RuleError(ValueError):
    """An instance was applied in a state where it is not applicable."""


class SearchTimeout(RuntimeError):
    """A forcing search exceeded its deadline."""


@dataclass(frozen=True)
class GameState:
    """One position: black vertices plus +/- marker masks on white vertices."""

    black: int
    plus: int = 0
    minus: int = 0

    @classmethod
    def initial(cls, black: int) -> "GameState":
        return cls(black, 0, 0)

    @property
    def marked(self) -> int:
        return self.plus | self.minus

    def markers(self) -> dict[int, Sign]:
        out = {v: Sign.PLUS for v in bits(self.plus)}
        out.update({v: Sign.MINUS for v in bits(self.minus)})
        return out

    def validate(self, n: int) -> None:
        full = (1 << n) - 1
        if (self.black | self.plus | self.minus) & ~full:
            raise ValueError("state mentions out-of-range vertices")
        if self.black & (self.plus | self.minus):
            raise ValueError("black vertices must not carry markers")
        if self.plus & self.minus:
            raise ValueError("a vertex cannot carry both markers")

    def is_all_black(self, n: int) -> bool:
        return self.black == (1 << n) - 1


@dataclass(frozen=True)
class RuleInstance:
    """One applicable rule application: the clause, its pivot, and its effect."""

    clause: str  # 'A' | 'B' | 'C' | 'D'
    pivot: int
    blacken: int | None = None  # bitmask, clauses A/B
    mark: tuple[int, Sign] | None = None  # (vertex, sign), clauses C/D

    def effect_key(self):
        if self.blacken is not None:
            return ("blacken", self.blacken)
        return ("mark", self.mark)


@dataclass
class Transcript:
    """A replayable play: initial black set plus the ordered rule instances."""

    n: int
    initial: int
    moves: list[RuleInstance] = field(default_factory=list)

    def to_json(self) -> dict:
        moves = []
        for inst in self.moves:
            rec: dict = {"clause": inst.clause, "pivot": inst.pivot + 1}
            if inst.blacken is not None:
                rec["blacken"] = one_based(inst.blacken)
            if inst.mark is not None:
                rec["mark"] = {"v": inst.mark[0] + 1, "sign": inst.mark[1].value}
            moves.append(rec)
        return {"initial": one_based(self.initial), "moves": moves}

    @classmethod
    def from_json(cls, data: dict, n: int) -> "Transcript":
        moves = []
        for rec in data["moves"]:
            blacken = mask_from_one_based(rec["blacken"]) if "blacken" in rec else None
            mark = None
            if "mark" in rec:
                mark = (rec["mark"]["v"] - 1, Sign(rec["mark"]["sign"]))
            moves.append(RuleInstance(rec["clause"], rec["pivot"] - 1, blacken, mark))
        return cls(n, mask_from_one_based(data["initial"]), moves)

    def replay_states(self) -> list[GameState]:
        """States after the initial colouring and after each move.

        Effects are applied verbatim without checking rule applicability
        (marks on already-black vertices are dropped), so corrupted
        transcripts can still be inspected semantically.
        """
        black, plus, minus = self.initial, 0, 0
        out = [GameState(black, plus, minus)]
        for inst in self.moves:
            if inst.blacken is not None:
                black |= inst.blacken
                plus &= ~black
                minus &= ~black
            elif inst.mark is not None:
                v, s = inst.mark
                if not black & bit(v):
                    if s is Sign.PLUS:
                        plus |= bit(v)
                    else:
                        minus |= bit(v)
            out.append(GameState(black, plus, minus))
        return out


# ---------------------------------------------------------------------------
# Classical rule
# ---------------------------------------------------------------------------


def classical_derived(g: Graph, black: int, rng: Random | None = None) -> int:
    """Fixpoint of the classical rule from the given black set.

    The derived colouring is order independent; pass ``rng`` to apply forces
    one at a time in random order (used to assert exactly that).
    """
    while True:
        forced = []
        rem = black
        while rem:
            low = rem & -rem
            rem ^= low
            u = low.bit_length() - 1
            w = g.adj[u] & ~black
            if w and not w & (w - 1):
                forced.append(w)
        if not forced:
            return black
        if rng is None:
            for w in forced:
                black |= w
        else:
            black |= rng.choice(forced)


# ---------------------------------------------------------------------------
# Signed rule instances
# ---------------------------------------------------------------------------


def _pivot_sets(p: SignPattern, black: int, plus: int, minus: int, u: int):
    """(W, W+, W-, W*) for pivot u, or None when u is not an eligible pivot."""
    white = ~black & ((1 << p.n) - 1)
    ub = bit(u)
    if black & ub:
        w = p.row_signed[u] & white
    else:
        diag = p.rows[u][u]
        if diag is Sign.UNKNOWN:
            return None
        w = p.row_signed[u] & white
        if diag is not Sign.ZERO:
            w |= ub
    w_plus = w & ((plus & p.row_plus[u]) | (minus & p.row_minus[u]))
    w_minus = w & ((plus & p.row_minus[u]) | (minus & p.row_plus[u]))
    w_star = w & ~(plus | minus)
    return w, w_plus, w_minus, w_star


def applicable_instances(p: SignPattern, st: GameState) -> list[RuleInstance]:
    """Every applicable rule instance, ordered by pivot then clause.

    All pivots producing an effect are listed (the same blackening or mark
    may legitimately arise at several pivots); within one pivot an instance
    subsumed by an earlier clause with the identical effect is dropped.
    """
    if not p.fixed_periphery:
        raise RuleError("the signed game requires a pattern with fixed periphery")
    black, plus, minus = st.black, st.plus, st.minus
    full = (1 << p.n) - 1
    out: list[RuleInstance] = []
    for u in range(p.n):
        sets = _pivot_sets(p, black, plus, minus, u)
        if sets is None:
            continue
        w, w_plus, w_minus, w_star = sets
        if not w:
            continue
        emitted_a = False
        if not w & (w - 1):  # |W| == 1
            out.append(RuleInstance("A", u, blacken=w))
            emitted_a = True
        if (w_plus == w or w_minus == w) and not emitted_a:
            out.append(RuleInstance("B", u, blacken=w))
        if w_star and not w_star & (w_star - 1) and bool(w_plus) != bool(w_minus):
            target = w_star.bit_length() - 1
            side = Sign.PLUS if w_plus else Sign.MINUS
            sign = multiply(p.rows[u][target], invert(side))
            out.append(RuleInstance("C", u, mark=(target, sign)))
    if not (plus | minus):
        white = ~black & full
        for u in bits(white):
            out.append(RuleInstance("D", u, mark=(u, Sign.PLUS)))
    return out


def _apply_effect(black: int, plus: int, minus: int, inst: RuleInstance):
    if inst.blacken is not None:
        black |= inst.blacken
        return black, plus & ~black, minus & ~black
    v, s = inst.mark
    if s is Sign.PLUS:
        return black, plus | bit(v), minus
    return black, plus, minus | bit(v)


def apply_instance(p: SignPattern, st: GameState, inst: RuleInstance) -> GameState:
    """Apply a rule instance after checking it is applicable in ``st``."""
    if inst not in applicable_instances(p, st):
        raise RuleError(f"instance {inst} is not applicable in the given state")
    black, plus, minus = _apply_effect(st.black, st.plus, st.minus, inst)
    return GameState(black, plus, minus)


def _first_ab(p: SignPattern, black: int, plus: int, minus: int) -> RuleInstance | None:
    for u in range(p.n):
        sets = _pivot_sets(p, black, plus, minus, u)
        if sets is None:
            continue
        w, w_plus, w_minus, _ = sets
        if not w:
            continue
        if not w & (w - 1):
            return RuleInstance("A", u, blacken=w)
        if w_plus == w or w_minus == w:
            return RuleInstance("B", u, blacken=w)
    return None


def _all_ab(p: SignPattern, black: int, plus: int, minus: int) -> list[RuleInstance]:
    out = []
    for u in range(p.n):
        sets = _pivot_sets(p, black, plus, minus, u)
        if sets is None:
            continue
        w, w_plus, w_minus, _ = sets
        if not w:
            continue
        if not w & (w - 1):
            out.append(RuleInstance("A", u, blacken=w))
        elif w_plus == w or w_minus == w:
            out.append(RuleInstance("B", u, blacken=w))
    return out


def _closure(
    p: SignPattern,
    black: int,
    plus: int,
    minus: int,
    record: list[RuleInstance] | None = None,
    rng: Random | None = None,
):
    """Apply blackening clauses A/B to exhaustion.

    Blackenings commute (the fixpoint is order independent); ``rng`` picks a
    random applicable instance per step so tests can assert that.
    """
    while True:
        if rng is None:
            inst = _first_ab(p, black, plus, minus)
        else:
            options = _all_ab(p, black, plus, minus)
            inst = rng.choice(options) if options else None
        if inst is None:
            return black, plus, minus
        black, plus, minus = _apply_effect(black, plus, minus, inst)
        if record is not None:
            record.append(inst)


def eager_closure(p: SignPattern, st: GameState, rng: Random | None = None) -> GameState:
    """Blackening-only fixpoint of the state (clauses A and B, no marks)."""
    if not p.fixed_periphery:
        raise RuleError("the signed game requires a pattern with fixed periphery")
    black, plus, minus = _closure(p, st.black, st.plus, st.minus, rng=rng)
    return GameState(black, plus, minus)


def _branch_moves(p: SignPattern, black: int, plus: int, minus: int) -> list[RuleInstance]:
    """Clause C deductions then clause D seeds, deduplicated by effect."""
    st = GameState(black, plus, minus)
    seen = set()
    cs, ds = [], []
    for inst in applicable_instances(p, st):
        if inst.clause in ("A", "B"):
            continue
        key = inst.effect_key()
        if key in seen:
            continue
        seen.add(key)
        (cs if inst.clause == "C" else ds).append(inst)
    return cs + ds


class _DeadlineGuard:
    __slots__ = ("deadline", "ticks")

    def __init__(self, deadline: float | None):
        self.deadline = deadline
        self.ticks = 0

    def check(self) -> None:
        if self.deadline is None:
            return
        self.ticks += 1
        if self.ticks % 128 == 0 and time.perf_counter() > self.deadline:
            raise SearchTimeout("forcing search exceeded its deadline")


_MEMO_CAP = 4_000_000


def signed_forces(
    p: SignPattern,
    initial: int,
    *,
    memo: set | None = None,
    deadline: float | None = None,
    rng: Random | None = None,
) -> Transcript | None:
    """Search for a winning play of the signed game from the given black set.

    Returns a replayable transcript on success, None when no sequence of
    rule applications blackens everything.  Clauses A/B run eagerly between
    branch points; every clause-C deduction and clause-D seed choice is
    explored depth first with memoization of failed states.  ``memo`` may be
    shared across calls on the same pattern (a failed state fails regardless
    of the initial set that reached it).  ``rng`` shuffles branch order; the
    verdict does not depend on it.
    """
    if not p.fixed_periphery:
        raise RuleError("the signed game requires a pattern with fixed periphery")
    full = (1 << p.n) - 1
    if initial & ~full:
        raise ValueError("initial set mentions out-of-range vertices")
    failed = memo if memo is not None else set()
    guard = _DeadlineGuard(deadline)

    def dfs(black: int, plus: int, minus: int) -> list[RuleInstance] | None:
        # precondition: state is closed under clauses A/B
        if black == full:
            return []
        key = (black, plus, minus)
        if key in failed:
            return None
        guard.check()
        moves = _branch_moves(p, black, plus, minus)
        if rng is not None:
            rng.shuffle(moves)
        for inst in moves:
            b2, p2, m2 = _apply_effect(black, plus, minus, inst)
            closure_moves: list[RuleInstance] = []
            b2, p2, m2 = _closure(p, b2, p2, m2, record=closure_moves)
            tail = dfs(b2, p2, m2)
            if tail is not None:
                return [inst] + closure_moves + tail
        if len(failed) > _MEMO_CAP:
            failed.clear()
        failed.add(key)
        return None

    opening: list[RuleInstance] = []
    black, plus, minus = _closure(p, initial, 0, 0, record=opening)
    tail = dfs(black, plus, minus)
    if tail is None:
        return None
    return Transcript(p.n, initial, opening + tail)


def verify_transcript(p: SignPattern, t: Transcript) -> bool:
    """Strict replay: every move must be applicable at its position and the
    final state must be all black."""
    try:
        if t.n != p.n or t.initial & ~((1 << p.n) - 1):
            return False
        st = GameState.initial(t.initial)
        for inst in t.moves:
            st = apply_instance(p, st, inst)
    except (RuleError, ValueError):
        return False
    return st.is_all_black(p.n)


# ---------------------------------------------------------------------------
# Branched game: three-way case splits on a white unmarked vertex
# ---------------------------------------------------------------------------


@dataclass
class BranchPlay:
    """A linear run of normal moves, optionally ending in a case split."""

    moves: list[RuleInstance] = field(default_factory=list)
    split: "Split | None" = None


@dataclass
class Split:
    vertex: int
    on_plus: BranchPlay
    on_minus: BranchPlay
    on_black: BranchPlay


@dataclass
class BranchCertificate:
    """Strategy tree witnessing a branched forcing success."""

    n: int
    initial: int
    max_splits: int
    root: BranchPlay

    def split_count(self) -> int:
        """Maximum nesting depth of splits in the tree."""

        def depth(play: BranchPlay) -> int:
            if play.split is None:
                return 0
            s = play.split
            return 1 + max(depth(s.on_plus), depth(s.on_minus), depth(s.on_black))

        return depth(self.root)

    def to_json(self) -> dict:
        def play_json(play: BranchPlay) -> dict:
            moves = Transcript(self.n, 0, play.moves).to_json()["moves"]
            split = None
            if play.split is not None:
                split = {
                    "vertex": play.split.vertex + 1,
                    "plus": play_json(play.split.on_plus),
                    "minus": play_json(play.split.on_minus),
                    "black": play_json(play.split.on_black),
                }
            return {"moves": moves, "split": split}

        return {
            "initial": one_based(self.initial),
            "max_splits": self.max_splits,
            "play": play_json(self.root),
        }

    @classmethod
    def from_json(cls, data: dict, n: int) -> "BranchCertificate":
        def play_from(rec: dict) -> BranchPlay:
            moves = Transcript.from_json({"initial": [], "moves": rec["moves"]}, n).moves
            split = None
            if rec.get("split"):
                s = rec["split"]
                split = Split(
                    s["vertex"] - 1,
                    play_from(s["plus"]),
                    play_from(s["minus"]),
                    play_from(s["black"]),
                )
            return BranchPlay(moves, split)

        return cls(n, mask_from_one_based(data["initial"]), data["max_splits"], play_from(data["play"]))


def branched_forces(
    p: SignPattern,
    initial: int,
    max_splits: int = 1,
    *,
    memo: set | None = None,
    deadline: float | None = None,
) -> BranchCertificate | None:
    """Like ``signed_forces`` but allowing up to ``max_splits`` nested
    three-way case splits; a split on white unmarked v requires all of
    m(v)=+, m(v)=-, and v-black to finish."""
    if not p.fixed_periphery:
        raise RuleError("the signed game requires a pattern with fixed periphery")
    if max_splits < 0:
        raise ValueError("split budget must be nonnegative")
    full = (1 << p.n) - 1
    if initial & ~full:
        raise ValueError("initial set mentions out-of-range vertices")
    failed = memo if memo is not None else set()
    guard = _DeadlineGuard(deadline)

    def close_with_record(black, plus, minus):
        record: list[RuleInstance] = []
        black, plus, minus = _closure(p, black, plus, minus, record=record)
        return black, plus, minus, record

    def solve(black: int, plus: int, minus: int, budget: int) -> BranchPlay | None:
        # precondition: state is closed under clauses A/B
        if black == full:
            return BranchPlay()
        key = (black, plus, minus, budget)
        if key in failed:
            return None
        guard.check()
        for inst in _branch_moves(p, black, plus, minus):
            b2, p2, m2 = _apply_effect(black, plus, minus, inst)
            b2, p2, m2, closure_moves = close_with_record(b2, p2, m2)
            tail = solve(b2, p2, m2, budget)
            if tail is not None:
                return BranchPlay([inst] + closure_moves + tail.moves, tail.split)
        if budget > 0:
            white_unmarked = ~black & ~plus & ~minus & full
            for v in bits(white_unmarked):
                vb = bit(v)
                children = []
                for case_state in (
                    (black, plus | vb, minus),
                    (black, plus, minus | vb),
                    (black | vb, plus, minus),
                ):
                    b2, p2, m2, closure_moves = close_with_record(*case_state)
                    sub = solve(b2, p2, m2, budget - 1)
                    if sub is None:
                        break
                    children.append(BranchPlay(closure_moves + sub.moves, sub.split))
                if len(children) == 3:
                    return BranchPlay([], Split(v, *children))
        if len(failed) > _MEMO_CAP:
            failed.clear()
        failed.add(key)
        return None

    opening: list[RuleInstance] = []
    black, plus, minus = _closure(p, initial, 0, 0, record=opening)
    root = solve(black, plus, minus, max_splits)
    if root is None:
        return None
    return BranchCertificate(p.n, initial, max_splits, BranchPlay(opening + root.moves, root.split))


def verify_branch_certificate(p: SignPattern, cert: BranchCertificate) -> bool:
    """Strict replay of every branch of the strategy tree."""

    def check(play: BranchPlay, st: GameState, budget: int) -> bool:
        for inst in play.moves:
            try:
                st = apply_instance(p, st, inst)
            except (RuleError, ValueError):
                return False
        if play.split is None:
            return st.is_all_black(p.n)
        if budget <= 0:
            return False
        v = play.split.vertex
        if st.black & bit(v) or (st.plus | st.minus) & bit(v):
            return False
        cases = (
            (play.split.on_plus, GameState(st.black, st.plus | bit(v), st.minus)),
            (play.split.on_minus, GameState(st.black, st.plus, st.minus | bit(v))),
            (play.split.on_black, GameState(st.black | bit(v), st.plus & ~bit(v), st.minus & ~bit(v))),
        )
        return all(check(child, child_st, budget - 1) for child, child_st in cases)

    try:
        if cert.n != p.n or cert.initial & ~((1 << p.n) - 1):
            return False
    except ValueError:
        return False
    return check(cert.root, GameState.initial(cert.initial), cert.max_splits)


def transcript_to_json_str(t: Transcript) -> str:
    return json.dumps(t.to_json(), sort_keys=True)


__all__ = [
    "GameState",
    "RuleInstance",
    "Transcript",
    "BranchPlay",
    "Split",
    "BranchCertificate",
    "RuleError",
    "SearchTimeout",
    "classical_derived",
    "applicable_instances",
    "apply_instance",
    "eager_closure",
    "signed_forces",
    "verify_transcript",
    "branched_forces",
    "verify_branch_certificate",
    "transcript_to_json_str",
]
