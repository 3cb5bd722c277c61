"""Semantic verification with exact arithmetic.

Everything here reduces to exact rational rank computations: sampling
matrices that realize a pattern, checking that kernel vectors vanishing on
a forcing set vanish everywhere, checking marker consistency along a play,
and searching for high-nullity realizations as certified lower bounds on
the maximum nullity of a pattern.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from random import Random

from .bitset import bits, iter_bits
from .bounds import clique_cover_number, greedy_clique_cover, witness_matrix
from .engine import Transcript, signed_forces
from .exact import ExactMatrix, exact_rank
from .graphs import Graph
from .patterns import Sign, SignPattern


@dataclass(frozen=True)
class SampleConfig:
    """Finite rational grid for sampling: numerators up to ``max_numer`` in
    magnitude (sign-restricted per entry), denominators 1..``max_denom``.
    ``symmetric=None`` samples symmetrically exactly when the pattern is
    symmetric."""

    max_numer: int = 20
    max_denom: int = 5
    symmetric: bool | None = None


def _sample_entry(rng: Random, s: Sign, cfg: SampleConfig) -> Fraction:
    if s is Sign.ZERO:
        return Fraction(0)
    d = rng.randint(1, cfg.max_denom)
    if s is Sign.PLUS:
        return Fraction(rng.randint(1, cfg.max_numer), d)
    if s is Sign.MINUS:
        return Fraction(-rng.randint(1, cfg.max_numer), d)
    return Fraction(rng.randint(-cfg.max_numer, cfg.max_numer), d)


def sample_pattern_matrix(p: SignPattern, seed: int, config: SampleConfig | None = None) -> ExactMatrix:
    """A rational matrix realizing the pattern, deterministic per seed."""
    cfg = config or SampleConfig()
    rng = Random(f"sample:{seed}")
    symmetric = cfg.symmetric if cfg.symmetric is not None else p.symmetric
    n = p.n
    a = [[Fraction(0)] * n for _ in range(n)]
    for u in range(n):
        lo = u if symmetric else 0
        for w in range(lo, n):
            a[u][w] = _sample_entry(rng, p.rows[u][w], cfg)
            if symmetric and w != u:
                a[w][u] = a[u][w]
    return ExactMatrix.from_rows(a)


def matrix_has_pattern(a: ExactMatrix, p: SignPattern) -> bool:
    if a.rows != p.n or a.cols != p.n:
        return False
    for u in range(p.n):
        for w in range(p.n):
            s = p.rows[u][w]
            x = a.entries[u][w]
            if s is Sign.PLUS and not x > 0:
                return False
            if s is Sign.MINUS and not x < 0:
                return False
            if s is Sign.ZERO and x != 0:
                return False
    return True


def _indicator_rows(n: int, s_mask: int) -> ExactMatrix:
    rows = []
    for v in iter_bits(s_mask):
        row = [Fraction(0)] * n
        row[v] = Fraction(1)
        rows.append(tuple(row))
    return ExactMatrix(len(rows), n, tuple(rows))


def constrained_kernel_basis(a: ExactMatrix, s_mask: int) -> tuple[tuple[Fraction, ...], ...]:
    """Basis of {x : Ax = 0 and x vanishes on s_mask}."""
    if not s_mask:
        return exact_rank(a).kernel_basis
    return exact_rank(a.stack(_indicator_rows(a.cols, s_mask))).kernel_basis


def kernel_vanishing_check(a: ExactMatrix, s_mask: int) -> bool:
    """True iff every kernel vector of A vanishing on the set vanishes
    entirely, i.e. A stacked with the set's indicator rows has full column
    rank."""
    if a.rows != a.cols:
        raise ValueError("expects a square matrix")
    stacked = a.stack(_indicator_rows(a.cols, s_mask)) if s_mask else a
    return exact_rank(stacked).rank == a.cols


def marker_consistency_check(
    a: ExactMatrix, t: Transcript, pattern: SignPattern | None = None
) -> bool:
    """Check the semantic meaning of every state along a play.

    For every basis vector x of {x in ker A : x vanishes on the initial
    set} and every replay state: x vanishes on the black set; entries at
    same-marked white vertices have product >= 0, and at opposite-marked
    vertices product <= 0.  Effects are replayed without rule validation,
    so corrupted transcripts are judged on their semantic claims alone.
    """
    if pattern is not None and not matrix_has_pattern(a, pattern):
        raise ValueError("matrix does not realize the transcript's pattern")
    basis = constrained_kernel_basis(a, t.initial)
    if not basis:
        return True
    for st in t.replay_states():
        black = bits(st.black)
        marked = [(v, Sign.PLUS) for v in bits(st.plus)] + [(v, Sign.MINUS) for v in bits(st.minus)]
        for x in basis:
            if any(x[v] != 0 for v in black):
                return False
            for i in range(len(marked)):
                vi, si = marked[i]
                for j in range(i + 1, len(marked)):
                    vj, sj = marked[j]
                    prod = x[vi] * x[vj]
                    if si is sj:
                        if prod < 0:
                            return False
                    elif prod > 0:
                        return False
    return True


# ---------------------------------------------------------------------------
# Nullity lower bounds
# ---------------------------------------------------------------------------


@dataclass
class NullitySearchResult:
    best_nullity: int
    witness: ExactMatrix
    source: str
    candidates_tested: int = 0


def _unit_candidate(p: SignPattern) -> ExactMatrix:
    """+1 / -1 / 0 entries as dictated by the pattern, 0 on ?."""
    unit = {Sign.PLUS: 1, Sign.MINUS: -1, Sign.ZERO: 0, Sign.UNKNOWN: 0}
    return ExactMatrix.from_rows([[unit[s] for s in row] for row in p.rows])


def _z_shape_graph(p: SignPattern) -> Graph | None:
    """The graph of a pattern shaped like a z-pattern (? diagonal, -/0 off)."""
    if not p.symmetric:
        return None
    edges = []
    for u in range(p.n):
        if p.rows[u][u] is not Sign.UNKNOWN:
            return None
        for w in range(u + 1, p.n):
            s = p.rows[u][w]
            if s is Sign.MINUS:
                edges.append((u, w))
            elif s is not Sign.ZERO:
                return None
    return Graph.from_edges(p.n, edges)


def _diag_completion(a: ExactMatrix, p: SignPattern, v: tuple[int, ...]) -> ExactMatrix | None:
    """Force the +-1 vector v into the kernel by re-solving every diagonal
    entry; valid only when the forced diagonal keeps its required sign."""
    n = p.n
    rows = [list(r) for r in a.entries]
    for u in range(n):
        s = sum(rows[u][w] * v[w] for w in range(n) if w != u)
        rows[u][u] = -s * v[u]  # v[u] in {1, -1} so this solves row u exactly
    cand = ExactMatrix.from_rows(rows)
    return cand if matrix_has_pattern(cand, p) else None


def nullity_lower_bound_search(
    p: SignPattern, trials: int = 32, seed: int = 0
) -> NullitySearchResult:
    """Best-effort maximum-nullity lower bound: the largest nullity among
    sampled and structured realizations of the pattern.

    Candidates: the unit-entry matrix; grid samples; samples with the
    diagonal re-solved to put a +-1 vector in the kernel (kept only when
    the pattern allows the resulting diagonal); and for z-shaped patterns
    the negated clique-cover matrix, whose nullity is at least n - cc(G).
    Every candidate is validated against the pattern before ranking, so the
    reported value is always a true lower bound.
    """
    best: NullitySearchResult | None = None
    tested = 0

    def consider(cand: ExactMatrix, source: str) -> None:
        nonlocal best, tested
        if not matrix_has_pattern(cand, p):
            return
        tested += 1
        nullity = exact_rank(cand).nullity
        if best is None or nullity > best.best_nullity:
            best = NullitySearchResult(nullity, cand, source)

    consider(_unit_candidate(p), "unit")

    g = _z_shape_graph(p)
    if g is not None:
        cover = clique_cover_number(g)[1] if g.n <= 16 else greedy_clique_cover(g)
        w = witness_matrix(g, cover)
        consider(ExactMatrix.from_rows([[-x for x in row] for row in w.entries]), "clique-cover")

    rng = Random(f"nullity:{seed}")
    sign_vectors: list[tuple[int, ...]]
    if p.n <= 6:
        sign_vectors = []
        for code in range(1 << (p.n - 1)):
            sign_vectors.append(tuple(1 if (code >> i) & 1 == 0 else -1 for i in range(p.n)))
    else:
        sign_vectors = [tuple(rng.choice((1, -1)) for _ in range(p.n)) for _ in range(16)]

    for trial in range(trials):
        a = sample_pattern_matrix(p, seed=seed * 100003 + trial)
        consider(a, f"sample:{trial}")
        for v in sign_vectors:
            cand = _diag_completion(a, p, v)
            if cand is not None:
                consider(cand, f"diag-completion:{trial}")

    assert best is not None
    best.candidates_tested = tested
    return best


# ---------------------------------------------------------------------------
# End-to-end verification of the nullity bound
# ---------------------------------------------------------------------------


@dataclass
class BoundReport:
    trials: int
    vanishing_failures: list[int] = field(default_factory=list)
    marker_failures: list[int] = field(default_factory=list)

    @property
    def failures(self) -> int:
        return len(set(self.vanishing_failures) | set(self.marker_failures))

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def summary(self) -> str:
        return f"{self.failures} failures / {self.trials} trials"


def verify_nullity_bound(
    p: SignPattern,
    s_mask: int,
    trials: int = 100,
    seed: int = 0,
    config: SampleConfig | None = None,
    transcript: Transcript | None = None,
) -> BoundReport:
    """Sample realizations of the pattern and confirm that the verified
    forcing set semantically forces each one: kernel vectors vanishing on
    the set vanish everywhere, and marker claims hold along the play.

    Requires that ``signed_forces(p, s_mask)`` succeeds (the transcript is
    computed if not supplied).  Failures are findings, not exceptions.
    """
    if transcript is None:
        transcript = signed_forces(p, s_mask)
        if transcript is None:
            raise ValueError("the given set is not a signed forcing set for the pattern")
    report = BoundReport(trials)
    for trial in range(trials):
        a = sample_pattern_matrix(p, seed=seed * 1000003 + trial, config=config)
        if not kernel_vanishing_check(a, s_mask):
            report.vanishing_failures.append(trial)
        if not marker_consistency_check(a, transcript):
            report.marker_failures.append(trial)
    return report


__all__ = [
    "SampleConfig",
    "sample_pattern_matrix",
    "matrix_has_pattern",
    "constrained_kernel_basis",
    "kernel_vanishing_check",
    "marker_consistency_check",
    "NullitySearchResult",
    "nullity_lower_bound_search",
    "BoundReport",
    "verify_nullity_bound",
]
