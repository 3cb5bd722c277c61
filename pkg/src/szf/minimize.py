"""Exact forcing numbers by cardinality-ascending subset sweeps.

Subsets of each cardinality are visited in colex order, so the first
success at cardinality k both proves the value (all smaller cardinalities
were exhausted) and pins the reported witness to the colex-smallest
successful set, independent of any parallel execution of the membership
tests.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .bitset import subsets_of_size
from .engine import (
    BranchCertificate,
    SearchTimeout,
    Transcript,
    branched_forces,
    classical_derived,
    signed_forces,
)
from .graphs import Graph, MAX_VERTICES
from .patterns import SignPattern, z_pattern_of_graph


@dataclass
class ForcingNumberResult:
    value: int
    witness: int  # bitmask
    certificate: Transcript | BranchCertificate
    subsets_tested: int
    elapsed: float


def _sweep(n: int, membership, *, lower_bound: int = 0) -> ForcingNumberResult:
    start = time.perf_counter()
    tested = 0
    for k in range(max(0, lower_bound), n + 1):
        for mask in subsets_of_size(n, k):
            tested += 1
            cert = membership(mask)
            if cert is not None:
                return ForcingNumberResult(k, mask, cert, tested, time.perf_counter() - start)
    raise AssertionError("the full vertex set always forces")  # pragma: no cover


def zero_forcing_number(g: Graph, *, deadline: float | None = None) -> ForcingNumberResult:
    """Exact classical zero forcing number.

    The certificate is a transcript of clause-A moves replayable on the
    graph's z-pattern (where the blackening clause coincides with the
    classical rule).
    """
    if not 1 <= g.n <= MAX_VERTICES:
        raise ValueError(f"graph order {g.n} outside supported range")
    full = (1 << g.n) - 1
    zp = z_pattern_of_graph(g)

    def member(mask: int) -> Transcript | None:
        if deadline is not None and time.perf_counter() > deadline:
            raise SearchTimeout("classical sweep exceeded its deadline")
        if classical_derived(g, mask) != full:
            return None
        t = signed_forces(zp, mask)
        assert t is not None
        return t

    return _sweep(g.n, member)


def signed_zero_forcing_number(
    p: SignPattern,
    *,
    lower_bound: int = 0,
    share_memo: bool = False,
    deadline: float | None = None,
) -> ForcingNumberResult:
    """Exact signed zero forcing number with witness transcript.

    ``share_memo`` reuses the failed-state table across membership tests;
    this is sound (a state that cannot finish cannot finish regardless of
    the initial set that reached it) but off by default.  ``lower_bound``
    must be an externally proven bound; cardinalities below it are skipped.
    """
    memo: set | None = set() if share_memo else None

    def member(mask: int) -> Transcript | None:
        return signed_forces(p, mask, memo=memo, deadline=deadline)

    return _sweep(p.n, member, lower_bound=lower_bound)


def branched_number(
    p: SignPattern,
    max_splits: int = 1,
    *,
    share_memo: bool = False,
    deadline: float | None = None,
) -> ForcingNumberResult:
    """Minimum initial set for which the branched game succeeds within the
    split budget; with ``max_splits=0`` this equals the signed number."""
    memo: set | None = set() if share_memo else None

    def member(mask: int) -> BranchCertificate | None:
        return branched_forces(p, mask, max_splits, memo=memo, deadline=deadline)

    return _sweep(p.n, member)


__all__ = [
    "ForcingNumberResult",
    "zero_forcing_number",
    "signed_zero_forcing_number",
    "branched_number",
]
