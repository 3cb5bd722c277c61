"""Sign patterns: square matrices over {+, -, 0, ?}.

A real matrix realizes a pattern when the sign of every entry matches the
pattern wherever the pattern is not ``?``.  A pattern has *fixed periphery*
when every off-diagonal entry is specified (not ``?``); the forcing game
requires that property, parsing does not.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property

from .bitset import bit
from .graphs import Graph, MAX_VERTICES


class Sign(Enum):
    PLUS = "+"
    MINUS = "-"
    ZERO = "0"
    UNKNOWN = "?"

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        return self.value


_SIGNED = (Sign.PLUS, Sign.MINUS)


def invert(s: Sign) -> Sign:
    """Swap + and -; only defined on signed values."""
    if s is Sign.PLUS:
        return Sign.MINUS
    if s is Sign.MINUS:
        return Sign.PLUS
    raise ValueError(f"invert is defined on +/- only, got {s.value!r}")


def multiply(s: Sign, t: Sign) -> Sign:
    """Product of two signed values: + iff they agree."""
    if s not in _SIGNED or t not in _SIGNED:
        raise ValueError(f"multiply is defined on +/- only, got {s.value!r}, {t.value!r}")
    return Sign.PLUS if s is t else Sign.MINUS


class PatternError(ValueError):
    """Malformed pattern text; carries 1-based line/column when known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + loc)
        self.line = line
        self.column = column


@dataclass(frozen=True)
class SignPattern:
    n: int
    rows: tuple[tuple[Sign, ...], ...]

    def __post_init__(self) -> None:
        if self.n < 1 or self.n > MAX_VERTICES:
            raise ValueError(f"pattern dimension {self.n} outside supported range 1..{MAX_VERTICES}")
        if len(self.rows) != self.n or any(len(r) != self.n for r in self.rows):
            raise ValueError("pattern is not square")

    def sign(self, u: int, w: int) -> Sign:
        return self.rows[u][w]

    @cached_property
    def fixed_periphery(self) -> bool:
        return all(
            self.rows[u][w] is not Sign.UNKNOWN
            for u in range(self.n)
            for w in range(self.n)
            if u != w
        )

    @cached_property
    def symmetric(self) -> bool:
        return all(
            self.rows[u][w] is self.rows[w][u] for u in range(self.n) for w in range(u + 1, self.n)
        )

    # Bitmask views consumed by the game engine.  ``row_signed`` holds the
    # off-diagonal in-neighbours of each row; ``row_plus``/``row_minus``
    # include the diagonal bit so marker comparisons are single AND/ORs.
    @cached_property
    def row_signed(self) -> tuple[int, ...]:
        out = []
        for u in range(self.n):
            m = 0
            for w in range(self.n):
                if w != u and self.rows[u][w] in _SIGNED:
                    m |= bit(w)
            out.append(m)
        return tuple(out)

    @cached_property
    def row_plus(self) -> tuple[int, ...]:
        return tuple(
            sum(bit(w) for w in range(self.n) if self.rows[u][w] is Sign.PLUS)
            for u in range(self.n)
        )

    @cached_property
    def row_minus(self) -> tuple[int, ...]:
        return tuple(
            sum(bit(w) for w in range(self.n) if self.rows[u][w] is Sign.MINUS)
            for u in range(self.n)
        )


def in_neighbors(p: SignPattern, u: int) -> int:
    """Bitmask of vertices w != u with a signed entry in row u (w feeds u's equation)."""
    return p.row_signed[u]


def parse_pattern(text: str) -> SignPattern:
    """Parse the ``.pat`` format.

    Lines starting with ``#`` are comments; the first payload line is the
    dimension n; the next n lines hold n characters each from ``+-0?``
    after stripping spaces and tabs.
    """
    payload: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        payload.append((lineno, raw))
    if not payload:
        raise PatternError("no payload lines in pattern text")
    head_line, head = payload[0]
    try:
        n = int(head.strip())
    except ValueError:
        raise PatternError(f"expected integer dimension, got {head.strip()!r}", head_line) from None
    if n < 1:
        raise PatternError(f"dimension must be positive, got {n}", head_line)
    body = payload[1:]
    if len(body) != n:
        raise PatternError(f"expected {n} pattern rows, got {len(body)}", head_line)
    rows = []
    for r, (lineno, raw) in enumerate(body):
        cells = []
        col = 0
        for ch in raw:
            if ch in " \t":
                continue
            col += 1
            try:
                cells.append(Sign(ch))
            except ValueError:
                raise PatternError(f"illegal pattern character {ch!r}", lineno, col) from None
        if len(cells) != n:
            raise PatternError(f"row {r + 1} has {len(cells)} entries, expected {n}", lineno)
        rows.append(tuple(cells))
    return SignPattern(n, tuple(rows))


def serialize_pattern(p: SignPattern) -> str:
    lines = [str(p.n)]
    lines.extend("".join(s.value for s in row) for row in p.rows)
    return "\n".join(lines) + "\n"


def z_pattern_of_graph(g: Graph) -> SignPattern:
    """The all-? diagonal, minus-on-edges, zero-elsewhere pattern of a graph.

    Its realizations are exactly the symmetric matrices with graph ``g``
    whose nonzero off-diagonal entries are all negative; together with their
    negations these exhaust the matrices whose off-diagonal entries share
    one weak sign.
    """
    if g.n < 1:
        raise ValueError("pattern needs at least one vertex")
    rows = []
    for u in range(g.n):
        row = []
        for w in range(g.n):
            if u == w:
                row.append(Sign.UNKNOWN)
            elif g.has_edge(u, w):
                row.append(Sign.MINUS)
            else:
                row.append(Sign.ZERO)
        rows.append(tuple(row))
    return SignPattern(g.n, tuple(rows))


def hadamard_pattern(k: int) -> SignPattern:
    """Sylvester-type 2^k x 2^k sign pattern: entry (i, j) = parity of popcount(i & j)."""
    if k < 0 or (1 << k) > MAX_VERTICES:
        raise ValueError("hadamard pattern order out of range")
    n = 1 << k
    rows = tuple(
        tuple(Sign.MINUS if (i & j).bit_count() % 2 else Sign.PLUS for j in range(n))
        for i in range(n)
    )
    return SignPattern(n, rows)


__all__ = [
    "Sign",
    "SignPattern",
    "PatternError",
    "invert",
    "multiply",
    "in_neighbors",
    "parse_pattern",
    "serialize_pattern",
    "z_pattern_of_graph",
    "hadamard_pattern",
]
