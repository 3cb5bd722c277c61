"""Batch scanning of graph6 catalogues.

One record per graph: classical and signed forcing numbers, optionally the
branched number and the clique-cover bound, plus the signed witness.  Output
is deterministic for fixed inputs (timing values are carried in memory but
serialized blank unless explicitly requested, so CSV/JSONL output is
byte-identical across runs and worker counts).
"""

from __future__ import annotations

import csv
import io
import json
import re
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .bitset import one_based
from .bounds import cc_nullity_lower_bound, clique_cover_number
from .engine import SearchTimeout
from .graphs import Graph, Graph6Error, parse_graph6, read_graph6_lines
from .minimize import branched_number, signed_zero_forcing_number, zero_forcing_number
from .patterns import z_pattern_of_graph


@dataclass
class ScanRecord:
    graph6: str
    n: int
    connected: bool
    status: str = "ok"  # ok | timeout | error:<msg>
    z: int | None = None
    z_signed: int | None = None
    z_branched: int | None = None
    cc: int | None = None
    cc_bound: int | None = None
    witness_signed: tuple[int, ...] = ()  # 1-based vertices
    elapsed_ms: float = 0.0


class FilterError(ValueError):
    pass


_N_FILTER = re.compile(r"^n\s*(<=|>=|==|<|>)\s*(\d+)$")


def parse_filter(expr: str):
    """Supported filters: ``signed<classical``, ``connected``, ``n<=K`` (and
    the other n comparisons).  Returns (pre, post): ``pre`` decides from the
    parsed graph alone, ``post`` from the finished record."""
    expr = expr.strip()
    if expr == "signed<classical":
        return None, lambda rec: (
            rec.z is not None and rec.z_signed is not None and rec.z_signed < rec.z
        )
    if expr == "connected":
        return lambda g: g.is_connected(), None
    m = _N_FILTER.match(expr)
    if m:
        op, k = m.group(1), int(m.group(2))
        cmp = {
            "<=": lambda n: n <= k,
            ">=": lambda n: n >= k,
            "==": lambda n: n == k,
            "<": lambda n: n < k,
            ">": lambda n: n > k,
        }[op]
        return lambda g: cmp(g.n), None
    raise FilterError(f"unsupported filter expression {expr!r}")


def _compute_record(args) -> ScanRecord:
    line, mode, max_splits, timeout, prune, with_bounds = args
    g = parse_graph6(line)
    rec = ScanRecord(graph6=line, n=g.n, connected=g.is_connected())
    start = time.perf_counter()
    deadline = start + timeout if timeout else None
    try:
        rec.z = zero_forcing_number(g, deadline=deadline).value
        if mode in ("signed", "branched"):
            p = z_pattern_of_graph(g)
            res = signed_zero_forcing_number(p, share_memo=prune, deadline=deadline)
            rec.z_signed = res.value
            rec.witness_signed = tuple(one_based(res.witness))
            if mode == "branched":
                rec.z_branched = branched_number(
                    p, max_splits, share_memo=prune, deadline=deadline
                ).value
        if with_bounds:
            rec.cc = clique_cover_number(g)[0]
            rec.cc_bound = cc_nullity_lower_bound(g)
    except SearchTimeout:
        rec.status = "timeout"
    rec.elapsed_ms = (time.perf_counter() - start) * 1000.0
    return rec


def scan_catalogue(
    path,
    filter_exprs=(),
    *,
    mode: str = "signed",
    max_splits: int = 1,
    timeout: float = 60.0,
    threads: int = 1,
    strict: bool = False,
    prune: bool = False,
    with_bounds: bool = True,
    errors_out: list | None = None,
):
    """Yield one ScanRecord per graph of a newline-delimited graph6 file.

    Records are emitted in input order regardless of worker count.  Bad
    records are skipped with a note (or raised under ``strict``).  When
    filters are given only matching records are yielded; structural filters
    (n, connected) are applied before any computation.
    """
    if isinstance(filter_exprs, str):
        filter_exprs = [filter_exprs]
    pres, posts = [], []
    for expr in filter_exprs:
        pre, post = parse_filter(expr)
        if pre:
            pres.append(pre)
        if post:
            posts.append(post)

    with open(path, "r", encoding="ascii") as fh:
        text = fh.read()
    jobs = []
    for lineno, line in read_graph6_lines(text):
        try:
            g = parse_graph6(line)
        except Graph6Error as exc:
            if strict:
                raise Graph6Error(f"line {lineno}: {exc}") from exc
            if errors_out is not None:
                errors_out.append((lineno, str(exc)))
            continue
        if all(pre(g) for pre in pres):
            jobs.append((line, mode, max_splits, timeout, prune, with_bounds))

    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            records = pool.map(_compute_record, jobs, chunksize=8)
            for rec in records:
                if all(post(rec) for post in posts):
                    yield rec
    else:
        for job in jobs:
            rec = _compute_record(job)
            if all(post(rec) for post in posts):
                yield rec


CSV_COLUMNS = [
    "graph6",
    "n",
    "connected",
    "status",
    "Z",
    "Z_signed",
    "Z_branched",
    "cc",
    "cc_bound",
    "witness_signed",
    "elapsed_ms",
]


def _row_of(rec: ScanRecord, timing: bool) -> list:
    def opt(x):
        return "" if x is None else x

    return [
        rec.graph6,
        rec.n,
        "true" if rec.connected else "false",
        rec.status,
        opt(rec.z),
        opt(rec.z_signed),
        opt(rec.z_branched),
        opt(rec.cc),
        opt(rec.cc_bound),
        " ".join(str(v) for v in rec.witness_signed),
        f"{rec.elapsed_ms:.1f}" if timing else "",
    ]


def records_to_csv(records, timing: bool = False) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for rec in records:
        writer.writerow(_row_of(rec, timing))
    return buf.getvalue()


def records_to_jsonl(records, timing: bool = False) -> str:
    lines = []
    for rec in records:
        obj = {
            "graph6": rec.graph6,
            "n": rec.n,
            "connected": rec.connected,
            "status": rec.status,
            "Z": rec.z,
            "Z_signed": rec.z_signed,
            "Z_branched": rec.z_branched,
            "cc": rec.cc,
            "cc_bound": rec.cc_bound,
            "witness_signed": list(rec.witness_signed),
            "elapsed_ms": round(rec.elapsed_ms, 1) if timing else None,
        }
        lines.append(json.dumps(obj, sort_keys=True))
    return "\n".join(lines) + ("\n" if lines else "")


__all__ = [
    "ScanRecord",
    "FilterError",
    "parse_filter",
    "scan_catalogue",
    "records_to_csv",
    "records_to_jsonl",
    "CSV_COLUMNS",
]
