"""Microbenchmark runner for the site-selection rules.

Times assignment over half-open ingest windows [t_lo, t_hi).  The steady
rule is a pure call per T, so any window offset is fair game and the cost
of deep streams can be measured directly.  The greedy rules only exist as
replays, so they are timed as a fresh incremental replay per window, which
restricts their windows to start at 0 and stay within the replay cap.

No I/O happens inside a timed region; the clock is perf_counter_ns.
"""

from __future__ import annotations

from time import perf_counter_ns
from typing import NamedTuple

from .algorithms import (
    Algorithm,
    _GreedyCurator,
    _steady_site,
    _validate_algorithm_sites,
    has_ingest_capacity,
    steady_assign,
)
from .lookup import REPLAY_CAP


class BenchResult(NamedTuple):
    algo: str
    S: int
    t_lo: int
    t_hi: int
    items: int
    total_ns: int
    ns_per_item: float
    replicate: int


BENCH_FIELDS = ("algo", "S", "T_lo", "T_hi", "items", "total_ns", "ns_per_item", "replicate")


def _validate_window(algo: Algorithm, S: int, window) -> tuple[int, int]:
    t_lo, t_hi = window
    if not (isinstance(t_lo, int) and isinstance(t_hi, int)) or t_lo < 0 or t_hi <= t_lo:
        raise ValueError(f"bad depth window {window!r}")
    if algo.kind != "steady":
        if t_lo != 0:
            raise ValueError(
                f"{algo} is replay-defined; depth windows must start at 0, got {window!r}"
            )
        if t_hi > REPLAY_CAP:
            raise ValueError(f"replay windows are capped at {REPLAY_CAP}, got {window!r}")
        if not has_ingest_capacity(algo, S, t_hi - 1):
            raise ValueError(f"window {window!r} exceeds capacity of {algo} at S={S}")
    return t_lo, t_hi


def _time_steady(S: int, t_lo: int, t_hi: int) -> int:
    assign = steady_assign
    t0 = perf_counter_ns()
    for T in range(t_lo, t_hi):
        assign(S, T)
    return perf_counter_ns() - t0


def _time_replay(algo: Algorithm, S: int, t_hi: int) -> int:
    # fresh state per replicate so every run pays the true per-step cost
    if algo.kind in ("stretched", "tilted"):
        steppers = [(_GreedyCurator(S, algo.kind == "tilted").step, None)]
    else:
        steppers = []
        for sub_kind, sub_size, _ in algo.segment_layout():
            if sub_kind == "steady":
                steppers.append((_steady_site, sub_size))
            else:
                steppers.append(
                    (_GreedyCurator(sub_size, sub_kind == "tilted").step, None)
                )
    t0 = perf_counter_ns()
    for T in range(t_hi):
        for step, sub_size in steppers:
            if sub_size is None:
                step()
            else:
                step(sub_size, T)
    return perf_counter_ns() - t0


def run_benchmark(algo: Algorithm, sizes, windows, replicates: int) -> list[BenchResult]:
    """Time selection across sizes x windows x replicates.

    Returns one row per (S, window, replicate), in that nesting order.
    """
    if not isinstance(replicates, int) or replicates < 1:
        raise ValueError(f"replicates must be a positive integer, got {replicates!r}")
    if not sizes:
        raise ValueError("need at least one size")
    if not windows:
        raise ValueError("need at least one depth window")
    plans = []
    for S in sizes:
        _validate_algorithm_sites(algo, S)
        for window in windows:
            plans.append((S, *_validate_window(algo, S, window)))
    results = []
    token = algo.token()
    for S, t_lo, t_hi in plans:
        items = t_hi - t_lo
        for replicate in range(replicates):
            if algo.kind == "steady":
                total_ns = _time_steady(S, t_lo, t_hi)
            else:
                total_ns = _time_replay(algo, S, t_hi)
            results.append(
                BenchResult(token, S, t_lo, t_hi, items, total_ns, total_ns / items, replicate)
            )
    return results
