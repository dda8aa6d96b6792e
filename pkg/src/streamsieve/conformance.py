"""Conformance vectors: freeze selections to a file, re-check them later.

A vector row is (algorithm token, S, T, expected sites).  generate walks an
exhaustive (S, T) grid per algorithm, capping T where an algorithm's
supported stream length is shorter, and adds a seeded sample of large-T
steady cases so the closed-form path gets exercised far past the grid.
check recomputes every row; output is byte-deterministic for fixed flags.
"""

from __future__ import annotations

import csv
import random
from typing import NamedTuple

from .algorithms import (
    MIN_SITE_COUNT,
    parse_algorithm,
    site_selection,
    stream_capacity,
)
from .errors import StreamSieveError, VectorFormatError

VECTOR_FIELDS = ("algo", "S", "T", "expected_sites")

DEFAULT_SEED = 20270304
LARGE_T_SPAN = 1 << 48


class TestVector(NamedTuple):
    algo: str
    S: int
    T: int
    expected: tuple[int, ...]


def _grid_sizes(algo, max_s: int) -> list[int]:
    if algo.is_hybrid:
        total = algo.total_sites
        return [total] if total <= max_s else []
    sizes = []
    S = MIN_SITE_COUNT
    while S <= max_s:
        sizes.append(S)
        S <<= 1
    return sizes


def generate_vectors(
    algos,
    max_s: int,
    max_t: int,
    steady_extra: int = 6,
    seed: int = DEFAULT_SEED,
) -> list[TestVector]:
    """Exhaustive grid plus sampled large-T steady rows.

    ``algos`` is a sequence of algorithm tokens.  For each algorithm the
    grid covers every power-of-two S in [4, max_s] (a hybrid instead uses
    its own total) and every T in [0, min(max_t, supported length)).
    ``steady_extra`` large-T rows per steady S are drawn from
    [max_t, max_t + 2**48) with the given seed.
    """
    rng = random.Random(seed)
    vectors: list[TestVector] = []
    for token in algos:
        algo = parse_algorithm(token)
        for S in _grid_sizes(algo, max_s):
            cap = stream_capacity(algo, S)
            t_hi = max_t if cap is None else min(max_t, cap)
            for T in range(t_hi):
                expected = tuple(sorted(site_selection(algo, S, T)))
                vectors.append(TestVector(token, S, T, expected))
            if algo.kind == "steady" and steady_extra > 0:
                for T in sorted(
                    rng.randrange(max_t, max_t + LARGE_T_SPAN)
                    for _ in range(steady_extra)
                ):
                    expected = tuple(sorted(site_selection(algo, S, T)))
                    vectors.append(TestVector(token, S, T, expected))
    return vectors


def check_vectors(vectors) -> list[str]:
    """Recompute every vector; returns one message per mismatch."""
    mismatches = []
    for idx, vec in enumerate(vectors):
        try:
            algo = parse_algorithm(vec.algo)
            got = tuple(sorted(site_selection(algo, vec.S, vec.T)))
        except StreamSieveError as exc:
            mismatches.append(f"vector {idx} ({vec.algo} S={vec.S} T={vec.T}): {exc}")
            continue
        if got != vec.expected:
            mismatches.append(
                f"vector {idx} ({vec.algo} S={vec.S} T={vec.T}): "
                f"expected {list(vec.expected)}, got {list(got)}"
            )
    return mismatches


def write_vectors_csv(fileobj, vectors) -> None:
    writer = csv.writer(fileobj, lineterminator="\n")
    writer.writerow(VECTOR_FIELDS)
    for vec in vectors:
        writer.writerow(
            [vec.algo, vec.S, vec.T, ";".join(str(k) for k in vec.expected)]
        )


def read_vectors_csv(fileobj) -> list[TestVector]:
    reader = csv.reader(fileobj)
    try:
        header = next(reader)
    except StopIteration:
        raise VectorFormatError("empty vector file") from None
    if tuple(header) != VECTOR_FIELDS:
        raise VectorFormatError(
            f"expected header {list(VECTOR_FIELDS)}, got {header!r}"
        )
    vectors = []
    for lineno, row in enumerate(reader, start=2):
        if len(row) != len(VECTOR_FIELDS):
            raise VectorFormatError(f"line {lineno}: expected 4 fields, got {row!r}")
        token, s_text, t_text, sites_text = row
        try:
            S = int(s_text)
            T = int(t_text)
            expected = tuple(
                int(part) for part in sites_text.split(";") if part != ""
            )
        except ValueError as exc:
            raise VectorFormatError(f"line {lineno}: {exc}") from None
        vectors.append(TestVector(token, S, T, expected))
    return vectors
