"""Command-line front end.

Subcommands:

* explode   -- turn a CSV of dumped buffers into one row per site
* validate  -- freeze selections to a vector file, or re-check one
* bench     -- time site selection over ingest windows, CSV out
* lookup    -- print the site -> ingest-time table for one buffer

Exit codes follow the usual convention: 0 success, 1 data-level failures
(rejected rows, mismatched vectors, impossible lookups), 2 usage errors.
"""

from __future__ import annotations

import argparse
import csv
import sys

from .algorithms import parse_algorithm
from .benchmark import BENCH_FIELDS, run_benchmark
from .conformance import (
    DEFAULT_SEED,
    check_vectors,
    generate_vectors,
    read_vectors_csv,
    write_vectors_csv,
)
from .errors import StreamSieveError, VectorFormatError
from .lookup import explode_row, last_write_times
from .surface import VALID_VALUE_BITS

REQUIRED_INPUT_COLUMNS = ("dstream_algo", "dstream_S", "dstream_T", "dstream_storage_hex")
RECORD_COLUMNS = ("dstream_site", "dstream_Tbar", "dstream_value")

USAGE_ERROR = 2


def _fail_usage(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return USAGE_ERROR


def _cmd_explode(args) -> int:
    try:
        infile = open(args.input, newline="")
    except OSError as exc:
        return _fail_usage(f"cannot read {args.input}: {exc}")
    with infile:
        reader = csv.DictReader(infile)
        fields = reader.fieldnames
        if fields is None:
            return _fail_usage(f"{args.input} has no header row")
        missing = [c for c in REQUIRED_INPUT_COLUMNS if c not in fields]
        if missing:
            return _fail_usage(f"{args.input} is missing columns: {', '.join(missing)}")
        rows = list(reader)

    out_fields = ["dstream_row", *fields, *RECORD_COLUMNS]
    rejects: list[tuple[int, str]] = []
    with open(args.output, "w", newline="") as outfile:
        writer = csv.DictWriter(outfile, fieldnames=out_fields, lineterminator="\n")
        writer.writeheader()
        for ordinal, row in enumerate(rows):
            try:
                triples = explode_row(
                    row["dstream_algo"],
                    int(row["dstream_S"]),
                    int(row["dstream_T"]),
                    args.value_bits,
                    row["dstream_storage_hex"],
                )
            except (ValueError, TypeError) as exc:
                rejects.append((ordinal, str(exc)))
                continue
            for site, tbar, value in triples:
                out = dict(row)
                out["dstream_row"] = ordinal
                out["dstream_site"] = site
                out["dstream_Tbar"] = "" if tbar is None else tbar
                out["dstream_value"] = "" if value is None else value
                writer.writerow(out)

    # the rejects report always exists so downstream scripts can rely on it
    with open(args.output + ".rejects", "w", newline="") as rejfile:
        writer = csv.writer(rejfile, lineterminator="\n")
        writer.writerow(["dstream_row", "error"])
        writer.writerows(rejects)

    if rejects:
        print(f"{len(rejects)} of {len(rows)} rows rejected", file=sys.stderr)
        return 1
    return 0


def _cmd_validate(args) -> int:
    algos = [token for token in args.algos.split(",") if token]
    if args.generate is not None:
        try:
            vectors = generate_vectors(
                algos, args.max_s, args.max_t, args.steady_extra, args.seed
            )
        except StreamSieveError as exc:
            return _fail_usage(str(exc))
        with open(args.generate, "w", newline="") as fileobj:
            write_vectors_csv(fileobj, vectors)
        print(f"wrote {len(vectors)} vectors to {args.generate}", file=sys.stderr)
        return 0
    try:
        with open(args.check, newline="") as fileobj:
            vectors = read_vectors_csv(fileobj)
    except OSError as exc:
        return _fail_usage(f"cannot read {args.check}: {exc}")
    except VectorFormatError as exc:
        return _fail_usage(str(exc))
    mismatches = check_vectors(vectors)
    for message in mismatches:
        print(message, file=sys.stderr)
    print(
        f"checked {len(vectors)} vectors: {len(mismatches)} mismatches",
        file=sys.stderr,
    )
    return 1 if mismatches else 0


def _parse_int_list(text: str, flag: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part]
    except ValueError:
        raise ValueError(f"{flag} expects comma-separated integers, got {text!r}")


def _parse_windows(text: str) -> list[tuple[int, int]]:
    windows = []
    for part in text.split(","):
        if not part:
            continue
        lo_text, sep, hi_text = part.partition(":")
        if not sep:
            raise ValueError(f"--depths expects lo:hi windows, got {part!r}")
        windows.append((int(lo_text), int(hi_text)))
    return windows


def _cmd_bench(args) -> int:
    if args.replicates < 1:
        return _fail_usage("--replicates must be at least 1")
    try:
        algo = parse_algorithm(args.algo)
        sizes = _parse_int_list(args.sizes, "--sizes")
        windows = _parse_windows(args.depths)
        results = run_benchmark(algo, sizes, windows, args.replicates)
    except (ValueError, TypeError) as exc:
        return _fail_usage(str(exc))
    out = open(args.output, "w", newline="") if args.output else sys.stdout
    try:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(BENCH_FIELDS)
        for row in results:
            writer.writerow(
                [
                    row.algo,
                    row.S,
                    row.t_lo,
                    row.t_hi,
                    row.items,
                    row.total_ns,
                    f"{row.ns_per_item:.3f}",
                    row.replicate,
                ]
            )
    finally:
        if args.output:
            out.close()
    return 0


def _cmd_lookup(args) -> int:
    try:
        algo = parse_algorithm(args.algo)
        entries = last_write_times(algo, args.S, args.T)
    except (ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for site, tbar in enumerate(entries):
        print(f"{site}\t{'' if tbar is None else tbar}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="streamsieve",
        description="Fixed-capacity stream downsampling buffers and tools.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_explode = sub.add_parser(
        "explode",
        help="expand dumped buffers into one row per site",
        description=(
            "Read a CSV with dstream_algo, dstream_S, dstream_T and "
            "dstream_storage_hex columns and write one output row per site, "
            "adding dstream_site, dstream_Tbar and dstream_value. Other "
            "columns pass through verbatim. Failing rows go to "
            "<output>.rejects and exit status 1."
        ),
    )
    p_explode.add_argument("input", help="input CSV of dumped buffers")
    p_explode.add_argument("output", help="output CSV, one row per site")
    p_explode.add_argument(
        "--value-bits",
        type=int,
        choices=VALID_VALUE_BITS,
        required=True,
        help="item width shared by every row of the file",
    )
    p_explode.set_defaults(func=_cmd_explode)

    p_validate = sub.add_parser(
        "validate",
        help="generate or check conformance vector files",
        description=(
            "Freeze site selections over an exhaustive grid to a CSV vector "
            "file, or recompute an existing file and report mismatches."
        ),
    )
    mode = p_validate.add_mutually_exclusive_group(required=True)
    mode.add_argument("--generate", metavar="PATH", help="write vectors to PATH")
    mode.add_argument("--check", metavar="PATH", help="recheck vectors from PATH")
    p_validate.add_argument(
        "--algos",
        default="steady,stretched,tilted",
        help="comma-separated algorithm tokens (default: %(default)s)",
    )
    p_validate.add_argument("--max-S", dest="max_s", type=int, default=16)
    p_validate.add_argument("--max-T", dest="max_t", type=int, default=256)
    p_validate.add_argument(
        "--steady-extra",
        type=int,
        default=6,
        help="sampled large-T steady vectors per size (default: %(default)s)",
    )
    p_validate.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p_validate.set_defaults(func=_cmd_validate)

    p_bench = sub.add_parser(
        "bench",
        help="time site selection over ingest windows",
        description=(
            "Time selection for each size and half-open depth window, one "
            "CSV row per replicate. Steady windows may start anywhere; the "
            "replay-defined profiles require windows starting at 0."
        ),
    )
    p_bench.add_argument("--algo", default="steady")
    p_bench.add_argument("--sizes", default="64,256,1024")
    p_bench.add_argument("--depths", default="0:65536", help="comma-separated lo:hi windows")
    p_bench.add_argument("--replicates", type=int, default=10)
    p_bench.add_argument("--output", help="write CSV here instead of stdout")
    p_bench.set_defaults(func=_cmd_bench)

    p_lookup = sub.add_parser(
        "lookup",
        help="print the site -> ingest-time table for one buffer",
        description=(
            "Print one line per site, 'site<TAB>ingest_time', with an empty "
            "time for never-written sites."
        ),
    )
    p_lookup.add_argument("--algo", required=True)
    p_lookup.add_argument("--S", type=int, required=True)
    p_lookup.add_argument("--T", type=int, required=True)
    p_lookup.set_defaults(func=_cmd_lookup)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE_ERROR
    return args.func(args)


def run() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    run()
