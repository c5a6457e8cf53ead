"""Command-line entry point: ``dflog {ingest,gen,dfr,dfg,query,bench}``.

Exit status is 0 on success, 1 on usage errors and 2 on data errors.
"""

from __future__ import annotations

import argparse
import csv
import logging
import sys

from . import bench as bench_mod
from .baselines import FlatTable, nested_join_dfr, nested_join_dfr_indexed, sorted_stream_dfr
from .core import brute_force_dfr, directly_follows
from .dfg import build_dfg, to_dot, to_json
from .incremental import DfrMaintainer
from .ingest import CsvConfig, DataError, TimeFormat, read_csv, write_csv
from .model import dfr_to_rows
from .query import DFR_COLUMNS, Catalog, QueryError, QuerySyntaxError, execute, parse
from .synth import gen_merge_cases, gen_relabel, synth_base_log

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2

APPROACHES = {
    "native": lambda log: directly_follows(log),
    "oracle": lambda log: brute_force_dfr(log),
    "nested": lambda log: nested_join_dfr(FlatTable.from_log(log)),
    "nested-indexed": lambda log: nested_join_dfr_indexed(FlatTable.from_log(log).with_index()),
    "sorted-stream": lambda log: sorted_stream_dfr(FlatTable.from_log(log))[0],
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_csv_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--case", default="case", help="case id column (default: case)")
    p.add_argument("--activity", default="activity", help="activity column (default: activity)")
    p.add_argument("--time", default="time", help="timestamp column (default: time)")
    p.add_argument(
        "--time-format",
        choices=["auto", "epoch-micros", "iso8601"],
        default="auto",
        help="timestamp encoding; auto reads integers as epoch micros and anything else as ISO-8601",
    )
    p.add_argument("--delimiter", default=",")
    p.add_argument("--no-header", action="store_true", help="columns are case, activity, time in that order")


def _csv_config(args) -> CsvConfig:
    fmt = {"auto": None, "epoch-micros": TimeFormat.EPOCH_MICROS, "iso8601": TimeFormat.ISO8601}[args.time_format]
    try:
        return CsvConfig(args.case, args.activity, args.time, fmt, args.delimiter, not args.no_header)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dflog", description="Event-log query engine with a native directly-follows operator.")
    parser.add_argument("--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("ingest", help="load a CSV log and report counts")
    p.add_argument("csv")
    _add_csv_flags(p)
    p.add_argument("--incremental", action="store_true", help="replay events through the incremental maintainer")

    p = sub.add_parser("gen", help="write a synthetic log")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--cases", type=int, required=True)
    p.add_argument("--activities", type=int, required=True)
    p.add_argument("--mean-len", type=int, required=True)
    grow = p.add_mutually_exclusive_group()
    grow.add_argument("--merge", type=int, metavar="K", help="repeat every case K times")
    grow.add_argument("--relabel", type=int, metavar="K", help="split activities into K partitions")
    p.add_argument("--out", required=True)

    p = sub.add_parser("dfr", help="print the directly-follows relation as CSV")
    p.add_argument("csv")
    _add_csv_flags(p)
    p.add_argument("--approach", choices=list(APPROACHES), default="native")

    p = sub.add_parser("dfg", help="write the directly-follows graph as DOT or JSON")
    p.add_argument("csv")
    _add_csv_flags(p)
    p.add_argument("--out", required=True, help="output path ending in .dot or .json")

    p = sub.add_parser("query", help="run a query over CSV-backed tables")
    p.add_argument("-e", "--expr", help="query text (read from stdin when omitted)")
    p.add_argument("--table", action="append", default=[], metavar="NAME=CSV", help="register a table")
    _add_csv_flags(p)
    p.add_argument("--format", choices=["csv", "table"], default="csv")

    p = sub.add_parser("bench", help="run the benchmark described by a config file")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True, help="report CSV path")
    return parser


def _print_rows(columns, rows, fmt: str, out) -> None:
    if fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(columns)
        w.writerows(rows)
        return
    cells = [list(map(str, columns))] + [[str(v) for v in r] for r in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(columns))]
    sep = "+" + "+".join("-" * (w + 2) for w in widths) + "+"
    print(sep, file=out)
    for k, row in enumerate(cells):
        print("| " + " | ".join(c.ljust(w) for c, w in zip(row, widths)) + " |", file=out)
        if k == 0:
            print(sep, file=out)
    print(sep, file=out)


def cmd_ingest(args) -> int:
    log = read_csv(args.csv, _csv_config(args))
    print(f"cases: {len(log)}")
    print(f"events: {log.n_events}")
    print(f"activities: {len(log.activities())}")
    batch = directly_follows(log)
    print(f"dfr pairs: {len(batch)}")
    if args.incremental:
        m = DfrMaintainer()
        for e in log.events():
            m.insert_event(e)
        if m.snapshot() != batch:
            print("incremental: MISMATCH against batch result", file=sys.stderr)
            return EXIT_DATA
        print(f"incremental: {m.event_count} inserts, snapshot matches batch")
    return EXIT_OK


def cmd_gen(args) -> int:
    if min(args.activities, args.mean_len) < 1 or args.cases < 0:
        raise UsageError("--cases must be >= 0, --activities and --mean-len >= 1")
    log = synth_base_log(args.seed, args.cases, args.activities, args.mean_len)
    if args.merge is not None:
        if args.merge < 1:
            raise UsageError("--merge must be >= 1")
        log = gen_merge_cases(log, args.merge)
    if args.relabel is not None:
        if args.relabel < 1:
            raise UsageError("--relabel must be >= 1")
        log = gen_relabel(log, args.relabel)
    n = write_csv(log, args.out)
    print(f"wrote {n} events in {len(log)} cases to {args.out}")
    return EXIT_OK


def cmd_dfr(args) -> int:
    log = read_csv(args.csv, _csv_config(args))
    _print_rows(DFR_COLUMNS, dfr_to_rows(APPROACHES[args.approach](log)), "csv", sys.stdout)
    return EXIT_OK


def cmd_dfg(args) -> int:
    if args.out.endswith(".dot"):
        render = to_dot
    elif args.out.endswith(".json"):
        render = to_json
    else:
        raise UsageError(f"--out must end in .dot or .json, got {args.out!r}")
    g = build_dfg(read_csv(args.csv, _csv_config(args)))
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(render(g))
    print(f"wrote {len(g.activities)} activities and {len(g.edges)} edges to {args.out}")
    return EXIT_OK


def cmd_query(args) -> int:
    cfg = _csv_config(args)
    cat = Catalog()
    for spec in args.table:
        name, sep, path = spec.partition("=")
        if not sep or not name or not path:
            raise UsageError(f"--table expects NAME=CSV, got {spec!r}")
        cat.register(name, read_csv(path, cfg), (cfg.case_column, cfg.activity_column, cfg.time_column))
    text = args.expr if args.expr is not None else sys.stdin.read()
    result = execute(parse(text), cat)
    _print_rows(result.columns, result.rows, args.format, sys.stdout)
    return EXIT_OK


def cmd_bench(args) -> int:
    try:
        cfg = bench_mod.load_config(args.config)
    except (ValueError, KeyError) as exc:
        raise DataError(f"{args.config}: {exc}") from None
    report = bench_mod.run_bench(cfg)
    bench_mod.write_report_csv(report, args.out)
    print(bench_mod.summarize(report))
    return EXIT_OK


COMMANDS = {
    "ingest": cmd_ingest,
    "gen": cmd_gen,
    "dfr": cmd_dfr,
    "dfg": cmd_dfg,
    "query": cmd_query,
    "bench": cmd_bench,
}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # --help or a usage error already reported by argparse
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"dflog {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"dflog {args.command}: error: no such file: {exc.filename}", file=sys.stderr)
        return EXIT_DATA
    except (DataError, QueryError, QuerySyntaxError, OSError) as exc:
        print(f"dflog {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
