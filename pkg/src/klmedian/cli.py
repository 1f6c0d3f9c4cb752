"""Batch command-line front end.

Exit codes: 0 success, 1 usage error, 2 data error, 3 reduction cap exceeded
(``reduce`` only; ``cluster`` reports overruns as warnings).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .cluster import nltas_pipeline
from .core import InvalidSeriesError, as_series
from .frechet import discrete_frechet
from .profiles import DEFAULT_SEARCH_CAP, ReductionCache, reduce_dataset
from .simplify import min_error_simplification

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_CAP = 0, 1, 2, 3


class CorpusError(ValueError):
    """Malformed input file."""


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class Corpus:
    ids: tuple
    series: tuple

    def __len__(self):
        return len(self.ids)


def _detect_format(path: str) -> str:
    return "jsonl" if path.endswith((".jsonl", ".ndjson", ".json")) else "csv"


def _parse_csv_line(line: str, lineno: int):
    fields = line.split(",")
    try:
        values = [float(f) for f in fields]
    except ValueError:
        raise CorpusError(f"line {lineno}: expected comma-separated numbers") from None
    return values


def _parse_jsonl_line(line: str, lineno: int):
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise CorpusError(f"line {lineno}: invalid JSON ({exc.msg})") from None
    if not isinstance(obj, dict) or "id" not in obj or "values" not in obj:
        raise CorpusError(f'line {lineno}: expected an object with "id" and "values"')
    if not isinstance(obj["id"], str):
        raise CorpusError(f'line {lineno}: "id" must be a string')
    vals = obj["values"]
    if not isinstance(vals, list) or any(
        isinstance(v, bool) or not isinstance(v, (int, float)) for v in vals
    ):
        raise CorpusError(f'line {lineno}: "values" must be an array of numbers')
    return obj["id"], vals


def parse_corpus(path: str, fmt: str | None = None) -> Corpus:
    """Read a csv or jsonl corpus; raises ``CorpusError`` naming the bad line."""
    fmt = fmt or _detect_format(path)
    with open(path) as fh:
        lines = fh.read().splitlines()
    ids, series = [], []
    for lineno, line in enumerate(lines, 1):
        if not line.strip():
            if all(not rest.strip() for rest in lines[lineno:]):
                break
            raise CorpusError(f"line {lineno}: empty row")
        if fmt == "csv":
            sid, values = str(lineno), _parse_csv_line(line, lineno)
        elif fmt == "jsonl":
            sid, values = _parse_jsonl_line(line, lineno)
        else:
            raise ValueError(f"unknown format {fmt!r}")
        try:
            s = as_series(values)
        except InvalidSeriesError as exc:
            raise CorpusError(f"line {lineno}: {exc}") from None
        if sid in ids:
            raise CorpusError(f"line {lineno}: duplicate id {sid!r}")
        ids.append(sid)
        series.append(s)
    if not ids:
        raise CorpusError(f"{path}: no series found")
    return Corpus(tuple(ids), tuple(series))


def _dumps(obj) -> str:
    return json.dumps(obj, separators=(", ", ": "), allow_nan=False)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _finite_float(text):
    v = float(text)
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError("must be finite")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "jsonl"), help="input format (default: by extension)")
    common.add_argument("--verbose", action="store_true", help="stage timings on stderr")
    common.add_argument("--threads", type=_positive_int, default=os.cpu_count() or 1)

    p = _Parser(prog="klmedian", description="(k,l)-median clustering of time series under the discrete Frechet distance")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    f = sub.add_parser("frechet", parents=[common], help="distance between two single-series files")
    f.add_argument("--a", required=True)
    f.add_argument("--b", required=True)

    s = sub.add_parser("simplify", parents=[common], help="minimum-error simplification per series")
    s.add_argument("--input", required=True)
    s.add_argument("--ell", type=_positive_int, required=True)

    r = sub.add_parser("reduce", parents=[common], help="complexity reduction per series")
    r.add_argument("--input", required=True)
    r.add_argument("--ell", type=_positive_int, required=True)
    r.add_argument("--eps", type=_finite_float, required=True)
    r.add_argument("--cap", type=_positive_int, default=DEFAULT_SEARCH_CAP)
    r.add_argument("--cache")

    c = sub.add_parser("cluster", parents=[common], help="(k,l)-median clustering")
    c.add_argument("--input", required=True)
    c.add_argument("--k", type=_positive_int, required=True)
    c.add_argument("--ell", type=_positive_int, required=True)
    c.add_argument("--eps", type=_finite_float, required=True)
    c.add_argument("--solver", choices=("exhaustive", "local-search"), default="exhaustive")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--cap", type=_positive_int, default=DEFAULT_SEARCH_CAP)
    c.add_argument("--cache")
    return p


def _load_cache(path):
    if path and os.path.exists(path):
        return ReductionCache.load(path)
    return ReductionCache()


def _cmd_frechet(args, out):
    a = parse_corpus(args.a, args.format)
    b = parse_corpus(args.b, args.format)
    if len(a) != 1 or len(b) != 1:
        raise CorpusError("frechet expects exactly one series per file")
    out.write(_dumps({"distance": discrete_frechet(a.series[0], b.series[0])}) + "\n")
    return EXIT_OK


def _cmd_simplify(args, out):
    corpus = parse_corpus(args.input, args.format)
    for sid, x in zip(corpus.ids, corpus.series):
        simp = min_error_simplification(x, args.ell)
        out.write(_dumps({"id": sid, "simplified": list(simp.series), "delta": simp.error}) + "\n")
    return EXIT_OK


def _cmd_reduce(args, out):
    if not 0 < args.eps <= 1:
        raise UsageError("--eps must lie in (0, 1]")
    corpus = parse_corpus(args.input, args.format)
    cache = _load_cache(args.cache)
    status = EXIT_OK
    with ThreadPoolExecutor(max_workers=args.threads) as pool:
        reds = reduce_dataset(corpus.series, args.ell, args.eps, args.cap, cache, pool)
    for sid, x, red in zip(corpus.ids, corpus.series, reds):
        rec = {
            "id": sid,
            "reduced": list(red.series),
            "original_complexity": len(x),
            "reduced_complexity": len(red.series),
        }
        if red.warning:
            rec["warning"] = red.warning
            status = EXIT_CAP
        out.write(_dumps(rec) + "\n")
    if args.cache:
        cache.save(args.cache)
    if args.verbose:
        print(f"cache: {cache.hits} hits, {cache.misses} searches", file=sys.stderr)
    return status


def _cmd_cluster(args, out):
    if not 0 < args.eps <= 0.5:
        raise UsageError("--eps must lie in (0, 1/2]")
    corpus = parse_corpus(args.input, args.format)
    cache = _load_cache(args.cache)
    solver = args.solver.replace("-", "_")
    with ThreadPoolExecutor(max_workers=args.threads) as pool:
        sol = nltas_pipeline(
            list(corpus.series), args.k, args.ell, args.eps,
            solver=solver, seed=args.seed, cap=args.cap, cache=cache, executor=pool,
        )
    if args.cache:
        cache.save(args.cache)
    if sol.stats["warnings"]:
        print(f"warning: {sol.stats['warnings']} series kept above the complexity cap", file=sys.stderr)
    if args.verbose:
        for stage, secs in sol.stats["timings"].items():
            print(f"{stage}: {secs:.3f}s", file=sys.stderr)
    result = {
        "centers": [list(c) for c in sol.centers],
        "assignment": dict(zip(corpus.ids, sol.assignment)),
        "cost": sol.cost,
        "solver": args.solver,
        "stats": {
            "cache_hits": sol.stats["cache_hits"],
            "candidates": sol.stats["candidates"],
            "reduced_max_complexity": sol.stats["reduced_max_complexity"],
        },
    }
    out.write(_dumps(result) + "\n")
    return EXIT_OK


_COMMANDS = {
    "frechet": _cmd_frechet,
    "simplify": _cmd_simplify,
    "reduce": _cmd_reduce,
    "cluster": _cmd_cluster,
}


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    t0 = time.perf_counter()
    try:
        code = _COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"klmedian: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CorpusError, OSError) as exc:
        print(f"klmedian: {exc}", file=sys.stderr)
        return EXIT_DATA
    if args.verbose:
        print(f"total: {time.perf_counter() - t0:.3f}s", file=sys.stderr)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
