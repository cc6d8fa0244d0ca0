"""Command line front end.

Exit codes: 0 success, 1 usage error, 2 verification failure (including
rejected inputs such as an unrealizable record set), 3 internal invariant
breach.  The environment variable ``MAHONIAN_MAX_SIZE`` overrides the
default corpus bound of the exhaustive subcommands.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Sequence

from . import bijection, enumeration, miner, verify, words
from .bijection import BijectionInternalError, NotConstructibleError
from .patterns import (
    PatternError,
    count_occurrences,
    count_restricted,
    eval_combo,
    parse_pattern,
    resolve_stat,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFICATION = 2
EXIT_INTERNAL = 3


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse defaults to status 2
        self.print_usage(sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _default_max_size() -> int:
    raw = os.environ.get("MAHONIAN_MAX_SIZE", "6")
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"MAHONIAN_MAX_SIZE must be an integer, got {raw!r}") from None


def _build_parser() -> _Parser:
    parser = _Parser(prog="mahonian", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_stat = sub.add_parser("stat", help="evaluate a statistic on a word")
    p_stat.add_argument("--stat", required=True, help="builtin name or combination grammar")
    p_stat.add_argument("--word", required=True)
    p_stat.add_argument("--json", action="store_true")

    p_count = sub.add_parser("count", help="count pattern occurrences")
    p_count.add_argument("--pattern", required=True)
    p_count.add_argument("--word", required=True)
    p_count.add_argument("--anchor", type=int, help="1-based pattern position to pin")
    p_count.add_argument("--value", type=int, help="word value the anchor must take")
    p_count.add_argument("--json", action="store_true")

    p_phi = sub.add_parser("phi", help="apply the word involution")
    p_phi.add_argument("--word", required=True)
    p_phi.add_argument("--trace", action="store_true")
    p_phi.add_argument("--json", action="store_true")

    p_delta = sub.add_parser("delta", help="word -> letter record set")
    p_delta.add_argument("--word", required=True)
    p_delta.add_argument("--json", action="store_true")

    p_zeta = sub.add_parser("zeta", help="letter record set -> word")
    p_zeta.add_argument("--file", help="record lines 'value dup position r'; default stdin")
    p_zeta.add_argument("--json", action="store_true")

    for name, help_text in (
        ("dist", "exact histogram of a statistic over a class"),
        ("joint", "exact histogram of (des, statistic) over a class"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--stat", required=True)
        p.add_argument("--multiset", required=True, help="e.g. 1:2,2:1 (or a word)")
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--json", action="store_true")

    p_mah = sub.add_parser("mahonian", help="test equidistribution with the word major index")
    p_mah.add_argument("--stat", required=True)
    p_mah.add_argument("--max-size", type=int, default=None)
    p_mah.add_argument("--threads", type=int, default=1)
    p_mah.add_argument("--json", action="store_true")

    p_mine = sub.add_parser("mine", help="search extensions that stay Mahonian")
    p_mine.add_argument("--base", required=True, help="mad|madl|mak|makl or combination grammar")
    p_mine.add_argument("--add", type=int, required=True, help="number of weaker patterns to add")
    p_mine.add_argument("--max-size", type=int, default=None)
    p_mine.add_argument("--threads", type=int, default=1)
    p_mine.add_argument("--json", action="store_true")

    p_verify = sub.add_parser("verify", help="run the exhaustive property suites")
    p_verify.add_argument("--suite", choices=sorted(verify.SUITES), default="all")
    p_verify.add_argument("--max-size", type=int, default=None)
    p_verify.add_argument("--json", action="store_true")

    for p in sub.choices.values():
        p.add_argument("--out", help="write output to a file instead of stdout")
    return parser


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _hist_lines(hist: dict) -> str:
    lines = []
    for key in sorted(hist):
        if isinstance(key, tuple):
            lines.append("\t".join(str(k) for k in key) + f"\t{hist[key]}")
        else:
            lines.append(f"{key}\t{hist[key]}")
    return "\n".join(lines)


def _hist_json(spec, stat_text, hist) -> str:
    counts = {
        (",".join(str(k) for k in key) if isinstance(key, tuple) else str(key)): count
        for key, count in sorted(hist.items())
    }
    return json.dumps(
        {
            "multiset": {str(v): c for v, c in sorted(spec.items())},
            "stat": stat_text,
            "counts": counts,
            "total": sum(hist.values()),
        }
    )


def _render_trace(trace: bijection.PhiTrace) -> str:
    lines = [
        f"word : {words.format_word(trace.word)}",
        f"blocks : {words.format_blocks(trace.word)}",
        "-- letter records --",
        "i : " + " ".join(str(i + 1) for i in range(len(trace.word))),
        "v : " + " ".join(str(r.value) for r in trace.records),
        "d : " + " ".join(str(r.dup_index) for r in trace.records),
        "p : " + " ".join(r.position.value for r in trace.records),
        "r : " + " ".join(str(r.r_embr) for r in trace.records),
        "-- partner maps --",
    ]
    for value, pairs in trace.partner_maps:
        mapped = " ".join(
            f"({a.value},{a.dup_index})->({b.value},{b.dup_index})" for a, b in pairs
        )
        lines.append(f"v={value} : {mapped}")
    lines.append("-- position remap --")
    for row in trace.theta:
        lines.append(
            f"({row.source.value},{row.source.dup_index}) {row.source.position.value}"
            f" x {row.partner.position.value} -> {row.image.position.value}"
            f" r={row.image.r_embr}"
        )
    lines.append("-- insertion steps --")
    for rec, state in trace.steps:
        lines.append(f"{rec.value}_{rec.dup_index} {rec.position.value} : {state}")
    lines.append(f"result : {words.format_word(trace.result)}")
    lines.append(f"blocks : {words.format_blocks(trace.result)}")
    return "\n".join(lines)


def _cmd_stat(args) -> int:
    combo = resolve_stat(args.stat)
    w = words.parse_word(args.word)
    value = eval_combo(combo, w)
    if args.json:
        _emit(json.dumps({"stat": args.stat, "word": words.format_word(w), "value": value}), args.out)
    else:
        _emit(str(value), args.out)
    return EXIT_OK


def _cmd_count(args) -> int:
    pattern = parse_pattern(args.pattern)
    w = words.parse_word(args.word)
    if (args.anchor is None) != (args.value is None):
        raise UsageError("--anchor and --value must be given together")
    if args.anchor is not None:
        value = count_restricted(pattern, args.anchor, args.value, w)
    else:
        value = count_occurrences(pattern, w)
    if args.json:
        _emit(json.dumps({"pattern": args.pattern, "word": words.format_word(w), "value": value}), args.out)
    else:
        _emit(str(value), args.out)
    return EXIT_OK


def _cmd_phi(args) -> int:
    w = words.parse_word(args.word)
    if args.trace:
        trace = bijection.phi_trace(w)
        _emit(_render_trace(trace), args.out)
        return EXIT_OK
    image = bijection.phi(w)
    if args.json:
        _emit(json.dumps({"word": words.format_word(w), "image": words.format_word(image)}), args.out)
    else:
        _emit(words.format_word(image), args.out)
    return EXIT_OK


def _cmd_delta(args) -> int:
    w = words.parse_word(args.word)
    records = bijection.delta(w)
    if args.json:
        payload = [
            {"value": r.value, "dup": r.dup_index, "position": r.position.value, "r": r.r_embr}
            for r in bijection.canonical(records)
        ]
        _emit(json.dumps(payload), args.out)
    else:
        _emit(bijection.format_records(records), args.out)
    return EXIT_OK


def _cmd_zeta(args) -> int:
    if args.file:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = sys.stdin.read()
    records = bijection.parse_records(text)
    try:
        w = bijection.zeta(records)
    except NotConstructibleError as exc:
        print(f"not constructible: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION
    if args.json:
        _emit(json.dumps({"word": words.format_word(w)}), args.out)
    else:
        _emit(words.format_word(w), args.out)
    return EXIT_OK


def _cmd_dist(args, joint: bool) -> int:
    combo = resolve_stat(args.stat)
    spec = enumeration.parse_spec(args.multiset)
    if joint:
        hist = enumeration.joint_distribution(combo, spec, threads=args.threads)
    else:
        hist = enumeration.distribution(combo, spec, threads=args.threads)
    _emit(_hist_json(spec, args.stat, hist) if args.json else _hist_lines(hist), args.out)
    return EXIT_OK


def _cmd_mahonian(args) -> int:
    combo = resolve_stat(args.stat)
    max_size = args.max_size if args.max_size is not None else _default_max_size()
    reference = resolve_stat("maj_word")
    for spec in enumeration.multiset_profiles(max_size):
        if not enumeration.equidistributed(combo, reference, spec, threads=args.threads):
            label = enumeration.format_spec(spec)
            if args.json:
                _emit(json.dumps({"stat": args.stat, "mahonian": False, "counterexample": label}), args.out)
            else:
                _emit(f"FAIL @ {label}", args.out)
            return EXIT_VERIFICATION
    if args.json:
        _emit(json.dumps({"stat": args.stat, "mahonian": True, "max_size": max_size}), args.out)
    else:
        _emit("PASS", args.out)
    return EXIT_OK


def _cmd_mine(args) -> int:
    base = miner.base_combo(args.base)
    max_size = args.max_size if args.max_size is not None else _default_max_size()
    multisets = enumeration.multiset_profiles(max_size)
    results = miner.mine(base, args.add, multisets, threads=args.threads)
    if args.json:
        payload = [
            {
                "combo": str(r.candidate),
                "passed": r.passed,
                "first_failure": enumeration.format_spec(dict(r.first_failure)) if r.first_failure else None,
            }
            for r in results
        ]
        _emit(json.dumps(payload), args.out)
    else:
        _emit("\n".join(r.line() for r in results), args.out)
    return EXIT_OK


def _cmd_verify(args) -> int:
    max_size = args.max_size if args.max_size is not None else _default_max_size()
    started = time.perf_counter()
    results = verify.run_suite(args.suite, max_size)
    elapsed = time.perf_counter() - started
    if args.json:
        payload = [
            {"suite": r.name, "checks": r.checks, "failures": r.failures, "notes": r.notes}
            for r in results
        ]
        _emit(json.dumps(payload), args.out)
    else:
        lines = []
        for r in results:
            status = "ok" if r.ok else f"FAILED ({len(r.failures)} failures)"
            lines.append(f"{r.name}: {r.checks} checks, {status}")
            lines.extend(f"  ! {f}" for f in r.failures[:10])
            lines.extend(f"  note: {n}" for n in r.notes)
        lines.append(f"elapsed: {elapsed:.2f}s")
        _emit("\n".join(lines), args.out)
    return EXIT_OK if all(r.ok for r in results) else EXIT_VERIFICATION


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse calls sys.exit for --help (code 0) and usage errors
        return int(exc.code or 0)
    try:
        if args.command == "stat":
            return _cmd_stat(args)
        if args.command == "count":
            return _cmd_count(args)
        if args.command == "phi":
            return _cmd_phi(args)
        if args.command == "delta":
            return _cmd_delta(args)
        if args.command == "zeta":
            return _cmd_zeta(args)
        if args.command == "dist":
            return _cmd_dist(args, joint=False)
        if args.command == "joint":
            return _cmd_dist(args, joint=True)
        if args.command == "mahonian":
            return _cmd_mahonian(args)
        if args.command == "mine":
            return _cmd_mine(args)
        if args.command == "verify":
            return _cmd_verify(args)
        raise UsageError(f"unknown command {args.command!r}")
    except (UsageError, PatternError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BijectionInternalError as exc:
        print(f"internal invariant breach: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
