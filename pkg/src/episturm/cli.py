"""Command-line front end: construct, inspect, partition, census, and verify.

Text output is one deterministic line per row; --json switches to JSON lines
carrying the same data (schema in report.schema.json next to this module).
Exit codes: 0 success, 2 usage or parse problem, 3 verification mismatch,
4 resource guard. EPISTURM_GUARD overrides the block-level guard.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .blocks import DEFAULT_LENGTH_GUARD, BlockTable
from .checks import run_battery
from .directive import DirectiveSpec, closure_prefix
from .errors import (
    AmbiguityError,
    CancellationError,
    GuardExceeded,
    InsufficientDataError,
    InvariantViolation,
    NotAFactorError,
    ParseError,
    RangeError,
    VerificationError,
)
from .oracle import certified_scan, greatest_power_prefix, max_fractional_power
from .partition import level_partition
from .powers import block_index, block_index_witness, census, prefix_index
from .singular import factor_partition
from .words import RationalIndex, shorten

_INLINE_WORD_LIMIT = 64

_USAGE_ERRORS = (ParseError, RangeError, CancellationError, NotAFactorError, InsufficientDataError)
_VERIFY_ERRORS = (VerificationError, InvariantViolation, AmbiguityError)


class Reporter:
    """Collects rows and prints them as text lines or JSON lines."""

    def __init__(self, command: str, spec_text: str, as_json: bool):
        self.command = command
        self.spec_text = spec_text
        self.as_json = as_json

    def row(self, kind: str, payload: dict, text=None) -> None:
        if self.as_json:
            print(json.dumps({"kind": kind, **payload}, ensure_ascii=True))
        elif text is not None:
            lines = [text] if isinstance(text, str) else text
            for line in lines:
                print(line)

    def status(self, ok: bool, error: str | None = None) -> None:
        if self.as_json:
            self.row("status", {"command": self.command, "spec": self.spec_text, "ok": ok, "error": error})
        elif error is not None:
            print(f"episturm {self.command}: {error}", file=sys.stderr)


def _word_fields(w: str, full: bool) -> dict:
    fields: dict = {"length": len(w), "preview": shorten(w)}
    if full or len(w) <= _INLINE_WORD_LIMIT:
        fields["word"] = w
    return fields


def _rational_fields(value: RationalIndex) -> dict:
    return {"text": str(value), "whole": value.whole, "num": value.num, "den": value.den}


def _build_table(spec: DirectiveSpec) -> BlockTable:
    raw = os.environ.get("EPISTURM_GUARD")
    if raw is None:
        return BlockTable(spec)
    try:
        level_guard = int(raw)
    except ValueError:
        raise ParseError(f"EPISTURM_GUARD must be an integer (got {raw!r})")
    return BlockTable(spec, level_guard=level_guard)


# -- subcommands ---------------------------------------------------------------


def cmd_generate(args, rep: Reporter) -> int:
    if args.length < 0:
        raise RangeError(f"length must be >= 0 (got {args.length})")
    if args.length > DEFAULT_LENGTH_GUARD:
        raise GuardExceeded(f"length {args.length} above the guard {DEFAULT_LENGTH_GUARD}")
    word = closure_prefix(DirectiveSpec.parse(args.spec), args.length)
    rep.row("prefix", {"length": len(word), "word": word}, word if word else None)
    return 0


def cmd_blocks(args, rep: Reporter) -> int:
    spec = DirectiveSpec.parse(args.spec)
    table = _build_table(spec)
    n = args.n
    w = table.block(n)
    first = table.first_letter_count(n)
    rep.row(
        "block",
        {"level": n, "first_letter_count": first, "other_letter_count": table.other_letter_count(n), **_word_fields(w, args.full)},
        f"block level {n}: {len(w)} letters ({first} of {spec.alphabet[0]!r})  {shorten(w)}",
    )
    if n >= 0:
        p = table.palindromic_prefix(n)
        rep.row(
            "palindromic-prefix",
            {"level": n, **_word_fields(p, args.full)},
            f"palindromic prefix: {len(p)} letters  {shorten(p)}",
        )
        for r in range(1, spec.k):
            g = table.block_tail(n, r)
            rep.row(
                "tail",
                {"level": n, "depth": r, **_word_fields(g, args.full)},
                f"tail depth {r}: {len(g)} letters  {shorten(g)}",
            )
    if n >= 1:
        pre = prefix_index(table, n)
        blk = block_index(table, n)
        blk_witness = block_index_witness(table, n)
        rep.row(
            "index",
            {
                "level": n,
                "prefix_index": _rational_fields(pre.value),
                "prefix_witness_length": len(pre.witness),
                "block_index": _rational_fields(blk),
                "block_witness_length": len(blk_witness),
            },
            f"indices: prefix {pre.value} (witness {len(pre.witness)} letters) / block {blk} (witness {len(blk_witness)} letters)",
        )
    return 0


def cmd_singular(args, rep: Reporter) -> int:
    spec = DirectiveSpec.parse(args.spec)
    table = _build_table(spec)
    n = args.n
    size = table.block_length(n)
    if spec.k * size * size > DEFAULT_LENGTH_GUARD:
        raise GuardExceeded(f"materializing the level-{n} partition needs ~{spec.k * size * size} letters")
    part = factor_partition(table, n)
    for r in range(spec.k):
        members = sorted(part.singular[r] if r else part.rotations)
        payload = {"level": n, "r": r, "width": size, "size": len(members), "first": members[0], "last": members[-1]}
        if args.full:
            payload["members"] = members
        label = "rotations of the block" if r == 0 else f"singular kind {r}"
        text = [f"{label}: {len(members)} factors of length {size}  {shorten(members[0])} .. {shorten(members[-1])}"]
        if args.full:
            text.extend(f"  {m}" for m in members)
        rep.row("singular-class", payload, text)
    rep.row(
        "singular-summary",
        {"level": n, "classes": spec.k, "total": part.total_count(), "expected_total": (spec.k - 1) * size + 1},
        f"total: {part.total_count()} factors in {spec.k} classes (expected {(spec.k - 1) * size + 1})",
    )
    if part.total_count() != (spec.k - 1) * size + 1:
        raise VerificationError("class sizes do not add up to the factor count")
    return 0


def _run_lengths(levels: list[int]) -> str:
    runs: list[str] = []
    i = 0
    while i < len(levels):
        j = i
        while j < len(levels) and levels[j] == levels[i]:
            j += 1
        runs.append(f"{levels[i]}" if j - i == 1 else f"{levels[i]}x{j - i}")
        i = j
    return " ".join(runs[:40]) + (" ..." if len(runs) > 40 else "")


def cmd_partition(args, rep: Reporter) -> int:
    spec = DirectiveSpec.parse(args.spec)
    table = _build_table(spec)
    n = args.n
    upto = args.m if args.m is not None else n + 2
    view = level_partition(table, n, upto)
    levels = [level for level, _, _ in view.items]
    rep.row(
        "partition",
        {
            "level": n,
            "upto": upto,
            "covered": view.covered_prefix_length,
            "piece_count": len(view.items),
            "items": [list(item) for item in view.items],
        },
        [
            f"level-{n} tiling of the block at level {upto}: {len(view.items)} pieces, {view.covered_prefix_length} letters",
            f"piece levels: {_run_lengths(levels)}",
        ],
    )
    if args.verify:
        coarser = level_partition(table, n + 1, upto)
        expanded: list[int] = []
        for level, _, _ in coarser.items:
            if level <= n:
                expanded.append(level)
                continue
            for j in range(1, spec.k):
                if level - j + 1 >= 1:
                    expanded.extend([level - j] * table.exponent(level - j + 1))
            expanded.append(level - spec.k)
        ok = expanded == levels
        rep.row(
            "verification",
            {"target": "partition", "ok": ok, "detail": None if ok else "one-step regrouping disagrees"},
            f"regrouping against the level-{n + 1} tiling: {'OK' if ok else 'MISMATCH'}",
        )
        if not ok:
            raise VerificationError(f"level-{n} tiling does not regroup the level-{n + 1} tiling")
    return 0


def cmd_index(args, rep: Reporter) -> int:
    spec = DirectiveSpec.parse(args.spec)
    table = _build_table(spec)
    if (args.n is None) == (args.all_up_to is None):
        raise ParseError("pass exactly one of --n or --all-up-to")
    levels = [args.n] if args.n is not None else list(range(1, args.all_up_to + 1))
    for n in levels:
        pre = prefix_index(table, n)
        blk = block_index(table, n)
        payload = {
            "level": n,
            "prefix_index": _rational_fields(pre.value),
            "prefix_witness_length": len(pre.witness),
            "block_index": _rational_fields(blk),
            "block_witness_length": len(block_index_witness(table, n)),
        }
        rep.row(
            "index",
            payload,
            f"level {n}: prefix index {pre.value} (witness {len(pre.witness)} letters) / block index {blk}",
        )
        if args.verify:
            host = table.block(n + spec.k + 3)
            measured = max_fractional_power(host, table.block(n))
            front = greatest_power_prefix(host, table.block(n))
            ok = measured.as_fraction() == blk.as_fraction() and front == pre.witness
            rep.row(
                "verification",
                {
                    "target": "index",
                    "level": n,
                    "ok": ok,
                    "oracle_block_index": _rational_fields(measured),
                    "oracle_prefix_witness_length": len(front),
                    "detail": None,
                },
                f"  oracle on {len(host)} letters: block index {measured}, power prefix {len(front)} letters: {'OK' if ok else 'MISMATCH'}",
            )
            if not ok:
                raise VerificationError(f"oracle disagrees with the closed form at level {n}")
    return 0


def _census_rule(table: BlockTable, row) -> str | None:
    if row.count == 0:
        return None
    if row.count == table.block_length(row.provenance.level):
        return f"all {row.count} conjugates of {shorten(row.provenance.base)}"
    return f"first {row.count} conjugates of {shorten(row.provenance.base)}"


def _census_payload(table: BlockTable, row, full: bool) -> tuple[dict, str]:
    prov = row.provenance
    payload = {
        "m": row.m,
        "l": row.l,
        "count": row.count,
        "provenance": {"kind": prov.kind, "level": prov.level, "depth": prov.depth, "multiplier": prov.multiplier},
        "rule": _census_rule(table, row),
    }
    if prov.base is not None:
        payload["base_preview"] = shorten(prov.base)
        if full or len(prov.base) <= _INLINE_WORD_LIMIT:
            payload["base"] = prov.base
    if full:
        payload["witnesses"] = sorted(row.witnesses)
    where = f"window {prov.level}"
    if prov.kind == "off-grid":
        where += ", off-grid"
    else:
        where += f", depth {prov.depth}, multiple {prov.multiplier}"
    text = f"m={row.m} l={row.l}: {row.count}  [{where}]"
    if payload.get("rule"):
        text += f"  {payload['rule']}"
    return payload, text


def cmd_census(args, rep: Reporter) -> int:
    spec = DirectiveSpec.parse(args.spec)
    table = _build_table(spec)
    if (args.m is None) == (args.all_up_to is None):
        raise ParseError("pass exactly one of --m or --all-up-to")
    l = args.l
    lengths = [args.m] if args.m is not None else list(range(1, args.all_up_to + 1))
    rows = {}
    ambiguous: list[int] = []
    for m in lengths:
        try:
            rows[m] = census(table, m, l)
        except AmbiguityError as exc:
            ambiguous.append(m)
            rep.row(
                "ambiguity",
                {"m": m, "l": l, "candidates": [list(c) for c in exc.candidates]},
                f"m={m} l={l}: ambiguous grid point, candidates {list(exc.candidates)}",
            )
    for m, row in rows.items():
        if row.count or args.m is not None or args.full:
            payload, text = _census_payload(table, row, args.full)
            rep.row("census-row", payload, text)
            if args.full and row.witnesses:
                rep.row("witness-list", {"m": m, "l": l, "witnesses": sorted(row.witnesses)},
                        [f"  {w}" for w in sorted(row.witnesses)])
    if args.all_up_to is not None:
        nonzero = [m for m in lengths if m in rows and rows[m].count]
        rep.row(
            "census-summary",
            {"l": l, "m_max": args.all_up_to, "nonzero_lengths": nonzero, "zero_count": len(lengths) - len(nonzero)},
            f"order {l}: {len(nonzero)} carrying lengths up to {args.all_up_to}: {' '.join(map(str, nonzero))}",
        )
    verdict_ok = True
    if args.verify or ambiguous:
        m_max = max(lengths)
        certificate, scans = certified_scan(table, m_max, max(l, 2), jobs=args.jobs)
        scanned = scans[l].per_length
        mismatches = []
        for m in lengths:
            expected = frozenset(rows[m].witnesses) if m in rows else None
            if expected is not None and scanned[m] != expected:
                mismatches.append(m)
        for m in ambiguous:
            rep.row(
                "verification",
                {"target": "census-ambiguity", "m": m, "l": l, "ok": False, "oracle_count": len(scanned[m]), "detail": "closed form ambiguous"},
                f"m={m}: oracle finds {len(scanned[m])} bases (closed form was ambiguous)",
            )
        verdict_ok = not mismatches and not ambiguous
        rep.row(
            "verification",
            {
                "target": "census",
                "l": l,
                "m_max": m_max,
                "ok": verdict_ok,
                "prefix_letters": len(certificate.word),
                "mismatched_lengths": mismatches,
                "detail": certificate.method,
            },
            f"oracle agreement at order {l} on lengths 1..{m_max} over {len(certificate.word)} certified letters: "
            + ("OK" if verdict_ok else f"MISMATCH at {mismatches}"),
        )
    if not verdict_ok:
        raise VerificationError("closed-form census disagrees with the oracle scan")
    return 0


def cmd_verify(args, rep: Reporter) -> int:
    spec = DirectiveSpec.parse(args.spec)
    table = _build_table(spec)
    n_max = args.n if args.n is not None else 8
    failures = 0
    for name, error in run_battery(table, n_max):
        ok = error is None
        failures += 0 if ok else 1
        rep.row(
            "check",
            {"name": name, "ok": ok, "detail": None if ok else str(error)},
            f"{'PASS' if ok else 'FAIL'} {name}" + ("" if ok else f": {error}"),
        )
    rep.row(
        "verify-summary",
        {"n_max": n_max, "failures": failures},
        f"battery up to level {n_max}: {'all checks pass' if failures == 0 else f'{failures} checks FAILED'}",
    )
    if failures:
        raise VerificationError(f"{failures} invariant checks failed")
    return 0


# -- argument plumbing ---------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="episturm",
        description="Construct episturmian words from directive exponents and enumerate their powers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, n=False, full=False, verify=False, jobs=False):
        p.add_argument("--spec", required=True, help='directive, e.g. "k=3; d=1,1,2; 2,1,2" or "k=3; d=; 1"')
        p.add_argument("--json", action="store_true", help="emit JSON lines instead of text")
        if n:
            p.add_argument("--n", type=int, help="block level")
        if full:
            p.add_argument("--full", action="store_true", help="expand words and witness sets in full")
        if verify:
            p.add_argument("--verify", action="store_true", help="cross-check against the scanning oracle")
        if jobs:
            p.add_argument("--jobs", type=int, default=1, help="oracle scan threads")

    p = sub.add_parser("generate", help="print a prefix of the word")
    common(p)
    p.add_argument("--length", type=int, required=True, help="how many letters")
    p.set_defaults(fn=cmd_generate)

    p = sub.add_parser("blocks", help="block, palindromic prefix, tails and indices at one level")
    common(p, n=True, full=True)
    p.set_defaults(fn=cmd_blocks)

    p = sub.add_parser("singular", help="factor partition classes at one level")
    common(p, n=True, full=True)
    p.set_defaults(fn=cmd_singular)

    p = sub.add_parser("partition", help="tiling of a block by the level-n window blocks")
    common(p, n=True, verify=True)
    p.add_argument("--m", type=int, help="host block level to tile (default: two above --n)")
    p.set_defaults(fn=cmd_partition)

    p = sub.add_parser("index", help="prefix and block indices with witnesses")
    common(p, n=True, full=True, verify=True, jobs=True)
    p.add_argument("--all-up-to", type=int, help="report levels 1..N")
    p.set_defaults(fn=cmd_index)

    p = sub.add_parser("census", help="which words of a given length have an l-th power in the word")
    common(p, full=True, verify=True, jobs=True)
    p.add_argument("--m", type=int, help="single base length")
    p.add_argument("--all-up-to", type=int, help="all base lengths 1..N")
    p.add_argument("--l", type=int, default=2, help="power order (default 2)")
    p.set_defaults(fn=cmd_census)

    p = sub.add_parser("verify", help="run the whole invariant battery")
    common(p, n=True)
    p.set_defaults(fn=cmd_verify)

    return parser


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    required_n = args.command in ("blocks", "singular", "partition")
    rep = Reporter(args.command, args.spec, args.json)
    try:
        if required_n and args.n is None:
            raise ParseError(f"{args.command} needs --n")
        code = args.fn(args, rep)
        rep.status(True)
        return code
    except _USAGE_ERRORS as exc:
        rep.status(False, str(exc))
        return 2
    except _VERIFY_ERRORS as exc:
        rep.status(False, str(exc))
        return 3
    except GuardExceeded as exc:
        rep.status(False, str(exc))
        return 4


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
