"""Command-line front end.

Exit codes: 0 success or verification passed, 1 verification failed, 2 bad usage or input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .constructions import verify_example, verify_theorem
from .graph import GraphError
from .inequalities import double_cosets, im_inequality
from .io import FormatError, export_dot, format_subgroup, read_subgroup
from .problem import findings_log, problem_search
from .subgroup import AlphabetMismatch, Subgroup, finite_index, intersect, join
from .words import WordSyntaxError, format_word

COMMANDS = (
    "rank",
    "intersect",
    "join",
    "index",
    "cosets",
    "im-check",
    "verify-theorem",
    "verify-example",
    "search-problem",
    "export-dot",
)


class UsageError(Exception):
    pass


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--subgroup", action="append", default=[], metavar="FILE",
                        help="subgroup file (repeatable)")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=1000)
    common.add_argument("--k", type=int, default=2, help="verify-example parameter")
    common.add_argument("--workers", type=int, default=1, help="search-problem worker processes")
    common.add_argument("--out", metavar="FILE", help="write the result here instead of stdout")
    parser = argparse.ArgumentParser(prog="stallings", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def _subgroups(args, count: int | None = None, at_least: int = 1) -> list[Subgroup]:
    files = args.subgroup
    if count is not None and len(files) != count:
        raise UsageError(f"{args.command} needs exactly {count} --subgroup file(s)")
    if len(files) < at_least:
        raise UsageError(f"{args.command} needs at least {at_least} --subgroup file(s)")
    return [read_subgroup(f) for f in files]


def _words(h: Subgroup) -> list[str]:
    return [format_word(h.alphabet, w) or "1" for w in h.generators()]


def _emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _dump(data) -> str:
    return json.dumps(data, sort_keys=True) + "\n"


def _subgroup_summary(h: Subgroup) -> dict:
    return {"rank": h.rank, "reduced_rank": h.reduced_rank, "generators": _words(h)}


def _run(args) -> int:
    cmd = args.command
    if cmd == "rank":
        (h,) = _subgroups(args, 1)
        if args.json:
            _emit(args, _dump(_subgroup_summary(h)))
        else:
            _emit(args, f"rank {h.rank}\nreduced rank {h.reduced_rank}\n")
        return 0

    if cmd in ("intersect", "join"):
        hs = _subgroups(args, 2 if cmd == "intersect" else None)
        result = intersect(*hs) if cmd == "intersect" else join(*hs)
        if args.json:
            _emit(args, _dump(_subgroup_summary(result)))
        elif args.out:
            _emit(args, format_subgroup(result))
        else:
            _emit(args, format_subgroup(result) + f"# rank {result.rank}, reduced rank {result.reduced_rank}\n")
        return 0

    if cmd == "index":
        (h,) = _subgroups(args, 1)
        idx = finite_index(h)
        if args.json:
            _emit(args, _dump({"index": idx}))
        else:
            _emit(args, f"index {'infinite' if idx is None else idx}\n")
        return 0

    if cmd == "cosets":
        h1, h2 = _subgroups(args, 2)
        report = double_cosets(h1, h2)
        rows = [
            {
                "representative": format_word(h1.alphabet, c.representative),
                "reduced_rank": c.reduced_rank,
                "generators": _words(c.intersection),
            }
            for c in report.components
        ]
        if args.json:
            _emit(args, _dump({"components": rows, "total": report.total}))
        else:
            lines = [f"s={r['representative'] or '1'}\treduced rank {r['reduced_rank']}" for r in rows]
            lines.append(f"total {report.total}")
            _emit(args, "\n".join(lines) + "\n")
        return 0

    if cmd == "im-check":
        h1, h2 = _subgroups(args, 2)
        rep = im_inequality(h1, h2)
        if args.json:
            _emit(args, _dump({**rep.as_dict(), "certificates": None}))
        else:
            rel = "<=" if rep.holds else ">"
            _emit(
                args,
                f"r1 {rep.r1}\nr2 {rep.r2}\nr_meet {rep.r_meet}\nr_join {rep.r_join}\n"
                f"{rep.lhs} {rel} {rep.rhs}: inequality {'holds' if rep.holds else 'fails'}\n",
            )
        return 0

    if cmd == "verify-theorem":
        res = verify_theorem(strict=False)
        if args.json:
            _emit(args, _dump(res.as_dict()))
        else:
            rep = res.inequality
            shape = res.pullback_shape
            lines = [
                f"reduced rank H1: {rep.r1}",
                f"reduced rank H2: {rep.r2}",
                f"reduced rank H1 meet H2: {rep.r_meet}",
                f"reduced rank <H1, H2>: {rep.r_join}",
                f"lhs {rep.r_join}*{rep.r_meet} = {rep.lhs}, rhs {rep.r1}*{rep.r2} = {rep.rhs}; "
                + (f"{rep.lhs} > {rep.rhs}: inequality fails" if not rep.holds
                   else f"{rep.lhs} <= {rep.rhs}: inequality holds"),
                f"pullback components: {res.pullback_components}, -chi = {res.minus_chi}",
                "pullback shape: "
                + ("not of the form Gamma(k,l,m,n)" if shape is None else
                   f"Gamma({shape.k},{shape.l},{shape.m},{shape.n}), cycle lengths "
                   + "/".join(map(str, shape.cycle_lengths))),
                f"certificate C1: {str(res.c1.verdict).lower()} "
                f"({sum(w is not None for *_, w in res.c1.checked_pairs)}/{len(res.c1.checked_pairs)} degree-3 vertices witnessed)",
                f"certificate C2: {str(res.c2.certified).lower()} (moduli {res.c2.modulus_1}, {res.c2.modulus_2}; "
                f"join identified: {str(res.c2.join_identified).lower()})",
            ]
            lines += [f"FAILED {f}" for f in res.failures]
            lines.append("verification " + ("passed" if res.ok else "failed"))
            _emit(args, "\n".join(lines) + "\n")
        return 0 if res.ok else 1

    if cmd == "verify-example":
        res = verify_example(args.k, strict=False)
        if args.json:
            _emit(args, _dump(res.as_dict()))
        else:
            lines = [
                f"k {res.k}",
                f"reduced rank H1: {res.r1}",
                f"reduced rank H2: {res.r2}",
                f"double cosets: {len(res.cosets)}, representatives "
                + ", ".join(format_word(res.extended_join.alphabet, s) or "1" for s in res.cosets.representatives),
                f"r(H1, H2) = {res.total}, product r1*r2 = {res.product}",
                f"extended join reduced rank: {res.extended_join_rank}",
            ]
            lines += [f"FAILED {f}" for f in res.failures]
            lines.append("verification " + ("passed" if res.ok else "failed"))
            _emit(args, "\n".join(lines) + "\n")
        return 0 if res.ok else 1

    if cmd == "search-problem":
        if args.trials < 1:
            raise UsageError("--trials must be >= 1")
        found = problem_search(args.seed, args.trials, workers=args.workers)
        _emit(args, findings_log(found, args.seed, args.trials))
        return 0

    if cmd == "export-dot":
        (h,) = _subgroups(args, 1)
        _emit(args, export_dot(h))
        return 0

    raise UsageError(f"unknown command {cmd}")  # pragma: no cover


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        return _run(args)
    except (UsageError, FormatError, WordSyntaxError, AlphabetMismatch, GraphError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
