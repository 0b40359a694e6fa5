"""Command-line front end.

Exit codes: 0 success or law holds, 1 law (or sweep) fails, 2 usage or
format error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .catalog import (
    DEFAULT_MAX_N,
    VERDICT_KEYS,
    SearchQuery,
    compute_verdicts,
    enumerate_posets,
    format_record,
    parse_require,
    save_catalog,
    search,
)
from .canon import key_name
from .filters import describe_filters, filter_violation
from .laws import (
    LawSyntaxError,
    check_at,
    check_statement,
    eval_term,
    format_statement,
    format_term,
    law_library,
    parse_term,
    resolve_law,
    uses_star_or_constants,
)
from .order import PosetError, is_antichain, load_poset
from .pseudo import NotPseudocomplemented, star_rows, star_table


class UsageError(Exception):
    pass


def _pc_table(P):
    try:
        return star_table(P)
    except NotPseudocomplemented as exc:
        raise UsageError(f"not pseudocomplemented: {exc}") from exc


def cmd_tables(args, out) -> int:
    P = load_poset(args.file)
    out.write(star_rows(P, _pc_table(P)))
    return 0


def cmd_props(args, out) -> int:
    P = load_poset(args.file)
    verdicts = compute_verdicts(P)
    for k in VERDICT_KEYS:
        out.write(f"{k}={int(verdicts[k])}\n")
    return 0


def _parse_assignment(P, text: str) -> dict[str, int]:
    env = {}
    for item in text.split(","):
        var, sep, label = item.partition("=")
        if not sep:
            raise UsageError(f"bad assignment {item!r}; expected var=element")
        env[var.strip()] = P.index(label.strip())
    return env


def cmd_check(args, out) -> int:
    P = load_poset(args.file)
    _, stmt = resolve_law(args.law)
    T = _pc_table(P) if uses_star_or_constants(stmt) else None
    if args.at:
        result = check_at(P, T, stmt, _parse_assignment(P, args.at))
    else:
        result = check_statement(P, T, stmt)
    out.write(result.render(P) + "\n")
    return 0 if result.holds else 1


def cmd_eval(args, out) -> int:
    P = load_poset(args.file)
    term = parse_term(args.term)
    T = _pc_table(P) if uses_star_or_constants(term) else None
    env = _parse_assignment(P, args.at) if args.at else {}
    value = eval_term(P, T, env, term)
    kind = "antichain" if is_antichain(P, value) else "not an antichain"
    out.write(f"{format_term(term)} = {P.fmt(value)} ({kind})\n")
    return 0


def cmd_classify_filters(args, out) -> int:
    P = load_poset(args.file)
    T = _pc_table(P)
    if args.subset is not None:
        S = P.mask(x for x in args.subset.split(",") if x)
        why = filter_violation(P, S)
        if why is None:
            out.write(f"{P.fmt(S)} is a filter\n")
            return 0
        kind, w = why
        if kind == "empty":
            out.write("{} is not a filter: empty\n")
        elif kind == "up":
            out.write(f"{P.fmt(S)} is not a filter: {P.labels[w[0]]} <= {P.labels[w[1]]} "
                      f"but {P.labels[w[1]]} is missing\n")
        else:
            x, y = (P.labels[i] for i in w)
            out.write(f"{P.fmt(S)} is not a filter: L({x},{y}) & {P.fmt(S)} = {{}}\n")
        return 1
    out.write(describe_filters(P, T))
    return 0


def cmd_laws(args, out) -> int:
    for name, stmt in law_library().items():
        out.write(f"{name}: {format_statement(stmt)}\n")
    return 0


def _write_catalog(records, path, out) -> None:
    if path:
        count = save_catalog(path, records)
        out.write(f"wrote {count} records to {path}\n")
    else:
        out.write("catalog v1\n")
        for rec in records:
            out.write("\n" + format_record(rec))


def cmd_enumerate(args, out) -> int:
    records = list(enumerate_posets(args.n, parse_require(args.require),
                                    allow_large=args.allow_large))
    _write_catalog(records, args.out, out)
    return 0


def cmd_search(args, out) -> int:
    q = SearchQuery(
        max_n=args.n,
        require=parse_require(args.require),
        law=args.law,
        mode=args.mode,
        limit=args.limit,
        allow_large=args.allow_large,
    )
    matches = search(q)
    if args.out:
        save_catalog(args.out, [m.record for m in matches])
    for m in matches:
        cov = " ".join(f"e{x}<e{y}" for x, y in m.record.covers)
        line = f"{key_name(m.record.key)} covers {cov}".rstrip()
        if m.detail:
            line += f" | {m.detail}"
        out.write(line + "\n")
    out.write(f"{len(matches)} match{'es' if len(matches) != 1 else ''}\n")
    return 0


def cmd_sweep(args, out) -> int:
    from .sweep import sweep_theorems

    report = sweep_theorems(args.n, jobs=args.jobs)
    out.write(report.format())
    return 1 if report.failures() else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pcposet", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("tables", help="print the x / x* / x** table and D")
    s.add_argument("file")
    s.set_defaults(func=cmd_tables)

    s = sub.add_parser("props", help="print the cached predicates")
    s.add_argument("file")
    s.set_defaults(func=cmd_props)

    s = sub.add_parser("check", help="check a law by name or inline statement")
    s.add_argument("file")
    s.add_argument("--law", required=True)
    s.add_argument("--at", help="evaluate at one assignment, e.g. x=c,y=d,z=e")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("eval", help="evaluate one term at an assignment")
    s.add_argument("file")
    s.add_argument("--term", required=True)
    s.add_argument("--at", help="assignment, e.g. x=f,y=g")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("classify-filters", help="list every filter with its flags")
    s.add_argument("file")
    s.add_argument("--subset", help="test whether a comma-separated subset is a filter")
    s.set_defaults(func=cmd_classify_filters)

    s = sub.add_parser("laws", help="print the bundled law library")
    s.set_defaults(func=cmd_laws)

    s = sub.add_parser("enumerate", help="write all n-element posets up to isomorphism")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--require")
    s.add_argument("--out")
    s.add_argument("--allow-large", action="store_true",
                   help=f"allow n above {DEFAULT_MAX_N}; n=8 takes several seconds")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("search", help="search the catalog for witnesses or violations")
    s.add_argument("--n", type=int, default=DEFAULT_MAX_N, help="largest size searched")
    s.add_argument("--require")
    s.add_argument("--law")
    s.add_argument("--mode", choices=("witnesses", "violations"), default="witnesses")
    s.add_argument("--limit", type=int, default=10)
    s.add_argument("--out")
    s.add_argument("--allow-large", action="store_true")
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("sweep", help="check every theorem on all pseudocomplemented posets")
    s.add_argument("--n", type=int, default=6)
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_sweep)
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except (UsageError, PosetError, LawSyntaxError, ValueError, OSError) as exc:
        print(f"pcposet: error: {exc}", file=sys.stderr)
        return 2


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
