"""Command-line interface.

Exit codes: 0 success, 1 verification failed, 2 usage or parse error,
3 search exhausted without a witness, 4 search aborted on budget,
5 consistency violation between search and recorded values,
6 an operation's precondition failed.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys

from . import bounds, constructions, search, transforms
from .errors import PreconditionError, SuitableError
from .model import PatternTable, PermTable, Role, verify_array, verify_core
from .tableio import format_table, read_table, write_table

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_EXHAUSTED, EXIT_ABORTED, EXIT_INCONSISTENT, EXIT_PRECONDITION = range(7)

class UsageError(Exception):
    pass


def parse_range(text: str) -> list[int]:
    """``"3..5"`` -> [3, 4, 5]; ``"2,4"`` -> [2, 4]; ``"7"`` -> [7]."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..", 1)
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    if not out:
        raise UsageError(f"empty range {text!r}")
    return out


def _fill_rng(spec: str | None):
    if spec is None or spec == "ascending":
        return None
    kind, _, seed = spec.partition(":")
    if kind != "random":
        raise UsageError(f"--fill must be 'ascending' or 'random:<seed>', got {spec!r}")
    return random.Random(int(seed or 0))


def _load(path, fill=None) -> tuple[PermTable, int, Role]:
    tf = read_table(path)
    table = tf.table
    if isinstance(table, PatternTable):
        rng = _fill_rng(fill)
        how = "ascending" if rng is None else fill
        print(f"notice: pattern with {table.n_wildcards} free entries completed ({how})", file=sys.stderr)
        table = constructions.complete_pattern(table, rng).with_role(tf.role)
    return table, tf.strength, tf.role


def _emit(table, t, out, role=None):
    if out:
        path = write_table(out, table, t, role)
        print(f"wrote {path}")
    else:
        sys.stdout.write(format_table(table, t, role))


# -- subcommands -------------------------------------------------------------

def cmd_verify(args) -> int:
    table, t, role = _load(args.file, args.fill)
    role = Role(args.role) if args.role else role
    t = args.t if args.t is not None else t
    report = verify_array(table, t) if role is Role.ARRAY else verify_core(table, t)
    print(f"({table.n_rows},{table.v},{t})-suitable {role}: {'ok' if report.ok else 'FAILS'}")
    if not report.ok:
        print(report.summary(args.limit))
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_normalize(args) -> int:
    table, t, _ = _load(args.file)
    t = args.t if args.t is not None else t
    core, trace = transforms.normalize_to_core(table.with_role(Role.ARRAY), t)
    print(f"first symbols: {' '.join(map(str, trace.first_symbols))}", file=sys.stderr)
    print(f"moves: {len(trace.moves)}", file=sys.stderr)
    _emit(core, t, args.out)
    return EXIT_OK


def cmd_expand(args) -> int:
    table, t, _ = _load(args.file)
    _emit(transforms.expand_to_array(table), t, args.out)
    return EXIT_OK


def cmd_remove_symbol(args) -> int:
    table, t, role = _load(args.file)
    _emit(transforms.remove_symbol(table, args.symbol), t, args.out, role)
    return EXIT_OK


def cmd_extend(args) -> int:
    table, t, _ = _load(args.file)
    t = args.t if args.t is not None else t
    _emit(constructions.extend_t_plus_1(table, t), t + 1, args.out)
    return EXIT_OK


def cmd_construct(args) -> int:
    if args.kind == "trivial":
        table, t = constructions.trivial_array(args.v), args.v
    elif args.kind == "small-core":
        table, t = constructions.small_core(args.v, args.t, args.N), args.t
    else:
        entry = constructions.catalog(args.name)
        t = entry.params.strength
        if args.pattern:
            _emit(entry.pattern, t, args.out, Role.CORE)
            return EXIT_OK
        table = entry.table(_fill_rng(args.fill))
    _emit(table, t, args.out)
    return EXIT_OK


def _budget(args) -> search.SearchBudget:
    return search.SearchBudget(args.max_nodes, args.max_seconds, args.workers)


def _search_kw(args) -> dict:
    return {"dominance": args.dominance}


def _print_report(report: dict, args):
    if args.json:
        print(json.dumps(report, sort_keys=True))


def cmd_search(args) -> int:
    budget = _budget(args)
    if args.mode == "exists":
        out = search.exists_core(args.N, args.v, args.t, budget, **_search_kw(args))
        print(f"exists ({args.N},{args.v},{args.t})-core: {out.status}")
        print(f"elapsed {out.stats.elapsed:.3f}s, nodes {out.stats.nodes}", file=sys.stderr)
        report = {"command": "search exists", **out.report()}
        if out.found:
            path = args.out or f"core-{args.N}-{args.v}-{args.t}.txt"
            write_table(path, out.witness, args.t)
            print(f"witness: {path}")
            report["artifacts"] = [str(path)]
        _print_report(report, args)
        return {search.FOUND: EXIT_OK, search.EXHAUSTED: EXIT_EXHAUSTED}.get(out.status, EXIT_ABORTED)

    if args.mode == "scn":
        res = search.scn_exact(args.t, args.N, args.v_cap, budget, **_search_kw(args))
        label = {"exact": "=", "capped": ">=", "aborted": "?"}[res.status]
        print(f"scn({args.t},{args.N}) {label} {res.value if res.value is not None else ''}".rstrip())
    else:
        res = search.n_exact(args.v, args.t, args.n_cap, budget, **_search_kw(args))
        if res.status == "capped":
            print(f"N({args.v},{args.t}) > {args.n_cap}")
        else:
            print(f"N({args.v},{args.t}) {'=' if res.value is not None else '?'} "
                  f"{res.value if res.value is not None else ''}".rstrip())
    report = {"command": f"search {args.mode}", "status": res.status, "value": res.value,
              "searches": [o.report() for o in res.outcomes]}
    _print_report(report, args)
    if res.status == "aborted":
        return EXIT_ABORTED
    if args.mode == "n" and res.status == "capped":
        return EXIT_EXHAUSTED
    return EXIT_OK


def _confirm(t, N, kind, value, budget) -> tuple[str, bool]:
    """Check one summarized value by search; returns (note, consistent)."""
    if kind == "unknown":
        return "", True
    checks = [(value, True)]
    if kind == "exact":
        checks.append((value + 1, False))
    notes = []
    for v, should_exist in checks:
        if v > search.MAX_SEARCH_SYMBOLS:
            notes.append(f"v={v} beyond search range")
            continue
        if should_exist:
            name = next((n for n in constructions.CATALOG_NAMES
                         if tuple(constructions.catalog(n).params) == (N, v, t)), None)
            if name is not None:
                notes.append(f"witness {name}")
                continue
        out = search.exists_core(N, v, t, budget)
        if out.status == search.ABORTED:
            notes.append(f"({N},{v},{t}) aborted")
        elif out.found != should_exist:
            return f"search contradicts: ({N},{v},{t})-core {out.status}", False
    if not notes:
        return "confirmed by search", True
    return "; ".join(notes), True


def _confirm_n(v, t, kind, value, budget) -> tuple[str, bool]:
    if kind != "exact":
        return "", True
    if v - t > search.MAX_SEARCH_SYMBOLS:
        return f"v-t={v - t} beyond search range", True
    res = search.n_exact(v, t, None, budget)
    if res.status == "aborted":
        return "search aborted", True
    if res.value != value:
        return f"search contradicts: N({v},{t}) = {res.value}", False
    return "confirmed by search", True


def cmd_table(args) -> int:
    budget = _budget(args)
    if args.quantity == "n":
        rows = []
        for v in parse_range(args.v):
            for t in parse_range(args.t):
                if not 1 <= t <= v:
                    continue
                recs = bounds.n_table(v, t)
                rows.append(((v, t), recs))
        confirm = (lambda key, kind, value: _confirm_n(*key, kind, value, budget)) if args.confirm else None
        return _print_rows(rows, args, ("v", "t", "N(v,t)"), confirm)

    rows = []
    for t in parse_range(args.t):
        for N in parse_range(args.N):
            recs = bounds.theorem_table(t, N)
            errs = bounds.consistency_errors(recs)
            if errs:
                for e in errs:
                    print(f"consistency: {e}", file=sys.stderr)
                return EXIT_INCONSISTENT
            rows.append(((t, N), recs))
    confirm = (lambda key, kind, value: _confirm(*key, kind, value, budget)) if args.confirm else None
    return _print_rows(rows, args, ("t", "N", "scn"), confirm)


def _print_rows(rows, args, header, confirm) -> int:
    code = EXIT_OK
    lines = []
    for key, recs in rows:
        kind, value, support = bounds.summarize(recs)
        note, consistent = confirm(key, kind, value) if confirm else ("", True)
        if not consistent:
            code = EXIT_INCONSISTENT
            print(f"consistency: {key}: {note}", file=sys.stderr)
        if args.format == "records":
            for r in recs:
                print(json.dumps(r.as_dict(), sort_keys=True))
            if confirm and note:
                print(json.dumps({"params": list(key), "confirmation": note}, sort_keys=True))
            continue
        shown = "?" if value is None else (str(value) if kind == "exact" else f">={value}")
        if kind == "upper":
            shown = f"<={value}"
        prov = "; ".join(r.provenance for r in support)
        lines.append((*map(str, key), shown, kind, note, prov))
    if args.format == "text":
        cols = (*header, "kind", "check", "provenance") if confirm else (*header, "kind", "provenance")
        table = [cols] + [ln if confirm else ln[:4] + ln[5:] for ln in lines]
        widths = [max(len(r[i]) for r in table) for i in range(len(cols) - 1)]
        for r in table:
            print("  ".join(c.ljust(w) for c, w in zip(r, widths)) + "  " + r[-1])
    return code


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="suitable", description="Suitable sets of permutations: verify, transform, construct, search.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify", help="verify a table file")
    s.add_argument("file")
    s.add_argument("--role", choices=["array", "core"])
    s.add_argument("--t", type=int)
    s.add_argument("--fill", help="ascending (default) or random:<seed> for pattern files")
    s.add_argument("--limit", type=int, default=20, help="violations to print")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("normalize", help="extract the core of a suitable array")
    s.add_argument("file")
    s.add_argument("--t", type=int)
    s.add_argument("--out")
    s.set_defaults(func=cmd_normalize)

    s = sub.add_parser("expand", help="expand a core into a suitable array")
    s.add_argument("file")
    s.add_argument("--out")
    s.set_defaults(func=cmd_expand)

    s = sub.add_parser("remove-symbol", help="delete one symbol from every row")
    s.add_argument("file")
    s.add_argument("symbol", type=int)
    s.add_argument("--out")
    s.set_defaults(func=cmd_remove_symbol)

    s = sub.add_parser("extend", help="turn an (N,v,t)-core into an (N+v-1,v,t+1)-core")
    s.add_argument("file")
    s.add_argument("--t", type=int)
    s.add_argument("--out")
    s.set_defaults(func=cmd_extend)

    s = sub.add_parser("construct", help="build a known table")
    csub = s.add_subparsers(dest="kind", required=True)
    c = csub.add_parser("trivial")
    c.add_argument("v", type=int)
    c = csub.add_parser("small-core")
    c.add_argument("v", type=int)
    c.add_argument("t", type=int)
    c.add_argument("N", type=int)
    c = csub.add_parser("catalog")
    c.add_argument("name", choices=constructions.CATALOG_NAMES)
    c.add_argument("--pattern", action="store_true", help="write free entries as '*'")
    c.add_argument("--fill", help="ascending (default) or random:<seed>")
    for c in csub.choices.values():
        c.add_argument("--out")
    s.set_defaults(func=cmd_construct)

    def budget_flags(sp):
        sp.add_argument("--max-nodes", type=int, default=search.DEFAULT_MAX_NODES)
        sp.add_argument("--max-seconds", type=float)
        sp.add_argument("--workers", type=int, default=1)

    s = sub.add_parser("search", help="exhaustive search for cores")
    ssub = s.add_subparsers(dest="mode", required=True)
    c = ssub.add_parser("exists", help="decide whether an (N,v,t)-core exists")
    c.add_argument("N", type=int)
    c.add_argument("v", type=int)
    c.add_argument("t", type=int)
    c.add_argument("--out", help="witness file (default core-N-v-t.txt)")
    c = ssub.add_parser("scn", help="largest core width for (t, N)")
    c.add_argument("t", type=int)
    c.add_argument("N", type=int)
    c.add_argument("--v-cap", type=int, default=search.MAX_SEARCH_SYMBOLS)
    c = ssub.add_parser("n", help="fewest rows of a (., v, t)-suitable array")
    c.add_argument("v", type=int)
    c.add_argument("t", type=int)
    c.add_argument("--n-cap", type=int)
    for c in ssub.choices.values():
        budget_flags(c)
        c.add_argument("--dominance", action="store_true", help="use dominance pruning instead of canonical pruning")
        c.add_argument("--json", action="store_true", help="print a machine-readable report line")
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("table", help="known values of scn(t,N) or N(v,t)")
    s.add_argument("--quantity", choices=["scn", "n"], default="scn")
    s.add_argument("--t", required=True, help="range such as 3..5")
    s.add_argument("--N", default="0..9", help="range of N (scn table)")
    s.add_argument("--v", default="4..8", help="range of v (N table)")
    s.add_argument("--format", choices=["text", "records"], default="text")
    s.add_argument("--confirm", action="store_true", help="check values by search")
    budget_flags(s)
    s.set_defaults(func=cmd_table)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        if isinstance(exc, PreconditionError):
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_PRECONDITION
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SuitableError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
