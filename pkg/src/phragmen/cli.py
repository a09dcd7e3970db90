"""Command-line interface: ``phragmen <command> ...``.

Exit codes: 0 success or "provides", 1 violation or corpus mismatch,
2 axiom not applicable, 64 usage error, 65 bad input data.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .apportionment import (check_lower_quota, dhondt, induced_apportionment, largest_remainder,
                            parse_votes, sainte_lague)
from .axioms import (NOT_APPLICABLE, PROVIDES, EnumerationCapExceeded as SearchCapExceeded,
                     check_axiom, exists_pr)
from .balance import balanced_loads
from .enestrom import enestrom_phragmen
from .lpformat import render_lp
from .model import LoadDistributionError, ProfileError, parse_committee, parse_profile, \
    parse_rational
from .optrules import (ENUM_CAP_ENV, DriverLog, EnumerationCapExceeded, algorithm1_driver,
                       emit_milp_step, emit_miqp, enumeration_cap, leximax_phragmen,
                       reference_step_solver, var_phragmen)
from .report import dump_records, records, render_report
from .seq import seq_phragmen

EXIT_OK, EXIT_VIOLATION, EXIT_NA, EXIT_USAGE, EXIT_DATA = 0, 1, 2, 64, 65


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="phragmen", description="Exact Phragmén committee rules and checks.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    out = _Parser(add_help=False)
    out.add_argument("--format", choices=("text", "jsonl"), default="text",
                     help="text report or one JSON record per line")
    out.add_argument("--cap", type=_positive_int, default=None,
                     help=f"enumeration cap (default: ${ENUM_CAP_ENV} or 10^6)")

    prof = _Parser(add_help=False)
    prof.add_argument("--profile", required=True, help="approval profile file")

    figs = _Parser(add_help=False)
    figs.add_argument("--figures", metavar="DIR", help="also write PNG figures to DIR")

    p = sub.add_parser("compute", parents=[prof, out, figs], help="run a rule")
    p.add_argument("--rule", required=True, choices=("seq", "leximax", "var", "enestrom"))
    p.add_argument("--k", required=True, type=_positive_int)
    p.add_argument("--quota", choices=("hare", "droop"), default="hare",
                   help="Eneström quota (enestrom only)")
    p.add_argument("--ties", choices=("canonical", "all"), default="canonical",
                   help="seq/enestrom tie handling")
    p.add_argument("--trace", action="store_true", help="print per-round details")
    p.add_argument("--exact", action="store_true", help="trace scores as p/q, not 3 decimals")
    p.add_argument("--driver", action="store_true",
                   help="leximax via the iterative MILP driver with the reference step solver")

    p = sub.add_parser("balance", parents=[prof, out, figs], help="optimally balanced loads")
    p.add_argument("--committee", required=True, help='e.g. "a,b,c"')

    p = sub.add_parser("verify", parents=[prof, out], help="check a representation axiom")
    p.add_argument("--axiom", required=True, choices=("jr", "pjr", "ejr", "pr"))
    p.add_argument("--k", required=True, type=_positive_int)
    p.add_argument("--committee", required=True)
    p.add_argument("--witness", action="store_true", help="print the witness or partition")
    p.add_argument("--threshold", choices=("hare", "droop-strict"), default="hare",
                   help="PJR group-size threshold")
    p.add_argument("--list-pr", action="store_true",
                   help="with --axiom pr, also list every committee providing PR")

    p = sub.add_parser("export", parents=[prof], help="write a solver model file")
    p.add_argument("--format", required=True, choices=("lp", "qp"),
                   help="lp: MILP step P(y); qp: variance MIQP")
    p.add_argument("--k", required=True, type=_positive_int)
    p.add_argument("--y", help='target vector for P(y), e.g. "3/4,3/4,0,0,0"')
    p.add_argument("--out", required=True, help="model file; a .exact sidecar may be written")

    p = sub.add_parser("apportion", parents=[out, figs], help="apportionment methods")
    how = p.add_mutually_exclusive_group(required=True)
    how.add_argument("--method", choices=("dhondt", "sainte-lague", "largest-remainder"))
    how.add_argument("--induced", choices=("seq", "leximax", "var", "enestrom"))
    p.add_argument("--quota", choices=("hare", "droop"), default="hare")
    p.add_argument("--seats", required=True, type=_positive_int)
    p.add_argument("--votes", required=True, help='e.g. "67,12,11,10"')

    p = sub.add_parser("examples", help="run the bundled worked-example corpus")
    p.add_argument("--only", action="append", default=[], metavar="ID",
                   help="run only this example (repeatable or comma separated)")
    p.add_argument("--corpus", metavar="DIR", help="alternative corpus directory")
    return parser


def _read(path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc.strerror}") from None


def _profile(args):
    return parse_profile(_read(args.profile))


def _emit(args, obj, profile, **kw):
    if args.format == "jsonl":
        sys.stdout.write(dump_records(records(obj, profile)))
    else:
        sys.stdout.write(render_report(obj, profile, **kw) + "\n")


def _figdir(args):
    if not getattr(args, "figures", None):
        return None
    path = Path(args.figures)
    path.mkdir(parents=True, exist_ok=True)
    return path


def cmd_compute(args):
    profile = _profile(args)
    profile.check_k(args.k)
    if args.rule == "seq":
        outcome = seq_phragmen(profile, args.k, ties=args.ties)
    elif args.rule == "enestrom":
        outcome = enestrom_phragmen(profile, args.k, quota=args.quota, ties=args.ties)
    elif args.driver:
        if args.rule != "leximax":
            raise UsageError("--driver applies to --rule leximax only")
        outcome = algorithm1_driver(profile, args.k, reference_step_solver(profile, args.cap),
                                    DriverLog())
    elif args.rule == "leximax":
        outcome = leximax_phragmen(profile, args.k, cap=args.cap)
    else:
        outcome = var_phragmen(profile, args.k, cap=args.cap)
    _emit(args, outcome, profile, exact=args.exact, trace=args.trace)
    figdir = _figdir(args)
    if figdir:
        from . import plotting
        tag = outcome.rule
        for rank, s in enumerate(outcome.committees, start=1):
            cert = outcome.certificates.get(s)
            stem = f"{tag}-k{args.k}-{rank}"
            if args.rule == "seq":
                plotting.plot_seq_trace(cert, profile, figdir / f"{stem}-trace.png",
                                        title=f"seq-Phragmén scores, k={args.k}")
            elif args.rule == "enestrom":
                plotting.plot_enestrom_weights(cert, figdir / f"{stem}-weights.png",
                                               title=f"Eneström-Phragmén ({args.quota}), k={args.k}")
            dist = balanced_loads(profile, s).distribution
            plotting.plot_load_distribution(profile, dist, figdir / f"{stem}-loads.png",
                                            title="balanced loads for {" + ", ".join(
                                                profile.sort_candidates(s)) + "}")
    return EXIT_OK


def cmd_balance(args):
    profile = _profile(args)
    committee = profile.check_committee(parse_committee(args.committee))
    if not committee:
        raise DataError("committee is empty")
    cert = balanced_loads(profile, committee)
    _emit(args, cert, profile)
    figdir = _figdir(args)
    if figdir:
        from . import plotting
        plotting.plot_load_distribution(profile, cert.distribution, figdir / "balance-loads.png",
                                        title="balanced loads")
    return EXIT_OK


def cmd_verify(args):
    profile = _profile(args)
    profile.check_k(args.k)
    committee = profile.check_committee(parse_committee(args.committee), args.k)
    kw = {}
    if args.axiom == "pjr":
        kw["threshold"] = args.threshold
    if args.axiom in ("pjr", "ejr") and args.cap:
        kw["cap"] = args.cap
    report = check_axiom(args.axiom, profile, args.k, committee, **kw)
    if not args.witness:
        report = type(report)(report.axiom, report.verdict, detail=report.detail)
    _emit(args, report, profile)
    if args.list_pr and args.axiom == "pr" and args.format == "text":
        found = exists_pr(profile, args.k, cap=enumeration_cap(args.cap))
        if found is not None:
            print("PR committees: " + "; ".join(
                "{" + ", ".join(profile.sort_candidates(s)) + "}" for s in found))
    if report.verdict == PROVIDES:
        return EXIT_OK
    if report.verdict == NOT_APPLICABLE:
        return EXIT_NA
    return EXIT_VIOLATION


def cmd_export(args):
    profile = _profile(args)
    profile.check_k(args.k)
    if args.format == "lp":
        if args.y:
            y = tuple(parse_rational(v) for v in args.y.replace(" ", "").split(",") if v)
            if len(y) != profile.n:
                raise DataError(f"--y has {len(y)} entries, the profile has {profile.n} voters")
        else:
            y = (parse_rational(str(args.k)),) + (parse_rational("0"),) * (profile.n - 1)
        model = emit_milp_step(profile, args.k, y)
    else:
        if args.y:
            raise UsageError("--y applies to --format lp only")
        model = emit_miqp(profile, args.k)
    text, sidecar = render_lp(model)
    out = Path(args.out)
    out.write_text(text, encoding="utf-8")
    side = out.with_name(out.name + ".exact")
    if sidecar is not None:
        side.write_text(sidecar, encoding="utf-8")
    elif side.exists():
        side.unlink()
    counts = model.constraint_counts()
    print(f"wrote {out} ({len(model.variables)} variables, "
          f"{sum(counts.values())} constraints)" + (f"; exact values in {side}" if sidecar else ""))
    return EXIT_OK


def cmd_apportion(args):
    votes = parse_votes(args.votes)
    k = args.seats
    if args.method:
        label = args.method
        if args.method == "dhondt":
            dists = dhondt(votes, k)
        elif args.method == "sainte-lague":
            dists = sainte_lague(votes, k)
        else:
            label = f"largest-remainder-{args.quota}"
            dists = largest_remainder(votes, k, args.quota)
    else:
        rule = f"enestrom-{args.quota}" if args.induced == "enestrom" else args.induced
        label = f"induced-{rule}"
        dists = induced_apportionment(rule, votes, k, cap=args.cap)
    dists = sorted(dists, reverse=True)
    recs = []
    for z in dists:
        lq = check_lower_quota(votes, k, z)
        recs.append({"type": "apportionment", "method": label, "seats": k, "votes": list(votes),
                     "distribution": list(z), "lower_quota": lq.verdict})
    if args.format == "jsonl":
        sys.stdout.write(dump_records(recs))
    else:
        print(f"method: {label}  seats: {k}  votes: {', '.join(map(str, votes))}")
        for r in recs:
            print(f"  ({', '.join(map(str, r['distribution']))})  lower quota: {r['lower_quota']}")
    figdir = _figdir(args)
    if figdir:
        from . import plotting
        plotting.plot_seats(votes, {f"{label} #{i + 1}": z for i, z in enumerate(dists)},
                            figdir / f"{label}-k{k}.png", title=f"{label}, {k} seats")
    return EXIT_OK


def cmd_examples(args):
    from .corpus import run_examples
    only = [p for item in args.only for p in item.split(",") if p]
    results = run_examples(only=only or None, corpus_dir=args.corpus)
    width = max((len(r.case) for r in results), default=4)
    cwidth = max((len(r.check) for r in results), default=5)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        line = f"{r.case.ljust(width)}  {r.check.ljust(cwidth)}  {status}"
        print(line + (f"  {r.detail}" if r.detail else ""))
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return EXIT_VIOLATION if failed else EXIT_OK


COMMANDS = {"compute": cmd_compute, "balance": cmd_balance, "verify": cmd_verify,
            "export": cmd_export, "apportion": cmd_apportion, "examples": cmd_examples}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"phragmen: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DataError, ProfileError, LoadDistributionError, EnumerationCapExceeded,
            SearchCapExceeded, ValueError) as exc:
        print(f"phragmen: error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
