"""Check node pairs for immanence and rationalize finite-map networks.

Exit codes: 0 success, 1 error, 2 transcendent verdict (``check`` and
``model`` without ``--approx``), 64 usage error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .document import dumps, export_dot, parse_network, serialize_network
from .errors import MultivalError
from .finmap import identity_map
from .immanence import check
from .network import rationalize, resolve_exogenous, validate
from .relation import CRITERIA, approximate, relation_of, single_valuedness
from . import report as rep

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_TRANSCENDENT = 2
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _pair(text: str):
    dep, sep, pri = text.partition(":")
    if not sep or not dep or not pri:
        raise argparse.ArgumentTypeError("pair must look like DEP:PRI")
    return dep, pri


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="multival", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def network_arg(sp):
        sp.add_argument("--network", required=True, type=Path, help="network document")

    def pair_args(sp):
        network_arg(sp)
        sp.add_argument("--pair", required=True, type=_pair, metavar="DEP:PRI",
                        help="check DEP against (PRI, N)")
        sp.add_argument("--ancillary", metavar="MAPNAME",
                        help="named map from the document's maps section used as N (default I)")

    def report_args(sp, required=False):
        sp.add_argument("--report", type=Path, required=required,
                        help="write the machine-readable report here")
        sp.add_argument("--json", action="store_true", help="print the report as JSON")

    sp = sub.add_parser("check", help="decide immanence of a node pair")
    pair_args(sp)
    report_args(sp)

    sp = sub.add_parser("relation", help="dump N∘T∘M⁻¹ with multiplicities")
    pair_args(sp)
    report_args(sp)

    sp = sub.add_parser("model", help="extract the faithful model or approximate it")
    pair_args(sp)
    sp.add_argument("--approx", choices=CRITERIA)
    report_args(sp)

    sp = sub.add_parser("rationalize", help="merge immanent node pairs")
    network_arg(sp)
    sp.add_argument("--out", required=True, type=Path, help="reduced network document")
    sp.add_argument("--no-equivalence-check", action="store_true")
    sp.add_argument("--figure", type=Path, help="also render a before/after figure")
    report_args(sp, required=True)

    sp = sub.add_parser("export-dot", help="write the network as a DOT digraph")
    network_arg(sp)
    sp.add_argument("--out", type=Path)

    sp = sub.add_parser("validate", help="check the network document")
    network_arg(sp)
    return p


def _read(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except OSError as exc:
        raise MultivalError(f"{path}: {exc.strerror}") from None


def _load(path: Path):
    try:
        return parse_network(_read(path))
    except MultivalError as exc:
        raise MultivalError(f"{path}: {exc}") from None


def _resolve(args):
    net = _load(args.network)
    dep, pri = args.pair
    pair = resolve_exogenous(net, pri, dep)
    if args.ancillary:
        try:
            N = net.ancillary(args.ancillary)
        except KeyError:
            raise MultivalError(f"no map named {args.ancillary!r} in {args.network}") from None
        name = args.ancillary
    else:
        N, name = identity_map(pair.induced_T.codomain), "I"
    return net, pair, N, name


def _emit(args, report: dict, out):
    if args.report:
        args.report.write_text(dumps(report), encoding="utf-8")
    out.write(dumps(report) if args.json else rep.render_text(report))


def _cmd_check(args, out):
    _, pair, N, name = _resolve(args)
    verdict = check(pair.induced_T, pair.induced_M, N)
    _emit(args, rep.check_report(pair, verdict, name), out)
    return EXIT_OK if verdict.immanent else EXIT_TRANSCENDENT


def _cmd_relation(args, out):
    _, pair, N, name = _resolve(args)
    rel = relation_of(pair.induced_M, pair.induced_T, N)
    _emit(args, rep.relation_report(pair, rel, single_valuedness(rel), name), out)
    return EXIT_OK


def _cmd_model(args, out):
    _, pair, N, name = _resolve(args)
    verdict = check(pair.induced_T, pair.induced_M, N)
    approx = None
    if args.approx:
        approx = approximate(relation_of(pair.induced_M, pair.induced_T, N), args.approx)
    _emit(args, rep.model_report(pair, verdict, approx, name), out)
    if verdict.immanent or approx is not None:
        return EXIT_OK
    return EXIT_TRANSCENDENT


def _cmd_rationalize(args, out):
    net = _load(args.network)
    reduced, report = rationalize(net, check_equivalence=not args.no_equivalence_check)
    args.out.write_text(serialize_network(reduced), encoding="utf-8")
    _emit(args, rep.reduction_report(report), out)
    if args.figure:
        from .plotting import save_reduction_figure

        save_reduction_figure(net, reduced, report, args.figure)
    if report.behavior_checked and not report.behavior_equivalent:
        return EXIT_ERROR
    return EXIT_OK


def _cmd_export_dot(args, out):
    text = export_dot(_load(args.network))
    if args.out:
        args.out.write_text(text, encoding="utf-8")
    else:
        out.write(text)
    return EXIT_OK


def _cmd_validate(args, out):
    net = _load(args.network)
    problems = validate(net)
    for d in problems:
        out.write(f"{d}\n")
    if not problems:
        out.write(f"ok: {len(net.nodes)} nodes, {len(net.externals)} externals\n")
    return EXIT_ERROR if problems else EXIT_OK


COMMANDS = {
    "check": _cmd_check,
    "relation": _cmd_relation,
    "model": _cmd_model,
    "rationalize": _cmd_rationalize,
    "export-dot": _cmd_export_dot,
    "validate": _cmd_validate,
}


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args, out)
    except MultivalError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
