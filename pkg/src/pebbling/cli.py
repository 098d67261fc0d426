"""Command-line entry point: ``pebbling <command> ...``.

Exit codes: 0 decided, 1 usage or parse error, 2 search budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import formats
from .core import PebblingError
from .solvers import BudgetExceeded, SearchBudget

EXIT_OK, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-states", "--budget", dest="max_states", type=int, default=10_000_000)
    p.add_argument("--max-seconds", type=float, default=60.0)
    p.add_argument("--threads", type=int, default=1, help="accepted; searches run on one thread")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--seed", type=int, default=None)


def _graph_cmd(sub, name, help, target=False, witness=True, method=True):
    p = sub.add_parser(name, help=help)
    p.add_argument("-g", "--graph", required=True, help="pebble-graph file")
    if target:
        p.add_argument("--target", type=int, default=None, help="overrides the file's r line")
    if witness:
        p.add_argument("--witness", metavar="PATH", default=None)
    if method:
        p.add_argument("--method", choices=("states", "signature"), default="states")
    _common(p)
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pebbling", description="Graph pebbling solvers and reductions.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("orderable", help="is a signature orderable under the file's distribution")
    p.add_argument("-g", "--graph", required=True)
    p.add_argument("-s", "--signature", required=True)
    p.add_argument("--witness", metavar="PATH", default=None, help="write a move order")
    _common(p)

    p = _graph_cmd(sub, "reach", "can k pebbles reach the target", target=True)
    p.add_argument("-k", type=int, default=1)
    _graph_cmd(sub, "maxreach", "most pebbles that can reach the target", target=True, witness=False)
    _graph_cmd(sub, "nonrep-reach", "reachability using each edge at most once", target=True, method=False)
    p = _graph_cmd(sub, "cover", "can the distribution cover a demand")
    p.add_argument("-q", "--demand", required=True, help="file whose p lines give the demand")
    _graph_cmd(sub, "annihilate", "can the pebbles be reduced to one", method=False)
    _graph_cmd(sub, "pi", "pebbling number", witness=False)
    _graph_cmd(sub, "rpi", "rooted pebbling number", target=True, witness=False)
    _graph_cmd(sub, "opn", "optimal pebbling number")
    p = _graph_cmd(sub, "gamma", "cover pebbling number (closed form)", witness=False, method=False)
    p.add_argument("-q", "--demand", default=None, help="file whose p lines give the demand (default all ones)")

    p = sub.add_parser("reduce", help="emit a reduction instance")
    p.add_argument("kind", choices=("npr", "pr", "pc", "opn", "rpn", "pn", "hampath"))
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--alpha", type=int, default=None)
    p.add_argument("--beta", type=int, default=None)
    p.add_argument("--c", type=int, default=None)
    p.add_argument("--c-prime", type=float, default=None)
    p.add_argument("-k", type=int, default=None, help="budget for pn")
    p.add_argument("--target", type=int, default=None)
    _common(p)

    p = sub.add_parser("verify", help="run a desk-scale verification suite")
    p.add_argument("suite")
    _common(p)
    return parser


# -- helpers ---------------------------------------------------------------------

def _load_graph(path: str, target_override=None, need_target=False):
    pg = formats.parse_pebble_graph(formats.read_text(path), path)
    target = pg.target if target_override is None else target_override
    if need_target and target is None:
        raise UsageError(f"{path}: no target (add an 'r' line or pass --target)")
    if target is not None and not 0 <= target < pg.graph.n:
        raise UsageError(f"target {target} out of range")
    return pg.graph, pg.distribution, target


def _budget(args) -> SearchBudget:
    return SearchBudget(args.max_states, args.max_seconds)


def _emit(args, out, answer, **extra) -> None:
    if args.json:
        rec = {"command": args.command, "answer": answer}
        rec.update(extra)
        out.write(json.dumps(rec, sort_keys=True) + "\n")
    elif isinstance(answer, bool):
        out.write("yes\n" if answer else "no\n")
    else:
        out.write(f"{answer}\n")


def _decided(report):
    if not report.decided:
        raise BudgetExceeded(report.states_explored)
    return report.answer


def _write_witness(path, text) -> None:
    if path:
        Path(path).write_text(text)


# -- commands ---------------------------------------------------------------------

def cmd_orderable(args, out):
    from .orderability import extract_ordering, is_orderable

    g, p, _ = _load_graph(args.graph)
    d = formats.parse_signature(formats.read_text(args.signature), args.signature)
    d.validate_against(g)
    ok, diag = is_orderable(d, p)
    if args.json:
        _emit(args, out, ok, diagnosis=diag.kind, vertex=diag.vertex)
    else:
        out.write("yes\n" if ok else f"no\n{diag}\n")
    if ok and args.witness:
        _write_witness(args.witness, "".join(f"m {u} {v}\n" for u, v in extract_ordering(d, p)))
    return EXIT_OK


def cmd_reach(args, out):
    from .solvers import reachable

    g, p, r = _load_graph(args.graph, args.target, True)
    rep = reachable(g, p, r, args.k, _budget(args), args.method)
    ans = _decided(rep)
    _emit(args, out, ans, states=rep.states_explored)
    if ans:
        _write_witness(args.witness, formats.format_signature(rep.witness))
    return EXIT_OK


def cmd_maxreach(args, out):
    from .solvers import max_reachable

    g, p, r = _load_graph(args.graph, args.target, True)
    _emit(args, out, max_reachable(g, p, r, _budget(args), args.method))
    return EXIT_OK


def cmd_nonrep_reach(args, out):
    from .solvers import nonrepetitive_reachable

    g, p, r = _load_graph(args.graph, args.target, True)
    rep = nonrepetitive_reachable(g, p, r, _budget(args))
    ans = _decided(rep)
    _emit(args, out, ans, states=rep.states_explored)
    if ans:
        _write_witness(args.witness, formats.format_signature(rep.witness))
    return EXIT_OK


def cmd_cover(args, out):
    from .solvers import coverable

    g, p, _ = _load_graph(args.graph)
    q = formats.parse_distribution(formats.read_text(args.demand), g.n, args.demand)
    rep = coverable(g, p, q, _budget(args), args.method)
    ans = _decided(rep)
    _emit(args, out, ans, states=rep.states_explored)
    if ans:
        _write_witness(args.witness, formats.format_signature(rep.witness))
    return EXIT_OK


def cmd_annihilate(args, out):
    from .solvers import annihilation

    g, p, _ = _load_graph(args.graph)
    rep = annihilation(g, p, _budget(args))
    ans = _decided(rep)
    _emit(args, out, ans, states=rep.states_explored)
    if ans and rep.witness is not None:
        _write_witness(args.witness, formats.format_signature(rep.witness))
    return EXIT_OK


def cmd_pi(args, out):
    from .numbers import pi

    g, _, _ = _load_graph(args.graph)
    _emit(args, out, pi(g, _budget(args), args.method))
    return EXIT_OK


def cmd_rpi(args, out):
    from .numbers import pi_r

    g, _, r = _load_graph(args.graph, args.target, True)
    _emit(args, out, pi_r(g, r, _budget(args), args.method))
    return EXIT_OK


def cmd_opn(args, out):
    from .numbers import pi_hat

    g, _, _ = _load_graph(args.graph)
    k, q = pi_hat(g, _budget(args), args.method)
    _emit(args, out, k, distribution=list(q))
    _write_witness(args.witness, formats.format_distribution(q))
    return EXIT_OK


def cmd_gamma(args, out):
    from .numbers import gamma

    g, _, _ = _load_graph(args.graph)
    q = [1] * g.n
    if args.demand:
        q = formats.parse_distribution(formats.read_text(args.demand), g.n, args.demand)
    _emit(args, out, gamma(g, q))
    return EXIT_OK


def _build_instance(args):
    from . import reductions as R

    text = formats.read_text(args.input)
    kind = args.kind
    if kind in ("npr", "pr", "rpn"):
        f = formats.parse_qdimacs(text, args.input)
        if kind == "npr":
            return R.build_gnpr(f)
        if kind == "pr":
            return R.build_gpr(f, args.alpha)
        c = 3 if args.c is None else args.c
        return R.build_rpn_instance(f, args.beta, c, args.alpha)
    g, p, r = _load_graph(args.input, args.target, kind in ("pc", "opn", "pn"))
    if kind == "pc":
        return R.build_pc_instance(g, p, r)
    if kind == "opn":
        return R.build_opn_instance(g, p, r, args.alpha, args.beta)
    if kind == "pn":
        if args.k is None or args.c_prime is None:
            raise UsageError("reduce pn needs -k and --c-prime")
        return R.build_pn_instance(g, r, args.k, args.c_prime)
    return R.build_annihilation_from_hampath(g)


def cmd_reduce(args, out):
    inst = _build_instance(args)
    base = Path(args.output)
    comments = [f"reduce {args.kind}"]
    base.write_text(formats.format_pebble_graph(inst.graph, inst.distribution, inst.target, comments))
    Path(f"{base}.labels").write_text(formats.format_labels(inst.labels or {v: f"v{v}" for v in range(inst.graph.n)}))
    meta = dict(inst.metadata(), reduction=args.kind)
    Path(f"{base}.meta.jsonl").write_text(formats.format_metadata([meta]))
    if args.json:
        out.write(json.dumps(meta, sort_keys=True) + "\n")
    else:
        out.write(f"wrote {base} (n={inst.graph.n}, m={inst.graph.edge_count}, k={inst.budget_k})\n")
    return EXIT_OK


def cmd_verify(args, out):
    from .verify import SUITES, run_suite

    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    report = run_suite(args.suite, args.seed, _budget(args))
    out.write((report.to_json() if args.json else report.summary()) + "\n")
    if report.counterexamples:
        return EXIT_USAGE
    return EXIT_BUDGET if report.undecided else EXIT_OK


COMMANDS = {
    "orderable": cmd_orderable, "reach": cmd_reach, "maxreach": cmd_maxreach,
    "nonrep-reach": cmd_nonrep_reach, "cover": cmd_cover, "annihilate": cmd_annihilate,
    "pi": cmd_pi, "rpi": cmd_rpi, "opn": cmd_opn, "gamma": cmd_gamma,
    "reduce": cmd_reduce, "verify": cmd_verify,
}


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        return COMMANDS[args.command](args, out)
    except BudgetExceeded as e:
        err.write(f"budget exceeded: {e}\n")
        return EXIT_BUDGET
    except (UsageError, formats.ParseError, OSError) as e:
        err.write(f"error: {e}\n")
        return EXIT_USAGE
    except (PebblingError, ValueError, KeyError) as e:
        err.write(f"error: {e}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
