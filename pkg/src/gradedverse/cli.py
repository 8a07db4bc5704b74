"""Command-line entry point: ``gradedverse <command> ...``.

Exit status is 0 on success, 1 when a verification or domain check fails,
and 2 on usage errors (bad flags, unparsable input).
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, TextIO

from . import acceptance
from .collapse import j_embed, realize_as_set
from .digraph import ORDER_PRESERVING, VALUE_EXACT, GradedDigraph, grade
from .errors import GradedverseError, ParseError
from .hf import (
    CodeTooLarge,
    code_or_none,
    decode,
    encode,
    format_set,
    membership_digraph,
    parse_set,
    transitive_closure,
)
from .io import dumps, graph_from_json, graph_to_obj, to_dot
from .orders import format_rational
from .stages import STAGE_BOUND, build_stage
from .surreal import BORN_BY_BOUND, HYPNAGOGIC_BOUND, born_by, dyadic_value, hypnagogic_stage, leq, parse_term
from .surrogate import LayerConfig, SurrogateDigraph, embed_into_surrogate, membership_demo
from .universe import GenerativeUniverse, forth_embed


class UsageError(Exception):
    pass


def _seed(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--seed must be an integer, got {text!r}")
    if not 0 <= n < 1 << 64:
        raise argparse.ArgumentTypeError("--seed must be a 64-bit natural")
    return n


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    if n <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {n}")
    return n


def _natural(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a natural number, got {text!r}")
    if n < 0:
        raise argparse.ArgumentTypeError(f"expected a natural number, got {n}")
    return n


def _lambdas(text: str) -> LayerConfig:
    try:
        return LayerConfig.parse(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"--lambdas: {exc}")


def _criteria(text: str) -> list[int]:
    try:
        nums = [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"--only expects numbers like 1,4,13, got {text!r}")
    bad = [n for n in nums if n not in acceptance.CRITERIA]
    if bad or not nums:
        raise argparse.ArgumentTypeError(f"--only: unknown criteria {bad or text!r}")
    return nums


def _global_flags(p: argparse.ArgumentParser, top: bool, skip: tuple = ()) -> None:
    # leaf parsers repeat the global flags with SUPPRESS so they may follow the command
    d = (lambda v: v) if top else (lambda v: argparse.SUPPRESS)
    p.add_argument("--seed", type=_seed, default=d(0), help="seed for every hashed coin (default 0)")
    if "mode" not in skip:
        p.add_argument("--mode", choices=("generic", "random"), default=d("generic"),
                       help="universe construction (default generic)")
    p.add_argument("--format", choices=("json", "dot", "text"), default=d(None),
                   help="output format; the default depends on the command")
    p.add_argument("--lambdas", type=_lambdas, default=d(None), help="surrogate layer values, e.g. 10,20,30")
    p.add_argument("--bound", type=_positive, default=d(None), help="override stage/day bounds")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gradedverse", description=__doc__.splitlines()[0])
    _global_flags(p, top=True)
    sub = p.add_subparsers(dest="command", metavar="COMMAND", required=True)

    def leaf(group, name, helptext, skip=()):
        q = group.add_parser(name, help=helptext, description=helptext)
        _global_flags(q, top=False, skip=skip)
        return q

    s = leaf(sub, "grade", "strict grading of an acyclic digraph (graph JSON path, '-' for stdin)")
    s.add_argument("graph")

    gamma = sub.add_parser("gamma", help="the countable random graded digraph").add_subparsers(
        dest="sub", metavar="SUB", required=True)
    leaf(gamma, "stage", "exhaustive stage N of the stagewise construction").add_argument("n", type=_natural)
    s = leaf(gamma, "embed", "embed a graded digraph into a universe as an induced subgraph", skip=("mode",))
    s.add_argument("graph")
    s.add_argument("--mode", dest="embed_mode", choices=(VALUE_EXACT, ORDER_PRESERVING), default=VALUE_EXACT,
                   help="value condition on the embedding (default value-exact)")

    hf = sub.add_parser("hf", help="hereditarily finite sets and Ackermann codes").add_subparsers(
        dest="sub", metavar="SUB", required=True)
    leaf(hf, "encode", "Ackermann code of a set").add_argument("set")
    leaf(hf, "decode", "set with a given Ackermann code").add_argument("code", type=_natural)
    leaf(hf, "tc", "transitive closure of a set").add_argument("set")
    leaf(hf, "digraph", "membership digraph on TC(s) plus s").add_argument("set")

    col = sub.add_parser("collapse", help="realize digraphs as sets").add_subparsers(
        dest="sub", metavar="SUB", required=True)
    leaf(col, "realize", "vertex-to-set realization of an acyclic digraph").add_argument("graph")
    leaf(col, "j", "tagged membership-preserving self-map of HF").add_argument("set")

    sur = sub.add_parser("surreal", help="surreal-number terms").add_subparsers(
        dest="sub", metavar="SUB", required=True)
    s = leaf(sur, "cmp", "compare two terms: prints <, = or >")
    s.add_argument("x")
    s.add_argument("y")
    leaf(sur, "born", "one representative per value born by DAY").add_argument("day", type=_natural)

    hyp = sub.add_parser("hypnagogic", help="unquotiented surreal term digraph").add_subparsers(
        dest="sub", metavar="SUB", required=True)
    leaf(hyp, "stage", "every term of birthday at most DAY").add_argument("day", type=_natural)

    srg = sub.add_parser("surrogate", help="surrogate digraph pipeline").add_subparsers(
        dest="sub", metavar="SUB", required=True)
    leaf(srg, "demo", "membership digraph, surrogate embedding, tagged collapse").add_argument("set")
    leaf(srg, "embed", "embed a graded digraph into the surrogate digraph").add_argument("graph")

    s = leaf(sub, "check", "run the acceptance suite")
    s.add_argument("--only", type=_criteria, default=None, help="comma-separated criterion numbers")
    return p


# -- helpers -------------------------------------------------------------------

def _read(arg: str, stdin: TextIO, file_ok: bool) -> str:
    if arg == "-":
        return stdin.read()
    if not file_ok:
        return arg
    try:
        with open(arg, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {arg}: {exc.strerror}")


def _graded(g) -> GradedDigraph:
    return g if isinstance(g, GradedDigraph) else GradedDigraph(g, grade(g))


def _code_text(s) -> Optional[str]:
    c = code_or_none(s)
    return None if c is None else str(c)


def _emit_graph(g, fmt: str, header: Optional[dict] = None) -> str:
    if fmt == "dot":
        return to_dot(g)
    if fmt == "text":
        dg = g.digraph if isinstance(g, GradedDigraph) else g
        lines = []
        for v in dg.vertices:
            val = f" @ {format_rational(g.value(v))}" if isinstance(g, GradedDigraph) else ""
            succ = " ".join(str(w) for w in dg.vertices if dg.has_edge(v, w))
            lines.append(f"{v}{val} -> [{succ}]")
        return "\n".join(lines) + ("\n" if lines else "")
    return dumps(graph_to_obj(g, header)) + "\n"


def _json(obj) -> str:
    return dumps(obj) + "\n"


# -- commands ----------------------------------------------------------------

def _cmd_grade(a, stdin):
    g = graph_from_json(_read(a.graph, stdin, True))
    dg = g.digraph if isinstance(g, GradedDigraph) else g
    return 0, _emit_graph(GradedDigraph(dg, grade(dg)), a.format or "json")


def _cmd_gamma(a, stdin):
    if a.sub == "stage":
        st = build_stage(a.n, bound=a.bound or STAGE_BOUND)
        return 0, _emit_graph(st.graph, a.format or "json", {"stage": st.n})
    g = _graded(graph_from_json(_read(a.graph, stdin, True)))
    u = GenerativeUniverse(a.mode, seed=a.seed)
    w = forth_embed(g, u, a.embed_mode)
    if (a.format or "json") == "text":
        out = "".join(f"{x} -> {w.map[x]}\n" for x in g.vertices) + "VERIFIED\n"
    else:
        out = _json({**u.header(), "embed_mode": a.embed_mode, "verified": True,
                     "map": {str(x): w.map[x] for x in g.vertices},
                     "universe": graph_to_obj(u.snapshot())})
    return 0, out


def _cmd_hf(a, stdin):
    fmt = a.format or "text"
    if a.sub == "decode":
        s = decode(a.code)
        return 0, _json({"code": str(a.code), "set": format_set(s)}) if fmt == "json" else format_set(s) + "\n"
    s = parse_set(_read(a.set, stdin, False))
    if a.sub == "encode":
        c = encode(s)  # CodeTooLarge reported by the caller
        return 0, _json({"set": format_set(s), "code": str(c)}) if fmt == "json" else f"{c}\n"
    if a.sub == "tc":
        t = transitive_closure(s)
        if fmt == "json":
            return 0, _json({"set": format_set(t), "code": _code_text(t), "size": len(t)})
        return 0, format_set(t) + "\n"
    return 0, _emit_graph(membership_digraph(s), a.format or "json")


def _cmd_collapse(a, stdin):
    fmt = a.format or "json"
    if a.sub == "j":
        s = parse_set(_read(a.set, stdin, False))
        img = j_embed(s)
        if fmt == "json":
            return 0, _json({"set": format_set(s), "image": format_set(img), "code": _code_text(img)})
        return 0, format_set(img) + "\n"
    g = graph_from_json(_read(a.graph, stdin, True))
    dg = g.digraph if isinstance(g, GradedDigraph) else g
    res = realize_as_set(dg)
    if fmt == "text":
        return 0, "".join(f"{v}: {format_set(res[v])} ({_code_text(res[v])})\n" for v in dg.vertices)
    return 0, _json({str(v): {"set": format_set(res[v]), "code": _code_text(res[v])} for v in dg.vertices})


def _cmd_surreal(a, stdin):
    fmt = a.format or "text"
    if a.sub == "cmp":
        x = parse_term(_read(a.x, stdin, False))
        y = parse_term(_read(a.y, stdin, False))
        le, ge = leq(x, y), leq(y, x)
        rel = "=" if le and ge else "<" if le else ">"
        if fmt == "json":
            return 0, _json({"x": str(x), "y": str(y), "relation": rel, "leq": le, "geq": ge})
        return 0, rel + "\n"
    reps = born_by(a.day, bound=a.bound or BORN_BY_BOUND)
    if fmt == "json":
        return 0, _json([{"term": str(t), "value": format_rational(dyadic_value(t)),
                          "birthday": t.birthday} for t in reps])
    return 0, "".join(f"{format_rational(dyadic_value(t))}\t{t}\n" for t in reps)


def _cmd_hypnagogic(a, stdin):
    st = hypnagogic_stage(a.day, bound=a.bound or HYPNAGOGIC_BOUND)
    return 0, _emit_graph(st.graph(), a.format or "json", {"day": st.day})


def _cmd_surrogate(a, stdin):
    fmt = a.format or ("text" if a.sub == "demo" else "json")
    config = a.lambdas or LayerConfig()
    if a.sub == "demo":
        s = parse_set(_read(a.set, stdin, False))
        d = membership_demo(s, config, mode=a.mode, seed=a.seed)
        verdict = "VERIFIED" if d.verified else "FAILED"
        rows = [(format_set(x), str(d.sequences[x]), _code_text(d.composite[x])) for x in d.vertices]
        if fmt == "json":
            out = _json({"verdict": verdict, "lambdas": [format_rational(q) for q in config.lambdas],
                         "map": [{"set": x, "sequence": q, "code": c} for x, q, c in rows],
                         "failures": [[str(p) for p in f] for f in d.failures]})
        else:
            out = verdict + "\n" + "".join(f"{x}\t{q}\t{c if c is not None else '(too large)'}\n"
                                           for x, q, c in rows)
        return (0 if d.verified else 1), out
    g = _graded(graph_from_json(_read(a.graph, stdin, True)))
    t = SurrogateDigraph(config, mode=a.mode, seed=a.seed)
    image = embed_into_surrogate(g, t)
    if fmt == "text":
        return 0, "".join(f"{x} -> {image[x]} {list(image[x].nodes)}\n" for x in g.vertices) + "VERIFIED\n"
    return 0, _json({"verified": True, "mode": a.mode, "seed": a.seed,
                     "lambdas": [format_rational(q) for q in config.lambdas],
                     "map": {str(x): {"sequence": str(image[x]), "nodes": list(image[x].nodes),
                                      "value": format_rational(t.value(image[x]))} for x in g.vertices}})


def _cmd_check(a, stdin, stdout):
    results = acceptance.run_all(seed=a.seed if a.seed else acceptance.DEFAULT_SEED, only=a.only,
                                 echo=lambda line: (stdout.write(line + "\n"), stdout.flush()))
    failed = [r.number for r in results if not r.passed]
    stdout.write(f"{len(results) - len(failed)}/{len(results)} criteria passed\n")
    return 1 if failed else 0


HANDLERS = {
    "grade": _cmd_grade, "gamma": _cmd_gamma, "hf": _cmd_hf, "collapse": _cmd_collapse,
    "surreal": _cmd_surreal, "hypnagogic": _cmd_hypnagogic, "surrogate": _cmd_surrogate,
}


def run(argv: Optional[list[str]] = None, stdin: Optional[TextIO] = None,
        stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)  # Ackermann codes are printed in full
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed the message
        return int(exc.code or 0)
    if args.format == "dot" and args.command not in ("grade", "gamma", "hf", "hypnagogic"):
        stderr.write(f"gradedverse: error: --format dot is not available for '{args.command}'\n")
        return 2
    try:
        if args.command == "check":
            return _cmd_check(args, stdin, stdout)
        status, out = HANDLERS[args.command](args, stdin)
    except (UsageError, ParseError, json.JSONDecodeError) as exc:
        stderr.write(f"gradedverse: error: {exc}\n")
        return 2
    except CodeTooLarge as exc:
        stderr.write(f"gradedverse: {exc}\n")
        return 1
    except (GradedverseError, AssertionError, ValueError) as exc:
        stderr.write(f"gradedverse: {type(exc).__name__}: {exc}\n")
        return 1
    stdout.write(out)
    return status


def main(argv: Optional[list[str]] = None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
