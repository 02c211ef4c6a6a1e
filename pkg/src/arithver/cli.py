"""Command-line workbench tying the library together.

Exit codes: 0 ok/verified/accepted, 1 counterexample/false/rejected,
2 unknown/inconclusive, 3 usage or parse error.  Every command accepts
--json for a machine-readable tree with a "kind" discriminator per node.
"""

import argparse
import json
import sys

from . import alpha, coding, hierarchy, proofs, syntax, whilelang, xrec
from .evaluator import Budget, eval_formula
from .terms import (Add, And, BExists, BForall, Eq, Exists, FalseC, Forall,
                    Iff, Implies, Lit, Lt, Mul, Not, One, Or, TrueC, Var,
                    Zero, free_vars)

OK, FALSIFIED, UNKNOWN, USAGE = 0, 1, 2, 3


# ---------------------------------------------------------------------------
# JSON tree encoding


def term_json(t):
    if isinstance(t, Var):
        return {"kind": "var", "name": t.name}
    if isinstance(t, Zero):
        return {"kind": "zero"}
    if isinstance(t, One):
        return {"kind": "one"}
    if isinstance(t, Lit):
        return {"kind": "lit", "value": t.n}
    if isinstance(t, (Add, Mul)):
        return {"kind": "add" if isinstance(t, Add) else "mul",
                "left": term_json(t.left), "right": term_json(t.right)}
    raise TypeError(f"not a term: {t!r}")


_BIN = {And: "and", Or: "or", Implies: "implies", Iff: "iff"}


def formula_json(f):
    if isinstance(f, TrueC):
        return {"kind": "true"}
    if isinstance(f, FalseC):
        return {"kind": "false"}
    if isinstance(f, (Eq, Lt)):
        return {"kind": "eq" if isinstance(f, Eq) else "lt",
                "left": term_json(f.left), "right": term_json(f.right)}
    if isinstance(f, Not):
        return {"kind": "not", "body": formula_json(f.body)}
    if type(f) in _BIN:
        return {"kind": _BIN[type(f)], "left": formula_json(f.left),
                "right": formula_json(f.right)}
    if isinstance(f, (Forall, Exists)):
        return {"kind": "forall" if isinstance(f, Forall) else "exists",
                "var": f.var.name, "body": formula_json(f.body)}
    if isinstance(f, (BForall, BExists)):
        return {"kind": "bforall" if isinstance(f, BForall) else "bexists",
                "var": f.var.name, "bound": term_json(f.bound),
                "body": formula_json(f.body)}
    raise TypeError(f"not a formula: {f!r}")


def bool_json(b):
    if isinstance(b, whilelang.Less):
        return {"kind": "less", "left": term_json(b.left),
                "right": term_json(b.right)}
    if isinstance(b, whilelang.NotB):
        return {"kind": "not", "body": bool_json(b.body)}
    if isinstance(b, whilelang.ImpliesB):
        return {"kind": "implies", "left": bool_json(b.left),
                "right": bool_json(b.right)}
    raise TypeError(f"not a boolean expression: {b!r}")


def program_json(p):
    if isinstance(p, whilelang.Assign):
        return {"kind": "assign", "var": p.var.name, "expr": term_json(p.expr)}
    if isinstance(p, whilelang.Seq):
        return {"kind": "seq", "first": program_json(p.first),
                "second": program_json(p.second)}
    if isinstance(p, whilelang.If):
        return {"kind": "if", "guard": bool_json(p.guard),
                "then": program_json(p.then), "else": program_json(p.els)}
    if isinstance(p, whilelang.While):
        return {"kind": "while", "guard": bool_json(p.guard),
                "body": program_json(p.body)}
    raise TypeError(f"not a program: {p!r}")


def _emit(args, human, payload):
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(human)


# ---------------------------------------------------------------------------
# Argument helpers


class CliError(Exception):
    pass


def _parse_assignment(text):
    """'x=3,y=0' -> {Var: int}; empty string means the empty assignment."""
    env = {}
    if not text:
        return env
    for piece in text.split(","):
        if "=" not in piece:
            raise CliError(f"bad assignment {piece!r}: expected name=value")
        name, _, val = piece.partition("=")
        try:
            env[Var(name.strip())] = int(val)
        except ValueError as e:
            raise CliError(f"bad assignment {piece!r}: {e}")
    return env


def _parse_vars(text):
    if not text:
        return []
    try:
        return [Var(v.strip()) for v in text.split(",")]
    except ValueError as e:
        raise CliError(str(e))


def _budget(args):
    kw = {}
    if getattr(args, "qbound", None) is not None:
        kw["q_bound"] = args.qbound
    return Budget(**kw)


def _read_file(path):
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as e:
        raise CliError(str(e))


# ---------------------------------------------------------------------------
# Subcommands


def cmd_parse_formula(args):
    f = syntax.parse_formula(args.text)
    _emit(args, syntax.format_formula(f), formula_json(f))
    return OK


def cmd_parse_program(args):
    p = syntax.parse_program(args.text)
    _emit(args, syntax.format_program(p), program_json(p))
    return OK


def cmd_run(args):
    prog = syntax.parse_program(args.text)
    state = _parse_assignment(args.input)
    out = whilelang.run(prog, state, args.fuel)
    state_out = {v.name: n for v, n in sorted(out.state.items(),
                                              key=lambda kv: kv[0].name)}
    human = (f"{'terminated' if out.terminated else 'fuel exhausted'} "
             f"after {out.steps} steps: "
             + ", ".join(f"{k}={v}" for k, v in state_out.items()))
    _emit(args, human, {"kind": "run-outcome", "terminated": out.terminated,
                        "steps": out.steps, "state": state_out})
    return OK if out.terminated else UNKNOWN


def cmd_encode_alpha(args):
    prog = syntax.parse_program(args.text)
    if args.out_index is not None:
        inputs = _parse_vars(args.inputs)
        f, ins, y = alpha.encode_alpha_out(prog, args.out_index, inputs)
        payload = {"kind": "alpha-out", "formula": formula_json(f),
                   "inputs": [v.name for v in ins], "result": y.name}
        human = (f"inputs: {', '.join(v.name for v in ins) or '(none)'}\n"
                 f"result: {y.name}\n{f}")
    else:
        f, xs, ys = alpha.encode_alpha(prog)
        payload = {"kind": "alpha", "formula": formula_json(f),
                   "vars": [v.name for v in xs],
                   "out_vars": [v.name for v in ys]}
        human = (f"vars: {', '.join(v.name for v in xs)}\n"
                 f"out vars: {', '.join(v.name for v in ys)}\n{f}")
    _emit(args, human, payload)
    return OK


def cmd_classify(args):
    f = syntax.parse_formula(args.text)
    lvl = hierarchy.classify(f)
    _emit(args, str(lvl), {"kind": "level", "class": lvl.kind, "n": lvl.n,
                           "strict": lvl.strict, "both": lvl.both})
    return OK


def cmd_prenex(args):
    f = syntax.parse_formula(args.text)
    g = hierarchy.prenexify(f)
    _emit(args, syntax.format_formula(g), formula_json(g))
    return OK


def cmd_eval(args):
    f = syntax.parse_formula(args.text)
    env = _parse_assignment(args.assign)
    r = eval_formula(f, env, _budget(args))
    human = r.value + (f" ({r.reason})" if r.reason else "")
    _emit(args, human, {"kind": "verdict", "value": r.value, "reason": r.reason})
    return {"true": OK, "false": FALSIFIED}.get(r.value, UNKNOWN)


def _triple_from_args(args):
    prog = syntax.parse_program(args.text)
    pre = syntax.parse_formula(args.pre)
    post = syntax.parse_formula(args.post)
    params = tuple(_parse_vars(getattr(args, "params", "") or ""))
    return alpha.HoareTriple(pre, prog, post, params)


def cmd_vc(args):
    t = _triple_from_args(args)
    f = alpha.vc(t)
    _emit(args, syntax.format_formula(f), formula_json(f))
    return OK


def cmd_check_triple(args):
    t = _triple_from_args(args)
    v = alpha.check_triple(t, args.grid, args.fuel, _budget(args))
    payload = {"kind": "triple-verdict", "status": v.status, "grid": v.grid,
               "fuel": v.fuel, "caveats": list(v.caveats)}
    lines = [f"{v.status} (grid {v.grid}, fuel {v.fuel})"]
    if v.status == "counterexample":
        payload["input"] = {x.name: n for x, n in v.input.items()}
        payload["output"] = {x.name: n for x, n in v.output.items()}
        lines.append("input:  " + ", ".join(f"{x.name}={n}"
                                            for x, n in v.input.items()))
        lines.append("output: " + ", ".join(f"{x.name}={n}"
                                            for x, n in v.output.items()))
    lines.extend(f"caveat: {c}" for c in v.caveats)
    _emit(args, "\n".join(lines), payload)
    return {"verified": OK, "counterexample": FALSIFIED}.get(v.status, UNKNOWN)


def cmd_xrec(args):
    h = syntax.parse_schema(_read_file(args.schema))
    if args.action == "eval":
        vals = [int(x) for x in args.args.split(",")] if args.args else []
        r = xrec.xrec_eval(h, vals, fuel=args.fuel)
        if r.diverged:
            _emit(args, f"no value within fuel {args.fuel}",
                  {"kind": "xrec-result", "diverged": True, "fuel": args.fuel})
            return UNKNOWN
        _emit(args, str(r.value),
              {"kind": "xrec-result", "value": r.value,
               "fuel_spent": r.fuel_spent})
        return OK
    if args.action == "gamma":
        f, xs, y = xrec.gamma(h)
        human = (f"inputs: {', '.join(v.name for v in xs) or '(none)'}\n"
                 f"result: {y.name}\n{f}")
        _emit(args, human, {"kind": "gamma", "formula": formula_json(f),
                            "inputs": [v.name for v in xs], "result": y.name})
        return OK
    # compile
    prog, res, ps = xrec.compile_to_while(h)
    human = (f"inputs: {', '.join(v.name for v in ps) or '(none)'}\n"
             f"result: {res.name}\n{prog}")
    _emit(args, human, {"kind": "compiled", "program": program_json(prog),
                        "inputs": [v.name for v in ps], "result": res.name})
    return OK


def cmd_sigma1_compile(args):
    f = syntax.parse_formula(args.text)
    prog, res, ps, xs = xrec.sigma1_to_program(f, Var(args.result))
    human = (f"formula inputs: {', '.join(v.name for v in xs) or '(none)'}\n"
             f"program inputs: {', '.join(v.name for v in ps) or '(none)'}\n"
             f"result: {res.name}\n{prog}")
    _emit(args, human,
          {"kind": "compiled", "program": program_json(prog),
           "formula_inputs": [v.name for v in xs],
           "inputs": [v.name for v in ps], "result": res.name})
    return OK


def cmd_pi1_program(args):
    psi = syntax.parse_formula(args.text)
    prog, res, ps, _ = xrec.pi1_counterexample_program(psi, Var(args.var))
    human = (f"program inputs: {', '.join(v.name for v in ps)}\n"
             f"result: {res.name}\n{prog}")
    _emit(args, human, {"kind": "compiled", "program": program_json(prog),
                        "inputs": [v.name for v in ps], "result": res.name})
    return OK


def cmd_check_proof(args):
    pf = syntax.parse_proof(_read_file(args.file))
    rep = proofs.check_proof(pf, args.grid, _budget(args))
    nodes = [{"location": n.location, "status": n.status, "detail": n.detail}
             for n in rep.nodes]
    lines = [f"{'accepted' if rep.accepted else 'rejected'} (grid {rep.grid})"]
    for n in rep.nodes:
        if n.status != "accepted":
            lines.append(f"{n.location}: {n.status} — {n.detail}")
    _emit(args, "\n".join(lines),
          {"kind": "proof-report", "accepted": rep.accepted, "grid": rep.grid,
           "nodes": nodes})
    if not rep.accepted:
        return FALSIFIED
    return UNKNOWN if rep.caveats else OK


# ---------------------------------------------------------------------------


def build_parser():
    top = argparse.ArgumentParser(
        prog="arithver",
        description="Workbench for arithmetic assertions, while-programs, "
                    "program-encoding formulas and Hoare proofs.")
    sub = top.add_subparsers(dest="command", required=True)

    def add(name, fn, **kw):
        p = sub.add_parser(name, **kw)
        p.add_argument("--json", action="store_true",
                       help="machine-readable output")
        p.set_defaults(fn=fn)
        return p

    p = add("parse-formula", cmd_parse_formula, help="parse and print a formula")
    p.add_argument("text")

    p = add("parse-program", cmd_parse_program, help="parse and print a program")
    p.add_argument("text")

    p = add("run", cmd_run, help="run a program with a fuel budget")
    p.add_argument("text")
    p.add_argument("--input", default="", help="initial state, e.g. x=3,y=0")
    p.add_argument("--fuel", type=int, default=10 ** 4)

    p = add("encode-alpha", cmd_encode_alpha,
            help="the Sigma_1 input/output formula of a program")
    p.add_argument("text")
    p.add_argument("--out-index", type=int, default=None,
                   help="1-based designated output variable")
    p.add_argument("--inputs", default="", help="input variables, e.g. x,y")

    p = add("classify", cmd_classify, help="arithmetical-hierarchy level")
    p.add_argument("text")

    p = add("prenex", cmd_prenex, help="strict prenex form at the same level")
    p.add_argument("text")

    p = add("eval", cmd_eval, help="three-valued bounded evaluation")
    p.add_argument("text")
    p.add_argument("--assign", default="", help="assignment, e.g. x=1,y=2")
    p.add_argument("--qbound", type=int, default=None)

    p = add("vc", cmd_vc, help="verification condition of a triple")
    p.add_argument("text")
    p.add_argument("--pre", required=True)
    p.add_argument("--post", required=True)
    p.add_argument("--params", default="")

    p = add("check-triple", cmd_check_triple, help="desk-scale triple check")
    p.add_argument("text")
    p.add_argument("--pre", required=True)
    p.add_argument("--post", required=True)
    p.add_argument("--grid", type=int, default=5)
    p.add_argument("--fuel", type=int, default=10 ** 4)
    p.add_argument("--qbound", type=int, default=None)
    p.add_argument("--params", default="")

    p = add("xrec", cmd_xrec, help="evaluate/encode/compile a schema")
    p.add_argument("action", choices=["eval", "gamma", "compile"])
    p.add_argument("--schema", required=True, help="schema file")
    p.add_argument("--args", default="", help="arguments for eval, e.g. 3,4")
    p.add_argument("--fuel", type=int, default=10 ** 6)

    p = add("sigma1-compile", cmd_sigma1_compile,
            help="compile a functional Sigma_1 formula to a program")
    p.add_argument("text")
    p.add_argument("--result", required=True, help="result variable")

    p = add("pi1-program", cmd_pi1_program,
            help="least-counterexample searcher for forall VAR . psi")
    p.add_argument("text", help="the level-0 body psi")
    p.add_argument("--var", required=True)

    p = add("check-proof", cmd_check_proof, help="check a Hoare proof file")
    p.add_argument("file")
    p.add_argument("--grid", type=int, default=5)
    p.add_argument("--qbound", type=int, default=None)

    return top


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return USAGE if e.code not in (0, None) else 0
    try:
        return args.fn(args)
    except syntax.ParseError as e:
        print(f"parse error: {e.message} "
              f"(bytes {e.span.start}..{e.span.end})", file=sys.stderr)
        return USAGE
    except (CliError, ValueError, IndexError,
            xrec.ShapeError, xrec.FunctionalityError,
            xrec.NotLevelZero) as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
