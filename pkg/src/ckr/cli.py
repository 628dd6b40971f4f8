"""Command-line interface: ckr <command> FILE ..."""
import argparse
import json
import sys

from .asp import CapExceeded
from .asp.engine import DEFAULT_GUESS_CAP
from .asp.grounder import DEFAULT_RULE_CAP
from .depgraph import is_eval_disconnected
from .dsl import DSLError, load
from .kb import CycleError, validate_normal_form

OK, FALSE, USAGE, CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--relation-priority", metavar="R1,R2",
                        help="relation priority, highest first (default: declaration order)")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--max-guesses", type=int, default=DEFAULT_GUESS_CAP,
                        help="cap on overriding guesses (default %(default)s)")
    common.add_argument("--max-rules", type=int, default=DEFAULT_RULE_CAP,
                        help="cap on ground rules (default %(default)s)")

    p = argparse.ArgumentParser(prog="ckr", description="Reason over contextual knowledge repositories.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", parents=[common], help="parse and validate a knowledge base")
    s.add_argument("file")
    s.add_argument("--eval-disconnected", action="store_true",
                   help="also test eval-disconnectedness")

    s = sub.add_parser("translate", parents=[common], help="emit the logic program")
    s.add_argument("file")
    s.add_argument("-o", "--output", help="write to this file instead of stdout")

    s = sub.add_parser("models", parents=[common], help="list justified or preferred models")
    s.add_argument("file")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--all", action="store_true", help="justified models, preferred ones marked")
    g.add_argument("--justified-only", action="store_true", help="justified models only")
    g.add_argument("--preferred", action="store_true", help="preferred models (default)")
    s.add_argument("--explain-pref", nargs=2, type=int, metavar=("M1", "M2"),
                   help="explain the preference between two justified models (1-based)")

    s = sub.add_parser("entails", parents=[common], help="check `c : A(a)` in all preferred models")
    s.add_argument("file")
    s.add_argument("query")

    s = sub.add_parser("query", parents=[common], help="boolean conjunctive query")
    s.add_argument("file")
    s.add_argument("query")

    s = sub.add_parser("aggregate", parents=[common], help="epistemic aggregate query")
    s.add_argument("file")
    s.add_argument("query")

    s = sub.add_parser("weight", parents=[common], help="overall weight of a measure")
    s.add_argument("file")
    s.add_argument("--semiring", default="nat", help="nat, bool, trop or max")
    s.add_argument("--formula", help="weighted formula, e.g. \"1\" or \"a * 2 + ~a\"")
    s.add_argument("--builtin", choices=["mu_opt", "mu_one", "mu_all"])
    return p


def _load(args):
    k = load(args.file)
    if args.relation_priority:
        order = [r.strip() for r in args.relation_priority.split(",")]
        try:
            k = k.with_priority(order)
        except ValueError as e:
            raise UsageError(str(e))
    return k


def _emit(args, out, data, text):
    if args.json:
        out.write(json.dumps(data, indent=2, sort_keys=True) + "\n")
    else:
        out.write(text.rstrip("\n") + "\n")


def _reasoner(args, k):
    from .query import Reasoner
    return Reasoner(k, max_guesses=args.max_guesses, rule_cap=args.max_rules)


def _answer(args, out, err, r, query, result):
    for w in r.warnings:
        err.write("warning: %s\n" % w)
    data = {"query": query, "result": result,
            "preferred_models": len(r.preferred), "justified_models": len(r.justified)}
    return data


def cmd_check(args, out, err):
    k = _load(args)
    problems = validate_normal_form(k)
    data = {"file": args.file, "problems": problems, "contexts": len(k.contexts),
            "relations": list(k.relations)}
    lines = problems or ["OK: %d contexts, relations %s" % (len(k.contexts), ", ".join(k.relations))]
    code = FALSE if problems else OK
    if args.eval_disconnected:
        v = is_eval_disconnected(k)
        data["eval_disconnected"] = v.disconnected
        data["verdict"] = v.describe()
        lines.append(v.describe())
        if not v.disconnected:
            code = FALSE
    _emit(args, out, data, "\n".join(lines))
    return code


def cmd_translate(args, out, err):
    from .translator import emit_asp_text
    text = emit_asp_text(_load(args))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as f:
            f.write(text)
        if args.json:
            _emit(args, out, {"output": args.output, "bytes": len(text.encode())}, "")
    else:
        out.write(text)
    return OK


def _model_data(i, m, preferred):
    return {"index": i, "preferred": preferred,
            "clashing_assumptions": m.clash_lines(),
            "views": {c: sorted("%s(%s)" % (n, ",".join(a)) for n, a in v)
                      for c, v in sorted(m.per_context_views.items())}}


def cmd_models(args, out, err):
    from .preferences import explain
    k = _load(args)
    r = _reasoner(args, k)
    models = r.justified
    if args.explain_pref:
        a, b = args.explain_pref
        if not (1 <= a <= len(models) and 1 <= b <= len(models)):
            raise UsageError("model indexes must be between 1 and %d" % len(models))
        gt, rel, c, why = explain(models[a - 1], models[b - 1], k, mode=r.mode)
        _emit(args, out, {"first": a, "second": b, "first_preferred": gt, "relation": rel,
                          "context": c, "reason": why},
              "model %d vs model %d: %s" % (a, b, why))
        return OK if gt else FALSE
    if args.justified_only:
        shown = [(i, m, None) for i, m in enumerate(models, 1)]
    else:
        pref = {id(m) for m in r.preferred}
        shown = [(i, m, id(m) in pref) for i, m in enumerate(models, 1)
                 if args.all or id(m) in pref]
    lines = []
    for i, m, p in shown:
        mark = "" if p is None else (" (preferred)" if p else "")
        lines.append("model %d%s" % (i, mark))
        for line in m.clash_lines():
            lines.append("  ovr %s" % line)
        for c, v in sorted(m.per_context_views.items()):
            if v:
                lines.append("  %s: %s" % (c, " ".join(sorted("%s(%s)" % (n, ",".join(a))
                                                           for n, a in v))))
    lines.append("%d justified, %s preferred" % (
        len(models), "-" if args.justified_only else len(r.preferred)))
    data = {"justified_models": len(models),
            "preferred_models": None if args.justified_only else len(r.preferred),
            "models": [_model_data(i, m, p) for i, m, p in shown]}
    _emit(args, out, data, "\n".join(lines))
    return OK if models else FALSE


def cmd_entails(args, out, err):
    from .query import parse_instance_query
    k = _load(args)
    q = parse_instance_query(args.query)
    r = _reasoner(args, k)
    res = r.c_entails(q)
    _emit(args, out, _answer(args, out, err, r, args.query, res), "yes" if res else "no")
    return OK if res else FALSE


def cmd_query(args, out, err):
    from .query import parse_atoms
    k = _load(args)
    atoms = parse_atoms(args.query)
    r = _reasoner(args, k)
    res = r.bcq_entails(atoms)
    _emit(args, out, _answer(args, out, err, r, args.query, res), "yes" if res else "no")
    return OK if res else FALSE


def cmd_aggregate(args, out, err):
    from .query import parse_aggregate_query
    k = _load(args)
    q = parse_aggregate_query(args.query)
    r = _reasoner(args, k)
    rows = r.epistemic_aggregate(q)
    header = list(q.group_vars) + ["%s(%s)" % (q.aggregate, ",".join(q.agg_vars))]
    text = "\t".join(header) + "\n" + "\n".join("\t".join(map(str, row)) for row in rows)
    data = _answer(args, out, err, r, args.query, [list(row) for row in rows])
    _emit(args, out, data, text)
    return OK


def cmd_weight(args, out, err):
    from . import measures as ms
    k = _load(args)
    if args.builtin and args.formula:
        raise UsageError("use either --builtin or --formula")
    try:
        if args.builtin == "mu_opt":
            m = ms.build_mu_opt(k)
        elif args.builtin == "mu_one":
            m = ms.build_mu_one(k)
        elif args.builtin == "mu_all":
            m = ms.build_mu_all(k)
        else:
            r = ms.get(args.semiring)
            f = ms.parse_formula(args.formula or "1", r)
            m = ms.Measure(k, f, r)
        w = ms.overall_weight(m)
    except ValueError as e:
        raise UsageError(str(e))
    text = m.semiring.show(w)
    _emit(args, out, {"semiring": m.semiring.name, "answer_sets": len(m.models()), "weight": text},
          text)
    return OK


COMMANDS = {"check": cmd_check, "translate": cmd_translate, "models": cmd_models,
            "entails": cmd_entails, "query": cmd_query, "aggregate": cmd_aggregate,
            "weight": cmd_weight}


def main(argv=None, out=None, err=None):
    from .measures import FormulaSyntaxError
    from .query import QueryError
    from .translator import TranslationError
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = _parser().parse_args(argv)
    except SystemExit as e:
        return USAGE if e.code else OK
    try:
        return COMMANDS[args.command](args, out, err)
    except CapExceeded as e:
        err.write("cap exceeded: %s\n" % e)
        return CAP
    except (UsageError, DSLError, CycleError, QueryError, FormulaSyntaxError,
            TranslationError, OSError) as e:
        err.write("error: %s\n" % e)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
