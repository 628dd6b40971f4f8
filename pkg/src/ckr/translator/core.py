"""Compile an sCKR to its datalog program, ground it and read back justified models."""
from dataclasses import dataclass, field
from itertools import product

from ..asp import GuessCheckSolver, ground as ground_rules
from ..asp.engine import DEFAULT_GUESS_CAP
from ..asp.grounder import DEFAULT_RULE_CAP
from ..asp.terms import Atom, atom_str
from ..kb import ClashingAssumption, Axiom, compute_closures, validate_normal_form
from .rules import PREFERENCES, TABLES, all_rules

RELATION_CONSTANTS = {"t": "time", "c": "covers"}

# ovr tag -> (axiom kind, number of leading instance arguments)
OVR_TAGS = {
    "subClass": ("SubClass", 1),
    "subConj": ("SubConj", 1),
    "subEx": ("SubEx", 1),
    "supEx": ("SupEx", 1),
    "supForall": ("SupForall", 2),
    "supLeqOne": ("SupLeqOne", 3),
    "subRole": ("SubRole", 2),
    "subRChain": ("SubRChain", 3),
    "dis": ("Dis", 2),
    "inv": ("Inv", 2),
    "irr": ("Irr", 1),
}
KIND_TO_TAG = {k: t for t, (k, _n) in OVR_TAGS.items()}

_STRICT_FACT = {
    "SubClass": "subClass",
    "SubConj": "subConj",
    "SubEx": "subEx",
    "SupEx": "supEx",
    "SupForall": "supForall",
    "SupLeqOne": "supLeqOne",
    "SubRole": "subRole",
    "SubRChain": "subRChain",
    "Dis": "dis",
    "Inv": "inv",
    "Irr": "irr",
    "SubEvalC": "subEval",
    "SubEvalR": "subEvalR",
}

_DEF_FACT = {
    "SubClass": "def_subclass",
    "SubConj": "def_subcnj",
    "SubEx": "def_subex",
    "SupEx": "def_supex",
    "SupForall": "def_supforall",
    "SupLeqOne": "def_supleqone",
    "SubRole": "def_subr",
    "SubRChain": "def_subrc",
    "Dis": "def_dis",
    "Inv": "def_inv",
    "Irr": "def_irr",
}


class TranslationError(ValueError):
    pass


def relation_constants(names):
    """Map DSL relation names to program constants.

    A single relation gets an edgeless companion so that the two-relation
    guards of the program have something to range over.
    """
    if len(names) > 2:
        raise TranslationError("at most two relations are supported, got %d" % len(names))
    out = {}
    for r in names:
        out[r] = RELATION_CONSTANTS.get(r, r)
    if len(set(out.values())) != len(out):
        raise TranslationError("relation names %s collide after renaming" % ", ".join(names))
    companion = None
    if len(names) == 1:
        used = set(out.values())
        for cand in ("time", "covers", "rel_aux"):
            if cand not in used:
                companion = cand
                break
    return out, companion


@dataclass
class Translation:
    kb: object
    facts: list
    rules: list
    rel_const: dict
    companion: object = None
    closures: object = None
    weights: dict = field(default_factory=dict)

    def relation_name(self, const):
        for r, c in self.rel_const.items():
            if c == const:
                return r
        return None


def axiom_facts(ax, c):
    k, a = ax.kind, ax.args
    if k == "ClassAssertion":
        return [Atom("insta", (a[1], a[0], c))]
    if k == "RoleAssertion":
        return [Atom("triplea", (a[1], a[0], a[2], c))]
    if k == "Eq":
        return [Atom("eq", (a[0], a[1], c, "main"))]
    if k == "Neq":
        return []
    if k == "NomSubClass":
        return [Atom("insta", (a[0], a[1], c))]
    if k in _STRICT_FACT:
        return [Atom(_STRICT_FACT[k], tuple(a) + (c,))]
    raise TranslationError("%s: unsupported axiom shape '%s'" % (c, ax))


def translate(k):
    """Facts and rules of the program for k (relations in priority order)."""
    problems = validate_normal_form(k)
    if problems:
        raise TranslationError("; ".join(problems))
    cl = compute_closures(k.structure)
    rel_const, companion = relation_constants(k.relations)
    facts = []
    for c in k.contexts:
        facts.append(Atom("context", (c,)))
    for r in k.relations:
        facts.append(Atom("relation", (rel_const[r],)))
    if companion:
        facts.append(Atom("relation", (companion,)))
    for r in k.relations:
        for a, b in sorted(cl.prec[r]):
            facts.append(Atom("prec", (a, b, rel_const[r])))
    m = len(k.relations)
    weights = {}
    for i, r in enumerate(k.relations, 1):
        weights[rel_const[r]] = m - i + 1
        facts.append(Atom("rel_w", (rel_const[r], m - i + 1)))
    voc = k.vocabulary
    for c in k.contexts:
        for a in sorted(voc.individuals):
            facts.append(Atom("nom", (a, c)))
        for a in sorted(voc.concept_names):
            facts.append(Atom("cls", (a, c)))
        for a in sorted(voc.role_names):
            facts.append(Atom("rol", (a, c)))
        kb = k.kb(c)
        for ax in kb.strict:
            facts.extend(axiom_facts(ax, c))
        for d in kb.defeasible:
            facts.append(Atom(_DEF_FACT[d.body.kind], tuple(d.body.args) + (c, rel_const[d.relation])))
    seen = set()
    facts = [f for f in facts if not (f in seen or seen.add(f))]
    return Translation(k, facts, all_rules(), rel_const, companion, cl, weights)


def ground(tr, cap=DEFAULT_RULE_CAP):
    return ground_rules(tr.rules, tr.facts, cap)


def guess_atoms(gp):
    return {r.head for r in gp.rules if r.head is not None and r.label.startswith("ovr-")}


# reading back answer sets

def clash_of(atom, tr):
    """ClashingAssumption and target context of an ovr atom with an inline tag."""
    args = atom.args
    kind, n = OVR_TAGS[args[0]]
    inner = args[1:-3]
    c1, c, rel = args[-3:]
    ca = ClashingAssumption(Axiom(kind, tuple(inner[n:])), tuple(inner[:n]), c1,
                            tr.relation_name(rel))
    return ca, c


def extract_clash_maps(answer_set, tr):
    maps = {r: {} for r in tr.kb.relations}
    for a in answer_set:
        if a.pred == "ovr" and len(a.args) > 4:  # ovr/4 is the asprin-facing copy
            ca, c = clash_of(a, tr)
            maps[ca.relation].setdefault(c, set()).add(ca)
    return {r: {c: frozenset(s) for c, s in m.items()} for r, m in maps.items()}


def context_views(answer_set, contexts):
    """Per context: class assertions (A, (x,)) and role assertions (R, (x, y)) in main."""
    views = {c: set() for c in contexts}
    for a in answer_set:
        if a.pred == "instd" and a.args[3] == "main" and a.args[1] != "top":
            views[a.args[2]].add((a.args[1], (a.args[0],)))
        elif a.pred == "tripled" and a.args[4] == "main":
            views[a.args[3]].add((a.args[1], (a.args[0], a.args[2])))
    return {c: frozenset(v) for c, v in views.items()}


@dataclass(frozen=True)
class JustifiedModel:
    answer_set: frozenset
    clash_maps: dict
    per_context_views: dict

    def clash_set(self, rel, c):
        return self.clash_maps.get(rel, {}).get(c, frozenset())

    def holds(self, name, args, c):
        return (name, tuple(args)) in self.per_context_views.get(c, ())

    def clash_lines(self):
        out = []
        for rel in sorted(self.clash_maps):
            for c in sorted(self.clash_maps[rel]):
                for ca in sorted(self.clash_maps[rel][c], key=str):
                    out.append("%s -> %s" % (ca, c))
        return out


def make_model(answer_set, tr):
    return JustifiedModel(frozenset(answer_set), extract_clash_maps(answer_set, tr),
                          context_views(answer_set, tr.kb.contexts))


def solve_ckr(k, max_guesses=DEFAULT_GUESS_CAP, rule_cap=DEFAULT_RULE_CAP, tr=None):
    """Justified models of k, one per answer set of its program."""
    tr = tr or translate(k)
    gp = ground(tr, rule_cap)
    solver = GuessCheckSolver(gp, guess_atoms(gp))
    return [make_model(s, tr) for s in solver.solve(max_guesses)]


def ovr_atom_domain(k, tr=None):
    """Every clashing assumption that can be made, as (assumption, target) pairs."""
    tr = tr or translate(k)
    cl = tr.closures
    inds = sorted(k.vocabulary.individuals)
    out = set()
    for c1 in k.contexts:
        for d in k.kb(c1).defeasible:
            rel = d.relation
            others = [r for r in k.relations if r != rel]
            kind = d.body.kind
            n = OVR_TAGS[KIND_TO_TAG[kind]][1]
            for c in k.contexts:
                if not guard_holds(cl, rel, others, c, c1):
                    continue
                for e in product(inds, repeat=n):
                    out.add((ClashingAssumption(d.body, e, c1, rel), c))
    return out


def guard_holds(cl, rel, others, c, c1):
    """Some c2 with c strictly below c2 in rel and c2 below-or-equal c1 in another relation."""
    ups = {b for a, b in cl.prec[rel] if a == c}
    for c2 in ups:
        if c2 == c1:
            return True  # reflexivity of the other relation
        if any((c2, c1) in cl.preceq[r] for r in others):
            return True
    return False


# text emission

def _fact_line(a):
    return atom_str(a, quote=True, sep=", ") + "."


def emit_asp_text(k, tr=None):
    tr = tr or translate(k)
    lines = ["% facts"]
    lines.extend(_fact_line(f) for f in tr.facts)
    for name, block in TABLES:
        lines.append("")
        lines.append("% " + name)
        for tag, text in block:
            lines.append("%% (%s)" % tag)
            lines.append(text)
    lines.append("")
    lines.append("% preferences")
    lines.append(PREFERENCES.rstrip("\n"))
    return "\n".join(lines) + "\n"
