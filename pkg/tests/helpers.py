"""Shared test utilities: random sCKR generation and a direct CAS-model checker."""
import random
from itertools import product
from pathlib import Path

from ckr.dsl import load
from ckr.kb import (SCKR, Axiom, ContextKB, ContextStructure, DefeasibleAxiom, Vocabulary,
                    compute_closures)

DATA = Path(__file__).resolve().parent.parent / "src" / "ckr" / "data"
FIXTURES = Path(__file__).resolve().parent / "fixtures"


# "PASS criterion n: ..." lines collected by the acceptance tests
ACCEPTANCE_LINES = []


def fixture(name):
    p = DATA / (name + ".ckr")
    if not p.exists():
        p = FIXTURES / (name + ".ckr")
    return load(p)


CONCEPTS = ["A", "B", "C"]
ROLES = ["p", "q"]
INDIVIDUALS = ["a", "b", "d"]

DEF_SHAPES = ["SubClass", "SubClass", "SubClass", "SubConj", "SubEx", "SupEx", "SupForall",
              "SupLeqOne", "SubRole", "SubRChain", "Dis", "Inv", "Irr"]


def _operands(kind, rng, inds, with_bot=False):
    c = lambda: rng.choice(CONCEPTS)
    r = lambda: rng.choice(ROLES)
    if kind == "SubClass":
        return (c(), "bot" if with_bot and rng.random() < 0.3 else c())
    if kind == "SubConj":
        a, b = rng.sample(CONCEPTS, 2)
        return (a, b, "bot" if rng.random() < 0.5 else c())
    if kind == "SubEx":
        return (r(), c(), c())
    if kind == "SupEx":
        return (c(), r(), rng.choice(inds))
    if kind == "SupForall":
        return (c(), r(), c())
    if kind == "SupLeqOne":
        return (c(), r())
    if kind in ("SubRole", "Dis", "Inv"):
        a, b = rng.sample(ROLES, 2)
        return (a, b)
    if kind == "SubRChain":
        return (r(), r(), r())
    if kind == "Irr":
        return (r(),)
    raise ValueError(kind)


def random_sckr(rng, max_contexts=4, max_relations=2, max_individuals=3, max_defeasible=4,
                shapes=DEF_SHAPES):
    """A small random eval-free sCKR."""
    n = 1 if rng.random() < 0.1 else rng.randint(2, max_contexts)
    ctxs = tuple("c%d" % i for i in range(n))
    rel_names = ("c", "t")[:rng.randint(1, max_relations)]
    rels = []
    for r in rel_names:
        es = tuple((ctxs[i], ctxs[j]) for i in range(n) for j in range(i + 1, n)
                   if rng.random() < 0.7)
        rels.append((r, es))
    inds = INDIVIDUALS[:rng.randint(1, max_individuals)]
    strict = {c: [] for c in ctxs}
    defeasible = {c: [] for c in ctxs}
    low = lambda: ctxs[min(rng.randrange(n), rng.randrange(n))]
    high = lambda: ctxs[max(rng.randrange(n), rng.randrange(n))]
    defs = []
    for _ in range(rng.randint(1, max_defeasible)):
        kind = rng.choice(shapes)
        defs.append(DefeasibleAxiom(rng.choice(rel_names), Axiom(kind, _operands(kind, rng, inds))))
    # premises of the defaults are asserted more often than other concepts
    premises = [d.body.args[0] for d in defs if d.body.kind in ("SubClass", "SubConj", "SupEx",
                                                               "SupForall", "SupLeqOne")]
    for _ in range(rng.randint(1, 4)):
        c = low()
        if rng.random() < 0.7:
            name = rng.choice(premises) if premises and rng.random() < 0.6 else rng.choice(CONCEPTS)
            strict[c].append(Axiom("ClassAssertion", (name, rng.choice(inds))))
        else:
            strict[c].append(Axiom("RoleAssertion", (rng.choice(ROLES), rng.choice(inds),
                                                     rng.choice(inds))))
    for _ in range(rng.randint(0, 2)):
        kind = rng.choice(["SubClass", "SubConj", "SubConj", "SubEx", "SupForall", "SubRole", "Inv"])
        strict[high()].append(Axiom(kind, _operands(kind, rng, inds, with_bot=True)))
    for d in defs:
        defeasible[high()].append(d)
    return build(ctxs, rels, strict, defeasible)


def build(ctxs, rels, strict, defeasible):
    kbs = {c: ContextKB(tuple(dict.fromkeys(strict.get(c, ()))),
                        tuple(dict.fromkeys(defeasible.get(c, ())))) for c in ctxs}
    concepts, roles, inds = set(), set(), set()
    sorts = {"ClassAssertion": "CI", "RoleAssertion": "RII"}
    from ckr.kb import KINDS
    for kb in kbs.values():
        for ax in list(kb.strict) + [d.body for d in kb.defeasible]:
            for s, x in zip(sorts.get(ax.kind, KINDS[ax.kind]), ax.args):
                if s == "C" and x not in ("top", "bot"):
                    concepts.add(x)
                elif s == "R":
                    roles.add(x)
                elif s == "I":
                    inds.add(x)
    voc = Vocabulary(frozenset(concepts), frozenset(roles), frozenset(inds), frozenset(ctxs))
    return SCKR(ContextStructure(tuple(ctxs), tuple(rels)), kbs, voc)


# direct semantics of normal-form axioms over a per-context view

class View:
    def __init__(self, items, inds):
        self.items = items
        self.inds = inds

    def c(self, name, x):
        if name == "top":
            return True
        if name == "bot":
            return False
        return (name, (x,)) in self.items

    def r(self, name, x, y):
        return (name, (x, y)) in self.items


def instance_holds(ax, e, v, views=None):
    """The axiom instantiated with e holds in view v."""
    k, a = ax.kind, ax.args
    inds = v.inds
    if k == "SubClass":
        (x,) = e
        return not v.c(a[0], x) or v.c(a[1], x)
    if k == "SubConj":
        (x,) = e
        return not (v.c(a[0], x) and v.c(a[1], x)) or v.c(a[2], x)
    if k == "SubEx":
        (x,) = e
        if any(v.r(a[0], x, y) and v.c(a[1], y) for y in inds):
            return v.c(a[2], x)
        return True
    if k == "SupEx":
        (x,) = e
        return not v.c(a[0], x) or v.r(a[1], x, a[2])
    if k == "SupForall":
        x, y = e
        return not (v.c(a[0], x) and v.r(a[1], x, y)) or v.c(a[2], y)
    if k == "SupLeqOne":
        x, y1, y2 = e
        return not (v.c(a[0], x) and v.r(a[1], x, y1) and v.r(a[1], x, y2)) or y1 == y2
    if k == "SubRole":
        x, y = e
        return not v.r(a[0], x, y) or v.r(a[1], x, y)
    if k == "SubRChain":
        x, y, z = e
        return not (v.r(a[0], x, y) and v.r(a[1], y, z)) or v.r(a[2], x, z)
    if k == "Dis":
        x, y = e
        return not (v.r(a[0], x, y) and v.r(a[1], x, y))
    if k == "Inv":
        x, y = e
        return v.r(a[0], x, y) == v.r(a[1], y, x)
    if k == "Irr":
        (x,) = e
        return not v.r(a[0], x, x)
    raise ValueError(k)


ARITY = {"SubClass": 1, "SubConj": 1, "SubEx": 1, "SupEx": 1, "SupForall": 2, "SupLeqOne": 3,
         "SubRole": 2, "SubRChain": 3, "Dis": 2, "Inv": 2, "Irr": 1}


def axiom_holds(ax, v, views):
    """Strict axiom semantics on view v (views gives other contexts for eval)."""
    k, a = ax.kind, ax.args
    if k == "ClassAssertion":
        return v.c(a[0], a[1])
    if k == "RoleAssertion":
        return v.r(a[0], a[1], a[2])
    if k == "Eq":
        return a[0] == a[1]
    if k == "Neq":
        return a[0] != a[1]
    if k == "NomSubClass":
        return v.c(a[1], a[0])
    if k == "SubEvalC":
        return all(not views[a[1]].c(a[0], x) or v.c(a[2], x) for x in v.inds)
    if k == "SubEvalR":
        return all(not views[a[1]].r(a[0], x, y) or v.r(a[2], x, y)
                   for x in v.inds for y in v.inds)
    return all(instance_holds(ax, e, v) for e in product(v.inds, repeat=ARITY[k]))


def cas_violations(k, model):
    """Violations of the three CAS-model conditions for one justified model."""
    cl = compute_closures(k.structure)
    inds = sorted(k.vocabulary.individuals)
    views = {c: View(model.per_context_views[c], inds) for c in k.contexts}
    out = []
    # (i) strict axioms of every context above-or-equal in the union order
    for c in k.contexts:
        for c2 in k.contexts:
            if (c, c2) not in cl.preceq_star:
                continue
            for ax in k.kb(c2).strict:
                if not axiom_holds(ax, views[c], views):
                    out.append(("i", c, c2, str(ax)))
    for c1 in k.contexts:
        for d in k.kb(c1).defeasible:
            rel = d.relation
            for c in k.contexts:
                # (ii) no exceptions along the other relations
                if (c, c1) in cl.preceq_except[rel]:
                    if not axiom_holds(d.body, views[c], views):
                        out.append(("ii", c, c1, str(d)))
                # (iii) inherited along rel except for recorded clashes
                below = any((c, c2) in cl.prec[rel] and (c2, c1) in cl.preceq_except[rel]
                            for c2 in k.contexts)
                if not below:
                    continue
                chi = model.clash_set(rel, c)
                for e in product(inds, repeat=ARITY[d.body.kind]):
                    if any(ca.axiom == d.body and ca.instance == e and ca.declared_at == c1
                           for ca in chi):
                        continue
                    if not instance_holds(d.body, e, views[c]):
                        out.append(("iii", c, c1, str(d), e))
    return out


def seeds(n, base=0):
    return [random.Random(base + i) for i in range(n)]


def random_hierarchy(rng, n=4, relations=("c", "t")):
    ctxs = tuple("c%d" % i for i in range(n))
    rels = []
    for r in relations:
        es = tuple((ctxs[i], ctxs[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.5)
        rels.append((r, es))
    return build(ctxs, rels, {}, {})


def random_clash_sets(rng, count=3, n=4):
    """(k, closures, target, relation, [clash sets]) over a random hierarchy.

    Clash sets hold assumptions of a few defaults declared anywhere whose
    guard admits the target; None when no assumption is possible.
    """
    from ckr.kb import ClashingAssumption
    from ckr.preferences import witnesses
    k = random_hierarchy(rng, n)
    cl = compute_closures(k.structure)
    c = rng.choice(k.contexts)
    rel = rng.choice(k.relations)
    cands = [ClashingAssumption(Axiom("SubClass", ("S", "A%d" % j)), ("i",), c1, rel)
             for c1 in k.contexts for j in range(2)]
    cands = [ca for ca in cands if witnesses(ca, c, cl)]
    if not cands:
        return None
    sets = [frozenset(x for x in cands if rng.random() < 0.5) for _ in range(count)]
    return k, cl, c, rel, sets


# semiring samples built from a single-relational fixture

def _domain_at(k, c):
    from ckr.translator import ovr_atom_domain
    return sorted((ca for ca, t in ovr_atom_domain(k) if t == c), key=str)


def r_one_samples(k, c="c_local1"):
    """Zero, One and pairs whose clash maps only target c."""
    from ckr.asp import Atom
    from ckr.measures import ONE, ZERO, pair
    das = _domain_at(k, c)
    a1, a2 = Atom("instd", ("i", "S", c, "main")), Atom("instd", ("i", "M", c, "main"))
    chis = [[], [das[0]], das[:2], das[1:], [das[0], das[2]], [das[0], das[0]]]
    out = [ZERO, ONE]
    for atoms in ([], [a1], [a1, a2]):
        for chi in chis:
            out.append(pair(atoms, [(c, x) for x in chi]))
    return out


def r_c_samples(k, c):
    from ckr.measures.r_all import single
    das = _domain_at(k, c)
    views = [(), (("S", ("i",)),), (("S", ("i",)), ("M", ("i",)))]
    chis = [[]] + [[x] for x in das] + ([das[:2]] if len(das) > 1 else [])
    out = [frozenset(), single()]
    for v in views:
        for chi in chis:
            out.append(single(v, chi))
    return out


def cross_samples(k, r_all, rng, n=12):
    """Random tuples drawn from per-context R_c samples."""
    per = [r_c_samples(k, c) for c in r_all.keys]
    out = [r_all.zero, r_all.one]
    while len(out) < n:
        t = tuple(rng.choice(s) for s in per)
        if t not in out:
            out.append(t)
    return out
