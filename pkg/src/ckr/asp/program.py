"""Ground normal programs and their Gelfond-Lifschitz semantics."""
from dataclasses import dataclass, field
from itertools import combinations
from typing import NamedTuple, Optional


class GroundRule(NamedTuple):
    head: Optional[tuple]  # None marks a constraint
    pos: tuple = ()
    neg: tuple = ()
    label: str = ""

    def is_constraint(self):
        return self.head is None


class ConstraintViolation(Exception):
    def __init__(self, rule):
        super().__init__("constraint violated: %s" % rule_str(rule))
        self.rule = rule


class CapExceeded(Exception):
    pass


def rule_str(r):
    from .terms import atom_str
    body = [atom_str(a) for a in r.pos] + ["not " + atom_str(a) for a in r.neg]
    head = atom_str(r.head) if r.head is not None else ""
    if not body:
        return head + "."
    return "%s :- %s." % (head, ", ".join(body))


@dataclass
class GroundProgram:
    rules: list
    herbrand_base: frozenset = field(default=None)

    def __post_init__(self):
        if self.herbrand_base is None:
            base = set()
            for r in self.rules:
                if r.head is not None:
                    base.add(r.head)
                base.update(r.pos)
                base.update(r.neg)
            self.herbrand_base = frozenset(base)
        else:
            self.herbrand_base = frozenset(self.herbrand_base)


def _index(rules):
    occ = {}
    for i, r in enumerate(rules):
        for a in set(r.pos):
            occ.setdefault(a, []).append(i)
    return occ


def _fixpoint(rules, seed=()):
    """Least model of definite rules (negation ignored), counter based."""
    occ = _index(rules)
    missing = [len(set(r.pos)) for r in rules]
    model = set()
    queue = []
    for a in seed:
        if a not in model:
            model.add(a)
            queue.append(a)
    for i, r in enumerate(rules):
        if missing[i] == 0 and r.head is not None and r.head not in model:
            model.add(r.head)
            queue.append(r.head)
    while queue:
        a = queue.pop()
        for i in occ.get(a, ()):
            missing[i] -= 1
            if missing[i] == 0:
                h = rules[i].head
                if h is not None and h not in model:
                    model.add(h)
                    queue.append(h)
    return model


def violated_constraints(p, i):
    out = []
    for r in p.rules:
        if r.head is None and all(a in i for a in r.pos) and not any(a in i for a in r.neg):
            out.append(r)
    return out


def least_model(p):
    """Least model of a program whose rules have no negative body."""
    for r in p.rules:
        if r.neg:
            raise ValueError("least_model needs a negation-free program: %s" % rule_str(r))
    model = _fixpoint(p.rules)
    for r in p.rules:
        if r.head is None and all(a in model for a in r.pos):
            raise ConstraintViolation(r)
    return frozenset(model)


def gl_reduct(p, i):
    i = set(i)
    kept = [GroundRule(r.head, r.pos, (), r.label) for r in p.rules if not any(a in i for a in r.neg)]
    return GroundProgram(kept, p.herbrand_base)


def satisfies(i, r):
    body = all(a in i for a in r.pos) and not any(a in i for a in r.neg)
    if not body:
        return True
    return r.head is not None and r.head in i


def is_answer_set(p, i):
    i = frozenset(i)
    red = gl_reduct(p, i)
    try:
        lm = least_model(red)
    except ConstraintViolation:
        return False
    return lm == i


def enumerate_answer_sets_bruteforce(p, cap=22):
    """Exhaustive subset enumeration of the Herbrand base."""
    base = sorted(p.herbrand_base, key=repr)
    if len(base) > cap:
        raise CapExceeded("herbrand base has %d atoms, cap is %d" % (len(base), cap))
    found = set()
    for k in range(len(base) + 1):
        for sub in combinations(base, k):
            if is_answer_set(p, sub):
                found.add(frozenset(sub))
    return found


def enumerate_answer_sets_search(p, cap=10 ** 7):
    """Exact answer sets by branching on negatively occurring atoms.

    The reduct only depends on which negated atoms are true, so it is enough
    to enumerate those.  Partial assignments are pruned with the bounds
    lm(rules not blocked by any true-or-open atom) <= I <= lm(rules not
    blocked by a true atom), which hold for every answer set extending the
    assignment.
    """
    negs = sorted({a for r in p.rules for a in r.neg}, key=repr)
    rules = p.rules
    nodes = [0]
    found = set()

    def bounds(true_set, open_set):
        lower = _fixpoint([r for r in rules if not any(a in true_set or a in open_set for a in r.neg)])
        upper = _fixpoint([r for r in rules if not any(a in true_set for a in r.neg)])
        return lower, upper

    def rec(k, true_set, false_set):
        nodes[0] += 1
        if nodes[0] > cap:
            raise CapExceeded("search oracle exceeded %d nodes" % cap)
        open_set = set(negs[k:])
        lower, upper = bounds(true_set, open_set)
        if any(a not in upper for a in true_set) or any(a in lower for a in false_set):
            return
        if k == len(negs):
            cand = frozenset(upper)
            if is_answer_set(p, cand):
                found.add(cand)
            return
        a = negs[k]
        if a in lower:
            rec(k + 1, true_set | {a}, false_set)
        elif a not in upper:
            rec(k + 1, true_set, false_set | {a})
        else:
            rec(k + 1, true_set | {a}, false_set)
            rec(k + 1, true_set, false_set | {a})

    rec(0, frozenset(), frozenset())
    return found
