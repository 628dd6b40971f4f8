"""Bottom-up grounder.

Instances are generated by a semi-naive fixpoint over the positive parts of
the rules, so only rules whose positive body can become true are kept.
Negative literals over atoms that can never be derived are dropped.
"""
from .program import CapExceeded, GroundProgram, GroundRule
from .terms import Fn, Var, is_ground, match, substitute, substitute_atom

DEFAULT_RULE_CAP = 10 ** 6


class _Index:
    def __init__(self):
        self.by_pred = {}
        self.by_arg = {}
        self.round = {}

    def add(self, atom, rnd):
        self.round[atom] = rnd
        self.by_pred.setdefault(atom.pred, []).append(atom)
        for i, v in enumerate(atom.args):
            self.by_arg.setdefault((atom.pred, i, v), []).append(atom)

    def candidates(self, pattern, binding):
        best = self.by_pred.get(pattern.pred, [])
        for i, t in enumerate(pattern.args):
            if isinstance(t, (Var, Fn)):
                try:
                    v = substitute(t, binding)
                except KeyError:
                    continue
            else:
                v = t
            lst = self.by_arg.get((pattern.pred, i, v), [])
            if len(lst) < len(best):
                best = lst
                if not best:
                    break
        return best


def _bound_count(pattern, binding):
    n = 0
    for t in pattern.args:
        if isinstance(t, Var):
            n += t.name in binding
        elif isinstance(t, Fn):
            n += is_ground(_partial(t, binding))
        else:
            n += 1
    return n


def _partial(t, binding):
    if isinstance(t, Var):
        return binding.get(t.name, t)
    if isinstance(t, Fn):
        return Fn(t.name, tuple(_partial(a, binding) for a in t.args))
    return t


def _cmp_ok(c, binding):
    left = substitute(c.left, binding)
    right = substitute(c.right, binding)
    return (left == right) if c.op == "=" else (left != right)


def ground(rules, facts=(), cap=DEFAULT_RULE_CAP):
    """Ground non-ground rules against facts; returns a GroundProgram."""
    index = _Index()
    out = {}
    for f in facts:
        out[GroundRule(f, (), (), "fact")] = None
    pending = set(facts)
    rnd = 0
    for a in pending:
        index.add(a, rnd)
    # body-less rules are ground by safety
    for r in rules:
        if not r.pos:
            if r.head is not None and r.head not in index.round:
                pending.add(r.head)
                index.add(r.head, rnd)
            out[GroundRule(r.head, (), tuple(r.neg), r.label)] = None

    delta_round = 0
    while True:
        new_atoms = []
        for r in rules:
            n = len(r.pos)
            for k in range(n):
                lit = r.pos[k]
                for d in list(index.by_pred.get(lit.pred, ())):
                    if index.round[d] != delta_round:
                        continue
                    b = match_atom(lit, d, {})
                    if b is None:
                        continue
                    rest = [(j, r.pos[j]) for j in range(n) if j != k]
                    for binding in _join(rest, b, index, k, delta_round):
                        if not all(_cmp_ok(c, binding) for c in r.cmps):
                            continue
                        head = substitute_atom(r.head, binding) if r.head is not None else None
                        gr = GroundRule(head,
                                        tuple(substitute_atom(a, binding) for a in r.pos),
                                        tuple(substitute_atom(a, binding) for a in r.neg),
                                        r.label)
                        if gr in out:
                            continue
                        out[gr] = None
                        if len(out) > cap:
                            raise CapExceeded("grounding exceeded %d rules" % cap)
                        if head is not None and head not in index.round:
                            index.round[head] = -1  # reserve; added after the round
                            new_atoms.append(head)
        if not new_atoms:
            break
        delta_round += 1
        for a in new_atoms:
            index.add(a, delta_round)

    known = set(index.round)
    final = []
    for gr in out:
        if gr.neg and any(a not in known for a in gr.neg):
            gr = GroundRule(gr.head, gr.pos, tuple(a for a in gr.neg if a in known), gr.label)
        final.append(gr)
    return GroundProgram(final, frozenset(known))


def match_atom(pattern, atom, binding):
    if pattern.pred != atom.pred or len(pattern.args) != len(atom.args):
        return None
    for p, v in zip(pattern.args, atom.args):
        binding = match(p, v, binding)
        if binding is None:
            return None
    return binding


def _join(rest, binding, index, k, delta_round):
    if not rest:
        yield binding
        return
    # most constrained literal first
    best = max(range(len(rest)), key=lambda i: _bound_count(rest[i][1], binding))
    j, lit = rest[best]
    others = rest[:best] + rest[best + 1:]
    for a in index.candidates(lit, binding):
        rd = index.round[a]
        # literals before the delta position only see older atoms
        if rd < 0 or rd > delta_round or (j < k and rd == delta_round):
            continue
        b = match_atom(lit, a, binding)
        if b is not None:
            yield from _join(others, b, index, k, delta_round)
