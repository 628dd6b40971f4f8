"""Query answering over preferred models: instance checks, BCQs, consequences, aggregates."""
import re
from collections import Counter
from dataclasses import dataclass, field
from typing import NamedTuple

from .depgraph import is_eval_disconnected
from .kb import compute_closures
from .preferences import preferred_filter
from .translator import solve_ckr, translate


class QueryError(ValueError):
    pass


class QAtom(NamedTuple):
    context: str
    pred: str
    args: tuple


class InstanceQuery(NamedTuple):
    context: str
    assertion: str
    args: tuple

    def __str__(self):
        return "%s : %s(%s)" % (self.context, self.assertion, ", ".join(self.args))


class EpistemicAggregateQuery(NamedTuple):
    group_vars: tuple
    aggregate: str
    agg_vars: tuple
    known_vars: tuple
    body: tuple
    side: tuple = ()


AGGREGATES = ("count", "countd", "sum", "min", "max")


def is_var(t):
    return t[:1].isupper() or t[:1] == "_"


_ATOM = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_]*)\s*:\s*([A-Za-z_][A-Za-z0-9_]*)\s*\(([^()]*)\)\s*")


def parse_atoms(text):
    """Comma-separated `ctx : P(t1, ...)` atoms."""
    out = []
    pos = 0
    text = text.strip()
    if not text:
        return out
    while True:
        m = _ATOM.match(text, pos)
        if not m:
            raise QueryError("expected `context : P(args)` at %d in %r" % (pos, text))
        args = tuple(a.strip() for a in m.group(3).split(",")) if m.group(3).strip() else ()
        if not args or len(args) > 2 or not all(args):
            raise QueryError("assertions take one or two arguments: %r" % m.group(0).strip())
        out.append(QAtom(m.group(1), m.group(2), args))
        pos = m.end()
        if pos == len(text):
            return out
        if text[pos] != ",":
            raise QueryError("expected ',' at %d in %r" % (pos, text))
        pos += 1


def parse_instance_query(text):
    atoms = parse_atoms(text)
    if len(atoms) != 1:
        raise QueryError("an instance query is a single `c : A(a)` assertion")
    a = atoms[0]
    if is_var(a.context) or any(is_var(t) for t in a.args):
        raise QueryError("instance queries are ground; use a BCQ for variables")
    return InstanceQuery(a.context, a.pred, a.args)


_AGG_HEAD = re.compile(r"\s*q\s*\((.*)\)\s*<-\s*K\b(.*)$", re.S)


def parse_aggregate_query(text):
    """`q(X, count(Y)) <- K X,Y. X:S(Y) [psi]`"""
    m = _AGG_HEAD.match(text)
    if not m:
        raise QueryError("aggregate queries look like `q(X, count(Y)) <- K X,Y. body`")
    head, rest = m.group(1), m.group(2)
    am = re.search(r"([a-z]+)\s*\(([^()]*)\)", head)
    if not am:
        raise QueryError("the head needs one aggregate such as count(Y)")
    agg = am.group(1)
    if agg not in AGGREGATES:
        raise QueryError("unsupported aggregate %r (use %s)" % (agg, ", ".join(AGGREGATES)))
    agg_vars = tuple(v.strip() for v in am.group(2).split(",") if v.strip())
    groups = tuple(v.strip() for v in (head[:am.start()] + head[am.end():]).split(",") if v.strip())
    if "." not in rest:
        raise QueryError("expected '.' after the K variable list")
    kpart, body = rest.split(".", 1)
    known = tuple(v.strip() for v in kpart.split(",") if v.strip())
    side = ()
    sm = re.search(r"\[(.*)\]\s*$", body, re.S)
    if sm:
        side = tuple(parse_atoms(sm.group(1)))
        body = body[:sm.start()]
    q = EpistemicAggregateQuery(groups, agg, agg_vars, known, tuple(parse_atoms(body)), side)
    _check_aggregate(q)
    return q


def _check_aggregate(q):
    for v in q.group_vars + q.agg_vars + q.known_vars:
        if not is_var(v):
            raise QueryError("%r is not a variable" % v)
    if set(q.group_vars) & set(q.agg_vars):
        raise QueryError("group and aggregate variables must differ")
    if not set(q.group_vars + q.agg_vars) <= set(q.known_vars):
        raise QueryError("group and aggregate variables must be listed after K")
    bvars = {t for a in q.body for t in (a.context,) + a.args if is_var(t)}
    unsafe = [v for v in q.known_vars if v not in bvars]
    if unsafe:
        raise QueryError("unsafe variables %s do not occur in the body" % ", ".join(unsafe))
    if q.aggregate in ("sum", "min", "max") and len(q.agg_vars) != 1:
        raise QueryError("%s takes exactly one variable" % q.aggregate)
    if not q.agg_vars and q.aggregate != "count":
        raise QueryError("%s needs a variable" % q.aggregate)


@dataclass
class Reasoner:
    """Solved sCKR: justified and preferred models, cached for repeated queries."""
    kb: object
    mode: str = "mp"
    max_guesses: int = None
    rule_cap: int = None
    warnings: list = field(default_factory=list)
    _justified: list = None
    _preferred: list = None

    def __post_init__(self):
        if not is_eval_disconnected(self.kb):
            self.warnings.append("knowledge base is not eval-disconnected; "
                                 "preferred models use the pairwise filter")

    @property
    def justified(self):
        if self._justified is None:
            kw = {}
            if self.max_guesses is not None:
                kw["max_guesses"] = self.max_guesses
            if self.rule_cap is not None:
                kw["rule_cap"] = self.rule_cap
            self._justified = solve_ckr(self.kb, **kw)
        return self._justified

    @property
    def preferred(self):
        if self._preferred is None:
            cl = compute_closures(self.kb.structure)
            self._preferred = preferred_filter(self.justified, self.kb, cl, self.mode)
        return self._preferred

    # symbol checks

    def check_atom(self, a, allow_vars=True):
        k = self.kb
        voc = k.vocabulary
        if not (allow_vars and is_var(a.context)) and a.context not in k.contexts:
            raise QueryError("unknown context %s" % a.context)
        names = voc.concept_names | {"top", "bot"} if len(a.args) == 1 else voc.role_names
        if a.pred not in names:
            raise QueryError("unknown %s %s" % ("concept" if len(a.args) == 1 else "role", a.pred))
        for t in a.args:
            if not (allow_vars and is_var(t)) and t not in voc.individuals:
                raise QueryError("unknown individual %s" % t)

    # tasks

    def c_entails(self, q):
        self.check_atom(QAtom(q.context, q.assertion, q.args), allow_vars=False)
        return all(holds(m, q.context, q.assertion, q.args) for m in self.preferred)

    def bcq_entails(self, atoms):
        for a in atoms:
            self.check_atom(a)
        return all(next(matches(m, atoms, self.kb.contexts), None) is not None
                   for m in self.preferred)

    def consequences(self, c, mode="cautious"):
        if c not in self.kb.contexts:
            raise QueryError("unknown context %s" % c)
        views = [m.per_context_views[c] for m in self.preferred]
        if not views:
            return frozenset()
        if mode == "cautious":
            return frozenset.intersection(*views)
        if mode == "brave":
            return frozenset.union(*views)
        raise QueryError("mode is cautious or brave")

    def certain_answers(self, atoms, out_vars):
        for a in atoms:
            self.check_atom(a)
        cert = None
        for m in self.preferred:
            found = {tuple(b[v] for v in out_vars) for b in matches(m, atoms, self.kb.contexts)}
            cert = found if cert is None else cert & found
        return cert or set()

    def epistemic_aggregate(self, q):
        tuples = self.certain_answers(q.body + q.side, q.known_vars)
        idx = {v: i for i, v in enumerate(q.known_vars)}
        groups = {}
        for t in sorted(tuples):
            g = tuple(t[idx[v]] for v in q.group_vars)
            groups.setdefault(g, []).append(tuple(t[idx[v]] for v in q.agg_vars))
        if not q.group_vars and not groups:
            groups[()] = []
        rows = []
        for g in sorted(groups):
            v = aggregate(q.aggregate, groups[g])
            if v is not None:
                rows.append(g + (v,))
        return rows


def aggregate(name, values):
    """Aggregate a list of tuples; None means no row."""
    if name == "count":
        return len(values)
    if name == "countd":
        return len(set(values))
    nums = []
    for (v,) in values:
        try:
            nums.append(int(v))
        except ValueError:
            raise QueryError("%s needs integer values, got %r" % (name, v))
    if name == "sum":
        return sum(nums)
    if not nums:
        return None
    return min(nums) if name == "min" else max(nums)


def holds(m, c, pred, args):
    if pred == "top":
        return True
    return (pred, tuple(args)) in m.per_context_views.get(c, ())


def matches(m, atoms, contexts, binding=None):
    """All bindings of the query variables satisfying atoms in model m."""
    binding = binding or {}
    if not atoms:
        yield dict(binding)
        return
    a, rest = atoms[0], atoms[1:]
    ctx = binding.get(a.context, a.context) if is_var(a.context) else a.context
    cands = [ctx] if not is_var(ctx) else list(contexts)
    for c in cands:
        b0 = dict(binding)
        if is_var(a.context):
            b0[a.context] = c
        for name, args in m.per_context_views.get(c, ()):
            if name != a.pred or len(args) != len(a.args):
                continue
            b = _unify(a.args, args, b0)
            if b is not None:
                yield from matches(m, rest, contexts, b)


def _unify(pattern, values, binding):
    b = dict(binding)
    for p, v in zip(pattern, values):
        if is_var(p):
            if b.setdefault(p, v) != v:
                return None
        elif p != v:
            return None
    return b


# module-level conveniences

def c_entails(k, q, **kw):
    if isinstance(q, str):
        q = parse_instance_query(q)
    return Reasoner(k, **kw).c_entails(q)


def bcq_entails(k, q, **kw):
    if isinstance(q, str):
        q = parse_atoms(q)
    return Reasoner(k, **kw).bcq_entails(q)


def consequences(k, c, mode="cautious", **kw):
    return Reasoner(k, **kw).consequences(c, mode)


def epistemic_aggregate(k, q, **kw):
    if isinstance(q, str):
        q = parse_aggregate_query(q)
    return Reasoner(k, **kw).epistemic_aggregate(q)
