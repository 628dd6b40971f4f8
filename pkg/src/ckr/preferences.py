"""Preferences over clashing assumptions: local, per relation and global."""
from collections import Counter

from .kb import ClashingAssumption, compute_closures

__all__ = ["ClashingAssumption", "witnesses", "local_pref_gt", "rel_pref_gt",
           "global_pref_gt", "preferred_filter", "explain"]


def witnesses(ca, c, cl):
    """Contexts w with declared_at above-or-equal w outside ca.relation and w strictly above c in it."""
    rel = ca.relation
    ups = {b for a, b in cl.prec[rel] if a == c}
    return {w for w in ups if (w, ca.declared_at) in cl.preceq_except[rel]}


def _as_counter(x):
    return x if isinstance(x, Counter) else Counter(x)


def local_pref_gt(x1, x2, c, rel, cl):
    """x1 > x2 at context c for relation rel.

    Every assumption only in x1 must be matched by one only in x2 whose
    witness lies strictly below some witness of the first.  Multisets
    (Counters) compare by multiplicity.
    """
    d1 = +(_as_counter(x1) - _as_counter(x2))
    d2 = +(_as_counter(x2) - _as_counter(x1))
    w2 = set()
    for a2 in d2:
        w2 |= _checked_witnesses(a2, c, rel, cl)
    for a1 in d1:
        w1 = _checked_witnesses(a1, c, rel, cl)
        if not any((v, u) in cl.prec[rel] for u in w1 for v in w2):
            return False
    return True


def _checked_witnesses(ca, c, rel, cl):
    if ca.relation != rel:
        raise ValueError("assumption %s is not for relation %s" % (ca, rel))
    w = witnesses(ca, c, cl)
    if not w:
        raise ValueError("assumption %s cannot target context %s" % (ca, c))
    return w


def _strict(m1, m2, c, rel, cl):
    a, b = m1.get(c, frozenset()), m2.get(c, frozenset())
    return local_pref_gt(a, b, c, rel, cl) and not local_pref_gt(b, a, c, rel, cl)


def rel_pref_gt(m1, m2, rel, k, cl=None, mode="mp"):
    """m1 beats m2 on relation rel; m1 and m2 map contexts to clash sets.

    mode "mp": a strict local win somewhere and no strict local loss anywhere.
    mode "pareto": a strict local win somewhere and, everywhere, m1 >= m2 or equal.
    """
    cl = cl or compute_closures(k.structure)
    ctxs = k.contexts
    if not any(_strict(m1, m2, c, rel, cl) for c in ctxs):
        return False
    if mode == "mp":
        return not any(_strict(m2, m1, c, rel, cl) for c in ctxs)
    if mode == "pareto":
        for c in ctxs:
            a, b = m1.get(c, frozenset()), m2.get(c, frozenset())
            if not (_as_counter(a) == _as_counter(b) or local_pref_gt(a, b, c, rel, cl)):
                return False
        return True
    raise ValueError("unknown mode %r" % mode)


def _maps(x):
    return x.clash_maps if hasattr(x, "clash_maps") else x


def global_pref_gt(a, b, k, cl=None, mode="mp"):
    """Lexicographic over relations in priority order: first non-tied relation decides."""
    return explain(a, b, k, cl, mode)[0]


def explain(a, b, k, cl=None, mode="mp"):
    """(a beats b, relation, context or None, reason) for the deciding relation."""
    cl = cl or compute_closures(k.structure)
    a, b = _maps(a), _maps(b)
    for rel in k.relations:
        ma, mb = a.get(rel, {}), b.get(rel, {})
        if rel_pref_gt(ma, mb, rel, k, cl, mode):
            c = next(c for c in k.contexts if _strict(ma, mb, c, rel, cl))
            return True, rel, c, "first wins on %s at %s" % (rel, c)
        if rel_pref_gt(mb, ma, rel, k, cl, mode):
            c = next(c for c in k.contexts if _strict(mb, ma, c, rel, cl))
            return False, rel, c, "second wins on %s at %s" % (rel, c)
    return False, None, None, "tied on every relation"


def preferred_filter(models, k, cl=None, mode="mp"):
    """Models not beaten by any other model (pairwise, no transitivity assumed)."""
    cl = cl or compute_closures(k.structure)
    models = list(models)
    return [m for m in models
            if not any(global_pref_gt(o, m, k, cl, mode) for o in models if o is not m)]
