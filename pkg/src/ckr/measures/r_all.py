"""R_c: locally optimal (view, clash multiset) pairs at one context; R_all: their crossproduct."""
from dataclasses import dataclass
from typing import NamedTuple

from ..kb import compute_closures
from ..preferences import local_pref_gt
from .formula import Const, Lit, Prod, Sum
from .measure import Measure, ovr_atom
from .r_one import check_single_relational
from .semirings import Multiset, Semiring, crossproduct, lift


class ViewPair(NamedTuple):
    view: frozenset  # assertions (name, args) at the context
    chi: Multiset    # clashing assumptions targeted at the context

    def __str__(self):
        items = sorted("%s(%s)" % (n, ",".join(a)) for n, a in self.view)
        return "({%s}, %s)" % (", ".join(items), self.chi)


@dataclass(frozen=True)
class OptSemiring(Semiring):
    opt: object = None


def make_r_c(k, c, cl=None):
    cl = cl or compute_closures(k.structure)
    rel = k.relations[0]

    def beats(x, y):
        gt = local_pref_gt(x.chi.counter(), y.chi.counter(), c, rel, cl)
        return gt and not local_pref_gt(y.chi.counter(), x.chi.counter(), c, rel, cl)

    def opt(a):
        return frozenset(x for x in a if not any(beats(y, x) for y in a))

    def add(a, b):
        return opt(a | b)

    def mul(a, b):
        return opt(frozenset(ViewPair(x.view | y.view, x.chi + y.chi) for x in a for y in b))

    def show(v):
        return "{%s}" % ", ".join(sorted(str(x) for x in v))

    return OptSemiring("r_c[%s]" % c, add, mul, frozenset(),
                       frozenset([ViewPair(frozenset(), Multiset())]), None, show, opt)


def make_r_all(k):
    check_single_relational(k)
    cl = compute_closures(k.structure)
    return crossproduct((c, make_r_c(k, c, cl)) for c in k.contexts)


def view_atom_of(a):
    """(context, assertion) for instd/tripled atoms in main, else None."""
    if a.pred == "instd" and a.args[3] == "main" and a.args[1] != "top":
        return a.args[2], (a.args[1], (a.args[0],))
    if a.pred == "tripled" and a.args[4] == "main":
        return a.args[3], (a.args[1], (a.args[0], a.args[2]))
    return None


def single(view=(), chi=()):
    return frozenset([ViewPair(frozenset(view), Multiset(chi))])


def alpha_all(r_all, tr, herbrand_base, domain):
    """Per context: view collector times clash collector, lifted into the crossproduct."""
    from ..asp.terms import atom_str
    parts = []
    for a in sorted(herbrand_base, key=atom_str):
        v = view_atom_of(a)
        if v is None:
            continue
        c, item = v
        const = Const(lift(r_all, c, single([item])))
        parts.append(Sum((Prod((Lit(a), const)), Lit(a, False))))
    for ca, c in sorted(domain, key=str):
        o = ovr_atom(ca, c, tr)
        const = Const(lift(r_all, c, single((), [ca])))
        parts.append(Sum((Prod((Lit(o), const)), Lit(o, False))))
    return Prod(tuple(parts))


def build_mu_all(k):
    from ..translator import ground, ovr_atom_domain, solve_ckr, translate
    check_single_relational(k)
    tr = translate(k)
    gp = ground(tr)
    r = make_r_all(k)
    sets = [m.answer_set for m in solve_ckr(k, tr=tr)]
    return Measure(k, alpha_all(r, tr, gp.herbrand_base, ovr_atom_domain(k, tr)), r, sets)


def combinations_of(value, r_all):
    """Per-context choices of the overall weight, as {context: (view, chi)}."""
    from itertools import product
    comps = [sorted(v, key=str) for v in value]
    for choice in product(*comps):
        yield dict(zip(r_all.keys, choice))
