"""R_one: keeps the most preferred, then lexicographically least, (interpretation, clash map)."""
from typing import NamedTuple

from ..asp.terms import atom_str
from ..kb import compute_closures
from ..preferences import rel_pref_gt
from .formula import Const, Lit, Prod, Sum
from .measure import Measure, ovr_atom
from .semirings import Multiset, Semiring


class _Special:
    def __init__(self, name):
        self.name = name

    def __repr__(self):
        return self.name

    __str__ = __repr__


ZERO = _Special("Zero")
ONE = _Special("One")


class PrefPair(NamedTuple):
    atoms: Multiset  # S, over the Herbrand base
    chi: Multiset    # multiset of (target context, ClashingAssumption)

    def __str__(self):
        chi = ", ".join("%s -> %s" % (ca, c) for c, ca in self.chi)
        return "(%s, {{%s}})" % (self.atoms, chi)


def chi_slices(chi):
    """Multiset of (c, ca) as {c: Counter of ca}."""
    out = {}
    for (c, ca), n in chi.items():
        out.setdefault(c, {})
        out[c][ca] = n
    from collections import Counter
    return {c: Counter(d) for c, d in out.items()}


def _lex_less(m1, m2, key):
    """m1 before m2 when, at the first differing element in key order, m1 has fewer copies."""
    c1, c2 = m1.counter(), m2.counter()
    for x in sorted(set(c1) | set(c2), key=key):
        if c1[x] != c2[x]:
            return c1[x] < c2[x]
    return False


def _chi_key(item):
    c, ca = item
    return (c, str(ca))


def check_single_relational(k):
    if len(k.relations) != 1:
        raise ValueError("needs a single-relational sCKR, got %d relations" % len(k.relations))
    if not k.is_eval_free():
        raise ValueError("needs an eval-free sCKR")


def make_r_one(k, var_order=None, set_chi=False):
    """R_one(k).  var_order maps atoms to sort keys (default: atom text).

    With set_chi the clash maps combine by set union instead of multiset sum;
    that variant is kept only to show why multisets are needed.
    """
    check_single_relational(k)
    cl = compute_closures(k.structure)
    rel = k.relations[0]
    key = var_order or atom_str

    def better(a, b):
        return rel_pref_gt(chi_slices(a.chi), chi_slices(b.chi), rel, k, cl, mode="pareto")

    def lex_less(a, b):
        if a.atoms != b.atoms:
            return _lex_less(a.atoms, b.atoms, key)
        return _lex_less(a.chi, b.chi, _chi_key)

    def add(a, b):
        if a is ZERO:
            return b
        if b is ZERO:
            return a
        if a is ONE or b is ONE:
            return ONE
        if better(a, b):
            return a
        if better(b, a):
            return b
        return b if lex_less(b, a) else a

    def mul(a, b):
        if a is ZERO or b is ZERO:
            return ZERO
        if a is ONE:
            return b
        if b is ONE:
            return a
        chi = (a.chi | b.chi) if set_chi else (a.chi + b.chi)
        return PrefPair(a.atoms + b.atoms, chi)

    name = "r_one_set" if set_chi else "r_one"
    return Semiring(name, add, mul, ZERO, ONE, None, str)


def pair(atoms=(), chi=()):
    return PrefPair(Multiset(atoms), Multiset(chi))


def alpha_one(k, tr, herbrand_base, domain):
    """Atom collector times clash-map collector."""
    a1 = tuple(Sum((Prod((Lit(a), Const(pair([a])))), Lit(a, False)))
               for a in sorted(herbrand_base, key=atom_str))
    a2 = tuple(Sum((Prod((Lit(ovr_atom(ca, c, tr)), Const(pair((), [(c, ca)])))),
                    Lit(ovr_atom(ca, c, tr), False)))
               for ca, c in sorted(domain, key=str))
    return Prod(a1 + a2)


def build_mu_one(k, var_order=None):
    from ..translator import ground, ovr_atom_domain, solve_ckr, translate
    check_single_relational(k)
    tr = translate(k)
    gp = ground(tr)
    domain = ovr_atom_domain(k, tr)
    r = make_r_one(k, var_order)
    sets = [m.answer_set for m in solve_ckr(k, tr=tr)]
    return Measure(k, alpha_one(k, tr, gp.herbrand_base, domain), r, sets)
