"""Algebraic measures over answer sets of a program or of a compiled sCKR."""
from dataclasses import dataclass, field

from ..asp import GroundProgram
from ..asp.engine import solve as solve_program
from ..asp.terms import Atom, atom_str
from .formula import Const, Lit, Prod, Sum, eval_weighted_formula
from .semirings import powerset


def canonical_key(answer_set):
    return sorted(atom_str(a) for a in answer_set)


@dataclass
class Measure:
    program: object  # GroundProgram or SCKR
    formula: object
    semiring: object
    answer_sets: list = field(default=None)

    def models(self):
        if self.answer_sets is None:
            self.answer_sets = _answer_sets(self.program)
        return self.answer_sets

    def weight(self, interp):
        return eval_weighted_formula(self.formula, interp, self.semiring)


def _answer_sets(program):
    if isinstance(program, GroundProgram):
        return solve_program(program)
    from ..translator import solve_ckr
    return [m.answer_set for m in solve_ckr(program)]


def overall_weight(m, order=None):
    """Semiring sum of the weights of all answer sets, folded in canonical order."""
    sets = list(m.models())
    if order is None:
        sets.sort(key=canonical_key)
    else:
        sets = [sets[i] for i in order]
    return m.semiring.sum(m.weight(s) for s in sets)


def count_measure(program):
    """<program, 1, N>: the number of answer sets."""
    from .semirings import NAT
    return Measure(program, Const(1), NAT)


def ovr_atom(ca, c, tr):
    from ..translator.core import KIND_TO_TAG
    tag = KIND_TO_TAG[ca.axiom.kind]
    return Atom("ovr", (tag,) + tuple(ca.instance) + tuple(ca.axiom.args)
                + (ca.declared_at, c, tr.rel_const[ca.relation]))


def build_mu_opt(k, tr=None):
    """Measure over P(CA) collecting the clashing assumptions of each answer set."""
    from ..translator import ovr_atom_domain, solve_ckr, translate
    tr = tr or translate(k)
    domain = sorted(ovr_atom_domain(k, tr), key=str)
    r = powerset(domain, lambda x: "%s -> %s" % x)
    f = Sum(tuple(Prod((Lit(ovr_atom(ca, c, tr)), Const(frozenset([(ca, c)]))))
                  for ca, c in domain))
    sets = [m.answer_set for m in solve_ckr(k, tr=tr)]
    return Measure(k, f, r, sets)
