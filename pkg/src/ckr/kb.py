"""Domain model for multi-relational sCKRs: vocabulary, axioms, contexts and order closures."""
from dataclasses import dataclass, field, replace
from typing import NamedTuple

import networkx as nx

# Normal-form axiom kinds and their operand sorts.
# sorts: C concept, R role, I individual, N context name
KINDS = {
    "ClassAssertion": "CI",
    "RoleAssertion": "RII",
    "Eq": "II",
    "Neq": "II",
    "SubClass": "CC",
    "NomSubClass": "IC",
    "SubConj": "CCC",
    "SubEx": "RCC",
    "SupEx": "CRI",
    "SupForall": "CRC",
    "SupLeqOne": "CR",
    "SubRole": "RR",
    "SubRChain": "RRR",
    "Dis": "RR",
    "Inv": "RR",
    "Irr": "R",
    "SubEvalC": "CNC",
    "SubEvalR": "RNR",
}

DEFEASIBLE_KINDS = ("SubClass", "SubConj", "SubEx", "SupEx", "SupForall", "SupLeqOne",
                    "SubRole", "SubRChain", "Dis", "Inv", "Irr")

RESERVED_CONCEPTS = ("top", "bot")


class Axiom(NamedTuple):
    """A normal-form axiom, or a non-normal shape kept as an expression tree.

    For non-normal shapes kind is "Other" and args holds (text, expression).
    """
    kind: str
    args: tuple

    def __str__(self):
        from .dsl import axiom_text
        return axiom_text(self)


class DefeasibleAxiom(NamedTuple):
    relation: str
    body: Axiom

    def __str__(self):
        return "D[%s](%s)" % (self.relation, self.body)


@dataclass(frozen=True)
class Vocabulary:
    concept_names: frozenset = frozenset()
    role_names: frozenset = frozenset()
    individuals: frozenset = frozenset()
    context_names: frozenset = frozenset()


@dataclass(frozen=True)
class ContextStructure:
    contexts: tuple
    relations: tuple  # ((name, ((c1, c2), ...)), ...) in priority order

    @property
    def relation_names(self):
        return tuple(r for r, _ in self.relations)

    def edges(self, rel):
        for r, es in self.relations:
            if r == rel:
                return es
        raise KeyError(rel)


@dataclass(frozen=True)
class ContextKB:
    strict: tuple = ()
    defeasible: tuple = ()


@dataclass(frozen=True)
class SCKR:
    structure: ContextStructure
    kbs: dict = field(default_factory=dict)
    vocabulary: Vocabulary = field(default_factory=Vocabulary)

    def kb(self, c):
        return self.kbs.get(c, ContextKB())

    @property
    def contexts(self):
        return self.structure.contexts

    @property
    def relations(self):
        return self.structure.relation_names

    def with_priority(self, order):
        """Same KB with relations reordered; order lists every relation once."""
        names = self.relations
        if sorted(order) != sorted(names):
            raise ValueError("relation priority must list exactly %s" % ", ".join(names))
        rels = dict(self.structure.relations)
        st = ContextStructure(self.structure.contexts, tuple((r, rels[r]) for r in order))
        return replace(self, structure=st)

    def is_eval_free(self):
        return not any(ax.kind in ("SubEvalC", "SubEvalR")
                       for kb in self.kbs.values() for ax in kb.strict)


class CycleError(ValueError):
    def __init__(self, relation, cycle):
        super().__init__("relation %s has a cycle: %s" % (relation, " < ".join(cycle)))
        self.relation = relation
        self.cycle = cycle


@dataclass(frozen=True)
class OrderClosures:
    contexts: tuple
    prec: dict            # rel -> set of (c1, c2) with c1 strictly below c2
    preceq: dict          # rel -> reflexive-transitive closure
    preceq_except: dict   # rel -> closure of the union of the other relations
    preceq_star: frozenset

    def below(self, rel, c):
        """Contexts c' with c' strictly below c in relation rel."""
        return {a for a, b in self.prec[rel] if b == c}


def _reflexive_transitive(nodes, edges):
    succ = {n: set() for n in nodes}
    for a, b in edges:
        succ[a].add(b)
    out = set()
    for n in nodes:
        seen = {n}
        stack = [n]
        while stack:
            x = stack.pop()
            for y in succ[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        out.update((n, m) for m in seen)
    return frozenset(out)


def compute_closures(s):
    nodes = tuple(s.contexts)
    for rel, es in s.relations:
        g = nx.DiGraph(list(es))
        try:
            cyc = nx.find_cycle(g)
        except nx.NetworkXNoCycle:
            continue
        raise CycleError(rel, [a for a, _ in cyc] + [cyc[0][0]])
    prec, preceq, exc = {}, {}, {}
    for rel, es in s.relations:
        rt = _reflexive_transitive(nodes, es)
        preceq[rel] = rt
        prec[rel] = frozenset((a, b) for a, b in rt if a != b)
    for rel, _ in s.relations:
        others = [e for r, es in s.relations if r != rel for e in es]
        exc[rel] = _reflexive_transitive(nodes, others)
    star = _reflexive_transitive(nodes, [e for _, es in s.relations for e in es])
    return OrderClosures(nodes, prec, preceq, exc, star)


def validate_normal_form(k):
    """Diagnostics for axioms outside the normal-form shapes."""
    out = []
    rels = set(k.relations)
    for c in k.contexts:
        kb = k.kb(c)
        for ax in kb.strict:
            if ax.kind not in KINDS:
                out.append("%s: axiom '%s' is not in normal form" % (c, ax))
            elif ax.kind in ("SubEvalC", "SubEvalR") and ax.args[1] not in k.contexts:
                out.append("%s: eval target %s is not a context" % (c, ax.args[1]))
        for d in kb.defeasible:
            if d.relation not in rels:
                out.append("%s: unknown relation %s in '%s'" % (c, d.relation, d))
            if d.body.kind in ("SubEvalC", "SubEvalR"):
                out.append("%s: eval is not allowed in defeasible axiom '%s'" % (c, d))
            elif d.body.kind not in DEFEASIBLE_KINDS:
                out.append("%s: '%s' is not a defeasible normal-form shape" % (c, d))
    return out


class ClashingAssumption(NamedTuple):
    """An exception <axiom, instance> to D_relation(axiom) declared at declared_at."""
    axiom: Axiom
    instance: tuple
    declared_at: str
    relation: str

    def __str__(self):
        return "%s(%s) [%s@%s]" % (self.axiom, ",".join(self.instance),
                                   self.relation, self.declared_at)
