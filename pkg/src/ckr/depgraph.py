"""Concept/role dependency graph across contexts and the eval-disconnectedness test."""
from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple

import networkx as nx

from .dsl import expr_text


def axiom_expressions(ax):
    """Top-level concept/role expressions of an axiom, as expression trees."""
    n = lambda x: ("name", x)
    k, a = ax.kind, ax.args
    if k == "ClassAssertion":
        return [n(a[0])]
    if k == "RoleAssertion":
        return [n(a[0])]
    if k in ("Eq", "Neq"):
        return []
    if k == "SubClass":
        return [n(a[0]), n(a[1])]
    if k == "NomSubClass":
        return [("nominal", a[0]), n(a[1])]
    if k == "SubConj":
        return [("and", n(a[0]), n(a[1])), n(a[2])]
    if k == "SubEx":
        return [("exists", n(a[0]), n(a[1])), n(a[2])]
    if k == "SupEx":
        return [n(a[0]), ("exists", n(a[1]), ("nominal", a[2]))]
    if k == "SupForall":
        return [n(a[0]), ("forall", n(a[1]), n(a[2]))]
    if k == "SupLeqOne":
        return [n(a[0]), ("atmost1", n(a[1]))]
    if k in ("SubRole", "Dis", "Inv"):
        return [n(a[0]), n(a[1])]
    if k == "SubRChain":
        return [("chain", n(a[0]), n(a[1])), n(a[2])]
    if k == "Irr":
        return [n(a[0])]
    if k in ("SubEvalC", "SubEvalR"):
        return [("eval", n(a[0]), a[1]), n(a[2])]
    _tag, lhs, rhs = a[0]
    return [lhs, rhs]


def subexpressions(e):
    """Direct concept/role subexpressions (eval targets excluded)."""
    tag = e[0]
    if tag in ("and", "or", "chain"):
        return [e[1], e[2]]
    if tag == "not":
        return [e[1]]
    if tag in ("exists", "forall"):
        return [e[1], e[2]]
    if tag == "atmost1":
        return [e[1]]
    return []


def _all_expressions(e, out):
    out.append(e)
    for s in subexpressions(e):
        _all_expressions(s, out)
    if e[0] == "eval":
        _all_expressions(e[1], [])  # target lives in another context
    return out


class Edge(NamedTuple):
    source: tuple
    target: tuple
    kind: str  # "i", "ii" or "iii"


@dataclass
class DepGraph:
    vertices: set
    edges: set

    def undirected(self):
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        for e in self.edges:
            g.add_edge(e.source, e.target)
        return g

    def has_edge(self, u, v):
        return any(e.source == u and e.target == v for e in self.edges)


def vertex_text(v):
    return "%s@%s" % (expr_text(v[0]), v[1])


def build_dep_graph(k):
    vertices = set()
    edges = set()

    def add_expr(e, c):
        v = (e, c)
        vertices.add(v)
        for s in subexpressions(e):
            edges.add(Edge(v, (s, c), "i"))
            add_expr(s, c)
        if e[0] == "eval":
            target = (e[1], e[2])
            vertices.add(target)
            edges.add(Edge(v, target, "iii"))
            add_expr(e[1], e[2])

    for c in k.contexts:
        kb = k.kb(c)
        axioms = list(kb.strict) + [d.body for d in kb.defeasible]
        for ax in axioms:
            tops = axiom_expressions(ax)
            for e in tops:
                add_expr(e, c)
            for x, y in combinations(tops, 2):
                if x != y:
                    edges.add(Edge((x, c), (y, c), "ii"))
                    edges.add(Edge((y, c), (x, c), "ii"))
    return DepGraph(vertices, edges)


def defeasible_expressions(k):
    out = set()
    for c in k.contexts:
        for d in k.kb(c).defeasible:
            for e in axiom_expressions(d.body):
                out.update(_all_expressions(e, []))
    return out


class Verdict(NamedTuple):
    disconnected: bool
    path: tuple = ()

    def __bool__(self):
        return self.disconnected

    def describe(self):
        if self.disconnected:
            return "DISCONNECTED"
        return "CONNECTED: " + " -> ".join(vertex_text(v) for v in self.path)


def is_eval_disconnected(k, graph=None):
    g = graph or build_dep_graph(k)
    und = g.undirected()
    dexprs = defeasible_expressions(k)
    for comp in sorted(nx.connected_components(und), key=lambda s: sorted(map(repr, s))):
        marked = sorted((v for v in comp if v[0] in dexprs), key=repr)
        for u in marked:
            for v in marked:
                if u[1] != v[1]:
                    path = nx.shortest_path(und, u, v)
                    return Verdict(False, tuple(path))
    return Verdict(True)
