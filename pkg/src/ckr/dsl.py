"""Line-oriented DSL for sCKRs: parser and canonical printer.

    relation cov.
    context c1.
    c1 < c2 [cov].
    c2: D[cov](S subClassOf E).
    c1: S(i).            % comment
"""
import re

from .kb import (RESERVED_CONCEPTS, SCKR, Axiom, ContextKB, ContextStructure,
                 DefeasibleAxiom, Vocabulary, compute_closures)

KEYWORDS = {"subClassOf", "subRoleOf", "and", "or", "not", "exists", "forall", "atmost1",
            "eval", "disjoint", "inverse", "irreflexive", "o"}

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+|%[^\n]*)
  | (?P<nl>\n)
  | (?P<neq>!=)
  | (?P<name>[A-Za-z0-9_]+(?:'[A-Za-z0-9_']*)?)
  | (?P<punct>[.:()\[\]{},<=])
""", re.VERBOSE)


class DSLError(ValueError):
    def __init__(self, msg, line=None, col=None):
        where = "" if line is None else "line %d, column %d: " % (line, col)
        super().__init__(where + msg)
        self.line = line
        self.col = col


def _tokenize(text):
    toks = []
    line, start = 1, 0
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise DSLError("unexpected character %r" % text[pos], line, pos - start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            start = m.end()
        elif kind != "ws":
            toks.append((m.group(), line, m.start() - start + 1))
        pos = m.end()
    return toks


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0
        self.relations = []
        self.contexts = []
        self.edges = {}
        self.kbs = {}
        self.sorts = {}       # symbol -> sort letter (C, R, I)
        self.declared = {}    # explicit vocabulary declarations
        self.ctx_set = set()
        self.rel_uses = []

    # token helpers
    def peek(self, k=0):
        j = self.i + k
        return self.toks[j][0] if j < len(self.toks) else None

    def pos(self):
        if self.i < len(self.toks):
            return self.toks[self.i][1:]
        if self.toks:
            return self.toks[-1][1:]
        return (1, 1)

    def error(self, msg):
        raise DSLError(msg, *self.pos())

    def take(self, value=None):
        tok = self.peek()
        if tok is None:
            self.error("unexpected end of input" + ("" if value is None else ", expected %r" % value))
        if value is not None and tok != value:
            self.error("expected %r, got %r" % (value, tok))
        self.i += 1
        return tok

    def name(self):
        tok = self.peek()
        if tok is None or not re.match(r"[A-Za-z0-9_]", tok) or tok in KEYWORDS:
            self.error("expected a name, got %r" % tok)
        self.i += 1
        return tok

    # registration
    def context(self, c):
        if c not in self.ctx_set:
            self.ctx_set.add(c)
            self.contexts.append(c)

    def sort(self, name, s, where):
        if s == "C" and name in RESERVED_CONCEPTS:
            return
        if name in RESERVED_CONCEPTS:
            raise DSLError("%s is a reserved concept name" % name, *where)
        old = self.sorts.get(name)
        if old is not None and old != s:
            labels = {"C": "concept", "R": "role", "I": "individual"}
            raise DSLError("symbol %s used as %s and as %s" % (name, labels[old], labels[s]), *where)
        self.sorts[name] = s

    # statements
    def parse(self):
        while self.peek() is not None:
            self.statement()
        return self.build()

    def statement(self):
        where = self.pos()
        tok = self.peek()
        if tok in ("relation", "context", "concept", "role", "individual") and self.peek(2) == ".":
            self.take()
            n = self.name()
            self.take(".")
            if tok == "relation":
                if n in self.edges:
                    raise DSLError("duplicate relation %s" % n, *where)
                self.relations.append(n)
                self.edges[n] = []
            elif tok == "context":
                self.context(n)
            else:
                self.sort(n, {"concept": "C", "role": "R", "individual": "I"}[tok], where)
                self.declared[n] = tok
            return
        first = self.name()
        if self.peek() == "<":
            self.take()
            second = self.name()
            self.take("[")
            rwhere = self.pos()
            rel = self.name()
            self.take("]")
            self.take(".")
            self.context(first)
            self.context(second)
            self.rel_uses.append((rel, rwhere))
            self.edges.setdefault(rel, [])
            self.edges[rel].append((first, second))
            return
        self.take(":")
        self.context(first)
        kb = self.kbs.setdefault(first, ([], []))
        if self.peek() == "D" and self.peek(1) == "[":
            self.take()
            self.take("[")
            rwhere = self.pos()
            rel = self.name()
            self.take("]")
            self.take("(")
            ax = self.axiom()
            self.take(")")
            self.take(".")
            self.rel_uses.append((rel, rwhere))
            kb[1].append(DefeasibleAxiom(rel, ax))
        else:
            ax = self.axiom()
            self.take(".")
            kb[0].append(ax)

    def _mode(self):
        """Look ahead to the end of the statement for subClassOf/subRoleOf."""
        depth = 0
        j = self.i
        while j < len(self.toks):
            t = self.toks[j][0]
            if t in ("(", "[", "{"):
                depth += 1
            elif t in (")", "]", "}"):
                depth -= 1
                if depth < 0:
                    return None
            elif depth == 0 and t in ("subClassOf", "subRoleOf"):
                return t
            elif depth == 0 and t == "." and not (j >= 2 and self.toks[j - 2][0] in ("exists", "forall")):
                return None
            j += 1
        return None

    def axiom(self):
        where = self.pos()
        tok = self.peek()
        if tok in ("disjoint", "inverse", "irreflexive") and self.peek(1) == "(":
            self.take()
            self.take("(")
            r = self.name()
            self.sort(r, "R", where)
            if tok == "irreflexive":
                self.take(")")
                return Axiom("Irr", (r,))
            self.take(",")
            s = self.name()
            self.sort(s, "R", where)
            self.take(")")
            return Axiom("Dis" if tok == "disjoint" else "Inv", (r, s))
        mode = self._mode()
        if mode is None:
            a = self.name()
            if self.peek() in ("=", "!="):
                op = self.take()
                b = self.name()
                self.sort(a, "I", where)
                self.sort(b, "I", where)
                return Axiom("Eq" if op == "=" else "Neq", (a, b))
            self.take("(")
            x = self.name()
            if self.peek() == ",":
                self.take(",")
                y = self.name()
                self.take(")")
                self.sort(a, "R", where)
                self.sort(x, "I", where)
                self.sort(y, "I", where)
                return Axiom("RoleAssertion", (a, x, y))
            self.take(")")
            self.sort(a, "C", where)
            self.sort(x, "I", where)
            return Axiom("ClassAssertion", (a, x))
        if mode == "subRoleOf":
            lhs = self.role_expr()
            self.take("subRoleOf")
            rhs = self.role_expr()
            tree = ("ria", lhs, rhs)
        else:
            lhs = self.concept()
            self.take("subClassOf")
            rhs = self.concept()
            tree = ("gci", lhs, rhs)
        self.register_tree(tree, where)
        return classify(tree)

    # expressions
    def role_expr(self):
        parts = [self.role_unit()]
        while self.peek() == "o":
            self.take()
            parts.append(self.role_unit())
        if len(parts) == 1:
            return parts[0]
        expr = parts[0]
        for p in parts[1:]:
            expr = ("chain", expr, p)
        return expr

    def role_unit(self):
        if self.peek() == "eval" and self.peek(1) == "(":
            self.take()
            self.take("(")
            r = self.name()
            self.take(",")
            c = self.name()
            self.take(")")
            return ("eval", ("name", r), c)
        return ("name", self.name())

    def concept(self):
        left = self.conj()
        while self.peek() == "or":
            self.take()
            left = ("or", left, self.conj())
        return left

    def conj(self):
        left = self.unary()
        while self.peek() == "and":
            self.take()
            left = ("and", left, self.unary())
        return left

    def unary(self):
        tok = self.peek()
        if tok == "not":
            self.take()
            return ("not", self.unary())
        if tok in ("exists", "forall"):
            self.take()
            r = self.name()
            self.take(".")
            return (tok, ("name", r), self.unary())
        if tok == "atmost1":
            self.take()
            return ("atmost1", ("name", self.name()))
        if tok == "{":
            self.take()
            a = self.name()
            self.take("}")
            return ("nominal", a)
        if tok == "eval" and self.peek(1) == "(":
            self.take()
            self.take("(")
            x = self.name()
            self.take(",")
            c = self.name()
            self.take(")")
            return ("eval", ("name", x), c)
        if tok == "(":
            self.take()
            e = self.concept()
            self.take(")")
            return e
        return ("name", self.name())

    def register_tree(self, tree, where):
        def concept(e):
            tag = e[0]
            if tag == "name":
                self.sort(e[1], "C", where)
            elif tag in ("and", "or"):
                concept(e[1])
                concept(e[2])
            elif tag == "not":
                concept(e[1])
            elif tag in ("exists", "forall"):
                role(e[1])
                concept(e[2])
            elif tag == "atmost1":
                role(e[1])
            elif tag == "nominal":
                self.sort(e[1], "I", where)
            elif tag == "eval":
                concept(e[1])
                self.context(e[2])

        def role(e):
            if e[0] == "name":
                self.sort(e[1], "R", where)
            elif e[0] == "chain":
                role(e[1])
                role(e[2])
            elif e[0] == "eval":
                role(e[1])
                self.context(e[2])

        if tree[0] == "gci":
            concept(tree[1])
            concept(tree[2])
        else:
            role(tree[1])
            role(tree[2])

    def build(self):
        for rel, where in self.rel_uses:
            if rel not in self.relations:
                raise DSLError("undeclared relation %s" % rel, *where)
        for c in self.contexts:
            if self.sorts.get(c) in ("C", "R"):
                raise DSLError("context name %s is also used as a %s" % (c, "concept" if self.sorts[c] == "C" else "role"))
        st = ContextStructure(tuple(self.contexts),
                              tuple((r, tuple(self.edges[r])) for r in self.relations))
        compute_closures(st)
        kbs = {}
        for c in self.contexts:
            s, d = self.kbs.get(c, ((), ()))
            kbs[c] = ContextKB(tuple(s), tuple(d))
        voc = Vocabulary(
            frozenset(n for n, s in self.sorts.items() if s == "C"),
            frozenset(n for n, s in self.sorts.items() if s == "R"),
            frozenset(n for n, s in self.sorts.items() if s == "I"),
            frozenset(self.contexts))
        return SCKR(st, kbs, voc)


def classify(tree):
    """Map an axiom tree to its normal-form kind, or keep it as "Other"."""
    tag, lhs, rhs = tree
    name = lambda e: e[1] if e[0] == "name" else None
    if tag == "ria":
        if rhs[0] == "name":
            if lhs[0] == "name":
                return Axiom("SubRole", (lhs[1], rhs[1]))
            if lhs[0] == "chain" and lhs[1][0] == "name" and lhs[2][0] == "name":
                return Axiom("SubRChain", (lhs[1][1], lhs[2][1], rhs[1]))
            if lhs[0] == "eval" and lhs[1][0] == "name":
                return Axiom("SubEvalR", (lhs[1][1], lhs[2], rhs[1]))
        return Axiom("Other", (tree,))
    b = name(rhs)
    if b is not None:
        if lhs[0] == "name":
            return Axiom("SubClass", (lhs[1], b))
        if lhs[0] == "nominal":
            return Axiom("NomSubClass", (lhs[1], b))
        if lhs[0] == "and" and name(lhs[1]) and name(lhs[2]):
            return Axiom("SubConj", (lhs[1][1], lhs[2][1], b))
        if lhs[0] == "exists" and name(lhs[2]):
            return Axiom("SubEx", (lhs[1][1], lhs[2][1], b))
        if lhs[0] == "eval" and name(lhs[1]):
            return Axiom("SubEvalC", (lhs[1][1], lhs[2], b))
    a = name(lhs)
    if a is not None:
        if rhs[0] == "exists" and rhs[2][0] == "nominal":
            return Axiom("SupEx", (a, rhs[1][1], rhs[2][1]))
        if rhs[0] == "forall" and name(rhs[2]):
            return Axiom("SupForall", (a, rhs[1][1], rhs[2][1]))
        if rhs[0] == "atmost1":
            return Axiom("SupLeqOne", (a, rhs[1][1]))
    return Axiom("Other", (tree,))


def parse_sckr(text):
    return _Parser(text).parse()


def load(path):
    with open(path, encoding="utf-8") as f:
        return parse_sckr(f.read())


# printing

def expr_text(e):
    tag = e[0]
    if tag == "name":
        return e[1]
    if tag == "nominal":
        return "{%s}" % e[1]
    if tag == "eval":
        return "eval(%s,%s)" % (expr_text(e[1]), e[2])
    if tag == "atmost1":
        return "atmost1 %s" % expr_text(e[1])
    if tag == "not":
        return "not %s" % _wrap(e[1])
    if tag in ("exists", "forall"):
        return "%s %s.%s" % (tag, expr_text(e[1]), _wrap(e[2]))
    if tag == "chain":
        return "%s o %s" % (expr_text(e[1]), expr_text(e[2]))
    return "%s %s %s" % (_wrap(e[1]), tag, _wrap(e[2]))


def _wrap(e):
    if e[0] in ("and", "or"):
        return "(%s)" % expr_text(e)
    return expr_text(e)


def axiom_text(ax):
    k, a = ax.kind, ax.args
    if k == "ClassAssertion":
        return "%s(%s)" % a
    if k == "RoleAssertion":
        return "%s(%s,%s)" % a
    if k == "Eq":
        return "%s = %s" % a
    if k == "Neq":
        return "%s != %s" % a
    if k == "SubClass":
        return "%s subClassOf %s" % a
    if k == "NomSubClass":
        return "{%s} subClassOf %s" % a
    if k == "SubConj":
        return "%s and %s subClassOf %s" % a
    if k == "SubEx":
        return "exists %s.%s subClassOf %s" % a
    if k == "SupEx":
        return "%s subClassOf exists %s.{%s}" % a
    if k == "SupForall":
        return "%s subClassOf forall %s.%s" % a
    if k == "SupLeqOne":
        return "%s subClassOf atmost1 %s" % a
    if k == "SubRole":
        return "%s subRoleOf %s" % a
    if k == "SubRChain":
        return "%s o %s subRoleOf %s" % a
    if k == "Dis":
        return "disjoint(%s,%s)" % a
    if k == "Inv":
        return "inverse(%s,%s)" % a
    if k == "Irr":
        return "irreflexive(%s)" % a
    if k == "SubEvalC":
        return "eval(%s,%s) subClassOf %s" % a
    if k == "SubEvalR":
        return "eval(%s,%s) subRoleOf %s" % a
    tag, lhs, rhs = a[0]
    return "%s %s %s" % (expr_text(lhs), "subClassOf" if tag == "gci" else "subRoleOf", expr_text(rhs))


def _axiom_symbols(ax):
    if ax.kind == "Other":
        out = set()

        def walk(e):
            if isinstance(e, tuple):
                for x in e[1:]:
                    walk(x)
            elif isinstance(e, str):
                out.add(e)
        walk(ax.args[0])
        return out
    return set(ax.args)


def print_sckr(k):
    lines = []
    for r in k.relations:
        lines.append("relation %s." % r)
    used = set()
    for kb in k.kbs.values():
        for ax in kb.strict:
            used |= _axiom_symbols(ax)
        for d in kb.defeasible:
            used |= _axiom_symbols(d.body)
    voc = k.vocabulary
    for label, names in (("concept", voc.concept_names), ("role", voc.role_names),
                         ("individual", voc.individuals)):
        for n in sorted(names - used):
            lines.append("%s %s." % (label, n))
    for c in k.contexts:
        lines.append("context %s." % c)
    for r, es in k.structure.relations:
        for a, b in es:
            lines.append("%s < %s [%s]." % (a, b, r))
    for c in k.contexts:
        kb = k.kbs.get(c)
        if kb is None:
            continue
        for ax in kb.strict:
            lines.append("%s: %s." % (c, axiom_text(ax)))
        for d in kb.defeasible:
            lines.append("%s: D[%s](%s)." % (c, d.relation, axiom_text(d.body)))
    return "\n".join(lines) + "\n"
