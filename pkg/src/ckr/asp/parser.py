"""Parser for the clingo-like rule text used by the rule tables.

Only what the tables need: normal rules, constraints, facts, function terms,
quoted strings, integers and the builtins = and !=.
"""
import re
from typing import NamedTuple, Optional

from .terms import Atom, Cmp, Fn, Var, term_vars

_TOKEN = re.compile(r"""
    (?P<ws>\s+|%[^\n]*)
  | (?P<if>:-)
  | (?P<neq>!=)
  | (?P<eq>=)
  | (?P<str>"(?:[^"\\]|\\.)*")
  | (?P<int>-?\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>[(),.])
""", re.VERBOSE)


class Rule(NamedTuple):
    head: Optional[Atom]
    pos: tuple
    neg: tuple
    cmps: tuple
    label: str = ""

    def check_safety(self):
        bound = set()
        for a in self.pos:
            for t in a.args:
                term_vars(t, bound)
        need = set()
        if self.head is not None:
            for t in self.head.args:
                term_vars(t, need)
        for a in self.neg:
            for t in a.args:
                term_vars(t, need)
        for c in self.cmps:
            term_vars(c.left, need)
            term_vars(c.right, need)
        unsafe = need - bound
        if unsafe:
            raise RuleSyntaxError("unsafe variables %s in rule %s" % (sorted(unsafe), self.label or str(self)))


class RuleSyntaxError(ValueError):
    pass


def _tokens(text):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise RuleSyntaxError("bad character %r at offset %d" % (text[pos], pos))
        kind = m.lastgroup
        if kind != "ws":
            out.append((kind, m.group()))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, toks):
        self.toks = toks
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, value=None):
        tok = self.peek()
        if tok[0] is None or (value is not None and tok[1] != value):
            raise RuleSyntaxError("expected %r, got %r" % (value, tok[1]))
        self.i += 1
        return tok

    def term(self):
        kind, val = self.take()
        if kind == "int":
            return int(val)
        if kind == "str":
            return val[1:-1].replace('\\"', '"').replace("\\\\", "\\")
        if kind != "name":
            raise RuleSyntaxError("expected a term, got %r" % val)
        if val[0].isupper() or val[0] == "_":
            return Var(val)
        if self.peek()[1] == "(":
            return Fn(val, self.args())
        return val

    def args(self):
        self.take("(")
        out = [self.term()]
        while self.peek()[1] == ",":
            self.take(",")
            out.append(self.term())
        self.take(")")
        return tuple(out)

    def atom(self):
        kind, val = self.take()
        if kind != "name":
            raise RuleSyntaxError("expected a predicate, got %r" % val)
        if self.peek()[1] == "(":
            return Atom(val, self.args())
        return Atom(val, ())

    def literal(self):
        kind, val = self.peek()
        if kind == "name" and val == "not":
            self.take()
            return ("neg", self.atom())
        # a comparison starts with a term followed by = or !=
        save = self.i
        if kind == "name" and (val[0].isupper() or val[0] == "_") or kind in ("int", "str"):
            left = self.term()
            op = self.peek()[1]
            if op in ("=", "!="):
                self.take()
                return ("cmp", Cmp(op, left, self.term()))
            self.i = save
        return ("pos", self.atom())

    def rule(self, label=""):
        head = None
        if self.peek()[0] != "if":
            head = self.atom()
        pos, neg, cmps = [], [], []
        if self.peek()[0] == "if":
            self.take()
            while True:
                kind, lit = self.literal()
                {"pos": pos, "neg": neg, "cmp": cmps}[kind].append(lit)
                if self.peek()[1] == ",":
                    self.take(",")
                    continue
                break
        self.take(".")
        r = Rule(head, tuple(pos), tuple(neg), tuple(cmps), label)
        r.check_safety()
        return r


def parse_rules(text, label=""):
    p = _Parser(_tokens(text))
    out = []
    while p.peek()[0] is not None:
        out.append(p.rule(label))
    return out


def parse_program(text):
    """Parse rules into a GroundProgram; every rule must be ground."""
    from .program import GroundProgram, GroundRule
    from .terms import is_ground
    rules = []
    for r in parse_rules(text):
        atoms = ([r.head] if r.head else []) + list(r.pos) + list(r.neg)
        if r.cmps or not all(is_ground(t) for a in atoms for t in a.args):
            raise RuleSyntaxError("rule is not ground: %s" % (r,))
        rules.append(GroundRule(r.head, r.pos, r.neg))
    return GroundProgram(rules)
