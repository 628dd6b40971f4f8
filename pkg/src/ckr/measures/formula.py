"""Weighted formulas: constants, literals, sums and products."""
import re
from typing import NamedTuple

from ..asp.terms import Atom, Fn


class Const(NamedTuple):
    value: object


class Lit(NamedTuple):
    atom: Atom
    positive: bool = True


class Sum(NamedTuple):
    items: tuple


class Prod(NamedTuple):
    items: tuple


def lit(atom):
    return Lit(atom, True)


def neg(atom):
    return Lit(atom, False)


def eval_weighted_formula(f, interp, r):
    """Value of f in semiring r under interpretation interp (a set of atoms)."""
    t = type(f)
    if t is Const:
        return f.value
    if t is Lit:
        holds = (f.atom in interp) == f.positive
        return r.one if holds else r.zero
    if t is Sum:
        return r.sum(eval_weighted_formula(x, interp, r) for x in f.items)
    if t is Prod:
        acc = r.one
        for x in f.items:
            acc = r.mul(acc, eval_weighted_formula(x, interp, r))
            if acc == r.zero:
                # zero annihilates the rest of the product
                return acc
        return acc
    raise TypeError("not a weighted formula: %r" % (f,))


def formula_text(f, show=str):
    t = type(f)
    if t is Const:
        return show(f.value)
    if t is Lit:
        return ("" if f.positive else "~") + str(f.atom)
    op = " + " if t is Sum else " * "
    if not f.items:
        return "0" if t is Sum else "1"
    return "(" + op.join(formula_text(x, show) for x in f.items) + ")"


class FormulaSyntaxError(ValueError):
    pass


_TOKEN = re.compile(r"""\s*(?:
    (?P<set>\{[^}]*\})
  | (?P<num>-?inf\b|-?\d+(?:/\d+|\.\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*|"(?:[^"\\]|\\.)*")
  | (?P<op>[()+*~,])
)""", re.X)


def _tokens(text):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise FormulaSyntaxError("unexpected input at %d: %r" % (pos, text[pos:pos + 10]))
        kind = m.lastgroup
        out.append((kind, m.group(kind), pos))
        pos = m.end()
    return out


def parse_formula(text, r):
    """Parse the mini-language: constants, atoms, ~atom, +, *, parentheses.

    Atom arguments are all constants; the keywords true/false are constants
    of the Boolean semiring only.
    """
    toks = _tokens(text)
    i = 0

    def peek():
        return toks[i] if i < len(toks) else (None, None, len(text))

    def take(value=None):
        nonlocal i
        t = peek()
        if t[0] is None or (value is not None and t[1] != value):
            raise FormulaSyntaxError("expected %s at %d" % (value or "more input", t[2]))
        i += 1
        return t

    def const(s, where):
        if r.parse_const is None:
            raise FormulaSyntaxError("semiring %s has no constant syntax" % r.name)
        try:
            return Const(r.parse_const(s))
        except (ValueError, ZeroDivisionError) as e:
            raise FormulaSyntaxError("bad constant %r at %d: %s" % (s, where, e))

    def term():
        kind, val, where = take()
        if kind == "num":
            return int(val) if re.fullmatch(r"-?\d+", val) else val
        if kind != "name":
            raise FormulaSyntaxError("expected a term at %d" % where)
        if val.startswith('"'):
            return val[1:-1]
        if peek()[1] == "(":
            return Fn(val, args())
        return val

    def args():
        take("(")
        out = [term()]
        while peek()[1] == ",":
            take(",")
            out.append(term())
        take(")")
        return tuple(out)

    def atom(name):
        if peek()[1] == "(":
            return Atom(name, args())
        return Atom(name, ())

    def unary():
        kind, val, where = peek()
        if val == "(":
            take("(")
            f = expr()
            take(")")
            return f
        if val == "~":
            take("~")
            k2, v2, w2 = take()
            if k2 != "name":
                raise FormulaSyntaxError("expected an atom after ~ at %d" % w2)
            return Lit(atom(v2), False)
        take()
        if kind in ("num", "set"):
            return const(val, where)
        if kind == "name":
            if r.name == "bool" and val in ("true", "false"):
                return const(val, where)
            return Lit(atom(val), True)
        raise FormulaSyntaxError("unexpected %r at %d" % (val, where))

    def product():
        items = [unary()]
        while peek()[1] == "*":
            take("*")
            items.append(unary())
        return items[0] if len(items) == 1 else Prod(tuple(items))

    def expr():
        items = [product()]
        while peek()[1] == "+":
            take("+")
            items.append(product())
        return items[0] if len(items) == 1 else Sum(tuple(items))

    f = expr()
    if i != len(toks):
        raise FormulaSyntaxError("trailing input at %d" % toks[i][2])
    return f
