"""Terms and atoms shared by the rule parser, the grounder and the solvers."""
import re
from typing import NamedTuple


class Var(NamedTuple):
    name: str


class Fn(NamedTuple):
    """Function term such as nlit(x,z,c)."""
    name: str
    args: tuple


class Atom(NamedTuple):
    pred: str
    args: tuple

    def __str__(self):
        return atom_str(self)


class Cmp(NamedTuple):
    """Builtin comparison in a rule body (only = and != are needed)."""
    op: str
    left: object
    right: object


_PLAIN = re.compile(r"[a-z][A-Za-z0-9_]*\Z")


def term_str(t, quote=False):
    if isinstance(t, Fn):
        return "%s(%s)" % (t.name, ",".join(term_str(a, quote) for a in t.args))
    if isinstance(t, Var):
        return t.name
    if isinstance(t, int):
        return str(t)
    if quote and not _PLAIN.match(t):
        return '"%s"' % t.replace("\\", "\\\\").replace('"', '\\"')
    return t


def atom_str(a, quote=False, sep=","):
    if not a.args:
        return a.pred
    return "%s(%s)" % (a.pred, sep.join(term_str(x, quote) for x in a.args))


def is_ground(t):
    if isinstance(t, Var):
        return False
    if isinstance(t, Fn):
        return all(is_ground(a) for a in t.args)
    return True


def term_vars(t, out=None):
    if out is None:
        out = set()
    if isinstance(t, Var):
        out.add(t.name)
    elif isinstance(t, Fn):
        for a in t.args:
            term_vars(a, out)
    return out


def match(pattern, value, binding):
    """Extend binding so that pattern equals value; None on failure.

    The input binding is never mutated.
    """
    if isinstance(pattern, Var):
        got = binding.get(pattern.name)
        if got is None:
            b = dict(binding)
            b[pattern.name] = value
            return b
        return binding if got == value else None
    if isinstance(pattern, Fn):
        if not isinstance(value, Fn) or value.name != pattern.name or len(value.args) != len(pattern.args):
            return None
        for p, v in zip(pattern.args, value.args):
            binding = match(p, v, binding)
            if binding is None:
                return None
        return binding
    return binding if pattern == value else None


def substitute(t, binding):
    if isinstance(t, Var):
        return binding[t.name]
    if isinstance(t, Fn):
        return Fn(t.name, tuple(substitute(a, binding) for a in t.args))
    return t


def substitute_atom(a, binding):
    return Atom(a.pred, tuple(substitute(x, binding) for x in a.args))


def dump(atoms):
    """Debug dump: one atom per line, sorted lexicographically."""
    return "".join(line + "\n" for line in sorted(atom_str(a) for a in atoms))
