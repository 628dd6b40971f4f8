"""Semirings as runtime values, plus a hashable multiset."""
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
import operator

INF = float("inf")


@dataclass(frozen=True)
class Semiring:
    name: str
    add: object
    mul: object
    zero: object
    one: object
    parse_const: object = None
    show: object = str

    def eq(self, a, b):
        return a == b

    def sum(self, values):
        acc = self.zero
        for v in values:
            acc = self.add(acc, v)
        return acc

    def prod(self, values):
        acc = self.one
        for v in values:
            acc = self.mul(acc, v)
        return acc


class Multiset:
    """Immutable multiset; equality is multiplicity-exact."""
    __slots__ = ("_items", "_hash")

    def __init__(self, items=()):
        c = items if isinstance(items, Counter) else Counter(items)
        self._items = tuple(sorted(((k, n) for k, n in c.items() if n > 0), key=repr))
        self._hash = hash(self._items)

    @classmethod
    def from_counts(cls, counts):
        return cls(Counter(dict(counts)))

    def counter(self):
        return Counter(dict(self._items))

    def items(self):
        return self._items

    def count(self, x):
        for k, n in self._items:
            if k == x:
                return n
        return 0

    def __add__(self, other):
        return Multiset(self.counter() + other.counter())

    def __or__(self, other):
        return Multiset(self.counter() | other.counter())

    def __iter__(self):
        for k, n in self._items:
            for _ in range(n):
                yield k

    def __len__(self):
        return sum(n for _k, n in self._items)

    def __eq__(self, other):
        return isinstance(other, Multiset) and self._items == other._items

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "Multiset(%r)" % (dict(self._items),)

    def __str__(self):
        return "{{%s}}" % ", ".join(str(k) for k in self)


def _parse_nat(s):
    v = int(s)
    if v < 0:
        raise ValueError("natural numbers only")
    return v


def _parse_bool(s):
    s = s.lower()
    if s in ("true", "t", "1"):
        return True
    if s in ("false", "f", "0"):
        return False
    raise ValueError("not a boolean: %s" % s)


def _parse_rational(s, infinity):
    if s in ("inf", "+inf", "-inf"):
        v = INF if not s.startswith("-") else -INF
        if v != infinity:
            raise ValueError("%s is not in this carrier" % s)
        return v
    return Fraction(s)


def _show_num(v):
    if isinstance(v, Fraction) and v.denominator == 1:
        return str(v.numerator)
    return str(v)


NAT = Semiring("nat", operator.add, operator.mul, 0, 1, _parse_nat)
BOOL = Semiring("bool", lambda a, b: a or b, lambda a, b: a and b, False, True, _parse_bool,
                lambda v: "true" if v else "false")
TROP = Semiring("trop", min, lambda a, b: a + b, INF, Fraction(0),
                lambda s: _parse_rational(s, INF), _show_num)
MAX = Semiring("max", max, lambda a, b: a + b, -INF, Fraction(0),
               lambda s: _parse_rational(s, -INF), _show_num)


def powerset(universe, show_elem=str):
    """P(A): union, intersection, empty set, A."""
    universe = frozenset(universe)

    def show(v):
        return "{%s}" % ", ".join(sorted(show_elem(x) for x in v))

    def parse(s):
        s = s.strip()
        if not (s.startswith("{") and s.endswith("}")):
            raise ValueError("set constants look like {a,b}")
        body = s[1:-1].strip()
        out = frozenset(x.strip() for x in body.split(",")) if body else frozenset()
        strs = {str(u): u for u in universe}
        if not out <= set(strs):
            raise ValueError("elements outside the universe: %s" % sorted(out - set(strs)))
        return frozenset(strs[x] for x in out)

    return Semiring("powerset", frozenset.union, frozenset.intersection, frozenset(), universe,
                    parse, show)


@dataclass(frozen=True)
class ProductSemiring(Semiring):
    keys: tuple = ()
    components: tuple = ()


def crossproduct(components):
    """Componentwise semiring over a tuple of (key, semiring)."""
    components = tuple(components)
    keys = tuple(k for k, _ in components)
    rs = tuple(r for _, r in components)

    def add(a, b):
        return tuple(r.add(x, y) for r, x, y in zip(rs, a, b))

    def mul(a, b):
        return tuple(r.mul(x, y) for r, x, y in zip(rs, a, b))

    def show(v):
        return "(" + ", ".join("%s: %s" % (k, r.show(x)) for k, r, x in zip(keys, rs, v)) + ")"

    return ProductSemiring("crossproduct", add, mul, tuple(r.zero for r in rs),
                           tuple(r.one for r in rs), None, show, keys, rs)


def lift(product, key, value):
    """Product constant equal to value at key and one elsewhere."""
    return tuple(value if k == key else r.one for k, r in zip(product.keys, product.components))


REGISTRY = {"nat": NAT, "bool": BOOL, "trop": TROP, "max": MAX}


def get(name):
    try:
        return REGISTRY[name]
    except KeyError:
        raise ValueError("unknown semiring %r (known: %s)" % (name, ", ".join(sorted(REGISTRY))))
