"""Semiring law harness over sampled values."""
from dataclasses import dataclass, field
from itertools import islice, product


@dataclass
class LawReport:
    semiring: str
    triples: int = 0
    failures: list = field(default_factory=list)  # (law, values, lhs, rhs)

    @property
    def ok(self):
        return not self.failures

    def first(self):
        return self.failures[0] if self.failures else None

    def describe(self):
        if self.ok:
            return "%s: all laws hold on %d triples" % (self.semiring, self.triples)
        law, vals, lhs, rhs = self.first()
        return "%s: %s fails for %s: %s != %s" % (self.semiring, law, ", ".join(map(str, vals)),
                                                 lhs, rhs)


def _laws(r, a, b, c):
    add, mul, z, o = r.add, r.mul, r.zero, r.one
    yield "add-associative", add(add(a, b), c), add(a, add(b, c))
    yield "add-commutative", add(a, b), add(b, a)
    yield "add-identity", add(a, z), a
    yield "mul-associative", mul(mul(a, b), c), mul(a, mul(b, c))
    yield "mul-identity-left", mul(o, a), a
    yield "mul-identity-right", mul(a, o), a
    yield "annihilation-left", mul(z, a), z
    yield "annihilation-right", mul(a, z), z
    yield "distributive-left", mul(a, add(b, c)), add(mul(a, b), mul(a, c))
    yield "distributive-right", mul(add(a, b), c), add(mul(a, c), mul(b, c))


def check_semiring_laws(r, samples, max_triples=None, stop_at_first=True, rng=None):
    """Check the semiring laws on all triples over samples.

    max_triples caps the number of triples: the first ones in product order,
    or a uniform draw without repetition when rng is given.
    """
    samples = list(samples)
    if len(set(map(repr, samples))) < 2:
        raise ValueError("need at least two distinct sample values")
    rep = LawReport(r.name)
    triples = product(samples, repeat=3)
    n = len(samples) ** 3
    if max_triples is not None and rng is not None and max_triples < n:
        picks = sorted(rng.sample(range(n), max_triples))
        m = len(samples)
        triples = ((samples[i // (m * m)], samples[i // m % m], samples[i % m]) for i in picks)
    elif max_triples is not None:
        triples = islice(triples, max_triples)
    for a, b, c in triples:
        rep.triples += 1
        for law, lhs, rhs in _laws(r, a, b, c):
            if not r.eq(lhs, rhs):
                rep.failures.append((law, (a, b, c), lhs, rhs))
                if stop_at_first:
                    return rep
    return rep
