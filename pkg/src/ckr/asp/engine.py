"""Guess-and-check answer-set engine.

A set of guess atoms is fixed for every candidate; all other negation must be
stratified once the guess atoms are treated as known.  For each guess the
program is evaluated stratum by stratum and the candidate is accepted iff the
derived guess atoms coincide with the guess and no constraint fires.
"""
import networkx as nx

from .program import CapExceeded, is_answer_set

DEFAULT_GUESS_CAP = 2 ** 20


class NotStratified(ValueError):
    pass


class GuessCheckSolver:
    def __init__(self, program, guess_atoms):
        self.program = program
        atoms = sorted(program.herbrand_base, key=repr)
        self.atoms = atoms
        self.ids = {a: i for i, a in enumerate(atoms)}
        self.guess = sorted(self.ids[a] for a in guess_atoms if a in self.ids)
        gset = set(self.guess)
        self.gset = gset
        rules = []
        constraints = []
        for r in program.rules:
            pos = tuple(sorted({self.ids[a] for a in r.pos}))
            negg = tuple(self.ids[a] for a in r.neg if self.ids[a] in gset)
            nego = tuple(self.ids[a] for a in r.neg if self.ids[a] not in gset)
            item = (self.ids[r.head] if r.head is not None else -1, pos, negg, nego)
            (constraints if r.head is None else rules).append(item)
        self.rules = rules
        self.constraints = constraints
        self._stratify()
        self._guess_rules = {g: [i for i, r in enumerate(rules) if r[0] == g] for g in self.guess}
        self.prunable = self._antimonotone_bodies()

    def _stratify(self):
        n = len(self.atoms)
        g = nx.DiGraph()
        g.add_nodes_from(range(n))
        neg_edges = set()
        for head, pos, _negg, nego in self.rules:
            for a in pos:
                g.add_edge(a, head)
            for a in nego:
                g.add_edge(a, head)
                neg_edges.add((a, head))
        cond = nx.condensation(g)
        member = cond.graph["mapping"]
        for a, h in neg_edges:
            if member[a] == member[h]:
                raise NotStratified("negation cycle through %s" % (self.atoms[h],))
        incoming = {}
        for a, h in g.edges():
            ma, mh = member[a], member[h]
            if ma != mh:
                incoming.setdefault(mh, []).append((ma, (a, h) in neg_edges))
        level = {}
        for scc in nx.topological_sort(cond):
            lv = 0
            for ma, neg in incoming.get(scc, ()):
                lv = max(lv, level[ma] + (1 if neg else 0))
            level[scc] = lv
        atom_level = [level[member[a]] for a in range(n)]
        nlev = max(atom_level, default=-1) + 1
        self.levels = []
        for lv in range(nlev):
            idx = [i for i, r in enumerate(self.rules) if atom_level[r[0]] == lv]
            occ = {}
            for i in idx:
                for a in self.rules[i][1]:
                    occ.setdefault(a, []).append(i)
            self.levels.append((idx, occ))

    def _antimonotone_bodies(self):
        """True when positive bodies of guess rules can only shrink as the guess grows."""
        gset = self.gset
        adj = {}
        for head, pos, negg, nego in self.rules:
            for a in pos:
                adj.setdefault(a, []).append((head, False))
            for a in negg + nego:
                adj.setdefault(a, []).append((head, True))
        bad = set()
        stack = []
        for g in self.guess:
            for h, neg in adj.get(g, ()):
                if not neg and h not in bad:
                    bad.add(h)
                    stack.append(h)
        # an atom below a guess atom that negates something turns monotone
        reach = set()
        st = [h for g in self.guess for h, _ in adj.get(g, ())]
        reach.update(st)
        while st:
            a = st.pop()
            for h, _ in adj.get(a, ()):
                if h not in reach:
                    reach.add(h)
                    st.append(h)
        for a in reach:
            if a in gset:
                continue
            for h, neg in adj.get(a, ()):
                if neg and h not in bad:
                    bad.add(h)
                    stack.append(h)
        while stack:
            a = stack.pop()
            for h, _ in adj.get(a, ()):
                if h not in bad:
                    bad.add(h)
                    stack.append(h)
        for g in self.guess:
            for i in self._guess_rules[g]:
                if any(a in bad or a in gset for a in self.rules[i][1]):
                    return False
        return True

    def evaluate(self, guess):
        """Stratified model of the program simplified by the guess."""
        model = bytearray(len(self.atoms))
        rules = self.rules
        for idx, occ in self.levels:
            missing = {}
            queue = []
            for i in idx:
                head, pos, negg, nego = rules[i]
                if any(a in guess for a in negg) or any(model[a] for a in nego):
                    continue
                m = 0
                for a in pos:
                    if not model[a]:
                        m += 1
                missing[i] = m
            # fire only after every count is taken, so no atom is counted twice
            for i, m in missing.items():
                head = rules[i][0]
                if m == 0 and not model[head]:
                    model[head] = 1
                    queue.append(head)
            while queue:
                a = queue.pop()
                for i in occ.get(a, ()):
                    if i in missing:
                        missing[i] -= 1
                        if missing[i] == 0:
                            h = rules[i][0]
                            if not model[h]:
                                model[h] = 1
                                queue.append(h)
        return model

    def _constraints_ok(self, model):
        for _h, pos, negg, nego in self.constraints:
            if all(model[a] for a in pos) and not any(model[a] for a in negg + nego):
                return False
        return True

    def _dead(self, guess, model):
        """Some guessed atom has no rule with a true positive body."""
        for g in guess:
            if not any(all(model[a] for a in self.rules[i][1]) for i in self._guess_rules[g]):
                return True
        return False

    def solve(self, max_guesses=DEFAULT_GUESS_CAP, verify=True):
        found = []
        n = len(self.guess)
        frontier = [((), -1)]
        visited = 0
        while frontier:
            nxt = []
            for combo, last in frontier:
                visited += 1
                if visited > max_guesses:
                    raise CapExceeded("guess enumeration exceeded %d candidates" % max_guesses)
                guess = frozenset(combo)
                model = self.evaluate(guess)
                derived = frozenset(g for g in self.guess if model[g])
                if derived == guess and self._constraints_ok(model):
                    found.append(frozenset(self.atoms[i] for i in range(len(model)) if model[i]))
                if self.prunable and self._dead(guess, model):
                    continue
                for j in range(last + 1, n):
                    nxt.append((combo + (self.guess[j],), j))
            frontier = nxt
        if verify:
            for s in found:
                if not is_answer_set(self.program, s):
                    raise AssertionError("candidate failed the stability check")
        return sorted(found, key=lambda s: sorted(map(str, s)))


def solve(program, guess_atoms=None, max_guesses=DEFAULT_GUESS_CAP):
    """Answer sets of a ground program; guesses all negated atoms by default."""
    if guess_atoms is None:
        guess_atoms = {a for r in program.rules for a in r.neg}
    return GuessCheckSolver(program, guess_atoms).solve(max_guesses)
