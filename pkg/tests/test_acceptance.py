"""Acceptance suite: one PASS/FAIL line per criterion, printed in the pytest summary.

Pinned tolerances: all set and boolean comparisons are exact (zero tolerance),
at least 200 random knowledge bases are compared against the exact oracle,
1000 random clash-set triples check transitivity, and every law harness run
covers at least 500 triples.
"""
import random
import time
from fractions import Fraction
from pathlib import Path

import pytest

from ckr.asp import enumerate_answer_sets_search
from ckr.depgraph import is_eval_disconnected
from ckr.measures import (BOOL, MAX, NAT, TROP, Multiset, build_mu_all, build_mu_one,
                          check_semiring_laws, count_measure, make_r_all, make_r_c, make_r_one,
                          overall_weight, powerset)
from ckr.preferences import local_pref_gt, preferred_filter
from ckr.query import Reasoner, parse_instance_query
from ckr.translator import emit_asp_text, ground, solve_ckr, translate
from helpers import (ACCEPTANCE_LINES, cas_violations, cross_samples, fixture, r_c_samples,
                     r_one_samples, random_clash_sets, random_sckr)

MIN_RANDOM_KBS = 200
MAX_NEGATED_ATOMS = 14   # larger ground programs are skipped, and the skips are reported
LP_TRIPLES = 1000
MIN_LAW_TRIPLES = 500
NAMED = ("korg", "korg1", "two_preferred", "single", "parent_child")
GOLDEN = Path(__file__).resolve().parent / "golden"


def report(n, ok, detail):
    line = "%s criterion %d: %s" % ("PASS" if ok else "FAIL", n, detail)
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def corpus():
    """Random eval-free sCKRs with their justified models and oracle answer sets."""
    out = []
    skipped = 0
    seed = 0
    t0 = time.time()
    while len(out) < MIN_RANDOM_KBS:
        k = random_sckr(random.Random(seed), max_contexts=4, max_relations=2,
                        max_individuals=3, max_defeasible=4)
        seed += 1
        tr = translate(k)
        gp = ground(tr)
        if len({a for r in gp.rules for a in r.neg}) > MAX_NEGATED_ATOMS:
            skipped += 1
            continue
        models = solve_ckr(k, tr=tr)
        out.append((k, models, enumerate_answer_sets_search(gp)))
    return {"items": out, "skipped": skipped, "seeds": seed, "seconds": time.time() - t0}


@pytest.fixture(scope="module")
def named():
    return {n: (fixture(n), solve_ckr(fixture(n))) for n in NAMED}


def test_criterion_1_korg(named):
    k, models = named["korg"]
    r = Reasoner(k)
    expect = {("c_local_2019", "E"): True, ("c_local_2019", "OS"): True}
    for y in ("2020", "2021"):
        expect[("c_local_" + y, "R")] = True
        expect[("c_local_" + y, "RE")] = True
    got = {key: r.c_entails(parse_instance_query("%s : %s(i)" % key)) for key in expect}
    ok = len(models) == 8 and len(r.preferred) == 1 and got == expect
    report(1, ok, "K_org has %d justified and %d preferred models; entailments %s"
           % (len(models), len(r.preferred), "match" if got == expect else got))


def test_criterion_2_korg1(named):
    k, models = named["korg1"]
    sets = sorted(sorted(str(ca.axiom) for ca in m.clash_set("c", "c_local1")) for m in models)
    expected_sets = [["S subClassOf E", "S subClassOf M"],
                     ["S subClassOf E", "S subClassOf R"],
                     ["S subClassOf M", "S subClassOf R"]]
    r = Reasoner(k)
    pref = [sorted((str(ca.axiom), ca.instance) for ca in m.clash_set("c", "c_local1"))
            for m in r.preferred]
    ent = [r.c_entails(parse_instance_query("c_local1 : %s(i)" % x)) for x in "MER"]
    ok = (sets == expected_sets and pref == [[("S subClassOf E", ("i",)), ("S subClassOf R", ("i",))]]
          and ent == [True, False, False])
    report(2, ok, "K_org1 has %d justified models with the three clash sets, preferred %s; "
           "M/E/R(i) at c_local1 = %s" % (len(models), pref, ent))


def test_criterion_3_solver_vs_oracle(corpus):
    items = corpus["items"]
    bad = [i for i, (k, ms, ora) in enumerate(items) if {m.answer_set for m in ms} != ora]
    with_models = sum(1 for _, ms, _ in items if ms)
    ok = len(items) >= MIN_RANDOM_KBS and not bad
    report(3, ok, "%d random sCKRs compared with the exact oracle, %d mismatches "
           "(%d with models, %d skipped above %d negated atoms, %.1fs)"
           % (len(items), len(bad), with_models, corpus["skipped"], MAX_NEGATED_ATOMS,
              corpus["seconds"]))


def test_criterion_4_cas_conditions(corpus, named):
    checked = 0
    violations = []
    for k, models in list(named.values()) + [(k, ms) for k, ms, _ in corpus["items"]]:
        for m in models:
            checked += 1
            violations.extend(cas_violations(k, m))
    report(4, not violations, "%d justified models checked against conditions (i)-(iii), "
           "%d violations %s" % (checked, len(violations), violations[:3]))


def test_criterion_5_preference_theorems(corpus, named):
    kbs = [(k, ms) for k, ms in named.values()] + [(k, ms) for k, ms, _ in corpus["items"]]
    kbs = [(k, ms) for k, ms in kbs if is_eval_disconnected(k).disconnected]
    differ = [k for k, ms in kbs
              if preferred_filter(ms, k, mode="mp") != preferred_filter(ms, k, mode="pareto")]
    rng = random.Random(2024)
    triples = nonvacuous = failures = 0
    while triples < LP_TRIPLES:
        got = random_clash_sets(rng)
        if got is None:
            continue
        k, cl, c, rel, (a, b, d) = got
        triples += 1
        if local_pref_gt(a, b, c, rel, cl) and local_pref_gt(b, d, c, rel, cl):
            nonvacuous += 1
            if not local_pref_gt(a, d, c, rel, cl):
                failures += 1
    ok = not differ and failures == 0
    report(5, ok, "MP and pareto preferred sets agree on %d/%d eval-disconnected sCKRs; "
           "LP transitivity holds on %d triples (%d with both premises true, %d failures)"
           % (len(kbs) - len(differ), len(kbs), triples, nonvacuous, failures))


def test_criterion_6_measures(corpus, named):
    count_bad = [n for n, (k, ms) in named.items() if overall_weight(count_measure(k)) != len(ms)]
    count_bad += [i for i, (k, ms, _) in enumerate(corpus["items"])
                  if overall_weight(count_measure(k)) != len(ms)]
    k, models = named["korg1"]
    w = overall_weight(build_mu_one(k))
    prefs = sorted(preferred_filter(models, k), key=lambda m: sorted(map(str, m.answer_set)))
    lex_min = prefs[0]
    chi = sorted((c, str(ca.axiom), ca.declared_at, n) for (c, ca), n in w.chi.items())
    one_ok = (w.atoms == Multiset(lex_min.answer_set)
              and chi == [("c_local1", "S subClassOf E", "c_world", 1),
                          ("c_local1", "S subClassOf R", "c_branch2", 1)])
    m = build_mu_all(k)
    v = overall_weight(m)
    shown = {key: r.show(x) for key, r, x in zip(m.semiring.keys, m.semiring.components, v)}
    expected = {c: "{({}, {{}})}" for c in k.contexts}
    expected["c_local1"] = ("{({M(i), S(i)}, {{S subClassOf E(i) [c@c_world], "
                            "S subClassOf R(i) [c@c_branch2]}})}")
    all_ok = shown == expected
    ok = not count_bad and one_ok and all_ok
    report(6, ok, "count measure matches on %d sCKRs (%d mismatches); R_one weight %s; "
           "mu_all at c_local1 = %s"
           % (len(named) + len(corpus["items"]), len(count_bad),
              "is the lex-least preferred pair" if one_ok else "differs: %s" % w,
              shown["c_local1"]))


def test_criterion_7_semiring_laws():
    k = fixture("korg1")
    r_all = make_r_all(k)
    runs = [
        (NAT, [0, 1, 2, 3, 5, 7, 8, 13, 21]),
        (BOOL, [False, True] * 4),
        (powerset("xyz"), [frozenset(s) for s in ("", "x", "y", "z", "xy", "xz", "yz", "xyz")]),
        (TROP, [float("inf"), Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2), Fraction(5, 3),
                Fraction(4), Fraction(9)]),
        (MAX, [float("-inf"), Fraction(0), Fraction(-1), Fraction(1, 3), Fraction(2),
               Fraction(-7, 2), Fraction(5), Fraction(6)]),
        (make_r_one(k), r_one_samples(k)),
        (make_r_c(k, "c_local1"), r_c_samples(k, "c_local1")),
        (r_all, cross_samples(k, r_all, random.Random(5), n=10)),
    ]
    rng = random.Random(7)
    results = []
    for r, samples in runs:
        rep = check_semiring_laws(r, samples, max_triples=max(MIN_LAW_TRIPLES, 600), rng=rng)
        results.append((rep.semiring, rep.ok and rep.triples >= MIN_LAW_TRIPLES, rep.triples))
    broken = check_semiring_laws(make_r_one(k, set_chi=True), r_one_samples(k))
    broken_ok = not broken.ok and broken.first()[0].startswith("distributive")
    ok = all(x[1] for x in results) and broken_ok
    report(7, ok, "%s; set-based R_one fails as required: %s"
           % (", ".join("%s %s (%d)" % (n, "ok" if good else "FAILED", t) for n, good, t in results),
              broken.describe()))


def test_criterion_8_goldens():
    mismatched = []
    for name in ("korg1", "korg"):
        text = emit_asp_text(fixture(name))
        golden = (GOLDEN / (name + ".lp")).read_bytes()
        if text.encode("utf-8") != golden:
            mismatched.append(name)
        lines = text.splitlines()
        for needed in ("#preference(GlobPref,lexico){ W::**RelPref(REL) : relation_weight(REL, W) }.",
                       "#preference(RelPref(REL), pareto){ **LocPref(C, REL) : context(C) } : relation(REL).",
                       "#optimize(GlobPref)."):
            if needed not in lines:
                mismatched.append("%s lacks %s" % (name, needed))
    report(8, not mismatched, "emitted programs for K_org1 and K_org byte-match the goldens"
           if not mismatched else "mismatches: %s" % mismatched)
