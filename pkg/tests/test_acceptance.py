"""Acceptance gate: thirteen end-to-end criteria, each with a time budget.

Every test prints a single pass/fail line so a full run reads as a checklist.
All checks are exact; the random ones are seeded and deterministic.
"""

import itertools
import random
import time

import pytest

from relmon.etperm import (distinguishing_witness, factorize, identity,
                           min_product_length, mover, sample, swap, transfer,
                           translation)
from relmon.fingroup import (FiniteGroup, GroupSubset, cayley_embed,
                             coset_embed, graph_op_group, is_bi_invariant,
                             subgroups)
from relmon.relations import (Relation, alternating_chain, crown, fence,
                              graph_op_eval, graph_op_eval_sized,
                              min_length_to_total, named_graph, named_relation)
from relmon.words import verify_counterexample


def _report(num, desc, ok, elapsed, budget):
    status = "PASS" if ok else "FAIL"
    print(f"criterion {num:2d} [{status}] {elapsed:6.2f}s/{budget}s  {desc}")
    assert ok, f"criterion {num} failed: {desc}"
    assert elapsed < budget, f"criterion {num} over budget: {elapsed:.2f}s"


def _reflexive_relations(n):
    off = [(i, j) for i in range(n) for j in range(n) if i != j]
    for bits in itertools.product((False, True), repeat=len(off)):
        yield Relation.from_pairs(n, [p for p, b in zip(off, bits) if b])


def _random_reflexive(n, rng, density=0.4):
    pairs = [(i, j) for i in range(n) for j in range(n)
             if i != j and rng.random() < density]
    return Relation.from_pairs(n, pairs)


def _small_groups():
    groups = [FiniteGroup.cyclic(k) for k in range(1, 7)]
    groups.append(FiniteGroup.symmetric(3))
    return groups


def _identity_subsets(group):
    rest = list(range(1, group.order))
    for r in range(len(rest) + 1):
        for extra in itertools.combinations(rest, r):
            yield GroupSubset(group, (0,) + extra)


def test_criterion_01_fence_lengths():
    t0 = time.monotonic()
    ok = all(min_length_to_total(fence(n), "forward") == n
             for n in range(2, 9))
    _report(1, "fence(n) forward length == n for n=2..8",
            ok, time.monotonic() - t0, 1)


def test_criterion_02_asymmetry():
    t0 = time.monotonic()
    ok = all(min_length_to_total(fence(n), "converse") == n - 1
             for n in (3, 5, 7))
    ok &= all(min_length_to_total(fence(n), "forward") == n
              and min_length_to_total(fence(n), "converse") == n
              for n in (2, 4, 6, 8))
    _report(2, "fence converse length: n-1 for odd n, n for even n",
            ok, time.monotonic() - t0, 1)


def test_criterion_03_crown():
    t0 = time.monotonic()
    ok = all(min_length_to_total(crown(n), start) == n
             for n in range(3, 9) for start in ("forward", "converse"))
    _report(3, "crown(n) lengths == n from both starts for n=3..8",
            ok, time.monotonic() - t0, 1)


def test_criterion_04_three_orders_table():
    t0 = time.monotonic()
    by_name = {k: named_relation(f"k135_{k}") for k in (1, 3, 5)}
    ok = True
    for a, b, c in ((5, 3, 1), (3, 1, 5), (1, 5, 3)):
        ok &= by_name[a].compose(by_name[b]).compose(by_name[c]).is_total()
    # each reversed composite misses its own cyclic image of the base
    # 0-indexed triple (4,3),(5,3),(5,4)
    base = [(4, 3), (5, 3), (5, 4)]
    for (a, b, c), shift in (((1, 3, 5), 0), ((3, 5, 1), 2), ((5, 1, 3), 4)):
        r = by_name[a].compose(by_name[b]).compose(by_name[c])
        missing = {((i + shift) % 6, (j + shift) % 6) for i, j in base}
        ok &= not r.is_total()
        ok &= all(p not in r for p in missing)
        ok &= all(p in r or p in missing
                  for p in itertools.product(range(6), repeat=2))
    _report(4, "cyclic triple composites total; reversed ones miss exactly "
               "three pairs each", ok, time.monotonic() - t0, 1)


def test_criterion_05_factorization_suite():
    t0 = time.monotonic()
    rng = random.Random(20250823)
    pairs = [(r, s) for r in _reflexive_relations(2)
             for s in _reflexive_relations(2)]
    for _ in range(200):
        n = rng.choice([3, 4, 5])
        pairs.append((_random_reflexive(n, rng), _random_reflexive(n, rng)))
    ok = True
    for rho, sigma in pairs:
        composite = rho.compose(sigma)
        for _ in range(100):
            g = sample(rho, rng.randrange(2**32))
            h = sample(sigma, rng.randrange(2**32))
            ok &= g.compose(h).respects(composite)
        for _ in range(100):
            f = sample(composite, rng.randrange(2**32))
            g, h = factorize(f, rho, sigma)
            ok &= g.respects(rho) and h.respects(sigma) and g.compose(h) == f
        if not ok:
            break
    _report(5, "216 relation pairs x (100 products + 100 factorizations), "
               "zero failures", ok, time.monotonic() - t0, 60)


def test_criterion_06_injectivity():
    t0 = time.monotonic()
    rels = list(_reflexive_relations(3))
    ok = True
    for rho, sigma in itertools.permutations(rels, 2):
        w = distinguishing_witness(rho, sigma)
        ok &= w.respects(rho) != w.respects(sigma)
    _report(6, "all 64*63 ordered distinct reflexive pairs on n=3 separated",
            ok, time.monotonic() - t0, 5)


def test_criterion_07_preorder_closure():
    t0 = time.monotonic()
    rng = random.Random(7)
    ok = True
    for rho in _reflexive_relations(3):
        is_pre = rho.classify() in ("preorder", "equivalence")
        if is_pre:
            for _ in range(20):
                g = sample(rho, rng.randrange(2**32))
                h = sample(rho, rng.randrange(2**32))
                ok &= g.compose(h).respects(rho)
        else:
            # a deterministic witness: chain two single-point moves along a
            # missing transitive pair
            i, j, k = next(
                (i, j, k) for i in range(3) for j in range(3) for k in range(3)
                if (i, j) in rho and (j, k) in rho and (i, k) not in rho)
            g = transfer(3, {(i, 0): (j, 0)})
            h = transfer(3, {(j, 0): (k, 0)})
            ok &= g.respects(rho) and h.respects(rho)
            ok &= not g.compose(h).respects(rho)
    _report(7, "closure of the member class agrees with preorder "
               "classification on all 64 relations (n=3)",
            ok, time.monotonic() - t0, 10)


def test_criterion_08_cayley_embedding():
    t0 = time.monotonic()
    ok = True
    for group in _small_groups():
        n = group.order
        images = {}
        for s in _identity_subsets(group):
            images[s] = cayley_embed(group, s)
        ok &= len(set(images.values())) == len(images)
        ok &= images[GroupSubset(group, range(n))] == Relation.total(n)
        subsets = list(images)
        for s in subsets:
            ok &= images[s].converse() == cayley_embed(group, s.inverse())
            for t in subsets:
                ok &= images[s].compose(images[t]) == \
                    cayley_embed(group, s.product(t))
                ok &= images[s].intersect(images[t]) == \
                    cayley_embed(group, s.intersect(t))
        if not ok:
            break
    _report(8, "five embedding identities on every subset of every group "
               "of order <= 6", ok, time.monotonic() - t0, 30)


def test_criterion_09_coset_embedding():
    t0 = time.monotonic()
    g = FiniteGroup.symmetric(3)
    hs = subgroups(g)
    ok = len(hs) == 6
    for h in hs:
        invariant = [s for s in _identity_subsets(g) if is_bi_invariant(s, h)]
        images = {s: coset_embed(g, h, s) for s in invariant}
        ok &= len(set(images.values())) == len(images)
        whole = GroupSubset(g, range(6))
        ok &= images[whole].is_total()
        ok &= images[GroupSubset(g, h.members)] == \
            Relation.diagonal(6 // len(h))
        for s in invariant:
            ok &= images[s].converse() == coset_embed(g, h, s.inverse())
            for t in invariant:
                ok &= images[s].compose(images[t]) == \
                    coset_embed(g, h, s.product(t))
        if not ok:
            break
    _report(9, "coset-space embedding identities for all 6 subgroups of "
               "symmetric(3)", ok, time.monotonic() - t0, 10)


def test_criterion_10_double_coset_counterexample():
    t0 = time.monotonic()
    report = verify_counterexample()
    ok = report["pass"] and len(report["clauses"]) == 4 \
        and all(c["pass"] for c in report["clauses"])
    _report(10, "double-coset map fails intersections: all four clauses pass",
            ok, time.monotonic() - t0, 1)


def test_criterion_11_graph_operations():
    t0 = time.monotonic()
    rng = random.Random(11)
    diamond = named_graph("diamond")
    ok = True
    for _ in range(100):
        n = rng.choice([2, 3, 4])
        r1, s1, r2, s2 = (Relation.from_pairs(
            n, [(i, j) for i in range(n) for j in range(n)
                if rng.random() < 0.4], reflexive=False) for _ in range(4))
        got = graph_op_eval(diamond, [r1, s1, r2, s2, Relation.diagonal(n)])
        ok &= got == r1.intersect(r2).compose(s1.intersect(s2))
    for _ in range(20):
        n = rng.choice([2, 3, 4])
        a = _random_reflexive(n, rng)
        b = _random_reflexive(n, rng)
        ok &= graph_op_eval(named_graph("intersect"), [a, b]) == a.intersect(b)
        ok &= graph_op_eval(named_graph("compose"), [a, b]) == a.compose(b)
        ok &= graph_op_eval(named_graph("converse"), [a]) == a.converse()
    ok &= graph_op_eval_sized(named_graph("diagonal"), [], 3) == \
        Relation.diagonal(3)
    ok &= graph_op_eval_sized(named_graph("total"), [], 3) == Relation.total(3)
    for group in _small_groups():
        for _ in range(50):
            args = [GroupSubset(group, {0} | {rng.randrange(group.order)
                                              for _ in range(2)})
                    for _ in range(5)]
            lhs = cayley_embed(group, graph_op_group(diamond, args))
            rhs = graph_op_eval(diamond, [cayley_embed(group, a) for a in args])
            ok &= lhs == rhs
        if not ok:
            break
    _report(11, "diamond collapse, named-graph base ops, and Cayley "
                "intertwining", ok, time.monotonic() - t0, 60)


def test_criterion_12_permutation_group_axioms():
    t0 = time.monotonic()
    rng = random.Random(12)
    n = 4
    rho = fence(4)
    gens = [translation(n, i, s) for i in range(n) for s in (-1, 1)] + \
           [swap(n, i) for i in range(n)] + \
           [mover(n, i, j) for i in range(n) for j in range(n)
            if i != j and (i, j) in rho]
    ok = True
    for _ in range(1000):
        word = [rng.choice(gens) for _ in range(rng.randint(1, 8))]
        left = identity(n)
        for g in word:
            left = left.compose(g)
        right = word[0]
        for g in word[1:]:
            right = right.compose(g)
        ok &= left == right  # fold direction cannot matter
        ok &= left.invalidity_reason() is None  # flow law + canonical form
        ok &= left.compose(left.invert()) == identity(n)
        # canonical equality must agree with pointwise evaluation on a
        # window past both seams
        bound = left._coverage_bound() + 10
        ok &= all(left.apply((i, k)) == right.apply((i, k))
                  for i in range(n) for k in range(-bound, bound + 1))
        if not ok:
            break
    _report(12, "1000 generator words over fence(4): associativity, "
                "inverses, flow law, canonical form",
            ok, time.monotonic() - t0, 10)


def test_criterion_13_layers():
    t0 = time.monotonic()
    rng = random.Random(13)
    ok = True
    for n in (4, 5):
        rho = fence(n)
        max_layer = min_length_to_total(rho, "forward")
        for layer in range(1, max_layer + 1):
            f = _element_of_layer(rho, layer)
            if f is None:
                continue
            for _ in range(100):
                h = sample(rho, rng.randrange(2**32))
                j = min_product_length(f.compose(h), rho, "forward")
                if layer % 2 == 1:
                    ok &= j == layer
                else:
                    ok &= j in (layer - 1, layer, layer + 1)
            if not ok:
                break
    _report(13, "fence(4)/fence(5) layer parity: odd layers fixed, even "
                "layers move at most one", ok, time.monotonic() - t0, 30)


def _element_of_layer(rho, layer):
    if layer == 1:
        return identity(rho.n)
    cur = alternating_chain(rho, layer, "forward")
    prev = alternating_chain(rho, layer - 1, "forward")
    fresh = [(i, j) for i, j in cur.true_pairs()
             if (i, j) not in prev and i != j]
    if not fresh:
        return None
    i, j = min(fresh)
    return transfer(rho.n, {(i, 0): (j, 0)})
