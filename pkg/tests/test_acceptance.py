"""Acceptance criteria 1-10, one test each.

Every test records a PASS/FAIL line that is repeated in the terminal
summary.  Expected values come from the brute-force oracles in
``biserial.oracles`` or from small hand-checkable modules.
"""

from __future__ import annotations

import itertools
import random
import time
import warnings
from collections import Counter
from fractions import Fraction

from biserial import catalog, circular
from biserial.krull_schmidt import conjugate, decompose, is_isomorphic
from biserial.linalg import QQ
from biserial.oracles import dimension_from_counts, exhaustive_rep_enumeration, rank_profile
from biserial.quiver import check_complete_gentle, complete_gentle_closure
from biserial.representation import Representation, direct_sum
from biserial.repvar import ComponentDescriptor, components, dim_component, presentation
from biserial.stability import SEMISTABLE, STABLE, UNSTABLE, FieldSensitivity, check_stability, moduli_structure
from biserial.strings_bands import band_module, enumerate_bands, enumerate_strings, identify, string_module


def small_shapes():
    for l in (1, 2, 3):
        yield from itertools.product((1, 2), repeat=l)


def all_rank_sequences(n):
    ranges = [range(min(n[i], n[(i + 1) % len(n)]) + 1) for i in range(len(n))]
    return [r for r in itertools.product(*ranges) if circular.is_rank_sequence(n, r)]


def criterion1_instances():
    return [(n, r) for n in small_shapes() for r in all_rank_sequences(n)]


# ---------------------------------------------------------------------------


def test_criterion_1_dimension_matches_point_counts(record):
    start = time.perf_counter()
    bad = []
    instances = criterion1_instances()
    for n, r in instances:
        counts = [(q, circular.count_points(n, r, q)) for q in (2, 3, 5)]
        verdict = dimension_from_counts(counts, circular.dim_comp(n, r))
        if not verdict:
            bad.append((n, r, verdict.detail))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 60
    record(1, ok, f"{len(instances)} instances, {len(bad)} disagreements, {elapsed:.1f}s")
    assert not bad, bad[:3]
    assert elapsed < 60


def test_criterion_2_dimension_identity(record):
    bad = []
    instances = criterion1_instances()
    for n, r in instances:
        lhs = sum(x * x for x in n) - 2 * circular.dim_comp(n, r)
        rhs = sum(k * k for k in circular.defects(n, r))
        if lhs != rhs:
            bad.append((n, r, lhs, rhs))
    record(2, not bad, f"{len(instances)} instances, {len(bad)} mismatches")
    assert not bad


def test_criterion_3_maximal_components_cover(record):
    bad = []
    for n in small_shapes():
        l = len(n)
        bq = catalog.cyclic(l)
        d = {str(i): n[i] for i in range(l)}
        points = exhaustive_rep_enumeration(bq, d, 2)
        maximal = circular.maximal_rank_sequences(n)
        uncovered = 0
        for pt in points:
            prof = rank_profile(pt, 2)
            seq = tuple(prof[f"a{i}"] for i in range(l))
            if not any(circular.leq(seq, r) for r in maximal):
                uncovered += 1
        union = 0
        for k in range(1, len(maximal) + 1):
            for subset in itertools.combinations(maximal, k):
                meet = tuple(min(col) for col in zip(*subset))
                union += (-1) ** (k + 1) * circular.count_points(n, meet, 2)
        if uncovered or union != len(points):
            bad.append((n, len(points), union, uncovered))
    record(3, not bad, f"{sum(1 for _ in small_shapes())} shapes over F_2, {len(bad)} mismatches")
    assert not bad, bad


def test_criterion_4_completion(record):
    start = time.perf_counter()
    bad = []
    algebras = catalog.corpus()
    for bq in algebras:
        big = complete_gentle_closure(bq)
        added = len(big.arrows) - len(bq.arrows)
        if not check_complete_gentle(big):
            bad.append((bq.name, "not complete gentle"))
        if added != 2 * len(bq.vertices) - len(bq.arrows):
            bad.append((bq.name, f"added {added} arrows"))
        again = complete_gentle_closure(big)
        if again.arrows != big.arrows or again.relations != big.relations:
            bad.append((bq.name, "not idempotent"))
    elapsed = time.perf_counter() - start
    record(4, not bad and elapsed < 1, f"{len(algebras)} algebras, {len(bad)} problems, {elapsed:.2f}s")
    assert not bad, bad
    assert elapsed < 1


def test_criterion_5_degeneration_witness(record):
    rng = random.Random(5)
    bad = []
    trials = 0
    while trials < 20:
        l = rng.randint(1, 3)
        n = tuple(rng.randint(1, 3) for _ in range(l))
        seqs = all_rank_sequences(n)
        r = rng.choice(seqs)
        lower = [s for s in seqs if circular.leq(s, r)]
        rt = rng.choice(lower)
        trials += 1
        top = circular.degeneration_path(n, r, rt, 1)
        bottom = circular.degeneration_path(n, r, rt, 0)
        if not is_isomorphic(top, circular.build_M0(n, r)):
            bad.append((n, r, rt, "lambda=1"))
        if not is_isomorphic(bottom, circular.build_M0(n, rt)):
            bad.append((n, r, rt, "lambda=0"))
    record(5, not bad, f"{trials} pairs, {len(bad)} failures")
    assert not bad, bad


ROUND_TRIP_ALGEBRAS = [
    catalog.kronecker(),
    catalog.double_loop(),
    catalog.one_loop(),
    catalog.cyclic(2),
    catalog.cyclic(3),
    catalog.linear(3, "alternating"),
    catalog.linear(4, "none"),
]
LAMBDAS = (Fraction(1), Fraction(2), Fraction(-1), Fraction(3), Fraction(1, 2))


def _pieces(bq, budget, rng):
    """Random known indecomposables of total dimension at most ``budget``."""
    out = []
    while True:
        room = budget - sum(m.total_dim for m, _ in out)
        if room < 1 or (out and rng.random() < 0.3):
            break
        options = [("s", w) for w in enumerate_strings(bq, room)]
        options += [("b", b) for b in enumerate_bands(bq, room)]
        kind, word = rng.choice(options)
        if kind == "s":
            label = f"simple {word.vertex}" if not word.letters else f"string {word.text()}"
            out.append((string_module(word), label))
            continue
        size = word.dim_vector().total()
        mult = 2 if 2 * size <= room and rng.random() < 0.3 else 1
        lam = rng.choice(LAMBDAS)
        label = f"band {word.text()} lambda={lam}" + (f" mult={mult}" if mult > 1 else "")
        out.append((band_module(word, lam, mult), label))
    return out


def test_criterion_6_krull_schmidt_round_trip(record):
    rng = random.Random(6)
    start = time.perf_counter()
    bad = []
    for trial in range(50):
        bq = ROUND_TRIP_ALGEBRAS[trial % len(ROUND_TRIP_ALGEBRAS)]
        pieces = _pieces(bq, 8, rng)
        m = conjugate(direct_sum([p for p, _ in pieces]), seed=trial)
        expected = Counter(label for _, label in pieces)
        got = Counter()
        for s in decompose(m, seed=trial):
            got[identify(s.rep, seed=trial).text()] += s.multiplicity
        if got != expected:
            bad.append((bq.name, dict(expected), dict(got)))
    elapsed = time.perf_counter() - start
    record(6, not bad and elapsed < 120, f"50 sums, {len(bad)} mismatches, {elapsed:.1f}s")
    assert not bad, bad[:3]
    assert elapsed < 120


def stability_table():
    """(name, module, theta, expected status, expected witness)."""
    k = catalog.kronecker()
    c2 = catalog.cyclic(2)
    d11 = {"1": 1, "2": 1}
    generic = Representation(k, d11, {"a": [[1]], "b": [[3]]})
    zero = Representation.zero(k, d11)
    e01 = Representation(c2, {"0": 1, "1": 1}, {"a0": [[1]]})
    s1 = Representation.simple(k, "1")
    return [
        ("kronecker generic", generic, {"1": 1, "2": -1}, STABLE, None),
        ("kronecker zero maps", zero, {"1": 1, "2": -1}, UNSTABLE, {"1": 1, "2": 0}),
        ("kronecker theta=0", generic, {"1": 0, "2": 0}, SEMISTABLE, None),
        ("E_{0,1}", e01, {"0": 1, "1": -1}, STABLE, None),
        ("S_1", s1, {"1": 1, "2": -1}, UNSTABLE, None),
    ]


def test_criterion_7_stability_table(record):
    bad = []
    rows = stability_table()
    for name, m, theta, status, witness in rows:
        v = check_stability(m, theta)
        if v.status != status:
            bad.append((name, v.status))
        elif witness is not None and (v.witness is None or v.witness.entries != witness):
            bad.append((name, v.witness))
    record(7, not bad, f"{len(rows)} rows, {len(bad)} wrong")
    assert not bad, bad


def test_criterion_8_moduli_instances(record):
    start = time.perf_counter()
    bad = []
    k = catalog.kronecker()
    for m in (1, 2, 3):
        res = moduli_structure(k, {"1": m, "2": m}, {"1": 1, "2": -1})
        texts = [(ms.text(), ms.dimension) for _, ms, _ in res]
        if texts != [(f"P^{m}", m)]:
            bad.append((f"kronecker m={m}", texts))
    res = moduli_structure(catalog.cyclic(2), {"0": 1, "1": 1}, {"0": 1, "1": -1})
    texts = [ms.text() for _, ms, _ in res]
    if "point" not in texts:
        bad.append(("cyclic2 (1,1)", texts))
    res = moduli_structure(catalog.double_loop(), {"0": 2}, {"0": 0})
    texts = [ms.text() for _, ms, _ in res]
    if not texts or any(t != "point" for t in texts):
        bad.append(("double loop theta=0", texts))
    elapsed = time.perf_counter() - start
    record(8, not bad and elapsed < 60, f"5 instances, {len(bad)} wrong, {elapsed:.1f}s")
    assert not bad, bad
    assert elapsed < 60


def _random_descriptor(rng):
    """A random rank sequence (not necessarily maximal) on a random dimension vector."""
    bq = rng.choice([catalog.kronecker(), catalog.double_loop(), catalog.one_loop(), catalog.cyclic(2),
                     catalog.cyclic(3), catalog.linear(3, "alternating"), catalog.linear(4, "none")])
    pres = presentation(bq)
    d = {v: rng.randint(0, 3) for v in bq.vertices}
    if not any(d.values()):
        d[bq.vertices[0]] = 1
    if rng.random() < 0.5:
        return rng.choice(components(bq, d))
    q = pres.completion.quiver
    ranks = {}
    for cyc in pres.cycles:
        n = tuple(d[q.tail(a)] for a in cyc)
        seqs = [r for r in all_rank_sequences(n) if all(x == 0 for x, a in zip(r, cyc) if a in pres.zero)]
        ranks.update(zip(cyc, rng.choice(seqs)))
    return ComponentDescriptor(pres, d, tuple(ranks.items()))


def test_criterion_9_component_dimension_bound(record):
    rng = random.Random(9)
    bad = []
    equalities = 0
    for _ in range(100):
        c = _random_descriptor(rng)
        total = sum(x * x for x in c.dim.entries.values())
        dim = dim_component(c)
        all_zero = all(k == 0 for shape, r in c.cycle_data() for k in circular.defects(shape, r))
        if dim > total or (dim == total) != all_zero:
            bad.append((str(c), c.dim.entries, dim, total))
        equalities += dim == total
    record(9, not bad, f"100 descriptors, {equalities} equalities, {len(bad)} violations")
    assert not bad, bad[:3]


def test_criterion_10_prime_agreement(record):
    rng = random.Random(10)
    cases = [(m, theta) for _, m, theta, _, _ in stability_table()]
    k = catalog.kronecker()
    dl = catalog.double_loop()
    for _ in range(20):
        bq = rng.choice([k, dl])
        b = rng.choice(enumerate_bands(bq, 2))
        lam = rng.choice([x for x in range(-6, 7) if x])
        m = band_module(b, lam)
        theta = {"1": 1, "2": -1} if bq is k else {"0": 0}
        cases.append((m, theta))
    disagreements = 0
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        for m, theta in cases:
            v = check_stability(m, theta)
            if len(set(s for _, s in v.per_prime)) > 1:
                disagreements += 1
    sens = sum(1 for w in caught if issubclass(w.category, FieldSensitivity))
    ok = disagreements == 0 and sens == 0
    record(10, ok, f"{len(cases)} modules, {disagreements} disagreements, {sens} FieldSensitivity warnings")
    assert ok
