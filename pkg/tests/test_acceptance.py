"""Acceptance criteria, one test per criterion, each printing a PASS/FAIL line."""

import random
import time
from fractions import Fraction
from itertools import combinations

from conftest import CRITERIA, DATA, INSTANCES, load_tsv, random_skew
from pfholant.exact_algebra import (
    SkewMatrix,
    determinant,
    pfaffian,
    pfaffian_sum_expansion,
    sub_pfaffian,
    tilde,
)
from pfholant.fileformat import read
from pfholant.forests import (
    SimpleGraph,
    brute_force_forests,
    count_rooted_spanning_forests,
    forest_determinants,
)
from pfholant.generate import fuzz_corpus, random_multigraph
from pfholant.holant import assemble, brute_force_contraction, brute_force_sat, count, emit_matrix
from pfholant.planar import build_curve, c_order, crossing_number, validate_order
from pfholant.signatures import (
    BasisChange,
    builtin_equality,
    builtin_nae,
    realize,
    transform_generator,
    transform_recognizer,
)

B2 = BasisChange.b2()
FUZZ_SEED = 2024


def record(key, ok, detail):
    CRITERIA[key] = (ok, detail)
    print(f"criterion {key}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


def run_example(name, want, alpha, beta):
    start = time.perf_counter()
    holo = read(INSTANCES / name)
    report = count(holo.instance, holo.basis, order=holo.order)
    elapsed = time.perf_counter() - start
    got = (report.count, report.alpha, report.beta)
    ok = got == (want, alpha, beta) and report.count.denominator == 1 and elapsed < 1.0
    return ok, f"count={report.count} alpha={report.alpha} beta={report.beta} time={elapsed:.3f}s"


def test_criterion_1_example_one():
    ok, detail = run_example("example1.holo", 26, 2 ** 6, Fraction(3, 4) ** 4)
    record(1, ok, detail)


def test_criterion_2_example_two():
    ok, detail = run_example("example2.holo", 14, 2 ** 5, Fraction(3, 4) ** 4)
    record(2, ok, detail)


def test_criterion_3_matrix_regression():
    mismatches = {}
    for k in (1, 2):
        holo = read(INSTANCES / f"example{k}.holo")
        m = emit_matrix(assemble(holo.instance, holo.basis, order=holo.order))
        want = load_tsv(DATA / f"example{k}_matrix.tsv")
        bad = [(i + 1, j + 1) for i in range(12) for j in range(12) if m[i, j] != want[i][j]]
        mismatches[k] = bad
    ok = not any(mismatches.values())
    detail = "; ".join(
        f"example {k}: " + ("entrywise equal" if not bad else f"differs at (row, col) {bad}")
        for k, bad in mismatches.items()
    )
    record(3, ok, detail)


def test_criterion_4_oracle_fuzz():
    start = time.perf_counter()
    corpus = fuzz_corpus(FUZZ_SEED, 200, max_edges=20)
    failures = []
    for k, inst in enumerate(corpus):
        assert len(inst.edges) % 2 == 0 and len(inst.edges) <= 20
        c = count(inst, B2).count
        a = brute_force_contraction(inst)
        s = brute_force_sat(inst)
        if not c == a == s:
            failures.append((k, c, a, s))
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 300
    record(4, ok, f"{len(corpus)} instances, {len(failures)} disagreements, {elapsed:.1f}s")


def test_criterion_5_algebra_properties():
    rng = random.Random(5)
    failures = 0
    for _ in range(500):
        n = rng.randint(0, 8)
        z, y = random_skew(rng, n), random_skew(rng, n)
        if pfaffian(z) ** 2 != determinant(z.rows):
            failures += 1
        if pfaffian(z + y) != pfaffian_sum_expansion(z, y):
            failures += 1
        everything = set(range(n))
        pairing = sum(
            (sub_pfaffian(z, idx) * sub_pfaffian(y, sorted(everything - set(idx)))
             for k in range(0, n + 1, 2) for idx in combinations(range(n), k)),
            Fraction(0),
        )
        if pairing != pfaffian(tilde(z) + y):
            failures += 1
    record(5, failures == 0, f"500 random pairs, {failures} identity failures")


def upper(d, value):
    return SkewMatrix.from_upper(d, {(i, j): value for i, j in combinations(range(d), 2)})


def test_criterion_6_signature_goldens():
    checks = {}
    for d in range(1, 7):
        got = transform_generator(builtin_equality(d), B2).coefficients
        checks[f"EQ_{d}"] = got == tuple(2 if bin(e).count("1") % 2 == 0 else 0 for e in range(1 << d))
    checks["NAE_3"] = transform_generator(builtin_nae(3), B2).by_size() == (6, 0, 0, 0, -2, -2, -2, 0)
    eq2 = realize(transform_generator(builtin_equality(2), B2))
    checks["realize EQ_2"] = (eq2.matrix, eq2.scale) == (upper(2, 1), 2)
    nae3 = realize(transform_recognizer(builtin_nae(3), B2))
    checks["realize NAE_3"] = (nae3.matrix, nae3.scale) == (upper(3, Fraction(-1, 3)), Fraction(6, 2 ** 3))
    eq4 = realize(transform_generator(builtin_equality(4), B2))
    checks["realize EQ_4"] = (eq4.matrix, eq4.scale) == (upper(4, 1), 2)
    bad = [k for k, v in checks.items() if not v]
    record(6, not bad, f"{len(checks)} goldens, failing: {bad or 'none'}")


def test_criterion_7_ordering_suite():
    order = [str(k) for k in range(1, 13)]
    fig = [("1", "2"), ("3", "6"), ("4", "5"), ("7", "8"), ("9", "12"), ("10", "11")]
    worked = [("1", "9"), ("2", "7"), ("3", "5"), ("4", "6"), ("8", "10")]
    goldens = crossing_number(worked, order) == 2 and crossing_number(fig, order) == 0

    corpus = fuzz_corpus(FUZZ_SEED, 200, max_edges=20)
    validated = invalid = 0
    variant_failures = 0
    for inst in corpus:
        curve = build_curve(inst)
        if len(inst.edges) <= 16:
            validated += 1
            if validate_order(inst, c_order(curve)) is not None:
                invalid += 1
        base = count(inst, B2).count
        for start in curve.crossings:
            for rev in (False, True):
                if count(inst, B2, start_edge=start, reverse=rev).count != base:
                    variant_failures += 1
    ok = goldens and invalid == 0 and variant_failures == 0
    record(7, ok, f"cr goldens {'ok' if goldens else 'wrong'}; {validated} orders certified, "
                  f"{invalid} invalid; {variant_failures} start/orientation disagreements")


def test_criterion_8_forests():
    k2 = SimpleGraph(("a", "b"), (("a", "b"),))
    k3 = SimpleGraph(("a", "b", "c"), (("a", "b"), ("b", "c"), ("c", "a")))
    # goldens confirmed by enumeration before the determinant is compared
    goldens = brute_force_forests(k2) == 3 and brute_force_forests(k3) == 16
    rng = random.Random(8)
    graphs = [k2, k3] + [random_multigraph(rng, max_vertices=7, max_edges=12) for _ in range(100)]
    failures = 0
    for g in graphs:
        edge_form, vertex_form = forest_determinants(g)
        if edge_form != vertex_form or count_rooted_spanning_forests(g) != brute_force_forests(g):
            failures += 1
    ok = goldens and failures == 0
    record(8, ok, f"{len(graphs)} graphs, K2/K3 goldens {'ok' if goldens else 'wrong'}, {failures} failures")


def test_criterion_9_scaling():
    rng = random.Random(9)
    failures = 0
    corpus = fuzz_corpus(FUZZ_SEED + 1, 20, max_edges=20)
    for inst in corpus:
        base = count(inst, B2).count
        for lam in (Fraction(2), Fraction(-1), Fraction(1, 3)):
            v = rng.choice(inst.vertices)
            scaled = inst.with_signature(v, inst.signature(v).scaled(lam))
            if count(scaled, B2).count != lam * base:
                failures += 1
    record(9, failures == 0, f"{len(corpus)} instances x 3 factors, {failures} failures")
