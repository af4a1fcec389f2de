"""One test per acceptance criterion; each prints a single PASS/FAIL line."""
import io
import random
import time
import tokenize
from fractions import Fraction
from pathlib import Path

import pytest

import gleafkit
import gleafkit.compository as cl
import gleafkit.suites as su
from gleafkit.counterexamples import (metric_horn_report, prob_triple_report, span_horn_report,
                                      topology_triple_report)
from gleafkit.gleaf import base_change_to_delta, delta_gleaf_to_compository
from gleafkit.metric import (MetricCompository, MetricGleaf, brute_force_extension_exists,
                             extension_exists, metric_compose)
from gleafkit.nerve import NerveCompository, category_battery, segal_unique
from gleafkit.probability import (ProbabilityCompository, ProbabilityGleaf, dist_compose,
                                  dist_glue, marginal, random_dist,
                                  random_extension)
from gleafkit.simplex import simplicial_identity_failures

from conftest import SESSION_START

COMPOSITORY_RUNS = (
    su.SuiteConfig("nerve", "compository", dims=3),
    su.SuiteConfig("spans", "compository", dims=3),
    su.SuiteConfig("metric", "compository", samples=500, seed=0, dims=4),
    su.SuiteConfig("probability", "compository", samples=500, seed=0, dims=3),
)


def _summary(results) -> str:
    return ", ".join(f"{r.instance}:{r.law}={r.samples}/{r.failure_count}" for r in results)


@pytest.fixture(scope="module")
def compository_results():
    start = time.perf_counter()
    results = [r for cfg in COMPOSITORY_RUNS for r in su.compository_suite(cfg)]
    return results, time.perf_counter() - start


def test_criterion_01_simplicial_identities(criterion):
    start = time.perf_counter()
    failures = simplicial_identity_failures(6)
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 1
    criterion(1, ok, f"{len(failures)} failures for n <= 6 in {elapsed:.3f}s")
    assert ok


def test_criterion_02_compository_axioms(criterion, compository_results):
    results, elapsed = compository_results
    axioms = [r for r in results if r.law in su.COMPOSITORY_AXIOMS]
    failed = sum(r.failure_count for r in axioms)
    covered = {(r.instance, r.law) for r in axioms if r.samples}
    ok = failed == 0 and len(covered) == 4 * len(su.COMPOSITORY_AXIOMS) and elapsed < 60
    criterion(2, ok, f"{failed} failures, {sum(r.samples for r in axioms)} equations, "
                     f"all laws {elapsed:.1f}s")
    assert ok, _summary(axioms)


def test_criterion_03_derived_laws(criterion, compository_results):
    results, elapsed = compository_results
    derived = [r for r in results if r.law in su.COMPOSITORY_DERIVED]
    failed = sum(r.failure_count for r in derived)
    covered = {(r.instance, r.law) for r in derived if r.samples}
    ok = failed == 0 and len(covered) == 4 * len(su.COMPOSITORY_DERIVED) and elapsed < 60
    criterion(3, ok, f"{failed} failures, {sum(r.samples for r in derived)} equations")
    assert ok, _summary(derived)


def test_criterion_04_facenot(criterion):
    nerve = su.FacenotScan()
    for _, cat in category_battery():
        c = cl.MemoCompository(NerveCompository(cat))
        scan = su.facenot_scan(c, cl.composable_pairs(c, 3))
        nerve.holds += scan.holds
        nerve.instances += scan.instances
    metric = su.facenot_scan(MetricCompository(),
                             su.random_pairs(MetricCompository(), 1000, 4, 0, "facenot"),
                             stop_at_first=True)
    ok = nerve.instances > 0 and nerve.all_hold and metric.first_violation is not None
    criterion(4, ok, f"nerve {nerve.holds}/{nerve.instances} hold; metric violation "
                     f"{'found' if metric.first_violation else 'not found'} "
                     f"after {metric.instances} face checks")
    assert ok


def test_criterion_05_segal_uniqueness(criterion):
    pairs = bad = 0
    for _, cat in category_battery(max_objects=4):
        assert len(cat.objects) <= 4 and len(cat.morphisms) <= 12
        c = NerveCompository(cat)
        for a, k, b in cl.composable_pairs(cl.MemoCompository(c), 3):
            pairs += 1
            bad += not segal_unique(c, a, k, b)
    ok = pairs > 0 and bad == 0
    criterion(5, ok, f"{pairs} composable pairs, {bad} without a unique filler")
    assert ok


def test_criterion_06_nokan(criterion):
    start = time.perf_counter()
    report = span_horn_report()
    elapsed = time.perf_counter() - start
    ok = report["certified"] and elapsed < 5
    criterion(6, ok, f"{report['spans_searched']} diamond 3-spans, {report['fillers']} fillers, "
                     f"{report['spans_matching_faces_0_1']} with both faces in {elapsed:.2f}s")
    assert ok


def test_criterion_07_gleaf_suite(criterion):
    runs = [su.SuiteConfig("metric", "gleaf", samples=200, dims=6),
            su.SuiteConfig("probability", "gleaf", samples=200, dims=5),
            su.SuiteConfig("relational", "gleaf", samples=200, dims=3),
            su.SuiteConfig("topology", "gleaf", dims=4)]
    results = [r for cfg in runs for r in su.gleaf_suite(cfg)]
    failed = sum(r.failure_count for r in results)
    required = {(d, n) for d in (1, 2, 3) for n in (1, 2, 3)}
    exhaustive = {(d, n) for d, cap in su.RELATIONAL_EXHAUSTIVE for n in range(1, cap + 1)}
    missing = sorted(required - exhaustive)
    ok = failed == 0 and not missing
    note = f"; relational not exhaustive for (domain, attributes) {missing}" if missing else ""
    criterion(7, ok, f"{failed} failures over {sum(r.samples for r in results)} equations{note}")
    assert failed == 0, _summary(results)
    assert not missing, f"relational gleaf laws only sampled for {missing}"


def test_criterion_08_round_trip(criterion):
    checks = [(ProbabilityCompository(), ProbabilityGleaf(), dist_compose, "probability"),
              (MetricCompository(), MetricGleaf(), metric_compose, "metric")]
    mismatches = 0
    for base, g, direct, tag in checks:
        via = delta_gleaf_to_compository(base_change_to_delta(g))
        for a, k, b in su.random_pairs(base, 200, 3, 0, f"round-trip:{tag}"):
            mismatches += via.compose(a, k, b) != direct(a, k, b)
    back = [r for inst in ("nerve", "spans")
            for r in su.gleaf_suite(su.SuiteConfig(inst, "gleaf"))]
    failed = sum(r.failure_count for r in back)
    ok = mismatches == 0 and failed == 0 and all(r.samples for r in back)
    criterion(8, ok, f"{mismatches}/400 composite mismatches; nerve and spans gleaf "
                     f"{failed} failures over {sum(r.samples for r in back)} equations")
    assert ok


def _oracle_disagreements(cases: int, seed: int) -> int:
    rng = random.Random(f"oracle:{seed}")
    grid = [Fraction(i, 2) for i in range(5)]
    bad = 0
    for _ in range(cases):
        n = rng.randint(2, 5)
        pairs = [(x, y) for x in range(n) for y in range(x + 1, n)]
        chosen = rng.sample(pairs, max(0, len(pairs) - rng.randint(0, 2)))
        data = {p: rng.choice(grid) for p in chosen}
        bad += extension_exists(data, range(n)) != brute_force_extension_exists(data, range(n))
    return bad


def test_criterion_09_counterexamples(criterion):
    horn = metric_horn_report()
    prob = prob_triple_report()
    top = topology_triple_report()
    oracle_bad = _oracle_disagreements(300, 0)
    ok = (horn["certified"] and oracle_bad == 0 and prob["certified"] and top["certified"]
          and top["topologies_checked"] == 29)
    criterion(9, ok, f"metric horn {horn['certified']} (oracle vs brute force: {oracle_bad}/300 "
                     f"disagree), prob triple {prob['certified']}, topology triple "
                     f"{top['certified']} over {top['topologies_checked']} topologies")
    assert ok


def _float_tokens() -> list[str]:
    hits = []
    for path in sorted(Path(gleafkit.__file__).parent.glob("*.py")):
        toks = tokenize.generate_tokens(io.StringIO(path.read_text()).readline)
        for tok in toks:
            is_float = tok.type == tokenize.NUMBER and any(ch in tok.string.lower() for ch in ".ej")
            if is_float or (tok.type == tokenize.NAME and tok.string == "float"):
                hits.append(f"{path.name}:{tok.start[0]} {tok.string}")
    return hits


def test_criterion_10_exactness_and_runtime(criterion):
    hits = _float_tokens()
    sums_bad = 0
    for seed in range(200):
        rng = random.Random(f"sum:{seed}")
        outcomes = tuple(range(rng.choice((2, 3))))
        pa = random_dist(("a", "b"), outcomes, rng)
        pb = random_extension(marginal(pa, ("b",)), ("b", "c"), rng)
        sums_bad += sum(dist_glue(pa, pb).w, Fraction(0)) != 1
    elapsed = time.perf_counter() - SESSION_START
    ok = not hits and sums_bad == 0 and elapsed < 120
    criterion(10, ok, f"{len(hits)} float tokens, {sums_bad}/200 glued sums off 1, "
                      f"session {elapsed:.1f}s")
    assert ok, hits
