import random
from itertools import permutations
from math import comb

import pytest
from hypothesis import given, strategies as st

import gleafkit.gleaf as gl
from gleafkit.errors import CompatibilityError, ValidationError
from gleafkit.finset import FinMap
from gleafkit.metric import MetricCompository, MetricGleaf, metric_compose, random_metric
from gleafkit.probability import Dist, ProbabilityGleaf
from gleafkit.simplex import all_monotone_maps
from gleafkit.topology import FinTopology, TopologyGleaf
from strategies import seeds


def test_finset_bicovering_must_cover():
    with pytest.raises(ValidationError):
        gl.FinSetBicovering(FinMap.inclusion([0], [0, 1, 2]), FinMap.inclusion([1], [0, 1, 2]))


def test_delta_bicovering_overlap():
    cover = gl.DeltaBicovering(2, 2, 3)
    assert cover.k == 1
    assert cover.a_leg.values == (0, 1, 2) and cover.b_leg.values == (1, 2, 3)
    with pytest.raises(ValidationError):
        gl.DeltaBicovering(1, 1, 3)


@pytest.mark.parametrize("system", [gl.FINSET, gl.DELTA], ids=["finset", "delta"])
def test_bicovering_systems_satisfy_their_laws(system):
    assert gl.check_bicovering_system(system) == []


def test_checker_catches_a_system_without_maximal_covers():
    broken = lambda a, b: gl.FINSET.is_bicovering(a, b) and len(a.domain) < len(a.codomain)
    assert any("maximal" in f for f in gl.check_bicovering_system(gl.FINSET, broken))


def _finset_covers(max_size):
    for n in range(max_size + 1):
        yield from gl.subset_covers(tuple(range(n)))


def test_right_inverse_iff_surjective_on_overlap_finset():
    covers = list(_finset_covers(2))
    seen = 0
    for src in covers:
        for tgt in covers:
            for q in gl.FINSET.arrows(src.C, tgt.C):
                try:
                    morph = gl.BicoveringMorphism(src, tgt, q)
                except ValidationError:
                    continue
                seen += 1
                assert morph.has_right_inverse() == morph.is_surjective_on_overlap()
    assert seen > 100


def test_right_inverse_iff_surjective_on_overlap_delta():
    covers = list(gl.delta_covers(2))
    seen = 0
    for src in covers:
        for tgt in covers:
            for q in all_monotone_maps(src.j, tgt.j):
                try:
                    morph = gl.BicoveringMorphism(src, tgt, q)
                except ValidationError:
                    continue
                seen += 1
                assert morph.has_right_inverse() == morph.is_surjective_on_overlap()
    assert seen > 20


@pytest.mark.parametrize("n", range(5))
def test_canonical_covers_are_one_per_orbit(n):
    pts = tuple(range(n))
    canon = list(gl.canonical_subset_covers(pts))
    assert len(canon) == comb(n + 2, 2)

    def key(cover):
        return min(tuple(sorted((s[p] for p in cover.A))) + ("|",) + tuple(sorted(s[p] for p in cover.B))
                   for s in map(lambda perm: dict(zip(pts, perm)), permutations(pts)))

    assert {key(c) for c in canon} == {key(c) for c in gl.subset_covers(pts)}
    assert len({key(c) for c in canon}) == len(canon)


def test_morphisms_into_a_cover_are_valid():
    cover = gl.FinSetBicovering.of_subsets([0, 1], [1, 2])
    morphs = gl.finset_morphisms_into(cover, random.Random(0), 6)
    assert morphs[0].q == FinMap.identity(cover.C)
    assert all(m.is_valid and m.target == cover for m in morphs)


def test_memo_gleaf_caches_incompatibility():
    g = gl.MemoGleaf(TopologyGleaf())
    cover = gl.FinSetBicovering.of_subsets("xy", "xy")
    a, b = FinTopology.discrete("xy"), FinTopology.indiscrete("xy")
    for _ in range(2):
        with pytest.raises(CompatibilityError):
            g.glue(cover, a, b)


@given(seeds(), st.integers(0, 3), st.integers(0, 3))
def test_metric_delta_gleaf_composes_like_metric_compose(seed, m, n):
    rng = random.Random(seed)
    c = MetricCompository()
    k = rng.randint(0, min(m, n))
    a = c.sample(m, rng)
    b = c.extend_initial(c.t(a, k), n, rng)
    glued = gl.delta_gleaf_to_compository(gl.base_change_to_delta(MetricGleaf()))
    assert glued.compose(a, k, b) == metric_compose(a, k, b)


@given(seeds())
def test_finset_laws_on_random_metric_pairs(seed):
    rng = random.Random(seed)
    g = MetricGleaf()
    cover = gl.FinSetBicovering.of_subsets([0, 1, 2], [2, 3])
    x = random_metric([0, 1, 2], rng)
    y = g.extend(g.restrict(x, FinMap.inclusion([2], [0, 1, 2])), FinMap.inclusion([2], [2, 3]), rng)
    assert gl.check_recover(g, cover, x, y)
    inner = FinMap.inclusion([0, 1], [0, 1, 2])
    assert gl.check_gleaf_back_forth(g, cover, inner, g.restrict(x, inner), y)
    assert gl.check_two_step_gleaf(g, cover, inner, g.restrict(x, inner), y)
    for morph in gl.finset_morphisms_into(cover, rng, 3):
        assert gl.check_partial_naturality(g, morph, x, y)


def test_identity_law_on_a_probability_example():
    g = ProbabilityGleaf()
    x = Dist.uniform_on(("a", "b"), (0, 1), [(0, 0), (1, 1)])
    y = Dist.uniform_on(("b",), (0, 1), [(0,), (1,)])
    cover = gl.FinSetBicovering.of_subsets("ab", "b")
    assert gl.check_gleaf_identity(g, cover, x, y)
    assert g.glue(cover, x, y) == x
