import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from gleafkit.errors import CompatibilityError, CompositionError, ValidationError
from gleafkit.jsonio import load
from gleafkit.probability import (Dist, JointExists, ProbabilityCompository, correlation_triple,
                                  deterministic_joint_exists, dist_compose, dist_glue, marginal,
                                  random_dist, random_extension, support_relation)
from strategies import seeds

HALF = Fraction(1, 2)


def _marg(d: dict, vars_, sub):
    out: dict = {}
    for key, x in d.items():
        k = tuple(key[vars_.index(v)] for v in sub)
        out[k] = out.get(k, 0) + x
    return out


def glue_oracle(pa: Dist, pb: Dist):
    """Conditional-independence gluing computed from dicts of assignments."""
    va, vb = list(pa.vars), list(pb.vars)
    shared = [v for v in va if v in vb]
    allv = sorted(set(va) | set(vb))
    da, db = pa.as_dict(nonzero=False), pb.as_dict(nonzero=False)
    dm = _marg(da, va, shared)
    out = {}
    for key in product(pa.outcomes, repeat=len(allv)):
        g = dict(zip(allv, key))
        den = dm[tuple(g[v] for v in shared)]
        num = da[tuple(g[v] for v in va)] * db[tuple(g[v] for v in vb)]
        out[key] = num / den if den else Fraction(0)
    return out


def test_weights_must_sum_to_one():
    with pytest.raises(ValidationError):
        Dist(("a",), (0, 1), (HALF, Fraction(1, 3)))
    with pytest.raises(ValidationError):
        Dist(("a",), (0, 1), (Fraction(3, 2), -HALF))


def test_marginal_of_correlated_pair():
    p = Dist.uniform_on(("a", "b"), (0, 1), [(0, 0), (1, 1)])
    assert marginal(p, ["a"]).w == (HALF, HALF)


def test_glue_with_disjoint_variables_is_the_product():
    p = Dist(("a",), (0, 1), (Fraction(1, 3), Fraction(2, 3)))
    q = Dist(("b",), (0, 1), (HALF, HALF))
    g = dist_glue(p, q)
    assert g.prob({"a": 1, "b": 0}) == Fraction(1, 3)


def test_glue_rejects_mismatched_marginals():
    p = Dist.uniform_on(("a", "b"), (0, 1), [(0, 0), (1, 1)])
    q = Dist.from_mapping(("b", "c"), (0, 1), {(0, 0): Fraction(1, 4), (1, 1): Fraction(3, 4)})
    with pytest.raises(CompatibilityError):
        dist_glue(p, q)


def test_correlation_chain_glues_through_middle():
    p, q, _ = correlation_triple()
    g = dist_glue(p, q)
    assert g.support() == {(0, 0, 0), (1, 1, 1)}


def test_anticorrelated_triple_has_no_joint():
    pieces = correlation_triple(anti=True)
    assert deterministic_joint_exists(pieces) is JointExists.NO
    assert deterministic_joint_exists(correlation_triple(anti=False)) is JointExists.YES


def test_support_relation_rows():
    p = Dist.uniform_on(("a", "b"), (0, 1), [(0, 1), (1, 0)])
    assert support_relation(p).rows == frozenset({(0, 1), (1, 0)})


def test_compose_rejects_mismatched_faces():
    p = Dist.uniform_on((0, 1), (0, 1), [(0, 0)])
    q = Dist.uniform_on((0, 1), (0, 1), [(1, 1)])
    with pytest.raises(CompositionError):
        dist_compose(p, 0, q)


def test_float_json_rejected():
    with pytest.raises(ValidationError, match="floating-point"):
        load('{"vars": ["a"], "outcomes": [0, 1], "w": {"0": 0.5, "1": 0.5}}')


@given(seeds(), st.integers(1, 3), st.integers(0, 2), st.sampled_from([2, 3]))
def test_glue_matches_oracle(seed, na, extra, r):
    rng = random.Random(seed)
    outs = tuple(range(r))
    pa = random_dist(range(na), outs, rng)
    shared = [v for v in range(na) if rng.randrange(2)]
    pb = random_extension(marginal(pa, shared), shared + [10 + i for i in range(extra)], rng)
    g = dist_glue(pa, pb)
    assert g.as_dict(nonzero=False) == glue_oracle(pa, pb)
    assert sum(g.w) == 1
    assert marginal(g, pa.vars) == pa and marginal(g, pb.vars) == pb


@given(seeds(), st.integers(0, 3), st.integers(0, 3))
def test_compose_recovers_faces(seed, m, n):
    c = ProbabilityCompository((0, 1))
    rng = random.Random(seed)
    k = rng.randint(0, min(m, n))
    a = c.sample(m, rng)
    b = c.extend_initial(c.t(a, k), n, rng)
    ab = c.compose(a, k, b)
    assert c.s(ab, m) == a and c.t(ab, n) == b
    assert sum(ab.w) == 1


@given(seeds())
def test_json_round_trip(seed):
    p = random_dist(("x", "y"), (0, 1, 2), random.Random(seed))
    assert Dist.from_json(p.to_json()) == p
