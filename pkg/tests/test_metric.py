import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from gleafkit.errors import CompatibilityError, CompositionError, ValidationError
from gleafkit.extended import INF
from gleafkit.metric import (FiniteMetric, MetricCompository, MetricGleaf,
                             brute_force_extension_exists, extension_exists,
                             find_unfillable_horn, horn_union_data, metric_compose, metric_glue,
                             random_extension, random_metric, shortest_path_closure)
from gleafkit.simplex import face
from strategies import halves, seeds


def line(*gaps, start=0):
    """Points start, start+1, ... on a line with the given consecutive gaps."""
    pts = list(range(start, start + len(gaps) + 1))
    pos = [Fraction(0)]
    for g in gaps:
        pos.append(pos[-1] + Fraction(g))
    return FiniteMetric.from_dict(pts, {(x, y): abs(pos[i] - pos[j]) for i, x in enumerate(pts)
                                        for j, y in enumerate(pts)})


def test_triangle_inequality_enforced():
    with pytest.raises(ValidationError, match="triangle"):
        FiniteMetric.from_dict((0, 1, 2), {(0, 1): 1, (1, 2): 1, (0, 2): 3})


def test_pseudometric_allowed():
    m = FiniteMetric.from_dict((0, 1), {(0, 1): 0})
    assert m.dist(0, 1) == 0


def test_glue_routes_through_overlap():
    a = line(1)                 # points 0, 1
    b = line(2, start=1)        # points 1, 2
    g = metric_glue(a, b)
    assert g.dist(0, 2) == 3
    disjoint = metric_glue(line(1), line(1, start=5))
    assert disjoint.dist(0, 5) is INF


def test_glue_requires_agreement():
    with pytest.raises(CompatibilityError):
        metric_glue(line(1, 1), line(2, start=1))


def test_compose_on_shared_edge():
    a = line(1, 2)              # [2]
    b = line(2, Fraction(1, 2))  # [2]; its first edge is A's last edge
    ab = metric_compose(a, 1, b)
    assert ab.dist(0, 3) == Fraction(7, 2)
    with pytest.raises(CompositionError):
        metric_compose(a, 1, line(1, 1))


def test_closure_of_a_path():
    d = shortest_path_closure((0, 1, 2), {(0, 1): Fraction(1), (1, 2): Fraction(3, 2)}, True)
    assert d[0][2] == Fraction(5, 2) and d[2][0] == Fraction(5, 2)


@st.composite
def partial_data(draw):
    n = draw(st.integers(2, 5))
    pairs = [(x, y) for x in range(n) for y in range(x + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True,
                           min_size=max(0, len(pairs) - 3), max_size=len(pairs)))
    return n, {p: draw(halves(2)) for p in chosen}


@given(partial_data())
def test_closure_oracle_matches_brute_force(case):
    n, data = case
    assert extension_exists(data, range(n)) == brute_force_extension_exists(data, range(n))


def test_unfillable_horn_is_certified_both_ways():
    faces = find_unfillable_horn(seed=0)
    assert set(faces) == {0, 1, 3}
    data = horn_union_data(faces)
    assert not extension_exists(data, range(4))
    assert not brute_force_extension_exists(data, range(4))


@given(seeds(), st.integers(1, 5))
def test_random_metrics_validate(seed, n):
    m = random_metric(range(n), random.Random(seed))
    assert FiniteMetric(m.points, m.d, m.symmetric) == m


@given(seeds(), st.integers(1, 3), st.integers(1, 3))
def test_extension_restricts_back(seed, n, extra):
    rng = random.Random(seed)
    x = random_metric(range(n), rng)
    y = random_extension(x, range(n + extra), rng)
    assert metric_glue(x, y) == y


@given(seeds())
def test_compository_faces_of_composite(seed):
    c = MetricCompository()
    rng = random.Random(seed)
    a = c.sample(2, rng)
    b = c.extend_initial(c.t(a, 1), 2, rng)
    ab = c.compose(a, 1, b)
    assert c.act(ab, face(3, 3)) == a
    assert c.act(ab, face(0, 3)) == b


@given(seeds())
def test_json_round_trip(seed):
    m = random_metric(range(4), random.Random(seed))
    assert FiniteMetric.from_json(m.to_json()) == m
    assert MetricGleaf().to_json(m) == m.to_json()
