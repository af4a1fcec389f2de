import random
from itertools import product

import pytest
from hypothesis import given, strategies as st

from gleafkit.errors import CompositionError, ValidationError
from gleafkit.nerve import NervePath
from gleafkit.simplex import face
from gleafkit.spans import (FinLattice, NSpan, SpanCompository, all_spans, chain_lattice,
                            diamond, horn_filler_search, horn_is_compatible, intervals,
                            lattice_path, nerve_to_spans, nokan_horn, span_act, span_compose)
from strategies import seeds


def test_diamond_meets_and_joins():
    lat = diamond()
    assert lat.meet("alpha", "beta") == "top"
    assert lat.join("alpha", "beta") == "bot"
    assert lat.leq("top", "bot")


def test_non_lattice_rejected():
    # two incomparable maximal elements have no join
    with pytest.raises(ValidationError):
        FinLattice(("a", "b", "c"), [("a", "b"), ("a", "c")])


@pytest.mark.parametrize("lat_name,n", [("chain1", 1), ("chain1", 2), ("diamond", 1),
                                        ("diamond", 2), ("chain2", 2)])
def test_span_enumeration_matches_brute_force(lat_name, n):
    lat = {"chain1": chain_lattice(1), "chain2": chain_lattice(2), "diamond": diamond()}[lat_name]
    brute = set()
    for vals in product(lat.elements, repeat=len(intervals(n))):
        try:
            brute.add(NSpan(n, vals).validate(lat))
        except ValidationError:
            pass
    assert set(all_spans(lat, n)) == brute


def test_compose_takes_meet_in_the_corner():
    lat = diamond()
    a = NSpan.from_mapping(1, {(0, 0): "bot", (0, 1): "alpha", (1, 1): "bot"})
    b = NSpan.from_mapping(1, {(0, 0): "bot", (0, 1): "beta", (1, 1): "bot"})
    ab = span_compose(lat, a, 0, b)
    assert ab[(0, 2)] == "top" and ab[(0, 1)] == "alpha" and ab[(1, 2)] == "beta"
    with pytest.raises(CompositionError):
        span_compose(lat, a, 1, b)


def test_nokan_horn_is_compatible_without_filler():
    faces = nokan_horn()
    assert horn_is_compatible(faces)
    assert horn_filler_search(diamond(), faces) is None


def test_first_two_faces_already_unfillable():
    faces = nokan_horn()
    lat = diamond()
    hits = [s for s in all_spans(lat, 3)
            if span_act(s, face(0, 3)) == faces[0] and span_act(s, face(1, 3)) == faces[1]]
    assert hits == []


def _chain(lat, rng, n, up=True):
    xs = [rng.choice(lat.elements)]
    for _ in range(n):
        xs.append(rng.choice([y for y in lat.elements
                              if (lat.leq(xs[-1], y) if up else lat.leq(y, xs[-1]))]))
    return xs


@given(seeds(), st.integers(0, 2), st.integers(0, 2), st.sampled_from(["p", "pbar"]))
def test_embedding_preserves_composition(seed, m, n, variant):
    lat = diamond()
    rng = random.Random(seed)
    k = rng.randint(0, min(m, n))
    xs = _chain(lat, rng, m + n - k, up=(variant == "p"))
    a, b = lattice_path(xs[: m + 1]), lattice_path(xs[m - k:])
    ab = lattice_path(xs)
    assert span_compose(lat, nerve_to_spans(lat, a, variant), k,
                        nerve_to_spans(lat, b, variant)) == nerve_to_spans(lat, ab, variant)


def test_embedding_rejects_wrong_direction():
    with pytest.raises(ValidationError):
        nerve_to_spans(diamond(), NervePath(("bot", "top"), ("bot->top",)), "p")


@given(seeds())
def test_json_round_trip(seed):
    c = SpanCompository(diamond())
    s = c.sample(2, random.Random(seed))
    assert NSpan.from_json(s.to_json()) == s
    assert FinLattice.from_json(diamond().to_json()) == diamond()
