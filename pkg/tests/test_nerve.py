import random
from itertools import product

import pytest
from hypothesis import given, strategies as st

from gleafkit.compository import composable_pairs
from gleafkit.errors import CompositionError, ValidationError
from gleafkit.nerve import (FinCategory, NerveCompository, NervePath, _monoids_up_to_iso,
                            _posets_up_to_iso, all_paths, category_battery, codiscrete,
                            nerve_act, nerve_compose, parallel_pair, segal_fillers, segal_unique)
from gleafkit.simplex import compose, degeneracy, face
from strategies import seeds


def test_face_composes_adjacent_arrows():
    cat = FinCategory.chain(2)
    p = NervePath((0, 1, 2), ("0->1", "1->2"))
    assert nerve_act(cat, p, face(1, 2)) == NervePath((0, 2), ("0->2",))
    assert nerve_act(cat, p, face(0, 2)) == NervePath((1, 2), ("1->2",))


def test_degeneracy_inserts_identity():
    cat = FinCategory.chain(1)
    p = NervePath((0, 1), ("0->1",))
    assert nerve_act(cat, p, degeneracy(0, 1)) == NervePath((0, 0, 1), ("0->0", "0->1"))


def test_compose_is_concatenation():
    a = NervePath(("a", "b", "c"), ("f", "g"))
    b = NervePath(("b", "c", "d"), ("g", "h"))
    assert nerve_compose(a, 1, b) == NervePath(("a", "b", "c", "d"), ("f", "g", "h"))
    with pytest.raises(CompositionError, match="terminal 2-face"):
        nerve_compose(a, 2, b)


def test_invalid_category_rejected():
    good = parallel_pair()
    comp = dict(good.comp)
    comp.pop(("u", "1_0"))
    with pytest.raises(ValidationError):
        FinCategory(good.objects, good.morphisms, good.identities, comp)


def test_poset_and_monoid_counts():
    # unlabeled posets on 1..4 points and monoids of order 1..3 up to isomorphism
    assert [len(_posets_up_to_iso(n)) for n in range(1, 5)] == [1, 2, 5, 16]
    assert [len(_monoids_up_to_iso(n)) for n in range(1, 4)] == [1, 2, 7]


def test_battery_fits_size_caps():
    cats = category_battery()
    assert all(len(cat.objects) <= 4 and len(cat.morphisms) <= 12 for _, cat in cats)


def test_path_counts_in_codiscrete():
    # one arrow between any two of 3 objects: 3 * 3**n paths of length n
    cat = codiscrete(3)
    assert [len(list(all_paths(cat, n))) for n in range(4)] == [3, 9, 27, 81]


def test_segal_on_chain():
    c = NerveCompository(FinCategory.chain(2))
    for a, k, b in composable_pairs(c, 3):
        assert segal_unique(c, a, k, b)
    a = NervePath((0, 1), ("0->1",))
    b = NervePath((1, 2), ("1->2",))
    assert segal_fillers(c, a, 0, b) == [NervePath((0, 1, 2), ("0->1", "1->2"))]


def test_json_round_trip():
    cat = parallel_pair()
    assert FinCategory.from_json(cat.to_json()) == cat
    p = NervePath((0, 1), ("u",))
    assert NervePath.from_json(p.to_json()) == p


@given(seeds(), st.integers(0, 3), st.integers(0, 3))
def test_extensions_have_requested_faces(seed, n, extra):
    c = NerveCompository(codiscrete(3))
    rng = random.Random(seed)
    f = rng.choice(c.simplices(n))
    up = c.extend_initial(f, n + extra, rng)
    down = c.extend_terminal(f, n + extra, rng)
    assert c.s(up, n) == f and c.t(down, n) == f


@given(seeds())
def test_act_is_functorial_on_a_monoid(seed):
    mult = {(g, f): (g + f) % 3 for g, f in product(range(3), repeat=2)}
    cat = FinCategory.from_monoid(range(3), mult, 0)
    rng = random.Random(seed)
    p = rng.choice(list(all_paths(cat, 3)))
    f1, f2 = face(rng.randint(0, 3), 3), face(rng.randint(0, 2), 2)
    assert nerve_act(cat, nerve_act(cat, p, f1), f2) == nerve_act(cat, p, compose(f1, f2))
