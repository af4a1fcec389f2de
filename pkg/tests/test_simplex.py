from math import comb

import pytest
from hypothesis import given

from gleafkit.errors import CompositionError, DomainError, ValidationError
from gleafkit.simplex import (MonotoneMap, all_monotone_maps, compose, compose_all, degeneracy,
                              face, generator_factorization, identity,
                              simplicial_identity_failures, source_incl, target_incl)
from strategies import monotone_maps


def test_face_and_degeneracy_values():
    assert face(1, 3).values == (0, 2, 3)
    assert face(3, 3).values == (0, 1, 2)
    assert degeneracy(0, 2).values == (0, 0, 1, 2)
    assert degeneracy(2, 2).values == (0, 1, 2, 2)


def test_source_and_target_inclusions():
    assert source_incl(1, 3).values == (0, 1)
    assert target_incl(1, 3).values == (2, 3)
    assert source_incl(1, 3) == compose(face(3, 3), face(2, 2))
    assert target_incl(1, 3) == compose(face(0, 3), face(0, 2))


def test_identities_hold_up_to_six():
    assert simplicial_identity_failures(6) == []


@pytest.mark.parametrize("m,n", [(m, n) for m in range(5) for n in range(5)])
def test_monotone_map_count(m, n):
    # maps [m] -> [n] are multisets of size m+1 from n+1 values
    assert len(list(all_monotone_maps(m, n))) == comb(n + m + 1, m + 1)


def test_rejects_non_monotone():
    with pytest.raises(ValidationError):
        MonotoneMap(1, 2, (2, 1))
    with pytest.raises(ValidationError):
        MonotoneMap(1, 2, (0, 3))


def test_out_of_range_generators():
    with pytest.raises(DomainError):
        face(4, 3)
    with pytest.raises(DomainError):
        degeneracy(3, 2)
    with pytest.raises(CompositionError):
        compose(face(0, 2), face(0, 3))


@given(monotone_maps())
def test_factorization_recomposes(f):
    parts = generator_factorization(f)
    assert compose_all(*parts) == f


@given(monotone_maps(), monotone_maps())
def test_composition_is_associative_when_defined(f, g):
    h = identity(g.cod)
    if f.cod == g.dom:
        assert compose(h, compose(g, f)) == compose(compose(h, g), f)


@given(monotone_maps())
def test_json_round_trip(f):
    assert MonotoneMap.from_json(f.to_json()) == f
