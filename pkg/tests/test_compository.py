import random
from itertools import product

import pytest
from hypothesis import given

import gleafkit.compository as cl
from gleafkit.errors import DomainError
from gleafkit.metric import MetricCompository
from gleafkit.nerve import FinCategory, NerveCompository, NervePath
from gleafkit.spans import SpanCompository, chain_lattice
from strategies import seeds


@pytest.fixture(scope="module")
def nerve2():
    return NerveCompository(FinCategory.chain(2))


@pytest.fixture(scope="module")
def spans1():
    return SpanCompository(chain_lattice(1))


def _brute_pairs(c, top):
    out = []
    for m, n in product(range(top + 1), repeat=2):
        for k in range(min(m, n) + 1):
            if m + n - k > top:
                continue
            for a, b in product(c.simplices(m), c.simplices(n)):
                if c.t(a, k) == c.s(b, k):
                    out.append((a, k, b))
    return out


def test_composable_pairs_match_brute_force(nerve2):
    fast = list(cl.composable_pairs(nerve2, 3))
    assert sorted(map(repr, fast)) == sorted(map(repr, _brute_pairs(nerve2, 3)))


def test_composable_triples_match_brute_force(spans1):
    top = 2
    fast = {repr(t) for t in cl.composable_triples(spans1, top)}
    slow = set()
    for a, j, b in _brute_pairs(spans1, top):
        for n in range(top + 1):
            for k in range(min(spans1.dim(b), n) + 1):
                for cc in spans1.simplices(n):
                    total = spans1.dim(a) + spans1.dim(b) + n - j - k
                    if spans1.t(b, k) == spans1.s(cc, k) and total <= top:
                        slow.add(repr((a, j, b, k, cc)))
    assert fast == slow


@pytest.mark.parametrize("which", ["nerve", "spans"])
def test_every_law_on_small_pairs(which, nerve2, spans1):
    c = nerve2 if which == "nerve" else spans1
    for a, k, b in cl.composable_pairs(c, 3):
        for law, eqs in cl.pair_equations(c, a, k, b).items():
            for label, lhs, rhs in eqs():
                assert lhs == rhs, (law, label)
    for n in range(3):
        for a in c.simplices(n):
            for law, eqs in cl.single_equations(c, a).items():
                assert all(lhs == rhs for _, lhs, rhs in eqs()), law
            assert all(lhs == rhs for _, lhs, rhs in cl.generator_functoriality_equations(c, a))


def test_associativity_on_small_triples(spans1):
    for a, j, b, k, cc in cl.composable_triples(spans1, 3):
        assert cl.check_associativity(spans1, a, j, b, k, cc)


def test_memo_agrees_with_inner(nerve2):
    memo = cl.MemoCompository(nerve2)
    for a, k, b in cl.composable_pairs(nerve2, 2):
        assert memo.compose(a, k, b) == nerve2.compose(a, k, b)
        assert memo.compose(a, k, b) == memo.compose(a, k, b)


class _SwappedTail(NerveCompository):
    """Concatenation with the last two arrows swapped: still a path in a monoid,
    but the terminal face no longer recovers B."""

    def compose(self, a, k, b):
        out = super().compose(a, k, b)
        if out.length < 2:
            return out
        arrows = out.arrows[:-2] + (out.arrows[-1], out.arrows[-2])
        return NervePath(out.objects, arrows)


def test_a_broken_composition_is_caught():
    mult = {(x, y): (x + y) % 2 for x in range(2) for y in range(2)}
    c = _SwappedTail(FinCategory.from_monoid(range(2), mult, 0))
    failures = [(a, k, b) for a, k, b in cl.composable_pairs(c, 3)
                if not cl.check_source_target(c, a, k, b)]
    assert failures


@given(seeds())
def test_random_pairs_are_composable(seed):
    c = MetricCompository()
    a, k, b = cl.random_pair(c, 3, random.Random(seed))
    assert cl.is_k_composable(c, a, k, b)


@given(seeds())
def test_random_triples_are_composable(seed):
    c = MetricCompository()
    a, j, b, k, cc = cl.random_triple(c, 3, random.Random(seed))
    assert c.t(a, j) == c.s(b, j) and c.t(b, k) == c.s(cc, k)


def test_composability_rejects_bad_index(nerve2):
    a = nerve2.simplices(1)[0]
    with pytest.raises(DomainError):
        cl.is_k_composable(nerve2, a, 2, a)
