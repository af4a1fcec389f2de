"""Compositories: simplicial sets with a dimension-raising composition.

A concrete compository subclasses :class:`Compository` and supplies the right
action ``act(A, f)`` of monotone maps, the composition ``compose(A, k, B)``
and ways of producing simplices (enumeration or seeded sampling).

Each law is written as a generator of ``(label, lhs, rhs)`` triples.  The
``check_*`` functions return ``True`` iff every triple has ``lhs == rhs``; the
suite harness uses the same generators to record failing instances.
"""
from __future__ import annotations

import random
from abc import ABC, abstractmethod
from typing import Any, Callable, Hashable, Iterable, Iterator

from .errors import CompositionError, DomainError
from .simplex import (
    MonotoneMap,
    all_monotone_maps,
    compose,
    degeneracy,
    face,
    generator_factorization,
    identity,
    source_incl,
    target_incl,
)

Simplex = Hashable
Equation = tuple[str, Any, Any]


class Compository(ABC):
    """Abstract compository.  Simplices are immutable, hashable values."""

    name = "compository"

    @abstractmethod
    def dim(self, a: Simplex) -> int:
        """Dimension of a simplex."""

    @abstractmethod
    def act(self, a: Simplex, f: MonotoneMap) -> Simplex:
        """The right action ``A f`` for ``f : [m] -> [dim A]``."""

    @abstractmethod
    def compose(self, a: Simplex, k: int, b: Simplex) -> Simplex:
        """``A o_k B``; raises :class:`CompositionError` unless k-composable."""

    # -- simplex production; instances override what they can support --

    def simplices(self, n: int) -> Iterable[Simplex]:
        raise NotImplementedError(f"{self.name} does not enumerate simplices")

    def sample(self, n: int, rng: random.Random) -> Simplex:
        return rng.choice(list(self.simplices(n)))

    def extend_initial(self, face_: Simplex, n: int, rng: random.Random) -> Simplex:
        """A random ``n``-simplex whose initial face is ``face_``."""
        k = self.dim(face_)
        cands = [b for b in self.simplices(n) if self.act(b, source_incl(k, n)) == face_]
        return rng.choice(cands)

    def extend_terminal(self, face_: Simplex, n: int, rng: random.Random) -> Simplex:
        """A random ``n``-simplex whose terminal face is ``face_``."""
        k = self.dim(face_)
        cands = [b for b in self.simplices(n) if self.act(b, target_incl(k, n)) == face_]
        return rng.choice(cands)

    def to_json(self, a: Simplex) -> Any:
        return repr(a)

    # -- convenience wrappers for the common face inclusions --

    def s(self, a: Simplex, k: int) -> Simplex:
        return self.act(a, source_incl(k, self.dim(a)))

    def t(self, a: Simplex, k: int) -> Simplex:
        return self.act(a, target_incl(k, self.dim(a)))

    def d(self, a: Simplex, i: int) -> Simplex:
        return self.act(a, face(i, self.dim(a)))

    def eta(self, a: Simplex, i: int) -> Simplex:
        return self.act(a, degeneracy(i, self.dim(a)))


def is_k_composable(c: Compository, a: Simplex, k: int, b: Simplex) -> bool:
    """Whether the terminal ``k``-face of ``a`` equals the initial ``k``-face of ``b``."""
    if not 0 <= k <= min(c.dim(a), c.dim(b)):
        raise DomainError(f"k={k} out of range for dimensions {c.dim(a)}, {c.dim(b)}")
    return c.t(a, k) == c.s(b, k)


# ---------------------------------------------------------------- laws ----


def functoriality_equations(c: Compository, a: Simplex, max_dim: int = 4) -> Iterator[Equation]:
    n = c.dim(a)
    yield ("act(A, id) = A", c.act(a, identity(n)), a)
    for p in range(max_dim + 1):
        for g in all_monotone_maps(p, n):
            ag = c.act(a, g)
            for q in range(max_dim + 1):
                for f in all_monotone_maps(q, p):
                    yield (f"(A g) f = A (g f), g={g.values}, f={f.values}",
                           c.act(ag, f), c.act(a, compose(g, f)))


def _generators_into(n: int) -> list[MonotoneMap]:
    faces = [face(i, n) for i in range(n + 1)] if n >= 1 else []
    return faces + [degeneracy(i, n) for i in range(n + 1)]


def generator_functoriality_equations(c: Compository, a: Simplex, max_dom: int = 2
                                      ) -> Iterator[Equation]:
    """Functoriality on composable pairs of faces/degeneracies, plus agreement of
    ``A f`` with the action along a generator factorization of ``f`` for every
    ``f : [p] -> [dim A]`` with ``p <= max_dom``."""
    n = c.dim(a)
    yield ("act(A, id) = A", c.act(a, identity(n)), a)
    for g in _generators_into(n):
        ag = c.act(a, g)
        for f in _generators_into(g.dom):
            yield (f"(A g) f = A (g f), g={g.values}, f={f.values}",
                   c.act(ag, f), c.act(a, compose(g, f)))
    for p in range(max_dom + 1):
        for f in all_monotone_maps(p, n):
            x = a
            for gen in generator_factorization(f):
                x = c.act(x, gen)
            yield (f"A f = A along generators, f={f.values}", c.act(a, f), x)


def identity_equations(c: Compository, a: Simplex, k: int) -> Iterator[Equation]:
    yield (f"A s_{k} o_{k} A = A", c.compose(c.s(a, k), k, a), a)
    yield (f"A o_{k} A t_{k} = A", c.compose(a, k, c.t(a, k)), a)


def back_and_forth_equations(c: Compository, a: Simplex, k: int, b: Simplex,
                             i: int, j: int) -> Iterator[Equation]:
    m, n = c.dim(a), c.dim(b)
    if not (0 <= i <= n - k and 0 <= j <= m - k):
        raise DomainError("back-and-forth needs i <= n-k and j <= m-k")
    ab = c.compose(a, k, b)
    yield (f"AB = (AB)s_{m + i} o_{k + i} B", ab, c.compose(c.s(ab, m + i), k + i, b))
    yield (f"AB = A o_{k + j} (AB)t_{n + j}", ab, c.compose(a, k + j, c.t(ab, n + j)))


def degeneracy_equations(c: Compository, a: Simplex, k: int, b: Simplex,
                         i: int) -> Iterator[Equation]:
    m, n = c.dim(a), c.dim(b)
    if not 0 <= i <= m + n - k:
        raise DomainError("degeneracy index out of range")
    lhs = c.eta(c.compose(a, k, b), i)
    if i <= m - k:
        yield (f"(AB)eta_{i} = A eta_{i} o_{k} B", lhs, c.compose(c.eta(a, i), k, b))
    if i >= m:
        yield (f"(AB)eta_{i} = A o_{k} B eta_{i - m + k}", lhs,
               c.compose(a, k, c.eta(b, i - m + k)))
    if m - k <= i <= m:
        yield (f"(AB)eta_{i} = A eta_{i} o_{k + 1} B eta_{i - m + k}", lhs,
               c.compose(c.eta(a, i), k + 1, c.eta(b, i - m + k)))


def face_equations(c: Compository, a: Simplex, k: int, b: Simplex, i: int) -> Iterator[Equation]:
    m, n = c.dim(a), c.dim(b)
    if not 0 <= i <= m + n - k or m + n - k < 1:
        raise DomainError("face index out of range")
    if i < m - k:
        yield (f"(AB)d_{i} = A d_{i} o_{k} B", c.d(c.compose(a, k, b), i),
               c.compose(c.d(a, i), k, b))
    elif i > m:
        yield (f"(AB)d_{i} = A o_{k} B d_{i - m + k}", c.d(c.compose(a, k, b), i),
               c.compose(a, k, c.d(b, i - m + k)))


def facenot_equations(c: Compository, a: Simplex, k: int, b: Simplex, i: int) -> Iterator[Equation]:
    """The face relation on the shared face, which only nerves satisfy in general."""
    m = c.dim(a)
    if k < 1 or not m - k <= i <= m:
        raise DomainError("the shared-face relation needs k >= 1 and m-k <= i <= m")
    yield (f"(AB)d_{i} = A d_{i} o_{k - 1} B d_{i - m + k}",
           c.d(c.compose(a, k, b), i),
           c.compose(c.d(a, i), k - 1, c.d(b, i - m + k)))


def source_target_equations(c: Compository, a: Simplex, k: int, b: Simplex) -> Iterator[Equation]:
    m, n = c.dim(a), c.dim(b)
    ab = c.compose(a, k, b)
    yield (f"(AB)s_{m} = A", c.s(ab, m), a)
    yield (f"(AB)t_{n} = B", c.t(ab, n), b)


def two_step_equations(c: Compository, a: Simplex, k: int, b: Simplex,
                       i: int, j: int) -> Iterator[Equation]:
    m, n = c.dim(a), c.dim(b)
    if not (k <= i <= m and k <= j <= n):
        raise DomainError("two-step rule needs k <= i <= m and k <= j <= n")
    ab = c.compose(a, k, b)
    yield (f"AB = A o_{i} (A t_{i} o_{k} B)", ab, c.compose(a, i, c.compose(c.t(a, i), k, b)))
    yield (f"AB = (A o_{k} B s_{j}) o_{j} B", ab, c.compose(c.compose(a, k, c.s(b, j)), j, b))


def associativity_equations(c: Compository, a: Simplex, j: int, b: Simplex, k: int,
                            cc: Simplex) -> Iterator[Equation]:
    yield (f"A o_{j} (B o_{k} C) = (A o_{j} B) o_{k} C",
           c.compose(a, j, c.compose(b, k, cc)), c.compose(c.compose(a, j, b), k, cc))


def st_comp_equations(c: Compository, a: Simplex, k: int, b: Simplex,
                      i: int, j: int) -> Iterator[Equation]:
    m, n = c.dim(a), c.dim(b)
    top = m + n - k
    if not (m <= i <= top and n <= j <= top):
        raise DomainError("needs m <= i and n <= j within the composite")
    ab = c.compose(a, k, b)
    yield (f"(AB)s_{i} = A o_{k} B s_{i - m + k}", c.s(ab, i), c.compose(a, k, c.s(b, i - m + k)))
    yield (f"(AB)t_{j} = A t_{j - n + k} o_{k} B", c.t(ab, j), c.compose(c.t(a, j - n + k), k, b))


def higher_identity_equations(c: Compository, a: Simplex, k: int) -> Iterator[Equation]:
    m = c.dim(a)
    if not 0 <= k <= m:
        raise DomainError("k must not exceed dim A")
    f_ = c.t(a, k)
    x = c.compose(a, k, c.eta(f_, k))
    yield (f"A o_{k} F eta_{k} = A eta_{m}", x, c.eta(a, m))
    yield (f"(A o_{k} F eta_{k}) d_{m} = A", c.d(x, m), a)
    yield (f"(A o_{k} F eta_{k}) d_{m + 1} = A", c.d(x, m + 1), a)
    e = c.s(a, k)
    yield (f"E eta_0 o_{k} A = A eta_0", c.compose(c.eta(e, 0), k, a), c.eta(a, 0))


def _holds(eqs: Iterable[Equation]) -> bool:
    try:
        return all(lhs == rhs for _, lhs, rhs in eqs)
    except CompositionError:
        return False


def check_identity_axiom(c: Compository, a: Simplex, k: int) -> bool:
    return _holds(identity_equations(c, a, k))


def check_back_and_forth(c: Compository, a: Simplex, k: int, b: Simplex, i: int, j: int) -> bool:
    return _holds(back_and_forth_equations(c, a, k, b, i, j))


def check_degeneracy_compat(c: Compository, a: Simplex, k: int, b: Simplex, i: int) -> bool:
    return _holds(degeneracy_equations(c, a, k, b, i))


def check_face_compat(c: Compository, a: Simplex, k: int, b: Simplex, i: int) -> bool:
    m = c.dim(a)
    if m - k <= i <= m:
        raise DomainError("the face axiom says nothing for m-k <= i <= m")
    return _holds(face_equations(c, a, k, b, i))


def check_facenot(c: Compository, a: Simplex, k: int, b: Simplex, i: int) -> bool:
    return _holds(facenot_equations(c, a, k, b, i))


def check_source_target(c: Compository, a: Simplex, k: int, b: Simplex) -> bool:
    return _holds(source_target_equations(c, a, k, b))


def check_two_step(c: Compository, a: Simplex, k: int, b: Simplex, i: int, j: int) -> bool:
    return _holds(two_step_equations(c, a, k, b, i, j))


def check_associativity(c: Compository, a: Simplex, j: int, b: Simplex, k: int,
                        cc: Simplex) -> bool:
    if c.t(a, j) != c.s(b, j) or c.t(b, k) != c.s(cc, k):
        raise CompositionError("triple is not (j, k)-composable")
    return _holds(associativity_equations(c, a, j, b, k, cc))


def check_st_comp(c: Compository, a: Simplex, k: int, b: Simplex, i: int, j: int) -> bool:
    return _holds(st_comp_equations(c, a, k, b, i, j))


def check_higher_identity(c: Compository, a: Simplex, k: int) -> bool:
    return _holds(higher_identity_equations(c, a, k))


# ------------------------------------------------------ input families ----


def pair_equations(c: Compository, a: Simplex, k: int, b: Simplex) -> dict[str, Callable[[], Iterator[Equation]]]:
    """All index-quantified law instances for one composable pair, grouped by law."""
    m, n = c.dim(a), c.dim(b)
    top = m + n - k

    def bf():
        for i in range(n - k + 1):
            for j in range(m - k + 1):
                yield from back_and_forth_equations(c, a, k, b, i, j)

    def deg():
        for i in range(top + 1):
            yield from degeneracy_equations(c, a, k, b, i)

    def fc():
        if top >= 1:
            for i in range(top + 1):
                yield from face_equations(c, a, k, b, i)

    def st():
        yield from source_target_equations(c, a, k, b)

    def two():
        for i in range(k, m + 1):
            for j in range(k, n + 1):
                yield from two_step_equations(c, a, k, b, i, j)

    def stc():
        for i in range(m, top + 1):
            for j in range(n, top + 1):
                yield from st_comp_equations(c, a, k, b, i, j)

    return {
        "back_and_forth": bf,
        "degeneracy": deg,
        "face": fc,
        "source_target": st,
        "two_step": two,
        "st_comp": stc,
    }


def facenot_instances(c: Compository, a: Simplex, k: int, b: Simplex) -> Iterator[Equation]:
    m = c.dim(a)
    if k >= 1:
        for i in range(m - k, m + 1):
            yield from facenot_equations(c, a, k, b, i)


def single_equations(c: Compository, a: Simplex) -> dict[str, Callable[[], Iterator[Equation]]]:
    m = c.dim(a)

    def ident():
        for k in range(m + 1):
            yield from identity_equations(c, a, k)

    def hid():
        for k in range(m + 1):
            yield from higher_identity_equations(c, a, k)

    return {"identity": ident, "higher_identity": hid}


def random_pair(c: Compository, max_dim: int, rng: random.Random,
                max_composite: int | None = None) -> tuple[Simplex, int, Simplex]:
    """A seeded random k-composable pair with both dimensions at most ``max_dim``."""
    while True:
        m = rng.randint(0, max_dim)
        n = rng.randint(0, max_dim)
        k = rng.randint(0, min(m, n))
        if max_composite is None or m + n - k <= max_composite:
            break
    a = c.sample(m, rng)
    b = c.extend_initial(c.t(a, k), n, rng)
    return a, k, b


def random_triple(c: Compository, max_dim: int, rng: random.Random
                  ) -> tuple[Simplex, int, Simplex, int, Simplex]:
    """A seeded random (j, k)-composable triple ``(A, j, B, k, C)``."""
    m = rng.randint(0, max_dim)
    j = rng.randint(0, m)
    k = rng.randint(0, m)
    b = c.sample(m, rng)
    a = c.extend_terminal(c.s(b, j), rng.randint(j, max_dim), rng)
    cc = c.extend_initial(c.t(b, k), rng.randint(k, max_dim), rng)
    return a, j, b, k, cc


def composable_pairs(c: Compository, max_composite: int, max_dim: int | None = None
                     ) -> Iterator[tuple[Simplex, int, Simplex]]:
    """Every k-composable pair with ``m + n - k <= max_composite`` (needs enumeration)."""
    max_dim = max_composite if max_dim is None else max_dim
    by_dim = {n: list(c.simplices(n)) for n in range(max_dim + 1)}
    for m in range(max_dim + 1):
        for n in range(max_dim + 1):
            for k in range(min(m, n) + 1):
                if m + n - k > max_composite:
                    continue
                index: dict = {}
                for b in by_dim[n]:
                    index.setdefault(c.s(b, k), []).append(b)
                for a in by_dim[m]:
                    for b in index.get(c.t(a, k), ()):
                        yield a, k, b


def composable_triples(c: Compository, max_composite: int
                       ) -> Iterator[tuple[Simplex, int, Simplex, int, Simplex]]:
    """Every ``(j, k)``-composable triple whose full composite has dimension at most
    ``max_composite`` (needs enumeration)."""
    top = max_composite
    by_dim = {n: list(c.simplices(n)) for n in range(top + 1)}
    tails: dict = {}
    heads: dict = {}
    for n, xs in by_dim.items():
        for x in xs:
            for k in range(n + 1):
                tails.setdefault((n, k, c.t(x, k)), []).append(x)
                heads.setdefault((n, k, c.s(x, k)), []).append(x)
    for m in range(top + 1):
        for b in by_dim[m]:
            for j in range(m + 1):
                for k in range(m + 1):
                    for l in range(j, top + 1):
                        lefts = tails.get((l, j, c.s(b, j)), ())
                        for n in range(k, top + 1 - (l + m - j - k)):
                            for cc in heads.get((n, k, c.t(b, k)), ()):
                                for a in lefts:
                                    yield a, j, b, k, cc


class MemoCompository(Compository):
    """Wraps a compository and caches ``act`` and ``compose`` results.

    The law suites evaluate the same composites many times over; simplices are
    hashable, so a plain dictionary suffices.
    """

    def __init__(self, inner: Compository):
        self.inner = inner
        self.name = inner.name
        self._act: dict = {}
        self._comp: dict = {}

    def dim(self, a):
        return self.inner.dim(a)

    def act(self, a, f):
        key = (a, f)
        try:
            return self._act[key]
        except KeyError:
            out = self._act[key] = self.inner.act(a, f)
            return out

    def compose(self, a, k, b):
        key = (a, k, b)
        try:
            out = self._comp[key]
        except KeyError:
            try:
                out = self.inner.compose(a, k, b)
            except CompositionError as e:
                out = e
            self._comp[key] = out
        if isinstance(out, CompositionError):
            raise out
        return out

    def simplices(self, n):
        return self.inner.simplices(n)

    def sample(self, n, rng):
        return self.inner.sample(n, rng)

    def extend_initial(self, face_, n, rng):
        return self.inner.extend_initial(face_, n, rng)

    def extend_terminal(self, face_, n, rng):
        return self.inner.extend_terminal(face_, n, rng)

    def to_json(self, a):
        return self.inner.to_json(a)
