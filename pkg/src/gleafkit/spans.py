"""Higher spans over a finite lattice.

A finite lattice is a category with at most one arrow ``x -> y`` (present
when ``leq(x, y)``) in which the pullback of a cospan is the meet.  An
``n``-span assigns an element to every interval ``[v, w]`` of ``[n]`` so that
shrinking the interval moves up in the order: the whole interval ``[0, n]``
is the apex and the one-point intervals are the feet.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Hashable, Iterable, Iterator, Mapping

from .compository import Compository
from .errors import CompositionError, DomainError, ValidationError
from .finset import ordered
from .nerve import NervePath
from .simplex import MonotoneMap, face


@lru_cache(maxsize=None)
def intervals(n: int) -> tuple[tuple[int, int], ...]:
    """The objects of the walking ``n``-span, lexicographically."""
    return tuple((v, w) for v in range(n + 1) for w in range(v, n + 1))


@dataclass(frozen=True)
class FinLattice:
    """A finite partial order in which every pair has a meet and a join.

    ``leq`` may be any generating relation; it is closed reflexively and
    transitively, then checked for antisymmetry and for meets and joins.
    """

    elements: tuple
    leq_pairs: frozenset

    def __init__(self, elements: Iterable[Hashable], leq: Iterable[tuple]):
        els = ordered(elements)
        rel = {(x, x) for x in els} | {tuple(p) for p in leq}
        for a, b in rel:
            if a not in els or b not in els:
                raise ValidationError(f"order relation mentions unknown element in {(a, b)!r}")
        changed = True
        while changed:
            new = {(a, d) for a, b in rel for c, d in rel if b == c} - rel
            changed = bool(new)
            rel |= new
        for a, b in rel:
            if a != b and (b, a) in rel:
                raise ValidationError(f"{a!r} and {b!r} are distinct but mutually below each other")
        object.__setattr__(self, "elements", els)
        object.__setattr__(self, "leq_pairs", frozenset(rel))
        self._meets  # noqa: B018  (validates existence of meets)
        self._joins  # noqa: B018

    def leq(self, a, b) -> bool:
        return (a, b) in self.leq_pairs

    def _bound(self, a, b, lower: bool):
        if lower:
            cands = [x for x in self.elements if self.leq(x, a) and self.leq(x, b)]
            best = [x for x in cands if all(self.leq(y, x) for y in cands)]
        else:
            cands = [x for x in self.elements if self.leq(a, x) and self.leq(b, x)]
            best = [x for x in cands if all(self.leq(x, y) for y in cands)]
        if len(best) != 1:
            kind = "meet" if lower else "join"
            raise ValidationError(f"{a!r} and {b!r} have no {kind}")
        return best[0]

    @cached_property
    def _meets(self) -> dict:
        return {(a, b): self._bound(a, b, True) for a in self.elements for b in self.elements}

    @cached_property
    def _joins(self) -> dict:
        return {(a, b): self._bound(a, b, False) for a in self.elements for b in self.elements}

    def meet(self, a, b):
        """The pullback of ``a -> c <- b`` for any common upper bound ``c``."""
        return self._meets[(a, b)]

    def join(self, a, b):
        return self._joins[(a, b)]

    @cached_property
    def upsets(self) -> dict:
        return {a: tuple(b for b in self.elements if self.leq(a, b)) for a in self.elements}

    def to_json(self) -> dict:
        covers = sorted((a, b) for a, b in self.leq_pairs if a != b)
        return {"elements": list(self.elements), "leq": [list(p) for p in covers]}

    @classmethod
    def from_json(cls, data: dict) -> "FinLattice":
        return cls(data["elements"], [tuple(p) for p in data["leq"]])


def diamond() -> FinLattice:
    """Four elements ``top, alpha, beta, bot`` with arrows ``top -> alpha, beta -> bot``.

    In this orientation ``top`` is the least element, so ``meet(alpha, beta) = top``.
    """
    return FinLattice(("top", "alpha", "beta", "bot"),
                      [("top", "alpha"), ("top", "beta"), ("alpha", "bot"), ("beta", "bot")])


def chain_lattice(n: int) -> FinLattice:
    """The chain ``0 < 1 < ... < n``."""
    return FinLattice(range(n + 1), [(i, i + 1) for i in range(n)])


@dataclass(frozen=True)
class NSpan:
    """An ``n``-span; ``val`` lists the element at each interval in :func:`intervals` order."""

    n: int
    val: tuple

    def __post_init__(self) -> None:
        object.__setattr__(self, "val", tuple(self.val))
        if self.n < 0 or len(self.val) != (self.n + 1) * (self.n + 2) // 2:
            raise ValidationError(f"a {self.n}-span needs {(self.n + 1) * (self.n + 2) // 2} values")

    @classmethod
    def from_mapping(cls, n: int, values: Mapping[tuple, Hashable]) -> "NSpan":
        return cls(n, tuple(values[iv] for iv in intervals(n)))

    def as_dict(self) -> dict:
        return dict(zip(intervals(self.n), self.val))

    def __getitem__(self, vw: tuple[int, int]):
        v, w = vw
        n = self.n
        # index of (v, w) in lexicographic interval order
        return self.val[v * (n + 1) - v * (v - 1) // 2 + (w - v)]

    def validate(self, lat: FinLattice) -> "NSpan":
        for x in self.val:
            if x not in lat.upsets:
                raise ValidationError(f"{x!r} is not a lattice element")
        for v, w in intervals(self.n):
            if v > 0 and not lat.leq(self[(v - 1, w)], self[(v, w)]):
                raise ValidationError(f"not monotone at [{v - 1},{w}] -> [{v},{w}]")
            if w < self.n and not lat.leq(self[(v, w + 1)], self[(v, w)]):
                raise ValidationError(f"not monotone at [{v},{w + 1}] -> [{v},{w}]")
        return self

    def to_json(self) -> dict:
        return {"n": self.n, "val": {f"{v},{w}": x for (v, w), x in self.as_dict().items()}}

    @classmethod
    def from_json(cls, data: dict) -> "NSpan":
        n = int(data["n"])
        raw = {tuple(int(p) for p in key.split(",")): x for key, x in data["val"].items()}
        missing = set(intervals(n)) - set(raw)
        if missing:
            raise ValidationError(f"span is missing intervals {sorted(missing)}")
        return cls.from_mapping(n, raw)


@lru_cache(maxsize=None)
def _act_plan(f: MonotoneMap) -> tuple[int, ...]:
    pos = {iv: i for i, iv in enumerate(intervals(f.cod))}
    return tuple(pos[(f(v), f(w))] for v, w in intervals(f.dom))


def span_act(a: NSpan, f: MonotoneMap) -> NSpan:
    """``(A f)(v, w) = A(f(v), f(w))``."""
    if f.cod != a.n:
        raise DomainError(f"map into [{f.cod}] applied to a {a.n}-span")
    val = a.val
    return NSpan(f.dom, tuple(val[i] for i in _act_plan(f)))


@lru_cache(maxsize=None)
def _compose_plan(m: int, n: int, k: int):
    """Per output interval: ``(0, i)`` read A, ``(1, j)`` read B, ``(2, i, j)`` meet."""
    pa = {iv: i for i, iv in enumerate(intervals(m))}
    pb = {iv: i for i, iv in enumerate(intervals(n))}
    shift = m - k
    overlap = tuple((pa[(v + shift, w + shift)], pb[(v, w)]) for v, w in intervals(k))
    plan = []
    for v, w in intervals(m + n - k):
        if w <= m:
            plan.append((0, pa[(v, w)]))
        elif v >= shift:
            plan.append((1, pb[(v - shift, w - shift)]))
        else:
            plan.append((2, pa[(v, m)], pb[(0, w - shift)]))
    return overlap, tuple(plan)


def span_compose(lat: FinLattice, a: NSpan, k: int, b: NSpan) -> NSpan:
    """Pointwise pullback composite of a ``k``-composable pair.

    ``[v, w]`` inside ``[0, m]`` reads A, inside ``[m-k, m+n-k]`` reads B, and
    otherwise is the meet of ``A(v, m)`` and ``B(0, w-m+k)`` over their common
    image in the shared face.
    """
    m, n = a.n, b.n
    if not 0 <= k <= min(m, n):
        raise DomainError(f"k={k} out of range for dimensions {m}, {n}")
    overlap, plan = _compose_plan(m, n, k)
    av, bv = a.val, b.val
    for i, j in overlap:
        if av[i] != bv[j]:
            raise CompositionError(f"terminal {k}-face of A differs from initial {k}-face of B")
    meets = lat._meets
    vals = tuple(av[p[1]] if p[0] == 0 else bv[p[1]] if p[0] == 1 else meets[(av[p[1]], bv[p[2]])]
                 for p in plan)
    return NSpan(m + n - k, vals)


def all_spans(lat: FinLattice, n: int) -> Iterator[NSpan]:
    """Every ``n``-span, by backtracking from the apex down to the feet."""
    order = sorted(intervals(n), key=lambda iv: (iv[0] - iv[1], iv))
    pos = {iv: i for i, iv in enumerate(intervals(n))}
    vals: list = [None] * len(order)

    def rec(i: int):
        if i == len(order):
            yield NSpan(n, tuple(vals))
            return
        v, w = order[i]
        lower = []
        if v > 0:
            lower.append(vals[pos[(v - 1, w)]])
        if w < n:
            lower.append(vals[pos[(v, w + 1)]])
        for x in lat.elements:
            if all(lat.leq(y, x) for y in lower):
                vals[pos[(v, w)]] = x
                yield from rec(i + 1)
        vals[pos[(v, w)]] = None

    yield from rec(0)


class SpanCompository(Compository):
    name = "spans"

    def __init__(self, lat: FinLattice):
        self.lat = lat
        self._cache: dict[int, tuple] = {}

    def dim(self, a: NSpan) -> int:
        return a.n

    def act(self, a: NSpan, f: MonotoneMap) -> NSpan:
        return span_act(a, f)

    def compose(self, a: NSpan, k: int, b: NSpan) -> NSpan:
        return span_compose(self.lat, a, k, b)

    def simplices(self, n: int) -> tuple:
        if n not in self._cache:
            self._cache[n] = tuple(all_spans(self.lat, n))
        return self._cache[n]

    def sample(self, n: int, rng: random.Random) -> NSpan:
        return rng.choice(self.simplices(n))

    def to_json(self, a: NSpan):
        return a.to_json()


def nerve_to_spans(lat: FinLattice, path: NervePath, variant: str = "p") -> NSpan:
    """Embed a chain of the lattice as a span.

    ``"p"``: ``path`` ascends (``x_0 <= x_1 <= ...``) and ``val(v, w) = x_v``.
    ``"pbar"``: ``path`` descends (``x_0 >= x_1 >= ...``, a path in the opposite
    order) and ``val(v, w) = x_w``.
    Both are compatible with faces, degeneracies and composition.
    """
    xs = path.objects
    n = len(xs) - 1
    if variant == "p":
        pairs = zip(xs, xs[1:])
        pick = lambda v, w: xs[v]  # noqa: E731
    elif variant == "pbar":
        pairs = zip(xs[1:], xs)
        pick = lambda v, w: xs[w]  # noqa: E731
    else:
        raise DomainError(f"unknown embedding variant {variant!r}")
    for lo, hi in pairs:
        if not lat.leq(lo, hi):
            raise ValidationError(f"path step {lo!r}, {hi!r} goes the wrong way for {variant!r}")
    return NSpan(n, tuple(pick(v, w) for v, w in intervals(n)))


def lattice_path(xs: Iterable) -> NervePath:
    """The nerve path through ``xs`` in the poset category of a lattice."""
    xs = tuple(xs)
    return NervePath(xs, tuple(f"{a}->{b}" for a, b in zip(xs, xs[1:])))


def horn_filler_search(lat: FinLattice, faces: Mapping[int, NSpan], n: int = 3) -> NSpan | None:
    """Search every ``n``-span for one with ``D d_i = faces[i]``; ``None`` if there is none."""
    fillers = list(horn_fillers(lat, faces, n))
    return fillers[0] if fillers else None


def horn_fillers(lat: FinLattice, faces: Mapping[int, NSpan], n: int = 3) -> Iterator[NSpan]:
    maps = {i: face(i, n) for i in faces}
    for d in all_spans(lat, n):
        if all(span_act(d, maps[i]) == f for i, f in faces.items()):
            yield d


def horn_is_compatible(faces: Mapping[int, NSpan]) -> bool:
    """The pairwise face conditions ``F_j d_i = F_i d_(j-1)`` for ``i < j``."""
    idx = sorted(faces)
    for x, i in enumerate(idx):
        for j in idx[x + 1:]:
            fi, fj = faces[i], faces[j]
            if span_act(fj, face(i, fj.n)) != span_act(fi, face(j - 1, fi.n)):
                return False
    return True


def nokan_horn() -> dict[int, NSpan]:
    """The inner horn of 2-spans over :func:`diamond` that has no filler.

    Keys are the face indices ``0, 1, 3``.
    """
    def two_span(apex, s01, s12):
        return NSpan.from_mapping(2, {(0, 2): apex, (0, 1): s01, (1, 2): s12,
                                      (0, 0): "bot", (1, 1): "bot", (2, 2): "bot"})

    return {
        0: two_span("alpha", "bot", "bot"),
        1: two_span("beta", "beta", "bot"),
        3: two_span("beta", "bot", "bot"),
    }
