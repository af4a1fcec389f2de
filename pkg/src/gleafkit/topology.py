"""Topologies on finite sets, with preimage restriction and gluing.

Open sets are bitmasks over the carrier (bit ``i`` is ``carrier[i]``), stored
as a sorted tuple so that equal topologies compare equal.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .errors import CompatibilityError, DomainError, ValidationError
from .finset import FinMap, ordered
from .gleaf import FinSetGleaf


@dataclass(frozen=True)
class FinTopology:
    carrier: tuple
    opens: tuple

    def __post_init__(self) -> None:
        object.__setattr__(self, "carrier", tuple(self.carrier))
        object.__setattr__(self, "opens", tuple(sorted(set(self.opens))))
        self.validate()

    def __hash__(self) -> int:
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.carrier, self.opens))
            object.__setattr__(self, "_hash", h)
        return h

    @classmethod
    def _trusted(cls, carrier: tuple, opens: tuple) -> "FinTopology":
        obj = object.__new__(cls)
        object.__setattr__(obj, "carrier", carrier)
        object.__setattr__(obj, "opens", opens)
        return obj

    @property
    def full(self) -> int:
        return (1 << len(self.carrier)) - 1

    def validate(self) -> "FinTopology":
        if len(set(self.carrier)) != len(self.carrier):
            raise ValidationError("carrier points must be distinct")
        ops = set(self.opens)
        if any(u < 0 or u > self.full for u in ops):
            raise ValidationError("open set outside the carrier")
        if 0 not in ops or self.full not in ops:
            raise ValidationError("the empty set and the carrier must be open")
        for u in ops:
            for v in ops:
                if u | v not in ops or u & v not in ops:
                    raise ValidationError("opens must be closed under union and intersection")
        return self

    @classmethod
    def from_sets(cls, carrier: Sequence, opens: Iterable[Iterable]) -> "FinTopology":
        pts = tuple(carrier)
        pos = {p: i for i, p in enumerate(pts)}
        masks = []
        for u in opens:
            mask = 0
            for p in u:
                if p not in pos:
                    raise ValidationError(f"{p!r} is not in the carrier")
                mask |= 1 << pos[p]
            masks.append(mask)
        return cls(pts, tuple(masks))

    @classmethod
    def discrete(cls, carrier: Sequence) -> "FinTopology":
        return cls(tuple(carrier), tuple(range(1 << len(tuple(carrier)))))

    @classmethod
    def indiscrete(cls, carrier: Sequence) -> "FinTopology":
        n = len(tuple(carrier))
        return cls(tuple(carrier), (0, (1 << n) - 1))

    def open_sets(self) -> list[frozenset]:
        return [frozenset(p for i, p in enumerate(self.carrier) if u >> i & 1) for u in self.opens]

    def is_open(self, points: Iterable) -> bool:
        return _mask(self.carrier, points) in set(self.opens)

    def to_json(self) -> dict:
        return {"carrier": [str(p) for p in self.carrier],
                "opens": [[str(p) for p in self.carrier if p in u] for u in self.open_sets()]}

    @classmethod
    def from_json(cls, data: dict) -> "FinTopology":
        return cls.from_sets(data["carrier"], data["opens"])


def _mask(carrier: tuple, points: Iterable) -> int:
    pos = {p: i for i, p in enumerate(carrier)}
    out = 0
    for p in points:
        out |= 1 << pos[p]
    return out


def top_act(t: FinTopology, f: FinMap) -> FinTopology:
    """Preimage topology ``{f^-1(U) : U open}`` on ``dom f``."""
    if set(f.codomain) != set(t.carrier):
        raise DomainError("map codomain differs from the topology's carrier")
    dom = ordered(f.domain)
    pos = {p: i for i, p in enumerate(t.carrier)}
    bits = [pos[f(x)] for x in dom]
    opens = set()
    for u in t.opens:
        mask = 0
        for i, b in enumerate(bits):
            if u >> b & 1:
                mask |= 1 << i
        opens.add(mask)
    return FinTopology._trusted(dom, tuple(sorted(opens)))


def subspace(t: FinTopology, sub: Iterable) -> FinTopology:
    return top_act(t, FinMap.inclusion(ordered(sub), t.carrier))


def _reindex(t: FinTopology, carrier: tuple) -> tuple:
    """Opens of ``t`` as bitmasks over ``carrier`` (a superset of ``t.carrier``)."""
    pos = [carrier.index(p) for p in t.carrier]
    out = []
    for u in t.opens:
        mask = 0
        for i, b in enumerate(pos):
            if u >> i & 1:
                mask |= 1 << b
        out.append(mask)
    return tuple(out)


def top_glue(ta: FinTopology, tb: FinTopology, c: Iterable | None = None) -> FinTopology:
    """``{U subset of C : U & A open in A and U & B open in B}``."""
    a, b = set(ta.carrier), set(tb.carrier)
    pts = ordered(a | b) if c is None else ordered(c)
    if set(pts) != a | b:
        raise DomainError("the two carriers must cover C")
    shared = ordered(a & b)
    if subspace(ta, shared) != subspace(tb, shared):
        raise CompatibilityError("subspace topologies on the overlap differ")
    ma, mb = _mask(pts, a), _mask(pts, b)
    oa, ob = set(_reindex(ta, pts)), set(_reindex(tb, pts))
    opens = tuple(u for u in range(1 << len(pts)) if u & ma in oa and u & mb in ob)
    return FinTopology._trusted(pts, opens)


# ------------------------------------------------------ enumeration ----


@lru_cache(maxsize=None)
def _topology_masks(n: int) -> tuple:
    """All topologies on ``n`` points as sorted tuples of bitmasks."""
    full = (1 << n) - 1
    middle = list(range(1, full))
    found = []

    def grow(i: int, chosen: list) -> None:
        if i == len(middle):
            fam = set(chosen) | {0, full}
            if all(u | v in fam and u & v in fam for u in chosen for v in chosen):
                found.append(tuple(sorted(fam)))
            return
        u = middle[i]
        grow(i + 1, chosen)
        # prune: adding u must not violate closure against earlier choices
        # whose union/intersection were already skipped
        ok = True
        for v in chosen:
            for w in (u | v, u & v):
                if w < u and w not in (0, full) and w not in chosen:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            chosen.append(u)
            grow(i + 1, chosen)
            chosen.pop()

    if n == 0:
        return ((0,),)
    grow(0, [])
    return tuple(found)


def all_topologies(carrier: Sequence) -> Iterator[FinTopology]:
    pts = tuple(carrier)
    for opens in _topology_masks(len(pts)):
        yield FinTopology._trusted(pts, opens)


def common_extension_exists(pieces: Sequence[FinTopology]) -> bool:
    """Whether some topology on the union of the carriers has every piece as a subspace."""
    if not pieces:
        return True
    union = ordered(set().union(*(set(p.carrier) for p in pieces)))
    return find_common_extension(pieces, union) is not None


def find_common_extension(pieces: Sequence[FinTopology], union: tuple | None = None
                          ) -> FinTopology | None:
    if union is None:
        union = ordered(set().union(*(set(p.carrier) for p in pieces)))
    targets = [(p.carrier, FinTopology._trusted(ordered(p.carrier), subspace(p, p.carrier).opens))
               for p in pieces]
    for t in all_topologies(union):
        if all(subspace(t, car) == want for car, want in targets):
            return t
    return None


def triangle_pieces(points: Sequence = ("x", "y", "z")) -> list[FinTopology]:
    """Indiscrete on ``{x, y}`` and ``{y, z}``, discrete on ``{x, z}``: pairwise
    compatible, yet no topology on ``{x, y, z}`` restricts to all three."""
    x, y, z = points
    return [FinTopology.indiscrete(ordered((x, y))), FinTopology.indiscrete(ordered((y, z))),
            FinTopology.discrete(ordered((x, z)))]


def random_topology(carrier: Sequence, rng: random.Random) -> FinTopology:
    return rng.choice(list(all_topologies(ordered(carrier))))


class TopologyGleaf(FinSetGleaf):
    """Topologies on finite sets of points, enumerated exhaustively."""

    name = "topology"

    def carrier(self, x):
        return x.carrier

    def restrict(self, x, f):
        return top_act(x, f)

    def glue_subsets(self, x, y, c):
        return top_glue(x, y, c)

    def sections(self, obj):
        return all_topologies(ordered(obj))

    def to_json(self, x):
        return x.to_json()


def subsets(points: Sequence) -> Iterator[tuple]:
    for r in range(len(points) + 1):
        yield from combinations(ordered(points), r)
