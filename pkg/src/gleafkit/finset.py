"""Functions between finite sets, used as the arrows of the base category FinSet."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Hashable, Iterable, Mapping

from .errors import CompositionError, ValidationError


def _sort_key(x: Hashable):
    return (type(x).__name__, x)


def ordered(points: Iterable[Hashable]) -> tuple:
    """Canonical ordering of a finite set of points (ints and strings may mix)."""
    return tuple(sorted(set(points), key=_sort_key))


@dataclass(frozen=True)
class FinMap:
    """A total function ``domain -> codomain``; ``images[i]`` is the image of ``domain[i]``."""

    domain: tuple
    codomain: tuple
    images: tuple

    def __post_init__(self) -> None:
        object.__setattr__(self, "domain", tuple(self.domain))
        object.__setattr__(self, "codomain", tuple(self.codomain))
        object.__setattr__(self, "images", tuple(self.images))
        if len(self.images) != len(self.domain):
            raise ValidationError("one image per domain point is required")
        if len(set(self.domain)) != len(self.domain):
            raise ValidationError("domain points must be distinct")
        cod = set(self.codomain)
        for y in self.images:
            if y not in cod:
                raise ValidationError(f"image {y!r} is not in the codomain")

    @classmethod
    def from_mapping(cls, mapping: Mapping, codomain: Iterable) -> "FinMap":
        dom = ordered(mapping)
        return cls(dom, ordered(codomain), tuple(mapping[x] for x in dom))

    @classmethod
    def inclusion(cls, sub: Iterable, sup: Iterable) -> "FinMap":
        sub_t, sup_t = ordered(sub), ordered(sup)
        if not set(sub_t) <= set(sup_t):
            raise ValidationError("inclusion needs a subset")
        return cls(sub_t, sup_t, sub_t)

    @classmethod
    def identity(cls, points: Iterable) -> "FinMap":
        pts = ordered(points)
        return cls(pts, pts, pts)

    def __hash__(self) -> int:
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.domain, self.codomain, self.images))
            object.__setattr__(self, "_hash", h)
        return h

    def __call__(self, x):
        table = self.__dict__.get("_table")
        if table is None:
            table = dict(zip(self.domain, self.images))
            object.__setattr__(self, "_table", table)
        return table[x]

    def as_dict(self) -> dict:
        return dict(zip(self.domain, self.images))

    def image(self) -> frozenset:
        return frozenset(self.images)

    @property
    def is_injective(self) -> bool:
        return len(set(self.images)) == len(self.images)

    @property
    def is_inclusion(self) -> bool:
        return self.domain == self.images

    def preimage(self, subset: Iterable) -> tuple:
        s = set(subset)
        return tuple(x for x, y in zip(self.domain, self.images) if y in s)

    def restrict(self, sub: Iterable, codomain: Iterable | None = None) -> "FinMap":
        """Restrict to ``sub`` and optionally corestrict to ``codomain``."""
        d = self.as_dict()
        sub_t = ordered(sub)
        return FinMap(sub_t, self.codomain if codomain is None else ordered(codomain),
                      tuple(d[x] for x in sub_t))


@lru_cache(maxsize=1 << 16)
def compose_maps(g: FinMap, f: FinMap) -> FinMap:
    """Return ``g . f``."""
    if set(f.codomain) != set(g.domain):
        raise CompositionError("codomain of f must equal domain of g")
    gd = g.as_dict()
    return FinMap(f.domain, g.codomain, tuple(gd[y] for y in f.images))
