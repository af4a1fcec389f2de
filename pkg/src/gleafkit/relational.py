"""Relations over finite attribute domains, with projection and natural join.

A :class:`Relation` is a set of rows over a sorted attribute tuple.  Projection
is restriction, and the natural join glues two relations whose projections
onto the shared attributes agree.
"""
from __future__ import annotations

import csv
import io
import random
from dataclasses import dataclass
from functools import lru_cache, reduce
from itertools import combinations, product
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import CompatibilityError, DomainError, ValidationError
from .finset import FinMap, ordered
from .gleaf import FinSetGleaf


@dataclass(frozen=True)
class Relation:
    """``domains`` pairs each attribute (in sorted order) with its finite domain;
    each row lists values in the same attribute order."""

    domains: tuple
    rows: frozenset

    def __post_init__(self) -> None:
        doms = tuple((a, tuple(d)) for a, d in self.domains)
        object.__setattr__(self, "domains", doms)
        object.__setattr__(self, "rows", frozenset(tuple(r) for r in self.rows))
        attrs = [a for a, _ in doms]
        if attrs != list(ordered(attrs)) or len(set(attrs)) != len(attrs):
            raise ValidationError("attributes must be distinct and in canonical order")
        for row in self.rows:
            if len(row) != len(doms) or any(v not in d for v, (_, d) in zip(row, doms)):
                raise ValidationError(f"row {row!r} is not well typed")
        object.__setattr__(self, "attrs", tuple(attrs))

    def __hash__(self) -> int:
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.domains, self.rows))
            object.__setattr__(self, "_hash", h)
        return h

    @classmethod
    def _trusted(cls, domains: tuple, rows: frozenset) -> "Relation":
        obj = object.__new__(cls)
        object.__setattr__(obj, "domains", domains)
        object.__setattr__(obj, "rows", rows)
        object.__setattr__(obj, "attrs", tuple(a for a, _ in domains))
        return obj

    def domain(self, attr) -> tuple:
        return dict(self.domains)[attr]

    @classmethod
    def from_dicts(cls, domains: Mapping, rows: Iterable[Mapping]) -> "Relation":
        attrs = ordered(domains)
        return cls(tuple((a, tuple(domains[a])) for a in attrs),
                   frozenset(tuple(r[a] for a in attrs) for r in rows))

    def dicts(self) -> list[dict]:
        return [dict(zip(self.attrs, r)) for r in sorted(self.rows, key=repr)]

    def to_json(self) -> dict:
        return {"attrs": {a: [str(v) for v in d] for a, d in self.domains},
                "tuples": [{a: str(v) for a, v in r.items()} for r in self.dicts()]}

    @classmethod
    def from_json(cls, data: dict) -> "Relation":
        domains = {a: tuple(d) for a, d in data["attrs"].items()}
        for r in data["tuples"]:
            if set(r) != set(domains):
                raise ValidationError(f"tuple {r!r} does not match the attributes")
        return cls.from_dicts(domains, data["tuples"])

    @classmethod
    def from_csv(cls, text: str, domains: Mapping | None = None) -> "Relation":
        """Header row names the attributes; values stay strings.  Without explicit
        domains, each attribute's domain is the set of values that occur."""
        reader = csv.DictReader(io.StringIO(text))
        rows = [dict(r) for r in reader]
        if reader.fieldnames is None:
            raise ValidationError("CSV has no header")
        if domains is None:
            domains = {a: ordered({r[a] for r in rows}) for a in reader.fieldnames}
        return cls.from_dicts(domains, rows)


@lru_cache(maxsize=1 << 16)
def rel_act(t: Relation, f: FinMap) -> Relation:
    """Rows ``r . f``; for an inclusion this is projection."""
    if set(f.codomain) != set(t.attrs):
        raise DomainError("map codomain differs from the relation's attributes")
    pos = {a: i for i, a in enumerate(t.attrs)}
    doms = dict(t.domains)
    dom = ordered(f.domain)
    src = [pos[f(a)] for a in dom]
    return Relation._trusted(tuple((a, doms[f(a)]) for a in dom),
                             frozenset(tuple(r[i] for i in src) for r in t.rows))


def project(t: Relation, attrs: Iterable) -> Relation:
    sub = ordered(attrs)
    if not set(sub) <= set(t.attrs):
        raise DomainError(f"{sub!r} is not a subset of {t.attrs!r}")
    return rel_act(t, FinMap.inclusion(sub, t.attrs))


def join_unchecked(ta: Relation, tb: Relation) -> Relation:
    """Classical natural join: total, no compatibility requirement."""
    da, db = dict(ta.domains), dict(tb.domains)
    for a in set(da) & set(db):
        if da[a] != db[a]:
            raise DomainError(f"attribute {a!r} has different domains")
    doms = {**da, **db}
    attrs = ordered(doms)
    shared = ordered(set(da) & set(db))
    ia = [ta.attrs.index(a) for a in shared]
    ib = [tb.attrs.index(a) for a in shared]
    # each output column reads from A (tag 0) or from B (tag 1)
    cols = [(0, ta.attrs.index(a)) if a in da else (1, tb.attrs.index(a)) for a in attrs]
    index: dict = {}
    for r in tb.rows:
        index.setdefault(tuple(r[i] for i in ib), []).append(r)
    rows = set()
    for ra in ta.rows:
        for rb in index.get(tuple(ra[i] for i in ia), ()):
            pair = (ra, rb)
            rows.add(tuple(pair[s][i] for s, i in cols))
    return Relation._trusted(tuple((a, doms[a]) for a in attrs), frozenset(rows))


def natural_join(ta: Relation, tb: Relation) -> Relation:
    """Join of relations whose projections onto the shared attributes agree."""
    shared = ordered(set(ta.attrs) & set(tb.attrs))
    if project(ta, shared) != project(tb, shared):
        raise CompatibilityError(f"projections onto {list(shared)} differ")
    return join_unchecked(ta, tb)


def natural_join_all(rels: Sequence[Relation]) -> Relation:
    if not rels:
        raise DomainError("need at least one relation")
    return reduce(join_unchecked, rels)


# ------------------------------------------------------ enumeration ----


def all_relations(domains: Mapping) -> Iterator[Relation]:
    """Every relation over the given attributes (``2 ** prod |D_a|`` of them)."""
    attrs = ordered(domains)
    doms = tuple((a, tuple(domains[a])) for a in attrs)
    cells = list(product(*(d for _, d in doms)))
    for mask in range(1 << len(cells)):
        yield Relation._trusted(doms, frozenset(c for i, c in enumerate(cells) if mask >> i & 1))


def random_relation(domains: Mapping, rng: random.Random) -> Relation:
    attrs = ordered(domains)
    cells = list(product(*(domains[a] for a in attrs)))
    return Relation(tuple((a, tuple(domains[a])) for a in attrs),
                    frozenset(c for c in cells if rng.randrange(2)))


def random_extension(t: Relation, domains: Mapping, rng: random.Random) -> Relation:
    """A relation over ``domains`` projecting exactly onto ``t``: each row of ``t``
    gets a nonempty random set of extensions."""
    attrs = ordered(domains)
    new = [a for a in attrs if a not in set(t.attrs)]
    fills = list(product(*(domains[a] for a in new)))
    rows = set()
    for r in t.rows:
        chosen = [f for f in fills if rng.randrange(2)] or [rng.choice(fills)]
        base = dict(zip(t.attrs, r))
        for f in chosen:
            full = {**base, **dict(zip(new, f))}
            rows.add(tuple(full[a] for a in attrs))
    return Relation(tuple((a, tuple(domains[a])) for a in attrs), frozenset(rows))


class RelationalGleaf(FinSetGleaf):
    """Relations over subsets of a fixed attribute universe with finite domains.

    Points of the carrier are attribute names; every attribute ``a`` has domain
    ``domains[a]`` (or ``default_domain`` when absent).
    """

    def __init__(self, domains: Mapping | None = None, default_domain: Sequence = (0, 1)):
        self.domains = dict(domains or {})
        self.default_domain = tuple(default_domain)
        self.name = "relational"

    def domain_of(self, attr) -> tuple:
        return tuple(self.domains.get(attr, self.default_domain))

    def carrier(self, x):
        return x.attrs

    def restrict(self, x, f):
        return rel_act(x, f)

    def glue_subsets(self, x, y, c):
        # glue() has already checked the overlap
        out = join_unchecked(x, y)
        if out.attrs != tuple(c):
            raise DomainError("attributes do not cover C")
        return out

    def sections(self, obj):
        return all_relations({a: self.domain_of(a) for a in obj})

    def sample(self, obj, rng):
        return random_relation({a: self.domain_of(a) for a in obj}, rng)

    def extend(self, x, leg, rng):
        if not leg.is_inclusion:
            raise DomainError("relation extension expects an inclusion")
        return random_extension(x, {a: self.domain_of(a) for a in leg.codomain}, rng)

    def to_json(self, x):
        return x.to_json()


def subsets(points: Sequence) -> Iterator[tuple]:
    for r in range(len(points) + 1):
        yield from combinations(ordered(points), r)
