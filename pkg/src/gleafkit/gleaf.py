"""Gleaves: presheaves with a gluing operation along bicoverings.

Two base categories are provided, each with its system of bicoverings:

* :class:`FinSetSystem` -- finite sets; a bicovering is a pair of injections
  into ``C`` whose images cover ``C``.
* :class:`DeltaSystem` -- the simplex category; a bicovering is
  ``s_m : [m] -> [j] <- [n] : t_n`` with ``m + n >= j``.

A :class:`Gleaf` supplies restriction along arrows and gluing along
bicoverings.  The law checks below only compare sections for equality and
never look inside them.
"""
from __future__ import annotations

import random
from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, product
from typing import Any, Callable, Hashable, Iterator

from .compository import Compository, Equation, _holds
from .errors import CompatibilityError, CompositionError, DomainError, ValidationError
from .finset import FinMap, compose_maps, ordered
from .simplex import (
    MonotoneMap,
    all_monotone_maps,
    compose,
    degeneracy,
    face,
    identity,
    source_incl,
    target_incl,
)

Arrow = Any  # FinMap or MonotoneMap
Section = Hashable


# ------------------------------------------------------------ systems ----


@lru_cache(maxsize=4096)
def _finset_pullback(a_leg: FinMap, b_leg: FinMap) -> tuple[tuple, FinMap, FinMap]:
    common = ordered(a_leg.image() & b_leg.image())
    inv_a = {y: x for x, y in zip(a_leg.domain, a_leg.images)}
    inv_b = {y: x for x, y in zip(b_leg.domain, b_leg.images)}
    return (common, FinMap(common, a_leg.domain, tuple(inv_a[c] for c in common)),
            FinMap(common, b_leg.domain, tuple(inv_b[c] for c in common)))


@lru_cache(maxsize=1 << 14)
def _finset_is_bicovering(a_leg: FinMap, b_leg: FinMap) -> bool:
    return (set(a_leg.codomain) == set(b_leg.codomain)
            and a_leg.is_injective and b_leg.is_injective
            and a_leg.image() | b_leg.image() == set(a_leg.codomain))


class FinSetSystem:
    """Finite sets; objects are tuples of points, arrows are :class:`FinMap`."""

    name = "finset"

    def identity(self, obj) -> FinMap:
        return FinMap.identity(obj)

    def compose(self, g: FinMap, f: FinMap) -> FinMap:
        return compose_maps(g, f)

    def dom(self, f: FinMap):
        return f.domain

    def cod(self, f: FinMap):
        return f.codomain

    def is_mono(self, f: FinMap) -> bool:
        return f.is_injective

    def is_bicovering(self, a_leg: FinMap, b_leg: FinMap) -> bool:
        return _finset_is_bicovering(a_leg, b_leg)

    def pullback(self, a_leg: FinMap, b_leg: FinMap) -> tuple[tuple, FinMap, FinMap]:
        """The pullback of two injections, labelled by the common image points."""
        return _finset_pullback(a_leg, b_leg)

    def has_pullback(self, a_leg: FinMap, b_leg: FinMap) -> bool:
        return True

    def pullback_along(self, f: FinMap, leg: FinMap) -> FinMap | None:
        """The inclusion ``f^{-1}(image leg) -> dom f``."""
        return FinMap.inclusion(f.preimage(leg.image()), f.domain)

    def arrows(self, x, y) -> Iterator[FinMap]:
        for images in product(tuple(y), repeat=len(tuple(x))):
            yield FinMap(tuple(x), tuple(y), images)

    def objects(self, max_size: int) -> Iterator[tuple]:
        for s in range(max_size + 1):
            yield tuple(range(s))

    def monos_into(self, c, max_size: int) -> Iterator[FinMap]:
        """One injection ``range(s) -> c`` per subobject of ``c``."""
        for s in range(min(max_size, len(c)) + 1):
            for images in combinations(tuple(c), s):
                yield FinMap(tuple(range(s)), tuple(c), images)

    def cover(self, a_leg: FinMap, b_leg: FinMap) -> "FinSetBicovering":
        return FinSetBicovering(a_leg, b_leg)


class DeltaSystem:
    """The simplex category; objects are naturals ``n`` standing for ``[n]``."""

    name = "delta"

    def identity(self, obj: int) -> MonotoneMap:
        return identity(obj)

    def compose(self, g: MonotoneMap, f: MonotoneMap) -> MonotoneMap:
        return compose(g, f)

    def dom(self, f: MonotoneMap) -> int:
        return f.dom

    def cod(self, f: MonotoneMap) -> int:
        return f.cod

    def is_mono(self, f: MonotoneMap) -> bool:
        return f.is_injective

    def is_bicovering(self, a_leg: MonotoneMap, b_leg: MonotoneMap) -> bool:
        j = a_leg.cod
        return (b_leg.cod == j and a_leg == source_incl(a_leg.dom, j)
                and b_leg == target_incl(b_leg.dom, j) and a_leg.dom + b_leg.dom >= j)

    def pullback(self, a_leg: MonotoneMap, b_leg: MonotoneMap):
        if not self.is_bicovering(a_leg, b_leg):
            raise ValidationError("pullbacks are only computed for bicoverings")
        m, n, j = a_leg.dom, b_leg.dom, a_leg.cod
        k = m + n - j
        return k, target_incl(k, m), source_incl(k, n)

    def has_pullback(self, a_leg: MonotoneMap, b_leg: MonotoneMap) -> bool:
        """There is no empty ordinal, so two arrows with disjoint images have no pullback."""
        return bool(a_leg.image() & b_leg.image())

    def pullback_along(self, f: MonotoneMap, leg: MonotoneMap) -> MonotoneMap | None:
        """Preimage of the image of an initial or terminal inclusion; ``None`` when empty."""
        pre = [v for v in range(f.dom + 1) if f(v) in leg.image()]
        if not pre:
            return None
        if pre == list(range(len(pre))):
            return source_incl(len(pre) - 1, f.dom)
        if pre == list(range(f.dom - len(pre) + 1, f.dom + 1)):
            return target_incl(len(pre) - 1, f.dom)
        raise ValidationError("preimage is not an initial or terminal segment")

    def arrows(self, x: int, y: int) -> Iterator[MonotoneMap]:
        return all_monotone_maps(x, y)

    def objects(self, max_size: int) -> Iterator[int]:
        return iter(range(max_size + 1))

    def monos_into(self, c: int, max_size: int) -> Iterator[MonotoneMap]:
        for s in range(min(max_size, c) + 1):
            for values in combinations(range(c + 1), s + 1):
                yield MonotoneMap(s, c, values)

    def cover(self, a_leg: MonotoneMap, b_leg: MonotoneMap) -> "DeltaBicovering":
        if not self.is_bicovering(a_leg, b_leg):
            raise ValidationError("not a bicovering of the simplex category")
        return DeltaBicovering(a_leg.dom, b_leg.dom, a_leg.cod)


FINSET = FinSetSystem()
DELTA = DeltaSystem()


# -------------------------------------------------------- bicoverings ----


@dataclass(frozen=True)
class FinSetBicovering:
    """Injections ``a_leg : A -> C`` and ``b_leg : B -> C`` with jointly surjective images."""

    a_leg: FinMap
    b_leg: FinMap

    def __post_init__(self) -> None:
        if not FINSET.is_bicovering(self.a_leg, self.b_leg):
            raise ValidationError("legs must be injective, share a codomain and cover it")

    system = FINSET

    @classmethod
    def of_subsets(cls, a, b, c=None) -> "FinSetBicovering":
        c = ordered(set(a) | set(b)) if c is None else ordered(c)
        return cls(FinMap.inclusion(a, c), FinMap.inclusion(b, c))

    @property
    def A(self) -> tuple:
        return self.a_leg.domain

    @property
    def B(self) -> tuple:
        return self.b_leg.domain

    @property
    def C(self) -> tuple:
        return self.a_leg.codomain

    @property
    def is_inclusion(self) -> bool:
        return self.a_leg.is_inclusion and self.b_leg.is_inclusion

    def pullback(self):
        return FINSET.pullback(self.a_leg, self.b_leg)


@dataclass(frozen=True)
class DeltaBicovering:
    """``s_m : [m] -> [j] <- [n] : t_n`` with ``m + n >= j``; the overlap is ``[m + n - j]``."""

    m: int
    n: int
    j: int

    def __post_init__(self) -> None:
        if not (0 <= self.m <= self.j and 0 <= self.n <= self.j and self.m + self.n >= self.j):
            raise ValidationError(f"({self.m}, {self.n}) do not bicover [{self.j}]")

    system = DELTA

    @property
    def k(self) -> int:
        return self.m + self.n - self.j

    @property
    def a_leg(self) -> MonotoneMap:
        return source_incl(self.m, self.j)

    @property
    def b_leg(self) -> MonotoneMap:
        return target_incl(self.n, self.j)

    def pullback(self):
        return DELTA.pullback(self.a_leg, self.b_leg)


def _factor_through(system, mono, g):
    """The unique ``h`` with ``mono . h == g``, or ``None``."""
    if isinstance(mono, FinMap):
        inv = {y: x for x, y in zip(mono.domain, mono.images)}
        if not set(g.images) <= set(inv):
            return None
        return FinMap(g.domain, mono.domain, tuple(inv[y] for y in g.images))
    inv = {y: x for x, y in enumerate(mono.values)}
    if not set(g.values) <= set(inv):
        return None
    return MonotoneMap(g.dom, mono.dom, tuple(inv[y] for y in g.values))


@dataclass(frozen=True)
class BicoveringMorphism:
    """A map ``q : C' -> C`` sending the legs of ``source`` into the legs of ``target``."""

    source: Any
    target: Any
    q: Arrow

    def __post_init__(self) -> None:
        if self.q_a is None or self.q_b is None:
            raise ValidationError("q does not carry the legs of the source into those of the target")

    @property
    def system(self):
        return self.source.system

    @property
    def q_a(self):
        return _factor_through(self.system, self.target.a_leg,
                               self.system.compose(self.q, self.source.a_leg))

    @property
    def q_b(self):
        return _factor_through(self.system, self.target.b_leg,
                               self.system.compose(self.q, self.source.b_leg))

    def induced_on_pullbacks(self):
        """The map between the overlaps of source and target."""
        sys_ = self.system
        _, pa_s, _ = self.source.pullback()
        _, pa_t, _ = self.target.pullback()
        # overlap' -> A' -> A, then factor through overlap -> A
        return _factor_through(sys_, pa_t, sys_.compose(self.q_a, pa_s))

    def has_right_inverse(self) -> bool:
        """Search every arrow ``r`` back along the induced overlap map for ``map . r = id``."""
        sys_ = self.system
        ind = self.induced_on_pullbacks()
        if ind is None:
            return False
        target_id = sys_.identity(sys_.cod(ind))
        return any(sys_.compose(ind, r) == target_id
                   for r in sys_.arrows(sys_.cod(ind), sys_.dom(ind)))

    def is_surjective_on_overlap(self) -> bool:
        ind = self.induced_on_pullbacks()
        if ind is None:
            return False
        if isinstance(ind, FinMap):
            return ind.image() == set(ind.codomain)
        return ind.is_surjective

    @property
    def is_valid(self) -> bool:
        return self.is_surjective_on_overlap()


# ----------------------------------------------------- bicovering laws ----


def check_bicovering_system(system, is_bicovering: Callable | None = None, max_size: int = 3
                            ) -> list[str]:
    """Check mono legs, maximal bicoverings, stability under composition and
    under pullback on every small configuration.  Returns failure descriptions.

    Pullback stability is only required where the pulled-back cospan has a
    pullback itself; in the simplex category that excludes maps whose image
    misses the overlap.

    ``is_bicovering`` overrides the system's own predicate (used to test the
    checker against a deliberately broken system).
    """
    is_bic = is_bicovering or system.is_bicovering
    fails: list[str] = []
    for c in system.objects(max_size):
        idc = system.identity(c)
        if not is_bic(idc, idc):
            fails.append(f"maximal bicovering missing at {c!r}")
        monos = list(system.monos_into(c, max_size))
        covers = [(a, b) for a in monos for b in monos if is_bic(a, b)]
        for a, b in covers:
            if not (system.is_mono(a) and system.is_mono(b)):
                fails.append(f"non-mono leg in bicovering of {c!r}")
                continue
            _, pa, pb = system.pullback(a, b)
            # composition stability on the A side and the B side
            for inner in system.monos_into(system.dom(a), max_size):
                if is_bic(inner, pa) and not is_bic(system.compose(a, inner), b):
                    fails.append(f"composition stability fails at {c!r}")
            for inner in system.monos_into(system.dom(b), max_size):
                if is_bic(pb, inner) and not is_bic(a, system.compose(b, inner)):
                    fails.append(f"composition stability fails at {c!r}")
            # pullback stability along every arrow into c
            for c2 in system.objects(max_size):
                for f in system.arrows(c2, c):
                    fa = system.pullback_along(f, a)
                    fb = system.pullback_along(f, b)
                    if fa is None or fb is None or not system.has_pullback(fa, fb):
                        continue
                    if not is_bic(fa, fb):
                        fails.append(f"pullback stability fails along {f!r}")
    return fails


# -------------------------------------------------------------- gleaf ----


class Gleaf(ABC):
    """A presheaf with gluing.  Subclasses set ``system`` and implement the abstract methods."""

    name = "gleaf"
    system: Any = FINSET

    @abstractmethod
    def restrict(self, x: Section, f: Arrow) -> Section:
        """Restriction of a section over ``cod f`` to ``dom f``."""

    @abstractmethod
    def glue(self, cover, x: Section, y: Section) -> Section:
        """Glue sections over the two legs; raise :class:`CompatibilityError` if they disagree."""

    @abstractmethod
    def carrier(self, x: Section):
        """The object a section lives over."""

    def sections(self, obj) -> Iterator[Section]:
        raise NotImplementedError(f"{self.name} does not enumerate sections")

    def sample(self, obj, rng: random.Random) -> Section:
        return rng.choice(list(self.sections(obj)))

    def extend(self, x: Section, leg: Arrow, rng: random.Random) -> Section:
        """A random section over ``cod leg`` whose restriction along ``leg`` is ``x``."""
        cands = [s for s in self.sections(self.system.cod(leg)) if self.restrict(s, leg) == x]
        return rng.choice(cands)

    def to_json(self, x: Section) -> Any:
        return repr(x)

    def compatible(self, cover, x: Section, y: Section) -> bool:
        _, pa, pb = cover.pullback()
        return self.restrict(x, pa) == self.restrict(y, pb)

    def require_compatible(self, cover, x: Section, y: Section) -> None:
        if not self.compatible(cover, x, y):
            raise CompatibilityError("sections disagree on the overlap of the bicovering")


class FinSetGleaf(Gleaf):
    """A gleaf over finite sets; instances glue sections over subsets of ``C``.

    Bicoverings with non-inclusion legs are handled by transporting sections
    along the bijections onto the leg images.
    """

    system = FINSET

    @abstractmethod
    def glue_subsets(self, x: Section, y: Section, c: tuple) -> Section:
        """Glue ``x`` over ``A`` and ``y`` over ``B`` with ``A, B`` subsets covering ``c``."""

    def glue(self, cover: FinSetBicovering, x: Section, y: Section) -> Section:
        if tuple(self.carrier(x)) != cover.A or tuple(self.carrier(y)) != cover.B:
            raise DomainError("sections do not live over the legs of the bicovering")
        self.require_compatible(cover, x, y)
        if not cover.is_inclusion:
            x = self.restrict(x, _onto_image(cover.a_leg))
            y = self.restrict(y, _onto_image(cover.b_leg))
        return self.glue_subsets(x, y, cover.C)


def _onto_image(leg: FinMap) -> FinMap:
    """The inverse bijection ``image(leg) -> dom(leg)``."""
    inv = {y: x for x, y in zip(leg.domain, leg.images)}
    img = ordered(leg.images)
    return FinMap(img, leg.domain, tuple(inv[y] for y in img))


# ------------------------------------------------------------- laws ----


def gleaf_identity_equations(g: Gleaf, cover, x, y) -> Iterator[Equation]:
    sys_ = g.system
    glued = g.glue(cover, x, y)
    if cover.a_leg == sys_.identity(sys_.cod(cover.a_leg)):
        yield ("A = C: glue = first projection", glued, x)
    if cover.b_leg == sys_.identity(sys_.cod(cover.b_leg)):
        yield ("B = C: glue = second projection", glued, y)


def recover_equations(g: Gleaf, cover, x, y) -> Iterator[Equation]:
    glued = g.glue(cover, x, y)
    yield ("glue restricted to A = x", g.restrict(glued, cover.a_leg), x)
    yield ("glue restricted to B = y", g.restrict(glued, cover.b_leg), y)


def back_forth_equations(g: Gleaf, cover, inner, x_in, other, side: str = "a"
                         ) -> Iterator[Equation]:
    """``cover`` bicovers ``C`` by ``(A, B)``; ``inner`` is ``A' -> A`` (side ``"a"``) or
    ``B' -> B`` (side ``"b"``) and the shrunken cospan must bicover ``C`` as well."""
    sys_ = g.system
    if side == "a":
        small = sys_.cover(sys_.compose(cover.a_leg, inner), cover.b_leg)
        glued = g.glue(small, x_in, other)
    else:
        small = sys_.cover(cover.a_leg, sys_.compose(cover.b_leg, inner))
        glued = g.glue(small, other, x_in)
    again = g.glue(cover, g.restrict(glued, cover.a_leg), g.restrict(glued, cover.b_leg))
    yield (f"back-and-forth ({side} side)", glued, again)


def naturality_equations(g: Gleaf, morph: BicoveringMorphism, x, y) -> Iterator[Equation]:
    lhs = g.restrict(g.glue(morph.target, x, y), morph.q)
    rhs = g.glue(morph.source, g.restrict(x, morph.q_a), g.restrict(y, morph.q_b))
    yield ("glue then restrict along q = restrict then glue", lhs, rhs)


def two_step_gleaf_equations(g: Gleaf, cover, inner, x_in, other, side: str = "a"
                             ) -> Iterator[Equation]:
    """Glue a section over ``A'`` (``B'``) with one over ``B`` (``A``) in one step or via the overlap."""
    sys_ = g.system
    _, pa, pb = cover.pullback()
    if side == "a":
        direct = g.glue(sys_.cover(sys_.compose(cover.a_leg, inner), cover.b_leg), x_in, other)
        first = g.glue(sys_.cover(inner, pa), x_in, g.restrict(other, pb))
        yield ("two-step rule (A side)", direct, g.glue(cover, first, other))
    else:
        direct = g.glue(sys_.cover(cover.a_leg, sys_.compose(cover.b_leg, inner)), other, x_in)
        first = g.glue(sys_.cover(pb, inner), g.restrict(other, pa), x_in)
        yield ("two-step rule (B side)", direct, g.glue(cover, other, first))


def associativity_gleaf_equations(g: Gleaf, cover, a_inner, b_inner, x1, z, y1
                                  ) -> Iterator[Equation]:
    """``a_inner : A' -> A`` and ``b_inner : B' -> B`` with ``(A', A x_C B)`` bicovering ``A``
    and ``(A x_C B, B')`` bicovering ``B``; sections over ``A'``, the overlap and ``B'``."""
    sys_ = g.system
    _, pa, pb = cover.pullback()
    left = g.glue(sys_.cover(cover.a_leg, sys_.compose(cover.b_leg, b_inner)),
                  g.glue(sys_.cover(a_inner, pa), x1, z), y1)
    right = g.glue(sys_.cover(sys_.compose(cover.a_leg, a_inner), cover.b_leg),
                   x1, g.glue(sys_.cover(pb, b_inner), z, y1))
    yield ("associativity of gluing", left, right)


def check_gleaf_identity(g, cover, x, y) -> bool:
    return _holds(gleaf_identity_equations(g, cover, x, y))


def check_recover(g, cover, x, y) -> bool:
    return _holds(recover_equations(g, cover, x, y))


def check_gleaf_back_forth(g, cover, inner, x_in, other, side="a") -> bool:
    return _holds(back_forth_equations(g, cover, inner, x_in, other, side))


def check_partial_naturality(g, morph, x, y) -> bool:
    return _holds(naturality_equations(g, morph, x, y))


def check_two_step_gleaf(g, cover, inner, x_in, other, side="a") -> bool:
    return _holds(two_step_gleaf_equations(g, cover, inner, x_in, other, side))


def check_gleaf_associativity(g, cover, a_inner, b_inner, x1, z, y1) -> bool:
    return _holds(associativity_gleaf_equations(g, cover, a_inner, b_inner, x1, z, y1))


# -------------------------------------------- finset configurations ----


def subset_covers(points: tuple) -> Iterator[FinSetBicovering]:
    """Every bicovering of ``points`` by two subsets (inclusion legs)."""
    pts = ordered(points)
    for labels in product((0, 1, 2), repeat=len(pts)):
        a = [p for p, l in zip(pts, labels) if l in (0, 2)]
        b = [p for p, l in zip(pts, labels) if l in (1, 2)]
        yield FinSetBicovering.of_subsets(a, b, pts)


def canonical_subset_covers(points: tuple) -> Iterator[FinSetBicovering]:
    """One bicovering of ``points`` per orbit under permutations of the points:
    the labels (A only, B only, both) are assigned in sorted order."""
    pts = ordered(points)
    for labels in combinations_with_replacement((0, 1, 2), len(pts)):
        a = [p for p, l in zip(pts, labels) if l in (0, 2)]
        b = [p for p, l in zip(pts, labels) if l in (1, 2)]
        yield FinSetBicovering.of_subsets(a, b, pts)


def _subsets_containing(base: set, universe: tuple) -> Iterator[tuple]:
    free = [p for p in universe if p not in base]
    for r in range(len(free) + 1):
        for extra in combinations(free, r):
            yield ordered(base | set(extra))


def inner_subsets(cover: FinSetBicovering, side: str) -> Iterator[FinMap]:
    """Inclusions ``A' -> A`` (or ``B' -> B``) that keep the cospan a bicovering."""
    a, b = set(cover.A), set(cover.B)
    own, rest = (a, b) if side == "a" else (b, a)
    whole = cover.A if side == "a" else cover.B
    for sub in _subsets_containing(own - rest, whole):
        yield FinMap.inclusion(sub, whole)


def finset_morphisms_into(cover: FinSetBicovering, rng: random.Random, count: int,
                          extra_points: int = 1) -> list[BicoveringMorphism]:
    """Valid morphisms of bicoverings into ``cover``: the identity, the deletion of
    one point outside the overlap, the duplication of one point, and ``count``
    random ones."""
    out: list[BicoveringMorphism] = [BicoveringMorphism(cover, cover, FINSET.identity(cover.C))]
    a, b, c = set(cover.A), set(cover.B), cover.C
    if not c:
        return out
    overlap = a & b
    for p in c:
        if p in overlap:
            continue
        c2 = tuple(x for x in c if x != p)
        if not c2:
            continue
        src = FinSetBicovering.of_subsets([x for x in cover.A if x != p],
                                          [x for x in cover.B if x != p], c2)
        out.append(BicoveringMorphism(src, cover, FinMap.inclusion(c2, c)))
    for p in c:
        dup = ("dup", p)
        c2 = ordered(set(c) | {dup})
        a2 = set(cover.A) | ({dup} if p in a else set())
        b2 = set(cover.B) | ({dup} if p in b else set())
        q = FinMap.from_mapping({x: (p if x == dup else x) for x in c2}, c)
        out.append(BicoveringMorphism(FinSetBicovering.of_subsets(a2, b2, c2), cover, q))
    tries = 0
    while len(out) < count + 1 + 2 * len(c) and tries < 50 * (count + 1):
        tries += 1
        size = rng.randint(1, len(c) + extra_points)
        c2 = tuple(range(size))
        q = FinMap(c2, c, tuple(rng.choice(c) for _ in c2))
        a2, b2 = [], []
        for x in c2:
            y = q(x)
            opts = [s for s, ok in (("a", y in a), ("b", y in b)) if ok]
            pick = rng.choice(opts + (["ab"] if len(opts) == 2 else []))
            if "a" in pick:
                a2.append(x)
            if "b" in pick:
                b2.append(x)
        m = BicoveringMorphism(FinSetBicovering.of_subsets(a2, b2, c2), cover, q)
        if m.is_valid:
            out.append(m)
    return out


# ----------------------------------------------- delta configurations ----


def delta_covers(max_j: int) -> Iterator[DeltaBicovering]:
    for j in range(max_j + 1):
        for m in range(j + 1):
            for n in range(j - m, j + 1):
                yield DeltaBicovering(m, n, j)


def delta_generator_morphisms(cover: DeltaBicovering) -> Iterator[BicoveringMorphism]:
    """Generators whose source is ``cover``: one degeneracy ``eta_i`` of ``[j]`` or one
    face ``d_i`` into ``[j]`` together with the matching leg maps."""
    m, n, j = cover.m, cover.n, cover.j
    for i in range(j):
        q = degeneracy(i, j - 1)
        for tm, tn in ((m - 1, n), (m, n - 1), (m - 1, n - 1)):
            if tm < 0 or tn < 0 or tm + tn < j - 1 or tm > j - 1 or tn > j - 1:
                continue
            try:
                morph = BicoveringMorphism(cover, DeltaBicovering(tm, tn, j - 1), q)
            except ValidationError:
                continue
            if morph.is_valid:
                yield morph
    for i in range(j + 2):
        q = face(i, j + 1)
        for tm, tn in ((m + 1, n), (m, n + 1)):
            if tm > j + 1 or tn > j + 1:
                continue
            try:
                morph = BicoveringMorphism(cover, DeltaBicovering(tm, tn, j + 1), q)
            except ValidationError:
                continue
            if morph.is_valid:
                yield morph


def delta_morphisms(max_j: int) -> Iterator[BicoveringMorphism]:
    """Every valid morphism between bicoverings of ``[j'] -> [j]`` with ``j, j' <= max_j``."""
    covers = list(delta_covers(max_j))
    for src in covers:
        for tgt in covers:
            for q in all_monotone_maps(src.j, tgt.j):
                try:
                    morph = BicoveringMorphism(src, tgt, q)
                except ValidationError:
                    continue
                if morph.is_valid:
                    yield morph


# -------------------------------------------------- delta adapters ----


class BaseChangeDeltaGleaf(Gleaf):
    """A gleaf over finite sets viewed over the simplex category via ``[n] -> {0, ..., n}``."""

    system = DELTA

    def __init__(self, base: FinSetGleaf):
        self.base = base
        self.name = f"{base.name}/delta"

    @staticmethod
    def to_finmap(f: MonotoneMap) -> FinMap:
        return FinMap(tuple(range(f.dom + 1)), tuple(range(f.cod + 1)), f.values)

    def carrier(self, x):
        return len(self.base.carrier(x)) - 1

    def restrict(self, x, f: MonotoneMap):
        return self.base.restrict(x, self.to_finmap(f))

    def glue(self, cover: DeltaBicovering, x, y):
        fin = FinSetBicovering(self.to_finmap(cover.a_leg), self.to_finmap(cover.b_leg))
        return self.base.glue(fin, x, y)

    def sample(self, obj: int, rng):
        return self.base.sample(tuple(range(obj + 1)), rng)

    def extend(self, x, leg, rng):
        return self.base.extend(x, self.to_finmap(leg), rng)

    def to_json(self, x):
        return self.base.to_json(x)


class GleafCompository(Compository):
    """The compository of a gleaf over the simplex category: ``A o_k B`` glues along
    the bicovering ``([m], [n])`` of ``[m + n - k]``."""

    def __init__(self, g: Gleaf):
        if g.system is not DELTA:
            raise DomainError("only gleaves over the simplex category give compositories")
        self.g = g
        self.name = f"compository({g.name})"

    def dim(self, a):
        return self.g.carrier(a)

    def act(self, a, f):
        return self.g.restrict(a, f)

    def compose(self, a, k, b):
        m, n = self.dim(a), self.dim(b)
        if not 0 <= k <= min(m, n):
            raise DomainError(f"k={k} out of range for dimensions {m}, {n}")
        cover = DeltaBicovering(m, n, m + n - k)
        try:
            return self.g.glue(cover, a, b)
        except CompatibilityError as e:
            raise CompositionError(str(e)) from None

    def sample(self, n, rng):
        return self.g.sample(n, rng)

    def extend_initial(self, face_, n, rng):
        return self.g.extend(face_, source_incl(self.dim(face_), n), rng)

    def extend_terminal(self, face_, n, rng):
        return self.g.extend(face_, target_incl(self.dim(face_), n), rng)

    def simplices(self, n):
        return self.g.sections(n)

    def to_json(self, a):
        return self.g.to_json(a)


class CompositoryGleaf(Gleaf):
    """The gleaf over the simplex category of a compository: gluing along
    ``([m], [n])`` covering ``[j]`` is ``o_k`` with ``k = m + n - j``."""

    system = DELTA

    def __init__(self, c: Compository):
        self.c = c
        self.name = f"gleaf({c.name})"

    def carrier(self, x):
        return self.c.dim(x)

    def restrict(self, x, f):
        return self.c.act(x, f)

    def glue(self, cover: DeltaBicovering, x, y):
        if self.c.dim(x) != cover.m or self.c.dim(y) != cover.n:
            raise DomainError("sections do not live over the legs of the bicovering")
        try:
            return self.c.compose(x, cover.k, y)
        except CompositionError as e:
            raise CompatibilityError(str(e)) from None

    def sections(self, obj):
        return self.c.simplices(obj)

    def sample(self, obj, rng):
        return self.c.sample(obj, rng)

    def extend(self, x, leg, rng):
        k = self.c.dim(x)
        if leg == source_incl(k, leg.cod):
            return self.c.extend_initial(x, leg.cod, rng)
        if leg == target_incl(k, leg.cod):
            return self.c.extend_terminal(x, leg.cod, rng)
        return super().extend(x, leg, rng)

    def to_json(self, x):
        return self.c.to_json(x)


class MemoGleaf(Gleaf):
    """Wraps a gleaf and caches ``restrict`` and ``glue`` results (including
    compatibility failures)."""

    def __init__(self, inner: Gleaf):
        self.inner = inner
        self.name = inner.name
        self.system = inner.system
        self._restrict: dict = {}
        self._glue: dict = {}

    def carrier(self, x):
        return self.inner.carrier(x)

    def restrict(self, x, f):
        key = (x, f)
        try:
            return self._restrict[key]
        except KeyError:
            out = self._restrict[key] = self.inner.restrict(x, f)
            return out

    def glue(self, cover, x, y):
        key = (cover, x, y)
        try:
            out = self._glue[key]
        except KeyError:
            try:
                out = self.inner.glue(cover, x, y)
            except CompatibilityError as e:
                out = e
            self._glue[key] = out
        if isinstance(out, CompatibilityError):
            raise out
        return out

    def sections(self, obj):
        return self.inner.sections(obj)

    def sample(self, obj, rng):
        return self.inner.sample(obj, rng)

    def extend(self, x, leg, rng):
        return self.inner.extend(x, leg, rng)

    def to_json(self, x):
        return self.inner.to_json(x)


def delta_gleaf_to_compository(g: Gleaf) -> GleafCompository:
    return GleafCompository(g)


def compository_to_delta_gleaf(c: Compository) -> CompositoryGleaf:
    return CompositoryGleaf(c)


def base_change_to_delta(g: FinSetGleaf) -> BaseChangeDeltaGleaf:
    return BaseChangeDeltaGleaf(g)
