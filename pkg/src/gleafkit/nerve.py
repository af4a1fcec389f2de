"""Nerves of finite categories.

An ``n``-simplex is a path of ``n`` composable arrows.  Faces compose
adjacent arrows (or drop an end), degeneracies insert identities and the
composition of two overlapping paths is their concatenation.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import permutations, product
from typing import Hashable, Iterable, Iterator, Mapping

from .compository import Compository
from .errors import CompositionError, DomainError, ValidationError
from .finset import ordered
from .simplex import MonotoneMap


@dataclass(frozen=True)
class FinCategory:
    """A finite category given by an explicit composition table.

    ``morphisms`` maps an arrow id to ``(src, tgt)``; ``comp`` maps ``(g, f)``
    with ``tgt(f) == src(g)`` to the id of ``g . f``.  Totality, unit laws and
    associativity are checked on construction.
    """

    objects: tuple
    morphisms: Mapping[Hashable, tuple]
    identities: Mapping[Hashable, Hashable]
    comp: Mapping[tuple, Hashable]

    def __post_init__(self) -> None:
        object.__setattr__(self, "objects", ordered(self.objects))
        object.__setattr__(self, "morphisms", dict(self.morphisms))
        object.__setattr__(self, "identities", dict(self.identities))
        object.__setattr__(self, "comp", dict(self.comp))
        self._validate()

    def __hash__(self) -> int:
        return hash((self.objects, tuple(sorted(map(repr, self.morphisms.items())))))

    def _validate(self) -> None:
        objs = set(self.objects)
        for m, (s, t) in self.morphisms.items():
            if s not in objs or t not in objs:
                raise ValidationError(f"arrow {m!r} has an endpoint outside the objects")
        if set(self.identities) != objs:
            raise ValidationError("every object needs exactly one identity")
        for x, i in self.identities.items():
            if self.morphisms.get(i) != (x, x):
                raise ValidationError(f"identity {i!r} is not an endo-arrow of {x!r}")
        for (g, f), gf in self.comp.items():
            if g not in self.morphisms or f not in self.morphisms or gf not in self.morphisms:
                raise ValidationError("composition table mentions an unknown arrow")
            if self.morphisms[f][1] != self.morphisms[g][0]:
                raise ValidationError(f"table composes non-composable {g!r} after {f!r}")
            if self.morphisms[gf] != (self.morphisms[f][0], self.morphisms[g][1]):
                raise ValidationError(f"{gf!r} has the wrong endpoints for {g!r} . {f!r}")
        for f, (_, b) in self.morphisms.items():
            for g, (c, _) in self.morphisms.items():
                if b == c and (g, f) not in self.comp:
                    raise ValidationError(f"composite {g!r} . {f!r} is missing")
        for f, (a, b) in self.morphisms.items():
            if self.comp[(self.identities[b], f)] != f or self.comp[(f, self.identities[a])] != f:
                raise ValidationError(f"identities are not neutral on {f!r}")
        outgoing: dict = {}
        for f, (a, _) in self.morphisms.items():
            outgoing.setdefault(a, []).append(f)
        for f, (_, b) in self.morphisms.items():
            for g in outgoing.get(b, ()):
                gf = self.comp[(g, f)]
                for h in outgoing.get(self.morphisms[g][1], ()):
                    if self.comp[(h, gf)] != self.comp[(self.comp[(h, g)], f)]:
                        raise ValidationError(f"composition is not associative at {h!r}, {g!r}, {f!r}")

    def src(self, f) -> Hashable:
        return self.morphisms[f][0]

    def tgt(self, f) -> Hashable:
        return self.morphisms[f][1]

    def then(self, f, g):
        """``g . f`` (first ``f``, then ``g``)."""
        try:
            return self.comp[(g, f)]
        except KeyError:
            raise CompositionError(f"{g!r} cannot follow {f!r}") from None

    @cached_property
    def outgoing(self) -> dict:
        out: dict = {x: [] for x in self.objects}
        for f in ordered(self.morphisms):
            out[self.src(f)].append(f)
        return out

    @classmethod
    def from_poset(cls, elements: Iterable, leq: Iterable[tuple]) -> "FinCategory":
        """The category with one arrow ``"a->b"`` for each ``a <= b``; ``leq`` is closed reflexively."""
        els = ordered(elements)
        rel = set(leq) | {(x, x) for x in els}
        name = {p: f"{p[0]}->{p[1]}" for p in rel}
        morphisms = {name[(a, b)]: (a, b) for a, b in rel}
        comp = {}
        for a, b in rel:
            for c, d in rel:
                if b == c:
                    if (a, d) not in rel:
                        raise ValidationError("order relation is not transitive")
                    comp[(name[(c, d)], name[(a, b)])] = name[(a, d)]
        return cls(els, morphisms, {x: name[(x, x)] for x in els}, comp)

    @classmethod
    def from_monoid(cls, elements: Iterable, mult: Mapping[tuple, Hashable], unit) -> "FinCategory":
        """One-object category; ``mult[(g, f)]`` is ``g . f``."""
        els = ordered(elements)
        return cls(("*",), {e: ("*", "*") for e in els}, {"*": unit}, dict(mult))

    @classmethod
    def chain(cls, n: int) -> "FinCategory":
        """The ordinal ``[n]`` as a category."""
        return cls.from_poset(range(n + 1), [(a, b) for a in range(n + 1) for b in range(a, n + 1)])

    def to_json(self) -> dict:
        return {
            "objects": list(self.objects),
            "morphisms": [{"id": f, "src": s, "tgt": t} for f, (s, t) in sorted(
                self.morphisms.items(), key=lambda kv: repr(kv[0]))],
            "comp": [[g, f, gf] for (g, f), gf in sorted(self.comp.items(), key=repr)],
            "identities": {str(x): i for x, i in self.identities.items()},
        }

    @classmethod
    def from_json(cls, data: dict) -> "FinCategory":
        objects = list(data["objects"])
        by_str = {str(x): x for x in objects}
        morphisms = {m["id"]: (m["src"], m["tgt"]) for m in data["morphisms"]}
        comp = {(g, f): gf for g, f, gf in data["comp"]}
        identities = {by_str.get(str(x), x): i for x, i in data["identities"].items()}
        return cls(objects, morphisms, identities, comp)


@dataclass(frozen=True)
class NervePath:
    """``objects[i-1] --arrows[i-1]--> objects[i]``; length ``len(arrows)``."""

    objects: tuple
    arrows: tuple

    def __post_init__(self) -> None:
        object.__setattr__(self, "objects", tuple(self.objects))
        object.__setattr__(self, "arrows", tuple(self.arrows))
        if len(self.objects) != len(self.arrows) + 1:
            raise ValidationError("a path of n arrows has n + 1 objects")

    @property
    def length(self) -> int:
        return len(self.arrows)

    def validate(self, cat: FinCategory) -> "NervePath":
        for i, f in enumerate(self.arrows):
            if cat.morphisms.get(f) != (self.objects[i], self.objects[i + 1]):
                raise ValidationError(f"arrow {f!r} does not connect position {i} to {i + 1}")
        for x in self.objects:
            if x not in cat.identities:
                raise ValidationError(f"unknown object {x!r}")
        return self

    def to_json(self) -> dict:
        return {"objects": list(self.objects), "arrows": list(self.arrows)}

    @classmethod
    def from_json(cls, data: dict) -> "NervePath":
        return cls(tuple(data["objects"]), tuple(data["arrows"]))


def _composite(cat: FinCategory, path: NervePath, lo: int, hi: int):
    """The composite arrow from position ``lo`` to ``hi`` along the path."""
    arrow = cat.identities[path.objects[lo]]
    for i in range(lo, hi):
        arrow = cat.then(arrow, path.arrows[i])
    return arrow


def nerve_act(cat: FinCategory, p: NervePath, f: MonotoneMap) -> NervePath:
    """Restrict the path along ``f``; skipped positions compose, repeated ones insert identities."""
    if f.cod != p.length:
        raise DomainError(f"map into [{f.cod}] applied to a path of length {p.length}")
    objs = tuple(p.objects[v] for v in f.values)
    arrows = tuple(_composite(cat, p, f.values[i - 1], f.values[i]) for i in range(1, f.dom + 1))
    return NervePath(objs, arrows)


def nerve_compose(a: NervePath, k: int, b: NervePath) -> NervePath:
    """Concatenate ``a`` with the part of ``b`` after its initial ``k``-face."""
    m, n = a.length, b.length
    if not 0 <= k <= min(m, n):
        raise DomainError(f"k={k} out of range for lengths {m}, {n}")
    if a.objects[m - k:] != b.objects[:k + 1] or a.arrows[m - k:] != b.arrows[:k]:
        raise CompositionError(
            f"terminal {k}-face {a.objects[m - k:]}/{a.arrows[m - k:]} of A differs from "
            f"initial {k}-face {b.objects[:k + 1]}/{b.arrows[:k]} of B")
    return NervePath(a.objects + b.objects[k + 1:], a.arrows + b.arrows[k:])


def all_paths(cat: FinCategory, n: int) -> Iterator[NervePath]:
    """Every path of ``n`` arrows, in a fixed order."""
    def grow(objs, arrows):
        if len(arrows) == n:
            yield NervePath(objs, arrows)
            return
        for f in cat.outgoing[objs[-1]]:
            yield from grow(objs + (cat.tgt(f),), arrows + (f,))

    for x in cat.objects:
        yield from grow((x,), ())


class NerveCompository(Compository):
    name = "nerve"

    def __init__(self, cat: FinCategory):
        self.cat = cat
        self._paths: dict[int, tuple] = {}

    def dim(self, a: NervePath) -> int:
        return a.length

    def act(self, a: NervePath, f: MonotoneMap) -> NervePath:
        return nerve_act(self.cat, a, f)

    def compose(self, a: NervePath, k: int, b: NervePath) -> NervePath:
        return nerve_compose(a, k, b)

    def simplices(self, n: int) -> tuple:
        if n not in self._paths:
            self._paths[n] = tuple(all_paths(self.cat, n))
        return self._paths[n]

    def extend_initial(self, face_, n, rng):
        grown = [face_]
        for _ in range(n - face_.length):
            p = grown[-1]
            f = rng.choice(self.cat.outgoing[p.objects[-1]])
            grown.append(NervePath(p.objects + (self.cat.tgt(f),), p.arrows + (f,)))
        return grown[-1]

    def extend_terminal(self, face_, n, rng):
        incoming: dict = {}
        for f, (s, t) in self.cat.morphisms.items():
            incoming.setdefault(t, []).append(f)
        p = face_
        for _ in range(n - face_.length):
            f = rng.choice(sorted(incoming[p.objects[0]], key=repr))
            p = NervePath((self.cat.src(f),) + p.objects, (f,) + p.arrows)
        return p

    def to_json(self, a: NervePath):
        return a.to_json()


def segal_fillers(c: NerveCompository, a: NervePath, k: int, b: NervePath) -> list[NervePath]:
    """All ``(m+n-k)``-paths whose initial ``m``-face is ``a`` and terminal ``n``-face is ``b``."""
    m, n = a.length, b.length
    return [p for p in c.simplices(m + n - k) if c.s(p, m) == a and c.t(p, n) == b]


def segal_unique(c: NerveCompository, a: NervePath, k: int, b: NervePath) -> bool:
    """Exactly one filler exists and it is the concatenation."""
    found = segal_fillers(c, a, k, b)
    return len(found) == 1 and found[0] == c.compose(a, k, b)


# ------------------------------------------------------- test categories ----


def _posets_up_to_iso(n: int) -> list[frozenset]:
    """Strict order relations on ``range(n)``, one per isomorphism class."""
    pairs = [(a, b) for a in range(n) for b in range(n) if a != b]
    perms = list(permutations(range(n)))
    seen: set = set()
    reps: list = []
    for bits in product((0, 1), repeat=len(pairs)):
        rel = frozenset(p for p, bit in zip(pairs, bits) if bit)
        if any((b, a) in rel for a, b in rel):
            continue
        if any((a, d) not in rel for a, b in rel for c, d in rel if b == c and a != d):
            continue
        canon = min(tuple(sorted((s[a], s[b]) for a, b in rel)) for s in perms)
        if canon not in seen:
            seen.add(canon)
            reps.append(rel)
    return reps


def _monoids_up_to_iso(n: int) -> list[dict]:
    """Multiplication tables on ``range(n)`` with unit 0, one per isomorphism class."""
    others = list(range(1, n))
    cells = [(g, f) for g in others for f in others]
    perms = [(0,) + p for p in permutations(others)]
    seen: set = set()
    reps: list = []
    for vals in product(range(n), repeat=len(cells)):
        mult = {(0, x): x for x in range(n)} | {(x, 0): x for x in range(n)}
        mult.update(zip(cells, vals))
        if any(mult[(mult[(h, g)], f)] != mult[(h, mult[(g, f)])]
               for h in range(n) for g in range(n) for f in range(n)):
            continue
        canon = min(tuple(sorted((s[g], s[f], s[v]) for (g, f), v in mult.items())) for s in perms)
        if canon not in seen:
            seen.add(canon)
            reps.append(mult)
    return reps


def codiscrete(n: int) -> FinCategory:
    """The groupoid with exactly one arrow between any two of ``n`` objects."""
    objs = range(n)
    name = {(a, b): f"{a}~{b}" for a in objs for b in objs}
    morphisms = {v: k for k, v in name.items()}
    comp = {(name[(b, c)], name[(a, b)]): name[(a, c)] for a in objs for b in objs for c in objs}
    return FinCategory(objs, morphisms, {x: name[(x, x)] for x in objs}, comp)


def parallel_pair() -> FinCategory:
    """Two objects with two parallel arrows ``u, v : 0 -> 1``."""
    morphisms = {"1_0": (0, 0), "1_1": (1, 1), "u": (0, 1), "v": (0, 1)}
    comp = {("1_0", "1_0"): "1_0", ("1_1", "1_1"): "1_1"}
    for f in ("u", "v"):
        comp[(f, "1_0")] = f
        comp[("1_1", f)] = f
    return FinCategory((0, 1), morphisms, {0: "1_0", 1: "1_1"}, comp)


def category_battery(max_objects: int = 4, max_monoid: int = 3) -> list[tuple[str, FinCategory]]:
    """A battery of small categories: every poset up to ``max_objects`` elements
    (up to isomorphism), every monoid up to order ``max_monoid``, a parallel pair
    and the codiscrete groupoid on three objects."""
    cats: list[tuple[str, FinCategory]] = []
    for n in range(1, max_objects + 1):
        for i, rel in enumerate(_posets_up_to_iso(n)):
            cats.append((f"poset{n}.{i}", FinCategory.from_poset(range(n), rel)))
    for n in range(1, max_monoid + 1):
        for i, mult in enumerate(_monoids_up_to_iso(n)):
            cats.append((f"monoid{n}.{i}", FinCategory.from_monoid(range(n), mult, 0)))
    cats.append(("parallel_pair", parallel_pair()))
    cats.append(("codiscrete3", codiscrete(3)))
    return cats
