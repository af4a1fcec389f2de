"""The simplex category: finite ordinals ``[n] = {0, ..., n}`` and monotone maps.

Maps are stored as explicit value sequences, so equality is tuple equality.
``compose(g, f)`` is "g after f".
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, reduce
from itertools import combinations_with_replacement
from typing import Iterator

from .errors import CompositionError, DomainError, ValidationError


@dataclass(frozen=True)
class MonotoneMap:
    """An order-preserving function ``[dom] -> [cod]``."""

    dom: int
    cod: int
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(self.values))
        if self.dom < 0 or self.cod < 0:
            raise ValidationError("ordinals [n] need n >= 0")
        if len(self.values) != self.dom + 1:
            raise ValidationError(
                f"map out of [{self.dom}] needs {self.dom + 1} values, got {len(self.values)}"
            )
        for v in self.values:
            if not 0 <= v <= self.cod:
                raise ValidationError(f"value {v} outside [{self.cod}]")
        if any(a > b for a, b in zip(self.values, self.values[1:])):
            raise ValidationError(f"values {self.values} are not weakly increasing")

    def __call__(self, v: int) -> int:
        return self.values[v]

    @property
    def is_injective(self) -> bool:
        return len(set(self.values)) == len(self.values)

    @property
    def is_surjective(self) -> bool:
        return set(self.values) == set(range(self.cod + 1))

    def image(self) -> frozenset[int]:
        return frozenset(self.values)

    def to_json(self) -> dict:
        return {"dom": self.dom, "cod": self.cod, "values": list(self.values)}

    @classmethod
    def from_json(cls, data: dict) -> "MonotoneMap":
        return cls(int(data["dom"]), int(data["cod"]), tuple(int(v) for v in data["values"]))


@lru_cache(maxsize=None)
def identity(n: int) -> MonotoneMap:
    return MonotoneMap(n, n, tuple(range(n + 1)))


@lru_cache(maxsize=None)
def face(k: int, n: int) -> MonotoneMap:
    """The face map ``[n-1] -> [n]`` whose image misses ``k``."""
    if n < 1 or not 0 <= k <= n:
        raise DomainError(f"face map needs n >= 1 and 0 <= k <= n, got k={k}, n={n}")
    return MonotoneMap(n - 1, n, tuple(v if v < k else v + 1 for v in range(n)))


@lru_cache(maxsize=None)
def degeneracy(k: int, n: int) -> MonotoneMap:
    """The degeneracy map ``[n+1] -> [n]`` hitting ``k`` twice."""
    if n < 0 or not 0 <= k <= n:
        raise DomainError(f"degeneracy map needs 0 <= k <= n, got k={k}, n={n}")
    return MonotoneMap(n + 1, n, tuple(v if v <= k else v - 1 for v in range(n + 2)))


@lru_cache(maxsize=None)
def source_incl(k: int, n: int) -> MonotoneMap:
    """Inclusion of the initial ``k``-face, ``[k] -> [n]``, ``v -> v``."""
    if not 0 <= k <= n:
        raise DomainError(f"source inclusion needs 0 <= k <= n, got k={k}, n={n}")
    return MonotoneMap(k, n, tuple(range(k + 1)))


@lru_cache(maxsize=None)
def target_incl(k: int, n: int) -> MonotoneMap:
    """Inclusion of the terminal ``k``-face, ``[k] -> [n]``, ``v -> v + n - k``."""
    if not 0 <= k <= n:
        raise DomainError(f"target inclusion needs 0 <= k <= n, got k={k}, n={n}")
    return MonotoneMap(k, n, tuple(range(n - k, n + 1)))


def compose(g: MonotoneMap, f: MonotoneMap) -> MonotoneMap:
    """Return ``g . f`` (apply ``f`` first)."""
    if f.cod != g.dom:
        raise CompositionError(f"cannot compose [{g.dom}]->[{g.cod}] after [{f.dom}]->[{f.cod}]")
    return MonotoneMap(f.dom, g.cod, tuple(g.values[v] for v in f.values))


def compose_all(*maps: MonotoneMap) -> MonotoneMap:
    """``compose_all(a, b, c) == compose(a, compose(b, c))``."""
    return reduce(compose, maps)


def all_monotone_maps(m: int, n: int) -> Iterator[MonotoneMap]:
    """Every monotone map ``[m] -> [n]``."""
    for values in combinations_with_replacement(range(n + 1), m + 1):
        yield MonotoneMap(m, n, values)


def simplicial_identity_failures(max_n: int = 6) -> list[dict]:
    """Check the generating relations among faces and degeneracies.

    Every instance whose objects stay within ``[0..max_n]`` is compared as a
    value sequence. Returns one record per failing instance.
    """
    failures: list[dict] = []

    def record(rel: str, lhs: MonotoneMap, rhs: MonotoneMap, **idx: int) -> None:
        if lhs != rhs:
            failures.append({"relation": rel, **idx, "lhs": lhs.to_json(), "rhs": rhs.to_json()})

    for n in range(2, max_n + 1):
        # faces [n-2] -> [n]
        for k in range(n + 1):
            for j in range(k):
                record("dd", compose(face(k, n), face(j, n - 1)),
                       compose(face(j, n), face(k - 1, n - 1)), n=n, j=j, k=k)
    for n in range(0, max_n - 1):
        # degeneracies [n+2] -> [n]
        for k in range(n + 1):
            for j in range(k + 1):
                record("ss", compose(degeneracy(k, n), degeneracy(j, n + 1)),
                       compose(degeneracy(j, n), degeneracy(k + 1, n + 1)), n=n, j=j, k=k)
    for n in range(0, max_n):
        # degeneracy after face, [n] -> [n+1] -> [n]
        for k in range(n + 1):
            for j in range(n + 2):
                lhs = compose(degeneracy(k, n), face(j, n + 1))
                if j < k:
                    rhs = compose(face(j, n), degeneracy(k - 1, n - 1))
                elif j in (k, k + 1):
                    rhs = identity(n)
                else:
                    rhs = compose(face(j - 1, n), degeneracy(k, n - 1))
                record("sd", lhs, rhs, n=n, j=j, k=k)
    for n in range(0, max_n + 1):
        for k in range(n + 1):
            s_word = compose_all(*(face(i, i) for i in range(n, k, -1))) if k < n else identity(n)
            t_word = compose_all(*(face(0, i) for i in range(n, k, -1))) if k < n else identity(n)
            record("s_k", source_incl(k, n), s_word, n=n, k=k)
            record("t_k", target_incl(k, n), t_word, n=n, k=k)
    return failures


def generator_factorization(f: MonotoneMap) -> list[MonotoneMap]:
    """Faces and degeneracies whose ``compose_all`` is ``f`` (faces first, degeneracies last).

    The identity factors as ``[identity(n)]``.
    """
    epis: list[MonotoneMap] = []
    h = f
    i = h.dom - 1
    while i >= 0:
        if h.values[i] == h.values[i + 1]:
            # h = h' . eta_i with h' forgetting position i + 1
            epis.insert(0, degeneracy(i, h.dom - 1))
            h = MonotoneMap(h.dom - 1, h.cod, h.values[: i + 1] + h.values[i + 2:])
        i -= 1
    monos: list[MonotoneMap] = []
    while h.dom != h.cod:
        k = min(set(range(h.cod + 1)) - set(h.values))
        monos.append(face(k, h.cod))
        h = MonotoneMap(h.dom, h.cod - 1, tuple(v if v < k else v - 1 for v in h.values))
    out = monos + epis
    return out or [identity(f.cod)]
