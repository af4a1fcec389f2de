"""Finite (pseudo)metrics with values in the nonnegative rationals plus infinity.

The same data serve two structures: metrics on ``[n]`` form a compository
(composition takes shortest paths through the shared face) and metrics on
finite sets form a gleaf (gluing takes shortest paths through the overlap).
Distances need not be symmetric unless the ``symmetric`` flag is set, and
distinct points may be at distance zero.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import lcm
from typing import Hashable, Iterable, Mapping

from .compository import Compository
from .errors import CompatibilityError, CompositionError, DomainError, ValidationError
from .extended import INF, ExtRational, ext, fmt
from .finset import FinMap, ordered
from .gleaf import FinSetGleaf
from .simplex import MonotoneMap


@dataclass(frozen=True)
class FiniteMetric:
    """Distances ``d[i][j]`` between ``points[i]`` and ``points[j]``."""

    points: tuple
    d: tuple
    symmetric: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "d", tuple(tuple(ext(v) for v in row) for row in self.d))
        self.validate()

    @classmethod
    def _trusted(cls, points: tuple, d: tuple, symmetric: bool) -> "FiniteMetric":
        """Skip validation for results that are metrics by construction."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "points", points)
        object.__setattr__(obj, "d", d)
        object.__setattr__(obj, "symmetric", symmetric)
        return obj

    def __hash__(self) -> int:
        # memoized: these values are hashed repeatedly as cache keys
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.points, self.d, self.symmetric))
            object.__setattr__(self, "_hash", h)
        return h

    def validate(self) -> "FiniteMetric":
        n = len(self.points)
        if len(set(self.points)) != n:
            raise ValidationError("points must be distinct")
        if len(self.d) != n or any(len(row) != n for row in self.d):
            raise ValidationError("distance matrix must be square over the points")
        d = self.d
        for i in range(n):
            if d[i][i] != 0:
                raise ValidationError(f"d(x, x) must be 0 at {self.points[i]!r}")
            for j in range(n):
                if d[i][j] < 0:
                    raise ValidationError("distances must be nonnegative")
                if self.symmetric and d[i][j] != d[j][i]:
                    raise ValidationError("symmetric metric has d(x, y) != d(y, x)")
        for i in range(n):
            for j in range(n):
                dij = d[i][j]
                for k in range(n):
                    if d[i][k] > dij + d[j][k]:
                        raise ValidationError(
                            f"triangle inequality fails at {self.points[i]!r}, "
                            f"{self.points[j]!r}, {self.points[k]!r}")
        return self

    @classmethod
    def from_dict(cls, points: Iterable[Hashable], dist: Mapping[tuple, object],
                  symmetric: bool = True) -> "FiniteMetric":
        """Build from ``{(x, y): value}``; the diagonal defaults to 0 and, for a
        symmetric metric, each pair may be given in one direction only."""
        pts = ordered(points)
        rows = []
        for x in pts:
            row = []
            for y in pts:
                if x == y:
                    v = dist.get((x, y), 0)
                elif (x, y) in dist:
                    v = dist[(x, y)]
                elif symmetric and (y, x) in dist:
                    v = dist[(y, x)]
                else:
                    raise ValidationError(f"missing distance for {(x, y)!r}")
                row.append(ext(v))
            rows.append(tuple(row))
        return cls(pts, tuple(rows), symmetric)

    def index(self, x) -> int:
        return self.points.index(x)

    def dist(self, x, y) -> ExtRational:
        return self.d[self.index(x)][self.index(y)]

    def to_json(self) -> dict:
        pairs = []
        for i, x in enumerate(self.points):
            for j, y in enumerate(self.points):
                if i != j and (not self.symmetric or i < j):
                    pairs.append([x, y, fmt(self.d[i][j])])
        return {"points": list(self.points), "symmetric": self.symmetric, "d": pairs}

    @classmethod
    def from_json(cls, data: dict) -> "FiniteMetric":
        symmetric = bool(data.get("symmetric", True))
        by_str = {str(p): p for p in data["points"]}
        dist = {(by_str.get(str(x), x), by_str.get(str(y), y)): ext(v) for x, y, v in data["d"]}
        return cls.from_dict(data["points"], dist, symmetric)


def metric_act(a: FiniteMetric, f) -> FiniteMetric:
    """``(A f)(x, y) = A(f(x), f(y))`` for a :class:`MonotoneMap` into ``[n]`` or a
    :class:`FinMap` into the points."""
    if isinstance(f, MonotoneMap):
        if f.cod != len(a.points) - 1:
            raise DomainError(f"map into [{f.cod}] applied to a metric on {len(a.points)} points")
        dom = tuple(range(f.dom + 1))
        idx = list(f.values)
    else:
        if set(f.codomain) != set(a.points):
            raise DomainError("map codomain differs from the metric's points")
        dom = ordered(f.domain)
        pos = {p: i for i, p in enumerate(a.points)}
        idx = [pos[f(x)] for x in dom]
    d = a.d
    return FiniteMetric._trusted(tuple(dom), tuple(tuple(d[i][j] for j in idx) for i in idx),
                                 a.symmetric)


def _restrict_to(a: FiniteMetric, sub: Iterable) -> FiniteMetric:
    return metric_act(a, FinMap.inclusion(sub, a.points))


def metric_glue(da: FiniteMetric, db: FiniteMetric, c: Iterable | None = None) -> FiniteMetric:
    """Glue metrics on subsets ``A`` and ``B`` of ``C = A | B``.

    Distances within ``A`` or within ``B`` are kept; a distance from ``A \\ B`` to
    ``B \\ A`` (or back) is the least two-leg sum through a point of ``A & B``,
    and infinite when the overlap is empty.
    """
    if da.symmetric != db.symmetric:
        raise CompatibilityError("cannot glue a symmetric metric with a non-symmetric one")
    a, b = set(da.points), set(db.points)
    pts = ordered(a | b) if c is None else ordered(c)
    if set(pts) != a | b:
        raise DomainError("the two point sets must cover C")
    overlap = ordered(a & b)
    if _restrict_to(da, overlap) != _restrict_to(db, overlap):
        raise CompatibilityError("metrics disagree on the overlap")
    ia = {p: i for i, p in enumerate(da.points)}
    ib = {p: i for i, p in enumerate(db.points)}
    DA, DB = da.d, db.d

    def dist(x, y):
        if x in ia and y in ia:
            return DA[ia[x]][ia[y]]
        if x in ib and y in ib:
            return DB[ib[x]][ib[y]]
        if x in ia:  # x only in A, y only in B
            return min((DA[ia[x]][ia[w]] + DB[ib[w]][ib[y]] for w in overlap), default=INF)
        return min((DB[ib[x]][ib[w]] + DA[ia[w]][ia[y]] for w in overlap), default=INF)

    return FiniteMetric._trusted(pts, tuple(tuple(dist(x, y) for y in pts) for x in pts),
                                 da.symmetric)


def metric_compose(a: FiniteMetric, k: int, b: FiniteMetric) -> FiniteMetric:
    """Composite on ``[m + n - k]`` of metrics on ``[m]`` and ``[n]`` sharing ``k + 1`` points.

    Inside ``[0, m]`` distances come from ``A``, inside ``[m - k, m + n - k]``
    from ``B``; otherwise they are minimized over the shared points.
    """
    m, n = len(a.points) - 1, len(b.points) - 1
    if a.points != tuple(range(m + 1)) or b.points != tuple(range(n + 1)):
        raise DomainError("compository simplices live on [n] = (0, ..., n)")
    if not 0 <= k <= min(m, n):
        raise DomainError(f"k={k} out of range for dimensions {m}, {n}")
    if a.symmetric != b.symmetric:
        raise CompositionError("cannot compose a symmetric metric with a non-symmetric one")
    sh = m - k
    A, B = a.d, b.d
    for x in range(k + 1):
        for y in range(k + 1):
            if A[x + sh][y + sh] != B[x][y]:
                raise CompositionError(
                    f"terminal {k}-face of A differs from initial {k}-face of B at ({x}, {y})")
    top = m + n - k
    shared = range(sh, m + 1)
    rows = []
    for x in range(top + 1):
        row = []
        for z in range(top + 1):
            if x <= m and z <= m:
                row.append(A[x][z])
            elif x >= sh and z >= sh:
                row.append(B[x - sh][z - sh])
            elif x < sh:
                row.append(min(A[x][y] + B[y - sh][z - sh] for y in shared))
            else:
                row.append(min(B[x - sh][y - sh] + A[y][z] for y in shared))
        rows.append(tuple(row))
    return FiniteMetric._trusted(tuple(range(top + 1)), tuple(rows), a.symmetric)


# ------------------------------------------------------- closure ----


def shortest_path_closure(points: tuple, edges: Mapping[tuple, ExtRational],
                          symmetric: bool) -> list[list[ExtRational]]:
    """All-pairs shortest paths (Floyd-Warshall) over the given directed edges."""
    n = len(points)
    pos = {p: i for i, p in enumerate(points)}
    d = [[Fraction(0) if i == j else INF for j in range(n)] for i in range(n)]
    for (x, y), v in edges.items():
        i, j = pos[x], pos[y]
        d[i][j] = min(d[i][j], v)
        if symmetric:
            d[j][i] = min(d[j][i], v)
    for k in range(n):
        dk = d[k]
        for i in range(n):
            dik = d[i][k]
            if dik is INF:
                continue
            di = d[i]
            for j in range(n):
                s = dik + dk[j]
                if s < di[j]:
                    di[j] = s
    return d


def extension_exists(partial: Mapping[tuple, object], points: Iterable | None = None,
                     symmetric: bool = True) -> bool:
    """Whether the specified distances extend to a (pseudo)metric on all points.

    The shortest-path closure of the data, with unspecified pairs treated as
    missing edges, is the largest metric bounded by the data, and every
    extension is bounded by it; so an extension exists iff the closure
    reproduces every specified value.
    """
    data = {(x, y): ext(v) for (x, y), v in partial.items()}
    pts = ordered(set(points or ()) | {p for pair in data for p in pair})
    for (x, y), v in data.items():
        if v < 0 or (x == y and v != 0):
            return False
        if symmetric and (y, x) in data and data[(y, x)] != v:
            return False
    closure = shortest_path_closure(pts, data, symmetric)
    pos = {p: i for i, p in enumerate(pts)}
    return all(closure[pos[x]][pos[y]] == v for (x, y), v in data.items())


def brute_force_extension_exists(partial: Mapping[tuple, object], points: Iterable | None = None,
                                 symmetric: bool = True) -> bool:
    """Exhaustive search for an extension over a rational grid.

    Any extension can be lowered to the shortest-path closure, whose finite
    values are sums of given values; so the multiples of ``1/L`` up to ``S``
    plus infinity suffice, with ``L`` the common denominator and ``S`` the sum
    of the finite data.
    """
    data = {(x, y): ext(v) for (x, y), v in partial.items()}
    pts = ordered(set(points or ()) | {p for pair in data for p in pair})
    finite = [v for v in data.values() if v is not INF]
    if any(v < 0 for v in finite):
        return False
    den = lcm(*(v.denominator for v in finite)) if finite else 1
    grid = [Fraction(i, den) for i in range(int(sum(finite) * den) + 1)] + [INF]
    pos = {p: i for i, p in enumerate(pts)}
    n = len(pts)
    d: list[list] = [[Fraction(0) if i == j else None for j in range(n)] for i in range(n)]
    for (x, y), v in data.items():
        i, j = pos[x], pos[y]
        for a, b in ((i, j), (j, i)) if symmetric else ((i, j),):
            if d[a][b] is not None and d[a][b] != v:
                return False
            d[a][b] = v
    free = [(i, j) for i in range(n) for j in range(n)
            if d[i][j] is None and (not symmetric or i < j)]

    def ok() -> bool:
        return all(d[i][k] <= d[i][j] + d[j][k]
                   for i in range(n) for j in range(n) for k in range(n))

    for values in product(grid, repeat=len(free)):
        for (i, j), v in zip(free, values):
            d[i][j] = v
            if symmetric:
                d[j][i] = v
        if ok():
            return True
    return False


# ---------------------------------------------------- generation ----


def random_metric(points: Iterable, rng: random.Random, symmetric: bool = True,
                  max_value: int = 4, denominator: int = 2,
                  inf_one_in: int | None = 10) -> FiniteMetric:
    """Closure of random grid weights ``i / denominator``; about one edge in
    ``inf_one_in`` is left out (none when ``inf_one_in`` is None)."""
    pts = ordered(points)
    edges = {}
    for i, x in enumerate(pts):
        for j, y in enumerate(pts):
            if i == j or (symmetric and j < i):
                continue
            if inf_one_in is not None and rng.randrange(inf_one_in) == 0:
                continue
            edges[(x, y)] = Fraction(rng.randint(0, max_value * denominator), denominator)
    d = shortest_path_closure(pts, edges, symmetric)
    return FiniteMetric(pts, tuple(map(tuple, d)), symmetric)


def random_extension(x: FiniteMetric, points: Iterable, rng: random.Random,
                     max_value: int = 4, denominator: int = 2, tries: int = 20,
                     finite: bool = False) -> FiniteMetric:
    """A random metric on ``points`` (a superset of ``x.points``) restricting to ``x``.

    New points get random edges to every point; the result is the closure,
    accepted when it leaves ``x`` unchanged.  If no sample succeeds the new
    points are attached through a single old point, which always works.
    With ``finite`` every new edge is drawn, so finite input stays finite.
    """
    old = set(x.points)
    pts = ordered(set(points) | old)
    new = [p for p in pts if p not in old]
    base = {(p, q): x.dist(p, q) for p in x.points for q in x.points if p != q}
    for _ in range(tries):
        edges = dict(base)
        for p in new:
            for q in pts:
                if q == p:
                    continue
                for pair in ((p, q), (q, p)) if not x.symmetric else ((p, q),):
                    if finite or rng.randrange(10) < 7:
                        edges[pair] = Fraction(rng.randint(0, max_value * denominator), denominator)
        d = shortest_path_closure(pts, edges, x.symmetric)
        cand = FiniteMetric(pts, tuple(map(tuple, d)), x.symmetric)
        if _restrict_to(cand, x.points) == x:
            return cand
    gaps = None if finite else 10
    if not x.points:
        return random_metric(pts, rng, x.symmetric, max_value, denominator, gaps)
    anchor = rng.choice(x.points)
    fresh = random_metric([anchor] + new, rng, x.symmetric, max_value, denominator, gaps)
    return metric_glue(x, fresh, pts)


# ------------------------------------------------------ instances ----


class MetricCompository(Compository):
    """Metrics on ``[n]``; composition through the shared face.

    Sampled metrics are finite unless ``allow_inf`` is set.
    """

    def __init__(self, symmetric: bool = True, max_value: int = 4, denominator: int = 2,
                 allow_inf: bool = False):
        self.symmetric = symmetric
        self.allow_inf = allow_inf
        self.max_value = max_value
        self.denominator = denominator
        self.name = "metric" if symmetric else "metric(nonsymmetric)"

    def dim(self, a: FiniteMetric) -> int:
        return len(a.points) - 1

    def act(self, a, f):
        return metric_act(a, f)

    def compose(self, a, k, b):
        return metric_compose(a, k, b)

    def sample(self, n, rng):
        return random_metric(range(n + 1), rng, self.symmetric, self.max_value, self.denominator,
                             10 if self.allow_inf else None)

    def extend_initial(self, face_, n, rng):
        return random_extension(face_, range(n + 1), rng, self.max_value, self.denominator,
                                finite=not self.allow_inf)

    def extend_terminal(self, face_, n, rng):
        k = self.dim(face_)
        shifted = metric_act(face_, FinMap(tuple(range(n - k, n + 1)), face_.points,
                                           face_.points))
        return random_extension(shifted, range(n + 1), rng, self.max_value, self.denominator,
                                finite=not self.allow_inf)

    def to_json(self, a):
        return a.to_json()


class MetricGleaf(FinSetGleaf):
    """Metrics on finite sets; restriction pulls back, gluing takes shortest paths."""

    def __init__(self, symmetric: bool = True, max_value: int = 4, denominator: int = 2):
        self.symmetric = symmetric
        self.max_value = max_value
        self.denominator = denominator
        self.name = "metric" if symmetric else "metric(nonsymmetric)"

    def carrier(self, x):
        return x.points

    def restrict(self, x, f):
        return metric_act(x, f)

    def glue_subsets(self, x, y, c):
        return metric_glue(x, y, c)

    def sample(self, obj, rng):
        return random_metric(obj, rng, self.symmetric, self.max_value, self.denominator)

    def extend(self, x, leg, rng):
        if not leg.is_inclusion:
            raise DomainError("metric extension expects an inclusion")
        return random_extension(x, leg.codomain, rng, self.max_value, self.denominator)

    def to_json(self, x):
        return x.to_json()


# ------------------------------------------------ counterexamples ----


def horn_union_data(faces: Mapping[int, FiniteMetric]) -> dict[tuple, ExtRational]:
    """Distances on the vertices of ``[3]`` prescribed by 2-simplex faces ``{i: metric}``."""
    data: dict[tuple, ExtRational] = {}
    for i, f in faces.items():
        verts = [v for v in range(4) if v != i]
        for a, x in enumerate(verts):
            for b, y in enumerate(verts):
                if a != b:
                    v = f.d[a][b]
                    if data.get((x, y), v) != v:
                        raise CompatibilityError("horn faces disagree on a shared edge")
                    data[(x, y)] = v
    return data


def find_unfillable_horn(bound: int = 3, seed: int = 0, symmetric: bool = True,
                         max_tries: int = 100000) -> dict[int, FiniteMetric]:
    """Search integer distances ``0..bound`` on ``[3]`` for an inner horn ``{0, 1, 3}``
    of valid 2-simplex metrics that no metric on ``[3]`` fills."""
    rng = random.Random(seed)
    pairs = [(x, y) for x in range(4) for y in range(4) if x != y and (not symmetric or x < y)]
    for _ in range(max_tries):
        vals = {p: Fraction(rng.randint(0, bound)) for p in pairs}
        if symmetric:
            vals.update({(y, x): v for (x, y), v in vals.items()})
        faces = {}
        try:
            for i in (0, 1, 3):
                verts = [v for v in range(4) if v != i]
                faces[i] = FiniteMetric(tuple(range(3)), tuple(
                    tuple(Fraction(0) if x == y else vals[(x, y)] for y in verts) for x in verts),
                    symmetric)
        except ValidationError:
            continue
        if not extension_exists(horn_union_data(faces), range(4), symmetric):
            return faces
    raise RuntimeError("no unfillable horn found within the search budget")
