"""Joint distributions with exact rational weights.

A :class:`Dist` is a dense table over ``outcomes ** len(vars)``.  Restricting
along a map of variable sets sums out (or copies) variables; gluing two
distributions that agree on their shared marginal makes the two sides
conditionally independent given the shared variables.
"""
from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Hashable, Iterable, Mapping, Sequence

from .compository import Compository
from .errors import CompatibilityError, CompositionError, DomainError, ValidationError
from .finset import FinMap, ordered
from .gleaf import FinSetGleaf
from .simplex import MonotoneMap

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class Dist:
    """``w[i]`` is the probability of the ``i``-th assignment in
    ``itertools.product(outcomes, repeat=len(vars))`` order."""

    vars: tuple
    outcomes: tuple
    w: tuple

    def __post_init__(self) -> None:
        object.__setattr__(self, "vars", tuple(self.vars))
        object.__setattr__(self, "outcomes", tuple(self.outcomes))
        object.__setattr__(self, "w", tuple(Fraction(x) if not isinstance(x, Fraction) else x
                                            for x in self.w))
        self.validate()

    @classmethod
    def _trusted(cls, vars_: tuple, outcomes: tuple, w: tuple) -> "Dist":
        obj = object.__new__(cls)
        object.__setattr__(obj, "vars", vars_)
        object.__setattr__(obj, "outcomes", outcomes)
        object.__setattr__(obj, "w", w)
        return obj

    def __hash__(self) -> int:
        # memoized: these values are hashed repeatedly as cache keys
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.vars, self.outcomes, self.w))
            object.__setattr__(self, "_hash", h)
        return h

    def validate(self) -> "Dist":
        if len(set(self.vars)) != len(self.vars):
            raise ValidationError("variables must be distinct")
        if not self.outcomes or len(set(self.outcomes)) != len(self.outcomes):
            raise ValidationError("outcomes must be distinct and nonempty")
        if len(self.w) != len(self.outcomes) ** len(self.vars):
            raise ValidationError("table size must be |outcomes| ** |vars|")
        if any(x < 0 for x in self.w):
            raise ValidationError("weights must be nonnegative")
        if sum(self.w) != 1:
            raise ValidationError(f"weights sum to {sum(self.w)}, not 1")
        return self

    @classmethod
    def from_mapping(cls, vars_: Sequence, outcomes: Sequence,
                     weights: Mapping[tuple, object]) -> "Dist":
        """Weights keyed by outcome tuples; missing keys are 0."""
        outs = tuple(outcomes)
        for key in weights:
            if len(key) != len(vars_) or any(o not in outs for o in key):
                raise ValidationError(f"bad assignment {key!r}")
        return cls(tuple(vars_), outs, tuple(Fraction(weights.get(key, 0))
                                             for key in product(outs, repeat=len(vars_))))

    @classmethod
    def uniform_on(cls, vars_: Sequence, outcomes: Sequence, support: Iterable[tuple]) -> "Dist":
        sup = set(map(tuple, support))
        if not sup:
            raise ValidationError("support must be nonempty")
        return cls.from_mapping(vars_, outcomes, {s: Fraction(1, len(sup)) for s in sup})

    def as_dict(self, nonzero: bool = True) -> dict:
        return {key: x for key, x in zip(product(self.outcomes, repeat=len(self.vars)), self.w)
                if x or not nonzero}

    def prob(self, assignment: Mapping) -> Fraction:
        r = len(self.outcomes)
        pos = {o: i for i, o in enumerate(self.outcomes)}
        idx = 0
        for v in self.vars:
            idx = idx * r + pos[assignment[v]]
        return self.w[idx]

    def support(self) -> set:
        return {key for key, x in self.as_dict().items()}

    def to_json(self) -> dict:
        return {"vars": list(self.vars), "outcomes": list(self.outcomes),
                "w": {",".join(map(str, key)): str(x) for key, x in self.as_dict().items()}}

    @classmethod
    def from_json(cls, data: dict) -> "Dist":
        outcomes = list(data["outcomes"])
        by_str = {str(o): o for o in outcomes}
        weights = {}
        for key, x in data["w"].items():
            parts = key.split(",") if key else []
            weights[tuple(by_str[p] for p in parts)] = Fraction(x)
        return cls.from_mapping(data["vars"], outcomes, weights)


def _index_plan(n_src: int, src_pos: Sequence[int], r: int) -> list[int]:
    """For each assignment of ``n_src`` variables, the index of its image
    assignment ``beta . f`` (``src_pos[i]`` is ``f`` of target variable ``i``)."""
    out = []
    for beta in product(range(r), repeat=n_src):
        idx = 0
        for p in src_pos:
            idx = idx * r + beta[p]
        out.append(idx)
    return out


def dist_act(p: Dist, f) -> Dist:
    """Push ``p`` along ``beta -> beta . f``: marginals for injections, perfectly
    correlated copies where ``f`` repeats a variable."""
    if isinstance(f, MonotoneMap):
        if f.cod != len(p.vars) - 1:
            raise DomainError(f"map into [{f.cod}] applied to a distribution on {len(p.vars)} variables")
        dom = tuple(range(f.dom + 1))
        src_pos = list(f.values)
    else:
        if set(f.codomain) != set(p.vars):
            raise DomainError("map codomain differs from the distribution's variables")
        dom = ordered(f.domain)
        pos = {v: i for i, v in enumerate(p.vars)}
        src_pos = [pos[f(x)] for x in dom]
    r = len(p.outcomes)
    w = [ZERO] * (r ** len(dom))
    for i, x in zip(_index_plan(len(p.vars), src_pos, r), p.w):
        if x:
            w[i] += x
    return Dist._trusted(tuple(dom), p.outcomes, tuple(w))


def marginal(p: Dist, sub: Iterable) -> Dist:
    return dist_act(p, FinMap.inclusion(sub, p.vars))


def dist_glue(pa: Dist, pb: Dist, c: Iterable | None = None) -> Dist:
    """``w(g) = P_A(g|A) P_B(g|B) / P_{A&B}(g|A&B)``, and 0 where the denominator is 0."""
    if pa.outcomes != pb.outcomes:
        raise CompatibilityError("distributions use different outcome sets")
    a, b = set(pa.vars), set(pb.vars)
    vars_ = ordered(a | b) if c is None else ordered(c)
    if set(vars_) != a | b:
        raise DomainError("the two variable sets must cover C")
    shared = ordered(a & b)
    ra, rb = marginal(pa, shared), marginal(pb, shared)
    if ra != rb:
        raise CompatibilityError("marginals on the shared variables differ")
    r = len(pa.outcomes)
    pos = {v: i for i, v in enumerate(vars_)}
    ia = _index_plan(len(vars_), [pos[v] for v in pa.vars], r)
    ib = _index_plan(len(vars_), [pos[v] for v in pb.vars], r)
    im = _index_plan(len(vars_), [pos[v] for v in shared], r)
    w = []
    for xa, xb, xm in zip(ia, ib, im):
        den = ra.w[xm]
        w.append(pa.w[xa] * pb.w[xb] / den if den else ZERO)
    return Dist._trusted(vars_, pa.outcomes, tuple(w))


def dist_compose(p: Dist, k: int, q: Dist) -> Dist:
    """Composite on ``[m + n - k]``: ``P(a_0..a_m) Q(a_{m-k}..a_{m+n-k}) / R(a_{m-k}..a_m)``
    with ``R`` the marginal of ``P`` on its last ``k + 1`` variables."""
    m, n = len(p.vars) - 1, len(q.vars) - 1
    if p.vars != tuple(range(m + 1)) or q.vars != tuple(range(n + 1)):
        raise DomainError("compository simplices live on variables (0, ..., n)")
    if not 0 <= k <= min(m, n):
        raise DomainError(f"k={k} out of range for dimensions {m}, {n}")
    if p.outcomes != q.outcomes:
        raise CompositionError("distributions use different outcome sets")
    r = len(p.outcomes)
    # R indexed by the last k+1 coordinates of P
    rP = [ZERO] * (r ** (k + 1))
    size_tail = r ** (k + 1)
    for i, x in enumerate(p.w):
        rP[i % size_tail] += x
    rQ = [ZERO] * (r ** (k + 1))
    size_rest = r ** (n - k)
    for i, x in enumerate(q.w):
        rQ[i // size_rest] += x
    if rP != rQ:
        raise CompositionError(f"terminal {k}-marginal of P differs from initial {k}-marginal of Q")
    w = []
    for i in range(r ** (m + n - k + 1)):
        pi = i // size_rest          # a_0 .. a_m
        qi = i % (r ** (n + 1))      # a_{m-k} .. a_{m+n-k}
        den = rP[pi % size_tail]
        w.append(p.w[pi] * q.w[qi] / den if den else ZERO)
    return Dist._trusted(tuple(range(m + n - k + 1)), p.outcomes, tuple(w))


# ---------------------------------------------------- generation ----


def random_dist(vars_: Iterable, outcomes: Sequence, rng: random.Random,
                max_weight: int = 3) -> Dist:
    """Random integer weights ``0..max_weight`` (some cells zero), normalized."""
    vs = ordered(vars_)
    size = len(outcomes) ** len(vs)
    while True:
        raw = [rng.randint(0, max_weight) for _ in range(size)]
        total = sum(raw)
        if total:
            return Dist._trusted(vs, tuple(outcomes), tuple(Fraction(x, total) for x in raw))


def random_extension(p: Dist, vars_: Iterable, rng: random.Random, max_weight: int = 3) -> Dist:
    """``p`` times a random conditional kernel for the new variables, so that the
    marginal on ``p.vars`` is exactly ``p``."""
    vs = ordered(set(vars_) | set(p.vars))
    new = [v for v in vs if v not in set(p.vars)]
    r = len(p.outcomes)
    kernel = {}
    for key in product(range(r), repeat=len(p.vars)):
        while True:
            raw = [rng.randint(0, max_weight) for _ in range(r ** len(new))]
            if sum(raw):
                break
        kernel[key] = [Fraction(x, sum(raw)) for x in raw]
    w = []
    for full in product(range(r), repeat=len(vs)):
        old = tuple(full[vs.index(v)] for v in p.vars)
        fresh = [full[vs.index(v)] for v in new]
        oi = 0
        for x in old:
            oi = oi * r + x
        ni = 0
        for x in fresh:
            ni = ni * r + x
        w.append(p.w[oi] * kernel[old][ni])
    return Dist._trusted(vs, p.outcomes, tuple(w))


def relabel(p: Dist, vars_: Sequence) -> Dist:
    """Rename variables positionally (``p.vars[i] -> vars_[i]``) and reorder canonically."""
    return dist_act(p, FinMap(ordered(vars_), p.vars,
                              tuple(p.vars[list(vars_).index(v)] for v in ordered(vars_))))


# ------------------------------------------------------ instances ----


class ProbabilityCompository(Compository):
    """Distributions on ``O ** [n]``; composition makes the two ends conditionally
    independent given the shared face."""

    def __init__(self, outcomes: Sequence = (0, 1), max_weight: int = 3):
        self.outcomes = tuple(outcomes)
        self.max_weight = max_weight
        self.name = "probability"

    def dim(self, a: Dist) -> int:
        return len(a.vars) - 1

    def act(self, a, f):
        return dist_act(a, f)

    def compose(self, a, k, b):
        return dist_compose(a, k, b)

    def sample(self, n, rng):
        return random_dist(range(n + 1), self.outcomes, rng, self.max_weight)

    def extend_initial(self, face_, n, rng):
        return random_extension(face_, range(n + 1), rng, self.max_weight)

    def extend_terminal(self, face_, n, rng):
        k = self.dim(face_)
        shifted = relabel(face_, range(n - k, n + 1))
        return random_extension(shifted, range(n + 1), rng, self.max_weight)

    def to_json(self, a):
        return a.to_json()


class ProbabilityGleaf(FinSetGleaf):
    """Distributions over finite sets of variables."""

    def __init__(self, outcomes: Sequence = (0, 1), max_weight: int = 3):
        self.outcomes = tuple(outcomes)
        self.max_weight = max_weight
        self.name = "probability"

    def carrier(self, x):
        return x.vars

    def restrict(self, x, f):
        return dist_act(x, f)

    def glue_subsets(self, x, y, c):
        return dist_glue(x, y, c)

    def sample(self, obj, rng):
        return random_dist(obj, self.outcomes, rng, self.max_weight)

    def extend(self, x, leg, rng):
        if not leg.is_inclusion:
            raise DomainError("distribution extension expects an inclusion")
        return random_extension(x, leg.codomain, rng, self.max_weight)

    def to_json(self, x):
        return x.to_json()


# ------------------------------------------------ marginal problem ----


class JointExists(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


def deterministic_joint_exists(pieces: Sequence[Dist]) -> JointExists:
    """Decide existence of a joint distribution with the given marginals, via supports.

    Any joint's support projects into every given support, so an empty natural
    join of the supports rules a joint out.  Otherwise the uniform distribution
    on the join is tried as a witness; if its marginals miss, the answer is
    ``UNKNOWN``.
    """
    from .relational import Relation, natural_join_all

    if not pieces:
        return JointExists.YES
    outcomes = pieces[0].outcomes
    if any(p.outcomes != outcomes for p in pieces):
        raise DomainError("all pieces must share one outcome set")
    rels = [support_relation(p) for p in pieces]
    joined: Relation = natural_join_all(rels)
    if not joined.rows:
        return JointExists.NO
    witness = Dist.uniform_on(joined.attrs, outcomes,
                              [tuple(row[a] for a in joined.attrs) for row in joined.dicts()])
    if all(marginal(witness, p.vars) == p for p in pieces):
        return JointExists.YES
    return JointExists.UNKNOWN


def support_relation(p: Dist):
    """The relation of assignments with nonzero probability."""
    from .relational import Relation

    domains = {v: p.outcomes for v in p.vars}
    return Relation.from_dicts(domains, [dict(zip(p.vars, key)) for key in p.support()])


def correlation_triple(anti: bool = True) -> list[Dist]:
    """Perfect correlation on ``(A, B)`` and ``(B, C)``, and perfect
    anticorrelation (or correlation) on ``(A, C)``; outcomes ``{0, 1}``, uniform."""
    same = [(0, 0), (1, 1)]
    diff = [(0, 1), (1, 0)]
    return [Dist.uniform_on(("A", "B"), (0, 1), same),
            Dist.uniform_on(("B", "C"), (0, 1), same),
            Dist.uniform_on(("A", "C"), (0, 1), diff if anti else same)]
