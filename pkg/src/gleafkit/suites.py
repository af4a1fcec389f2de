"""Law suites: run every axiom and derived law over a set of configurations and
collect exact-equality failures into JSON-ready reports.

Configurations are produced in a fixed order and split into jobs; jobs may run
on a thread pool (``GLEAFKIT_THREADS``) but results are merged in job order, so
a report depends only on the configuration and seed.
"""
from __future__ import annotations

import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Iterator, Sequence

from . import compository as cl
from . import gleaf as gl
from .errors import GleafkitError, ValidationError
from .finset import FinMap, ordered

COMPOSITORY_AXIOMS = ("functoriality", "identity", "back_and_forth", "degeneracy", "face")
COMPOSITORY_DERIVED = ("source_target", "two_step", "associativity", "st_comp", "higher_identity")
GLEAF_LAWS = ("identity", "back_and_forth", "partial_naturality", "recover", "two_step",
              "associativity")
INSTANCES = ("nerve", "spans", "metric", "probability", "relational", "topology")
MODES = ("compository", "gleaf", "both")
MAX_FAILURES_KEPT = 20


# ------------------------------------------------------------ reports ----


@dataclass
class LawResult:
    instance: str
    law: str
    samples: int = 0
    failure_count: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failure_count == 0

    def merge(self, other: "LawResult") -> None:
        self.samples += other.samples
        self.failure_count += other.failure_count
        room = MAX_FAILURES_KEPT - len(self.failures)
        self.failures.extend(other.failures[:max(room, 0)])

    def to_json(self) -> dict:
        return {"instance": self.instance, "axiom": self.law, "samples": self.samples,
                "failure_count": self.failure_count, "failures": self.failures}


@dataclass
class SuiteReport:
    instance: str
    mode: str
    seed: int
    results: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def failure_count(self) -> int:
        return sum(r.failure_count for r in self.results)

    @property
    def ok(self) -> bool:
        return self.failure_count == 0

    def result(self, law: str, suite: str | None = None) -> LawResult:
        for r in self.results:
            if r.law == law and (suite is None or r.instance.endswith(suite)):
                return r
        raise KeyError(law)

    def to_json(self) -> dict:
        return {"instance": self.instance, "mode": self.mode, "seed": self.seed,
                "ok": self.ok, "failure_count": self.failure_count, "notes": self.notes,
                "results": [r.to_json() for r in self.results]}


class Recorder:
    """Counts checked equations per law and keeps the first few failures."""

    def __init__(self, instance: str, laws: Sequence[str]):
        self.instance = instance
        self.results = {law: LawResult(instance, law) for law in laws}

    def check(self, law: str, equations: Callable[[], Iterable[cl.Equation]],
              inputs: Callable[[], Any]) -> None:
        res = self.results[law]
        try:
            for label, lhs, rhs in equations():
                res.samples += 1
                if lhs != rhs:
                    self._fail(res, inputs, label, _jsonish(lhs), _jsonish(rhs))
        except GleafkitError as e:
            res.samples += 1
            self._fail(res, inputs, f"raised {type(e).__name__}", str(e), None)

    @staticmethod
    def _fail(res: LawResult, inputs, label, lhs, rhs) -> None:
        res.failure_count += 1
        if len(res.failures) < MAX_FAILURES_KEPT:
            res.failures.append({"input": inputs(), "equation": label, "lhs": lhs, "rhs": rhs})

    def merge(self, other: "Recorder") -> None:
        for law, res in other.results.items():
            self.results[law].merge(res)


def _jsonish(x: Any) -> Any:
    to_json = getattr(x, "to_json", None)
    return to_json() if callable(to_json) else repr(x)


def thread_count() -> int:
    raw = os.environ.get("GLEAFKIT_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ValidationError(f"GLEAFKIT_THREADS must be an integer, got {raw!r}") from None


def run_jobs(instance: str, laws: Sequence[str], jobs: Sequence[Callable[[Recorder], None]]
             ) -> list[LawResult]:
    """Run each job on a fresh recorder and merge in job order."""

    def one(job):
        rec = Recorder(instance, laws)
        job(rec)
        return rec

    threads = thread_count()
    if threads == 1 or len(jobs) < 2:
        recs = [one(j) for j in jobs]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            recs = list(pool.map(one, jobs))
    total = Recorder(instance, laws)
    for r in recs:
        total.merge(r)
    return [total.results[law] for law in laws]


def _chunks(items: Sequence, size: int) -> list[Sequence]:
    return [items[i:i + size] for i in range(0, len(items), size)] or [items]


# ----------------------------------------------- compository suites ----


def _pair_input(c: cl.Compository, a, k, b) -> dict:
    return {"A": c.to_json(a), "k": k, "B": c.to_json(b)}


def check_pair(rec: Recorder, c: cl.Compository, a, k, b, laws: Iterable[str]) -> None:
    """Record every pair-quantified law in ``laws`` for one composable pair."""
    groups = cl.pair_equations(c, a, k, b)
    for law in laws:
        if law in groups:
            rec.check(law, groups[law], lambda: _pair_input(c, a, k, b))


def check_simplex(rec: Recorder, c: cl.Compository, a, laws: Iterable[str]) -> None:
    m = c.dim(a)
    inputs = lambda: {"A": c.to_json(a)}
    for law in laws:
        if law == "functoriality":
            rec.check(law, lambda: cl.generator_functoriality_equations(c, a), inputs)
        elif law == "identity":
            rec.check(law, lambda: (e for k in range(m + 1) for e in cl.identity_equations(c, a, k)),
                      inputs)
        elif law == "higher_identity":
            rec.check(law, lambda: (e for k in range(m + 1)
                                    for e in cl.higher_identity_equations(c, a, k)), inputs)


def check_triple(rec: Recorder, c: cl.Compository, a, j, b, k, cc) -> None:
    rec.check("associativity", lambda: cl.associativity_equations(c, a, j, b, k, cc),
              lambda: {"A": c.to_json(a), "j": j, "B": c.to_json(b), "k": k,
                       "C": c.to_json(cc)})


SIMPLEX_LAWS = {"functoriality", "identity", "higher_identity"}


def exhaustive_compository_jobs(c: cl.Compository, laws: Sequence[str], max_composite: int,
                                chunk: int = 2000) -> list[Callable[[Recorder], None]]:
    """Jobs covering every composable pair (and triple) up to ``max_composite``."""
    pair_laws = [l for l in laws if l not in SIMPLEX_LAWS and l != "associativity"]
    simplex_laws = [l for l in laws if l in SIMPLEX_LAWS]
    jobs: list[Callable[[Recorder], None]] = []
    if simplex_laws:
        simplices = [a for n in range(max_composite + 1) for a in c.simplices(n)]
        for part in _chunks(simplices, chunk):
            jobs.append(lambda rec, part=part: [check_simplex(rec, c, a, simplex_laws)
                                                for a in part])
    if pair_laws:
        pairs = list(cl.composable_pairs(c, max_composite))
        for part in _chunks(pairs, chunk):
            jobs.append(lambda rec, part=part: [check_pair(rec, c, a, k, b, pair_laws)
                                                for a, k, b in part])
    if "associativity" in laws:
        triples = list(cl.composable_triples(c, max_composite))
        for part in _chunks(triples, chunk * 4):
            jobs.append(lambda rec, part=part: [check_triple(rec, c, *t) for t in part])
    return jobs


def random_compository_jobs(c: cl.Compository, laws: Sequence[str], samples: int, max_dim: int,
                            seed: int, tag: str, per_job: int = 50
                            ) -> list[Callable[[Recorder], None]]:
    """One seeded random pair (and triple) per sample; the laws on single
    simplices run on both members of the pair."""
    pair_laws = [l for l in laws if l not in SIMPLEX_LAWS and l != "associativity"]
    simplex_laws = [l for l in laws if l in SIMPLEX_LAWS]

    def job(lo: int, hi: int) -> Callable[[Recorder], None]:
        def run(rec: Recorder) -> None:
            for i in range(lo, hi):
                rng = random.Random(f"{tag}:{seed}:{i}")
                a, k, b = cl.random_pair(c, max_dim, rng)
                check_pair(rec, c, a, k, b, pair_laws)
                for x in (a, b):
                    check_simplex(rec, c, x, simplex_laws)
                if "associativity" in laws:
                    check_triple(rec, c, *cl.random_triple(c, max_dim, rng))
        return run

    return [job(lo, min(lo + per_job, samples)) for lo in range(0, samples, per_job)]


# ----------------------------------------------------- gleaf suites ----


def _cover_json(cover) -> dict:
    if isinstance(cover, gl.DeltaBicovering):
        return {"m": cover.m, "n": cover.n, "j": cover.j}
    return {"A": list(map(repr, cover.A)), "B": list(map(repr, cover.B)),
            "C": list(map(repr, cover.C))}


def _map_json(f) -> Any:
    if isinstance(f, FinMap):
        return {repr(x): repr(f(x)) for x in f.domain}
    return f.to_json()


def check_gleaf_pair(rec: Recorder, g: gl.Gleaf, cover, x, y, laws: Iterable[str],
                     rng: random.Random, morphisms: int = 2, morphs: list | None = None) -> None:
    """All gleaf laws whose configuration is determined by one compatible pair
    over ``cover`` (plus the inner subobjects and morphisms derived from it).
    ``morphs`` are the bicovering morphisms into ``cover`` for partial
    naturality; by default some are drawn with ``rng``."""
    laws = set(laws)
    base = lambda: {"cover": _cover_json(cover), "x": g.to_json(x), "y": g.to_json(y)}
    if "identity" in laws:
        rec.check("identity", lambda: gl.gleaf_identity_equations(g, cover, x, y), base)
    if "recover" in laws:
        rec.check("recover", lambda: gl.recover_equations(g, cover, x, y), base)
    _, pa, pb = cover.pullback()
    for side, whole, sec, other in (("a", cover.a_leg, x, y), ("b", cover.b_leg, y, x)):
        for inner in inner_maps(g.system, cover, side):
            x_in = g.restrict(sec, inner)
            inputs = lambda inner=inner, side=side: {**base(), "side": side,
                                                     "inner": _map_json(inner)}
            if "back_and_forth" in laws:
                rec.check("back_and_forth", lambda inner=inner, x_in=x_in, side=side, other=other:
                          gl.back_forth_equations(g, cover, inner, x_in, other, side), inputs)
            if "two_step" in laws:
                rec.check("two_step", lambda inner=inner, x_in=x_in, side=side, other=other:
                          gl.two_step_gleaf_equations(g, cover, inner, x_in, other, side), inputs)
    if "associativity" in laws:
        z = g.restrict(x, pa)
        for a_in in assoc_inner_maps(g.system, cover, "a"):
            for b_in in assoc_inner_maps(g.system, cover, "b"):
                x1, y1 = g.restrict(x, a_in), g.restrict(y, b_in)
                rec.check("associativity",
                          lambda a_in=a_in, b_in=b_in, x1=x1, y1=y1:
                          gl.associativity_gleaf_equations(g, cover, a_in, b_in, x1, z, y1),
                          lambda a_in=a_in, b_in=b_in: {**base(), "a_inner": _map_json(a_in),
                                                        "b_inner": _map_json(b_in)})
    if "partial_naturality" in laws and g.system is gl.FINSET:
        if morphs is None:
            morphs = gl.finset_morphisms_into(cover, rng, morphisms)
        for morph in morphs:
            rec.check("partial_naturality", lambda morph=morph: gl.naturality_equations(g, morph, x, y),
                      lambda morph=morph: {**base(), "source": _cover_json(morph.source),
                                           "q": _map_json(morph.q)})


def inner_maps(system, cover, side: str) -> list:
    """Monos ``A' -> A`` (or ``B' -> B``) keeping the shrunken cospan a bicovering."""
    if system is gl.FINSET:
        return list(gl.inner_subsets(cover, side))
    from .simplex import source_incl, target_incl
    m, n, j = cover.m, cover.n, cover.j
    if side == "a":
        return [source_incl(p, m) for p in range(max(j - n, 0), m + 1)]
    return [target_incl(p, n) for p in range(max(j - m, 0), n + 1)]


def assoc_inner_maps(system, cover, side: str) -> list:
    """``A' -> A`` with ``A'`` and the overlap covering ``A`` (and likewise for ``B``)."""
    if system is gl.FINSET:
        overlap = set(cover.A) & set(cover.B)
        whole = cover.A if side == "a" else cover.B
        return [FinMap.inclusion(sub, whole)
                for sub in gl._subsets_containing(set(whole) - overlap, whole)]
    from .simplex import source_incl, target_incl
    k = cover.k
    if side == "a":
        return [source_incl(p, cover.m) for p in range(cover.m - k, cover.m + 1)]
    return [target_incl(p, cover.n) for p in range(cover.n - k, cover.n + 1)]


def _overlap_index(g: gl.Gleaf, cover, ys: Iterable) -> dict:
    _, _, pb = cover.pullback()
    index: dict = {}
    for y in ys:
        index.setdefault(g.restrict(y, pb), []).append(y)
    return index


def exhaustive_gleaf_pairs(g: gl.Gleaf, cover) -> Iterator[tuple]:
    _, pa, _ = cover.pullback()
    index = _overlap_index(g, cover, g.sections(g.system.dom(cover.b_leg)))
    for x in g.sections(g.system.dom(cover.a_leg)):
        for y in index.get(g.restrict(x, pa), ()):
            yield x, y


def random_gleaf_pair(g: gl.Gleaf, cover, rng: random.Random) -> tuple:
    _, pa, pb = cover.pullback()
    x = g.sample(g.system.dom(cover.a_leg), rng)
    y = g.extend(g.restrict(x, pa), pb, rng)
    return x, y


def finset_gleaf_jobs(g: gl.Gleaf, laws: Sequence[str], max_points: int, seed: int, tag: str,
                      samples: int | None = None, min_points: int = 0,
                      ) -> list[Callable[[Recorder], None]]:
    """Exhaustive over covers (one per relabeling orbit) and compatible pairs when
    ``samples`` is None; otherwise ``samples`` random (cover, pair) configurations."""
    g = gl.MemoGleaf(g)
    jobs: list[Callable[[Recorder], None]] = []
    if samples is None:
        for size in range(min_points, max_points + 1):
            for ci, cover in enumerate(gl.canonical_subset_covers(tuple(range(size)))):
                def run(rec, cover=cover, size=size, ci=ci):
                    rng = random.Random(f"{tag}:{seed}:{size}:{ci}")
                    morphs = gl.finset_morphisms_into(cover, rng, 4)
                    for x, y in exhaustive_gleaf_pairs(g, cover):
                        check_gleaf_pair(rec, g, cover, x, y, laws, rng, morphs=morphs)
                jobs.append(run)
        return jobs

    def job(lo: int, hi: int):
        def run(rec: Recorder) -> None:
            for i in range(lo, hi):
                rng = random.Random(f"{tag}:{seed}:{i}")
                size = rng.randint(max(min_points, 1), max_points)
                pts = tuple(range(size))
                labels = [rng.randrange(3) for _ in pts]
                cover = gl.FinSetBicovering.of_subsets(
                    [p for p, l in zip(pts, labels) if l != 1],
                    [p for p, l in zip(pts, labels) if l != 0], pts)
                x, y = random_gleaf_pair(g, cover, rng)
                check_gleaf_pair(rec, g, cover, x, y, laws, rng)
        return run

    return [job(lo, min(lo + 20, samples)) for lo in range(0, samples, 20)]


def delta_gleaf_jobs(g: gl.Gleaf, laws: Sequence[str], max_j: int, seed: int, tag: str,
                     samples: int | None = None) -> list[Callable[[Recorder], None]]:
    """Gleaf laws over the simplex category.  Partial naturality is checked against
    the generator morphisms (bidegeneracies and bifaces) out of each bicovering,
    on sections over their targets."""
    g = gl.MemoGleaf(g)
    jobs: list[Callable[[Recorder], None]] = []
    pair_laws = [l for l in laws if l != "partial_naturality"]
    for ci, cover in enumerate(gl.delta_covers(max_j)):
        def run(rec, cover=cover, ci=ci):
            rng = random.Random(f"{tag}:{seed}:{ci}")
            if samples is None:
                pairs = list(exhaustive_gleaf_pairs(g, cover))
            else:
                pairs = [random_gleaf_pair(g, cover, rng) for _ in range(samples)]
            for x, y in pairs:
                check_gleaf_pair(rec, g, cover, x, y, pair_laws, rng)
            if "partial_naturality" not in laws:
                return
            for morph in gl.delta_generator_morphisms(cover):
                tgt = morph.target
                if samples is None:
                    tpairs = list(exhaustive_gleaf_pairs(g, tgt))
                else:
                    tpairs = [random_gleaf_pair(g, tgt, rng) for _ in range(samples)]
                for x, y in tpairs:
                    rec.check("partial_naturality",
                              lambda morph=morph, x=x, y=y: gl.naturality_equations(g, morph, x, y),
                              lambda morph=morph, x=x, y=y: {
                                  "source": _cover_json(morph.source),
                                  "target": _cover_json(morph.target),
                                  "q": morph.q.to_json(), "x": g.to_json(x), "y": g.to_json(y)})
        jobs.append(run)
    return jobs


# -------------------------------------------------------- registry ----


@dataclass(frozen=True)
class SuiteConfig:
    """What to check.  ``dims`` caps the composite dimension (compository mode) or
    the number of carrier points (gleaf mode); ``None`` picks the instance default."""

    instance: str
    mode: str = "both"
    samples: int = 200
    seed: int = 0
    dims: int | None = None
    laws: str = "all"

    def __post_init__(self) -> None:
        if self.instance not in INSTANCES:
            raise ValidationError(f"unknown instance {self.instance!r}; choose from {INSTANCES}")
        if self.mode not in MODES:
            raise ValidationError(f"unknown mode {self.mode!r}; choose from {MODES}")
        if self.laws not in ("all", "axioms", "derived"):
            raise ValidationError("laws must be all, axioms or derived")
        if self.samples < 0 or self.seed < 0:
            raise ValidationError("samples and seed must be natural numbers")
        lo, hi = DIM_LIMITS[self.instance]
        if self.dims is not None and not lo <= self.dims <= hi:
            raise ValidationError(f"dims for {self.instance} must lie in [{lo}, {hi}]")

    @classmethod
    def from_json(cls, data: dict) -> "SuiteConfig":
        unknown = set(data) - {"instance", "mode", "samples", "seed", "dims", "laws"}
        if unknown:
            raise ValidationError(f"unknown config keys {sorted(unknown)}")
        if "instance" not in data:
            raise ValidationError("config needs an instance")
        return cls(**data)

    def to_json(self) -> dict:
        return {"instance": self.instance, "mode": self.mode, "samples": self.samples,
                "seed": self.seed, "dims": self.dims, "laws": self.laws}


# (min, max) accepted for --dims per instance
DIM_LIMITS = {"nerve": (0, 4), "spans": (0, 3), "metric": (0, 6), "probability": (0, 5),
              "relational": (0, 3), "topology": (0, 4)}
# instance defaults: composite dimension for compositories, carrier size for gleaves
DEFAULT_COMPOSITORY_DIMS = {"nerve": 3, "spans": 3, "metric": 4, "probability": 3}
DEFAULT_GLEAF_DIMS = {"nerve": 3, "spans": 2, "metric": 6, "probability": 5, "relational": 3,
                      "topology": 4}


# relational gleaf coverage as (domain size, attribute count): exhaustive where every
# relation on the full schema can be listed, seeded sampling beyond (2 ** 27 relations
# on three ternary attributes)
RELATIONAL_EXHAUSTIVE = ((1, 3), (2, 3), (3, 2))
RELATIONAL_SAMPLED = ((3, 3),)


def compository_laws(which: str) -> tuple[str, ...]:
    return {"all": COMPOSITORY_AXIOMS + COMPOSITORY_DERIVED, "axioms": COMPOSITORY_AXIOMS,
            "derived": COMPOSITORY_DERIVED}[which]


def _compository_for(instance: str):
    if instance == "nerve":
        from .nerve import NerveCompository, category_battery
        return [(f"nerve[{name}]", NerveCompository(cat)) for name, cat in category_battery()]
    if instance == "spans":
        from .spans import SpanCompository, diamond
        return [("spans[diamond]", SpanCompository(diamond()))]
    if instance == "metric":
        from .metric import MetricCompository
        return [("metric", MetricCompository(symmetric=True))]
    if instance == "probability":
        from .probability import ProbabilityCompository
        return [("probability", ProbabilityCompository((0, 1)))]
    return []


def compository_suite(config: SuiteConfig) -> list[LawResult]:
    laws = compository_laws(config.laws)
    dims = config.dims if config.dims is not None else DEFAULT_COMPOSITORY_DIMS[config.instance]
    out: dict[str, LawResult] = {law: LawResult(f"{config.instance}/compository", law)
                                 for law in laws}
    for tag, c in _compository_for(config.instance):
        c = cl.MemoCompository(c)
        if config.instance in ("nerve", "spans"):
            jobs = exhaustive_compository_jobs(c, laws, dims)
        else:
            jobs = random_compository_jobs(c, laws, config.samples, dims, config.seed, tag)
        for res in run_jobs(tag, laws, jobs):
            out[res.law].merge(res)
    return list(out.values())


def _gleaf_for(instance: str, rng_outcomes: int = 2):
    if instance == "metric":
        from .metric import MetricGleaf
        return MetricGleaf(symmetric=True)
    if instance == "probability":
        from .probability import ProbabilityGleaf
        return ProbabilityGleaf(tuple(range(rng_outcomes)))
    if instance == "relational":
        from .relational import RelationalGleaf
        return RelationalGleaf(default_domain=(0, 1))
    if instance == "topology":
        from .topology import TopologyGleaf
        return TopologyGleaf()
    if instance == "nerve":
        from .nerve import NerveCompository, FinCategory
        return gl.compository_to_delta_gleaf(NerveCompository(FinCategory.chain(2)))
    if instance == "spans":
        from .spans import SpanCompository, diamond
        return gl.compository_to_delta_gleaf(SpanCompository(diamond()))
    raise ValidationError(f"no gleaf for {instance}")


def gleaf_suite(config: SuiteConfig) -> list[LawResult]:
    """Gleaf laws for one instance.

    metric, probability: seeded random configurations (probability alternates
    two- and three-element outcome sets); relational, topology: exhaustive over
    all covers and compatible pairs; nerve, spans: the compository viewed as a
    gleaf over the simplex category, exhaustive up to ``[dims]``.
    """
    laws = GLEAF_LAWS
    inst = config.instance
    dims = config.dims if config.dims is not None else DEFAULT_GLEAF_DIMS[inst]
    tag = f"{inst}/gleaf"
    if inst in ("nerve", "spans"):
        if inst == "nerve":
            from .nerve import NerveCompository, category_battery
            gleaves = [gl.compository_to_delta_gleaf(NerveCompository(cat))
                       for name, cat in category_battery(max_objects=3, max_monoid=2)]
        else:
            gleaves = [_gleaf_for("spans")]
        out = {law: LawResult(tag, law) for law in laws}
        for g in gleaves:
            for res in run_jobs(tag, laws, delta_gleaf_jobs(g, laws, dims, config.seed, tag)):
                out[res.law].merge(res)
        return list(out.values())
    if inst == "relational":
        from .relational import RelationalGleaf
        out = {law: LawResult(tag, law) for law in laws}
        for size, cap in RELATIONAL_EXHAUSTIVE:
            g = RelationalGleaf(default_domain=tuple(range(size)))
            jobs = finset_gleaf_jobs(g, laws, min(dims, cap), config.seed, tag)
            for res in run_jobs(tag, laws, jobs):
                out[res.law].merge(res)
        for size, cap in RELATIONAL_SAMPLED:
            if dims < cap:
                continue
            g = RelationalGleaf(default_domain=tuple(range(size)))
            jobs = finset_gleaf_jobs(g, laws, cap, config.seed, f"{tag}:{size}", samples=config.samples,
                                     min_points=cap)
            for res in run_jobs(tag, laws, jobs):
                out[res.law].merge(res)
        return list(out.values())
    if inst == "topology":
        return run_jobs(tag, laws, finset_gleaf_jobs(_gleaf_for(inst), laws, dims, config.seed, tag))
    if inst == "probability":
        out = {law: LawResult(tag, law) for law in laws}
        half = config.samples // 2
        for r, count in ((2, config.samples - half), (3, half)):
            g = _gleaf_for(inst, r)
            jobs = finset_gleaf_jobs(g, laws, dims, config.seed, f"{tag}:{r}", samples=count)
            for res in run_jobs(tag, laws, jobs):
                out[res.law].merge(res)
        return list(out.values())
    return run_jobs(tag, laws, finset_gleaf_jobs(_gleaf_for(inst), laws, dims, config.seed, tag,
                                                 samples=config.samples))


def run_suite(config: SuiteConfig) -> SuiteReport:
    report = SuiteReport(config.instance, config.mode, config.seed)
    has_comp = config.instance in DEFAULT_COMPOSITORY_DIMS
    if config.mode in ("compository", "both"):
        if has_comp:
            report.results.extend(compository_suite(config))
        elif config.mode == "compository":
            raise ValidationError(f"{config.instance} has no compository form")
        else:
            report.notes.append(f"{config.instance} has no compository form; gleaf laws only")
    if config.mode in ("gleaf", "both"):
        report.results.extend(gleaf_suite(config))
        if config.instance == "relational":
            dims = config.dims if config.dims is not None else DEFAULT_GLEAF_DIMS["relational"]
            sampled = [f"{n} attributes with domain size {d}" for d, n in RELATIONAL_SAMPLED
                       if dims >= n]
            if sampled:
                report.notes.append("sampled, not exhaustive: " + "; ".join(sampled))
    return report


# ------------------------------------------------ facenot scanning ----


@dataclass
class FacenotScan:
    holds: int = 0
    instances: int = 0
    first_violation: dict | None = None

    @property
    def all_hold(self) -> bool:
        return self.holds == self.instances


def facenot_scan(c: cl.Compository, pairs: Iterable[tuple], stop_at_first: bool = False
                 ) -> FacenotScan:
    """Evaluate the shared-face relation on every applicable index of each pair."""
    scan = FacenotScan()
    for a, k, b in pairs:
        for label, lhs, rhs in cl.facenot_instances(c, a, k, b):
            scan.instances += 1
            if lhs == rhs:
                scan.holds += 1
            elif scan.first_violation is None:
                scan.first_violation = {"input": _pair_input(c, a, k, b), "equation": label,
                                        "lhs": _jsonish(lhs), "rhs": _jsonish(rhs)}
                if stop_at_first:
                    return scan
    return scan


def random_pairs(c: cl.Compository, count: int, max_dim: int, seed: int, tag: str = "pairs"
                 ) -> Iterator[tuple]:
    for i in range(count):
        yield cl.random_pair(c, max_dim, random.Random(f"{tag}:{seed}:{i}"))
