"""Command-line front end.

Exit codes: 0 when everything checked holds, 1 when a law fails (or a
counterexample is not certified), 2 for usage, parse or input errors.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Any, Sequence

from . import jsonio
from .errors import GleafkitError

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
COUNTEREXAMPLES = ("span-horn", "metric-horn", "prob-triple", "topology-triple")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    from .suites import INSTANCES, MODES

    p = _Parser(prog="gleafkit", description="Exact checks of compository and gleaf laws.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="run law suites and print a JSON report")
    c.add_argument("--instance", choices=INSTANCES)
    c.add_argument("--mode", choices=MODES, default="both")
    c.add_argument("--samples", type=int, default=200)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--dims", type=int, default=None,
                   help="composite dimension (compository) or carrier size (gleaf) cap")
    c.add_argument("--laws", choices=("all", "axioms", "derived"), default="all")
    c.add_argument("--config", help="JSON suite configuration (overrides the flags)")
    c.add_argument("--out", help="write the report here instead of standard output")

    m = sub.add_parser("compose", help="compose two simplices along a shared k-face")
    m.add_argument("--instance", required=True, choices=("nerve", "spans", "metric", "probability"))
    m.add_argument("a")
    m.add_argument("k", type=int)
    m.add_argument("b")
    m.add_argument("--lattice", help="lattice JSON for spans (default: the diamond)")
    m.add_argument("--category", help="category JSON; nerve paths are then validated against it")
    m.add_argument("--out")

    g = sub.add_parser("glue", help="glue two compatible sections")
    g.add_argument("--instance", required=True, choices=INSTANCES)
    g.add_argument("a")
    g.add_argument("b")
    g.add_argument("--cover", help='{"C": [...]} for sets, {"j": n} for nerve/spans')
    g.add_argument("--lattice")
    g.add_argument("--out")

    a = sub.add_parser("act", help="apply a map to a simplex or section")
    a.add_argument("--instance", required=True, choices=INSTANCES)
    a.add_argument("value")
    a.add_argument("map")
    a.add_argument("--category", help="category JSON (needed for nerve)")
    a.add_argument("--out")

    x = sub.add_parser("counterexample", help="reproduce and certify a counterexample")
    x.add_argument("which", choices=COUNTEREXAMPLES)
    x.add_argument("--seed", type=int, default=0)
    x.add_argument("--out")
    return p


def _emit(data: Any, out: str | None) -> None:
    text = jsonio.dumps(data)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def _lattice(path: str | None):
    from .spans import FinLattice, diamond

    return diamond() if path is None else FinLattice.from_json(jsonio.load(path))


def _compository(instance: str, lattice: str | None = None, category: str | None = None):
    if instance == "nerve":
        from .nerve import FinCategory, NerveCompository
        # concatenation never composes arrows, so any category will do without --category
        cat = FinCategory.chain(0) if category is None else FinCategory.from_json(jsonio.load(category))
        return NerveCompository(cat)
    if instance == "spans":
        from .spans import SpanCompository
        return SpanCompository(_lattice(lattice))
    if instance == "metric":
        from .metric import MetricCompository
        return MetricCompository()
    from .probability import ProbabilityCompository
    return ProbabilityCompository()


def cmd_check(args) -> int:
    from .suites import SuiteConfig, run_suite

    if args.config:
        data = jsonio.load(args.config)
        if not isinstance(data, dict):
            raise UsageError("config must be a JSON object")
        config = SuiteConfig.from_json(data)
    else:
        if args.instance is None:
            raise UsageError("check needs --instance or --config")
        config = SuiteConfig(args.instance, args.mode, args.samples, args.seed, args.dims,
                             args.laws)
    report = run_suite(config)
    _emit({"config": config.to_json(), **report.to_json()}, args.out)
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_compose(args) -> int:
    c = _compository(args.instance, args.lattice, args.category)
    a = jsonio.parse_value(args.instance, jsonio.load(args.a))
    b = jsonio.parse_value(args.instance, jsonio.load(args.b))
    if args.instance == "nerve" and args.category:
        a, b = a.validate(c.cat), b.validate(c.cat)
    if args.instance == "spans":
        a, b = a.validate(c.lat), b.validate(c.lat)
    m, n, k = c.dim(a), c.dim(b), args.k
    if not 0 <= k <= min(m, n):
        raise UsageError(f"k={k} must lie between 0 and min({m}, {n})")
    if args.instance == "nerve":
        # faces of a path are read off directly; acting would need the category
        _emit(c.to_json(c.compose(a, k, b)), args.out)
        return EXIT_OK
    ta, sb = c.t(a, k), c.s(b, k)
    if ta != sb:
        raise GleafkitError(
            f"not {k}-composable: terminal {k}-face of A {jsonio.dumps(c.to_json(ta), compact=True)} "
            f"differs from initial {k}-face of B {jsonio.dumps(c.to_json(sb), compact=True)}")
    _emit(c.to_json(c.compose(a, k, b)), args.out)
    return EXIT_OK


def cmd_glue(args) -> int:
    inst = args.instance
    cover_data = jsonio.load(args.cover) if args.cover else None
    x = jsonio.parse_value(inst, jsonio.load(args.a))
    y = jsonio.parse_value(inst, jsonio.load(args.b))
    if inst in ("nerve", "spans"):
        from .gleaf import DeltaBicovering, compository_to_delta_gleaf

        g = compository_to_delta_gleaf(_compository(inst, args.lattice))
        m, n = g.carrier(x), g.carrier(y)
        if not isinstance(cover_data, dict) or "j" not in cover_data:
            raise UsageError('nerve/spans gluing needs --cover \'{"j": n}\'')
        cover = DeltaBicovering(m, n, int(cover_data["j"]))
    else:
        g = _gleaf(inst)
        cover = jsonio.parse_cover(cover_data, tuple(g.carrier(x)), tuple(g.carrier(y)))
    _emit(g.to_json(g.glue(cover, x, y)), args.out)
    return EXIT_OK


def _gleaf(inst: str):
    if inst == "metric":
        from .metric import MetricGleaf
        return MetricGleaf()
    if inst == "probability":
        from .probability import ProbabilityGleaf
        return ProbabilityGleaf()
    if inst == "relational":
        from .relational import RelationalGleaf
        return RelationalGleaf()
    from .topology import TopologyGleaf
    return TopologyGleaf()


def cmd_act(args) -> int:
    inst = args.instance
    v = jsonio.parse_value(inst, jsonio.load(args.value))
    raw = jsonio.load(args.map)
    if inst == "nerve":
        from .nerve import FinCategory, nerve_act

        if not args.category:
            raise UsageError("nerve needs --category")
        cat = FinCategory.from_json(jsonio.load(args.category))
        out = nerve_act(cat, v.validate(cat), jsonio.parse_map(raw))
        _emit(out.to_json(), args.out)
        return EXIT_OK
    if inst == "spans":
        from .spans import span_act
        _emit(span_act(v, jsonio.parse_map(raw)).to_json(), args.out)
        return EXIT_OK
    g = _gleaf(inst)
    f = jsonio.parse_map(raw, tuple(g.carrier(v)))
    if not hasattr(f, "domain"):
        from .gleaf import BaseChangeDeltaGleaf
        f = BaseChangeDeltaGleaf.to_finmap(f)
    _emit(g.to_json(g.restrict(v, f)), args.out)
    return EXIT_OK


def cmd_counterexample(args) -> int:
    from . import counterexamples

    result = counterexamples.run(args.which, seed=args.seed)
    _emit(result, args.out)
    return EXIT_OK if result["certified"] else EXIT_FAIL


COMMANDS = {"check": cmd_check, "compose": cmd_compose, "glue": cmd_glue, "act": cmd_act,
            "counterexample": cmd_counterexample}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as e:
        print(f"gleafkit: usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except GleafkitError as e:
        print(f"gleafkit: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
