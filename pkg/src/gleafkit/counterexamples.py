"""Reproducible counterexamples, each with an independent certificate.

Every ``*_report`` returns a JSON-ready dict whose ``certified`` field says
whether the certificate checked out.
"""
from __future__ import annotations

from itertools import combinations

from .extended import fmt
from .finset import ordered
from .simplex import face


def span_horn_report(seed: int = 0) -> dict:
    """The diamond inner horn with no filler.

    Two searches over every 3-span: one for a full filler of the horn, and a
    weaker one for any 3-span whose first two faces match.
    """
    from .spans import all_spans, diamond, horn_is_compatible, nokan_horn, span_act

    lat = diamond()
    faces = nokan_horn()
    d0, d1 = face(0, 3), face(1, 3)
    total = fillers = weak = 0
    for s in all_spans(lat, 3):
        total += 1
        first_two = span_act(s, d0) == faces[0] and span_act(s, d1) == faces[1]
        weak += first_two
        fillers += first_two and span_act(s, face(3, 3)) == faces[3]
    compatible = horn_is_compatible(faces)
    return {"counterexample": "span-horn", "lattice": lat.to_json(),
            "horn": {str(i): f.to_json() for i, f in faces.items()},
            "horn_compatible": compatible, "spans_searched": total,
            "fillers": fillers, "spans_matching_faces_0_1": weak,
            "certified": compatible and total > 0 and fillers == 0 and weak == 0}


def metric_horn_report(seed: int = 0) -> dict:
    """A compatible inner horn of metric 2-simplices with no metric filler.

    The shortest-path closure decides fillability; a brute-force search over
    integer grids confirms the verdict independently.
    """
    from .metric import (brute_force_extension_exists, extension_exists, find_unfillable_horn,
                         horn_union_data, shortest_path_closure)

    faces = find_unfillable_horn(seed=seed)
    data = horn_union_data(faces)
    pts = tuple(range(4))
    closure = shortest_path_closure(pts, data, True)
    violated = [[x, y, fmt(v), fmt(closure[x][y])] for (x, y), v in sorted(data.items())
                if x < y and closure[x][y] != v]
    oracle = extension_exists(data, pts)
    brute = brute_force_extension_exists(data, pts)
    return {"counterexample": "metric-horn", "seed": seed,
            "horn": {str(i): f.to_json() for i, f in faces.items()},
            "prescribed": [[x, y, fmt(v)] for (x, y), v in sorted(data.items()) if x < y],
            "closure": [[fmt(v) for v in row] for row in closure],
            "violated": violated, "oracle_fillable": oracle, "brute_force_fillable": brute,
            "certified": not oracle and not brute and bool(violated)}


def prob_triple_report(seed: int = 0) -> dict:
    """Pairwise compatible marginals on ``(A,B)``, ``(B,C)``, ``(A,C)`` with no joint."""
    from .probability import (JointExists, correlation_triple, deterministic_joint_exists,
                              marginal, support_relation)
    from .relational import natural_join_all

    pieces = correlation_triple(anti=True)
    pairwise = all(
        marginal(p, ordered(set(p.vars) & set(q.vars))) == marginal(q, ordered(set(p.vars) & set(q.vars)))
        for p, q in combinations(pieces, 2))
    supports = [support_relation(p) for p in pieces]
    joined = natural_join_all(supports)
    verdict = deterministic_joint_exists(pieces)
    return {"counterexample": "prob-triple", "pieces": [p.to_json() for p in pieces],
            "pairwise_compatible": pairwise,
            "supports": [s.to_json() for s in supports], "support_join": joined.to_json(),
            "joint_exists": verdict.value,
            "certified": pairwise and not joined.rows and verdict is JointExists.NO}


def topology_triple_report(seed: int = 0) -> dict:
    """Indiscrete, indiscrete, discrete on the three 2-subsets of ``{x, y, z}``."""
    from .topology import all_topologies, subspace, triangle_pieces

    pieces = triangle_pieces()
    pairwise = all(
        subspace(p, ordered(set(p.carrier) & set(q.carrier)))
        == subspace(q, ordered(set(p.carrier) & set(q.carrier)))
        for p, q in combinations(pieces, 2))
    checked = []
    for t in all_topologies(("x", "y", "z")):
        misses = [i for i, p in enumerate(pieces) if subspace(t, p.carrier) != p]
        checked.append({"opens": t.to_json()["opens"], "fails_piece": misses[0] if misses else None})
    extends = [c for c in checked if c["fails_piece"] is None]
    return {"counterexample": "topology-triple", "pieces": [p.to_json() for p in pieces],
            "pairwise_compatible": pairwise, "topologies_checked": len(checked),
            "topologies": checked,
            "certified": pairwise and len(checked) == 29 and not extends}


REPORTS = {"span-horn": span_horn_report, "metric-horn": metric_horn_report,
           "prob-triple": prob_triple_report, "topology-triple": topology_triple_report}


def run(which: str, seed: int = 0) -> dict:
    return REPORTS[which](seed)


__all__ = ["REPORTS", "run", "span_horn_report", "metric_horn_report",
           "prob_triple_report", "topology_triple_report"]
