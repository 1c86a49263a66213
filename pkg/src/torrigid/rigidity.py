"""Machine-checkable certificates for sufficient rigidity criteria.

Each criterion reports its hypotheses individually.  A certificate is only
``RIGID`` when every hypothesis is satisfied; a failed hypothesis yields
``CONDITION_NOT_SATISFIED`` with a concrete counterexample, and a search that
ran out of room yields ``INCONCLUSIVE`` rather than a silent downgrade (the
criteria are sufficient, not necessary).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from math import gcd

from .lattice import (
    AffineSystem,
    BoundExceeded,
    Vec,
    Witness,
    rational_feasible,
)
from .lattice import integer_feasible as _integer_feasible
from .toric import (
    Cone,
    Fan,
    Graph,
    WeightSystem,
    graph_gamma,
    graph_gamma_f,
    is_complete,
    is_fano,
    is_simplicial,
    q_gorenstein,
    simplicial_codim,
    singular_codim,
    smooth_subfan,
    wps_normalize,
    wps_rigidity_condition,
)


class Verdict(Enum):
    RIGID = "rigid"
    DER_PART_VANISHES = "der_part_vanishes"
    CONDITION_NOT_SATISFIED = "condition_not_satisfied"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Hypothesis:
    name: str
    status: str  # satisfied | failed | unknown
    detail: str = ""


@dataclass(frozen=True)
class RigidityCertificate:
    criterion: str
    verdict: Verdict
    hypotheses: tuple[Hypothesis, ...]
    search_bound: int | None = None
    reason: str = ""

    def __post_init__(self) -> None:
        if self.verdict in (Verdict.RIGID, Verdict.DER_PART_VANISHES):
            assert all(h.status == "satisfied" for h in self.hypotheses)

    @property
    def is_rigid(self) -> bool:
        return self.verdict is Verdict.RIGID


def _codim_hypothesis(name: str, value, threshold: int) -> Hypothesis:
    ok = value >= threshold
    return Hypothesis(
        name=name,
        status="satisfied" if ok else "failed",
        detail=f"value {value}, needs >= {threshold}",
    )


def der_vanishing_gamma(
    cone: Cone, search_bound: int = 8, strict: bool = False
) -> RigidityCertificate:
    """Connectivity test certifying that the derivation part of the tangent
    space vanishes.

    For each ray i and each sign pattern J on the remaining rays, the test
    asks for an integer covector evaluating to -1 on ray i, at most -1 on J
    and nonnegatively elsewhere; whenever such a covector exists the induced
    two-face graph on J must be connected.  Only disconnected patterns are
    submitted to the integer search, and an exhausted search is reported as
    INCONCLUSIVE, never as a verdict.
    """
    m = len(cone.indices)
    if m > 20:
        raise ValueError(
            "pattern enumeration is exponential in the number of rays; "
            "refusing more than 20 (split the cone or use the Q-Gorenstein test)"
        )
    codim = singular_codim(cone)
    if codim < 3:
        return RigidityCertificate(
            criterion="gamma",
            verdict=Verdict.INCONCLUSIVE,
            hypotheses=(_codim_hypothesis("smooth_in_codim_2", codim, 3),),
            search_bound=search_bound,
            reason="cone is not smooth in codimension 2",
        )

    def run(graph: Graph) -> tuple[Verdict, str]:
        exceeded = None
        rays = cone.fan.rays
        n = cone.fan.ambient_rank
        for i in sorted(cone.indices):
            others = sorted(cone.indices - {i})
            for r in range(len(others) + 1):
                for combo in itertools.combinations(others, r):
                    j_set = frozenset(combo)
                    if graph.induced(j_set).is_connected():
                        continue
                    rest = [j for j in others if j not in j_set]
                    system = AffineSystem(
                        num_vars=n,
                        equalities=((rays[i], -1),),
                        inequalities=tuple(
                            (tuple(-c for c in rays[j]), 1) for j in combo
                        )
                        + tuple((rays[j], 0) for j in rest),
                    )
                    res = _integer_feasible(system, search_bound)
                    if isinstance(res, Witness):
                        return (
                            Verdict.CONDITION_NOT_SATISFIED,
                            f"ray {i}, pattern {sorted(j_set)}, covector {res.point}"
                            " realizes a disconnected graph",
                        )
                    if isinstance(res, BoundExceeded):
                        exceeded = f"ray {i}, pattern {sorted(j_set)}"
        if exceeded is not None:
            return Verdict.INCONCLUSIVE, f"search bound exhausted at {exceeded}"
        return Verdict.DER_PART_VANISHES, ""

    verdict, reason = run(graph_gamma_f(cone))
    if strict:
        strict_verdict, _ = run(graph_gamma(smooth_subfan(cone)))
        assert strict_verdict == verdict, (
            "two-face graph test and smooth-subfan graph test disagree"
        )
    hyps = [_codim_hypothesis("smooth_in_codim_2", codim, 3)]
    if verdict is Verdict.DER_PART_VANISHES:
        hyps.append(Hypothesis("connected_patterns", "satisfied", "all realizable"))
    elif verdict is Verdict.CONDITION_NOT_SATISFIED:
        hyps.append(Hypothesis("connected_patterns", "failed", reason))
    else:
        hyps.append(Hypothesis("connected_patterns", "unknown", reason))
    return RigidityCertificate(
        criterion="gamma",
        verdict=verdict,
        hypotheses=tuple(hyps),
        search_bound=search_bound,
        reason=reason,
    )


def qgorenstein_rigidity(cone: Cone) -> RigidityCertificate:
    """Rigid when the cone is Q-Gorenstein, smooth in codimension 2 and
    simplicial in codimension 3 (codimension measured by orbit closures, so
    the thresholds are dimension >= 3 and >= 4 on the offending faces)."""
    cert = q_gorenstein(cone)
    hyps = [
        Hypothesis(
            "q_gorenstein",
            "satisfied" if cert is not None else "failed",
            f"covector {cert.covector}, index {cert.index}" if cert else "no interpolating covector",
        ),
        _codim_hypothesis("smooth_in_codim_2", singular_codim(cone), 3),
        _codim_hypothesis("simplicial_in_codim_3", simplicial_codim(cone), 4),
    ]
    ok = all(h.status == "satisfied" for h in hyps)
    return RigidityCertificate(
        criterion="qgorenstein",
        verdict=Verdict.RIGID if ok else Verdict.CONDITION_NOT_SATISFIED,
        hypotheses=tuple(hyps),
        reason="" if ok else "; ".join(h.name for h in hyps if h.status != "satisfied"),
    )


def quotient_rigidity(cone: Cone) -> RigidityCertificate:
    """Rigid when the cone is simplicial (a finite abelian quotient) and
    smooth in codimension 2."""
    hyps = [
        Hypothesis(
            "simplicial",
            "satisfied" if is_simplicial(cone) else "failed",
            f"{len(cone.indices)} rays of rank {cone.dim}",
        ),
        _codim_hypothesis("smooth_in_codim_2", singular_codim(cone), 3),
    ]
    ok = all(h.status == "satisfied" for h in hyps)
    return RigidityCertificate(
        criterion="quotient",
        verdict=Verdict.RIGID if ok else Verdict.CONDITION_NOT_SATISFIED,
        hypotheses=tuple(hyps),
        reason="" if ok else "; ".join(h.name for h in hyps if h.status != "satisfied"),
    )


def fano_rigidity(fan: Fan) -> RigidityCertificate:
    """Rigid when the fan is Fano, smooth in codimension 2 and simplicial in
    codimension 3; the local hypotheses are also audited cone by cone."""
    complete = is_complete(fan)
    hyps = [
        Hypothesis(
            "complete",
            "satisfied" if complete else "failed",
            "facet pairing and orthant probes" if complete else "support does not cover",
        )
    ]
    if not complete:
        return RigidityCertificate(
            criterion="fano",
            verdict=Verdict.CONDITION_NOT_SATISFIED,
            hypotheses=tuple(hyps),
            reason="completeness",
        )
    fano = is_fano(fan)
    hyps.append(
        Hypothesis(
            "fano",
            "satisfied" if fano else "failed",
            "face fan of the ray hull with all rays vertices"
            if fano
            else "fan is not the face fan of its ray hull",
        )
    )
    hyps.append(_codim_hypothesis("smooth_in_codim_2", singular_codim(fan), 3))
    hyps.append(_codim_hypothesis("simplicial_in_codim_3", simplicial_codim(fan), 4))
    for idx in fan.max_cones:
        cone = fan.cone(idx)
        local = qgorenstein_rigidity(cone)
        hyps.append(
            Hypothesis(
                f"cone_{'_'.join(str(i) for i in sorted(idx))}_local",
                "satisfied" if local.is_rigid else "failed",
                local.reason or "Q-Gorenstein, smooth in codim 2, simplicial in codim 3",
            )
        )
    ok = all(h.status == "satisfied" for h in hyps)
    return RigidityCertificate(
        criterion="fano",
        verdict=Verdict.RIGID if ok else Verdict.CONDITION_NOT_SATISFIED,
        hypotheses=tuple(hyps),
        reason="" if ok else "; ".join(h.name for h in hyps if h.status != "satisfied"),
    )


def wps_rigidity(q: WeightSystem) -> RigidityCertificate:
    """Rigid when no n-1 of the n+1 (normalized) weights share a factor."""
    norm = wps_normalize(q)
    w = norm.weights
    n = norm.dim
    counterexample = None
    if n >= 2:
        for combo in itertools.combinations(range(n + 1), n - 1):
            g = 0
            for k in combo:
                g = gcd(g, w[k])
            if g > 1:
                counterexample = (combo, g)
                break
    ok = counterexample is None
    assert ok == wps_rigidity_condition(norm)
    hyps = [
        Hypothesis(
            "weights_coprime_in_codim_3",
            "satisfied" if ok else "failed",
            f"normalized weights {w}"
            if ok
            else f"weights {tuple(w[k] for k in counterexample[0])} share factor {counterexample[1]}",
        )
    ]
    return RigidityCertificate(
        criterion="wps",
        verdict=Verdict.RIGID if ok else Verdict.CONDITION_NOT_SATISFIED,
        hypotheses=tuple(hyps),
        reason="" if ok else hyps[0].detail,
    )


# ---------------------------------------------------------------------------
# Edge-graph connectivity of polytope halfspace slices


@dataclass(frozen=True)
class Connected:
    pass


@dataclass(frozen=True)
class Disconnected:
    components: tuple[tuple[Vec, ...], ...]


def _is_vertex(points: list[Vec], i: int) -> bool:
    v = points[i]
    n = len(v)
    rows = [
        (tuple(v[k] - w[k] for k in range(n)), 1)
        for j, w in enumerate(points)
        if j != i
    ]
    return rational_feasible(rows, n)


def polytope_edge_graph(points: list[Vec]) -> set[frozenset[int]]:
    """Edges of the convex hull of the given vertices, by exact feasibility:
    a pair is an edge iff some covector peaks exactly on it."""
    n = len(points[0])
    edges: set[frozenset[int]] = set()
    for i, j in itertools.combinations(range(len(points)), 2):
        a, b = points[i], points[j]
        rows = [(tuple(b[k] - a[k] for k in range(n)), 0)]
        rows.append((tuple(a[k] - b[k] for k in range(n)), 0))
        for l, w in enumerate(points):
            if l in (i, j):
                continue
            rows.append((tuple(a[k] - w[k] for k in range(n)), 1))
        if rational_feasible(rows, n):
            edges.add(frozenset({i, j}))
    return edges


def polytope_halfspace_connectivity(
    points, vertex, normal, offset
) -> Connected | Disconnected:
    """Connectivity of the hull edge graph induced on the closed halfspace
    <normal, x> >= offset, with the distinguished vertex removed.

    The vertex must lie on the bounding hyperplane.  For valid inputs the
    answer is always Connected; Disconnected signals a precondition
    violation or an implementation fault, and carries the components.
    """
    pts = [tuple(p) for p in points]
    v = tuple(vertex)
    if len(pts[0]) > 3:
        raise ValueError("only ambient dimension <= 3 is supported")
    if v not in pts:
        raise ValueError("distinguished point is not among the vertices")
    if sum(a * x for a, x in zip(normal, v)) != offset:
        raise ValueError("distinguished vertex does not lie on the hyperplane")
    if len(set(pts)) != len(pts):
        raise ValueError("duplicate points")
    for i in range(len(pts)):
        if not _is_vertex(pts, i):
            raise ValueError(f"point {pts[i]} is not a vertex of the hull")

    edges = polytope_edge_graph(pts)
    keep = frozenset(
        i
        for i, p in enumerate(pts)
        if sum(a * x for a, x in zip(normal, p)) >= offset and p != v
    )
    graph = Graph(keep, frozenset(e for e in edges if e <= keep))
    comps = graph.connected_components()
    if len(comps) <= 1:
        return Connected()
    return Disconnected(
        components=tuple(
            tuple(pts[i] for i in sorted(c)) for c in comps
        )
    )
