"""Fans, cones and their combinatorial invariants.

A fan is given by primitive ray generators in an ambient lattice plus its
maximal cones as ray-index sets; this is the only geometric input the whole
package consumes.  Face detection works by exact rational feasibility of a
supporting-covector system, so no floating point convex hull machinery is
involved.  Intended for desk-scale inputs (up to roughly 16 rays in rank 6).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, inf

from .ideals import SquarefreeMonomialIdeal, minimalize
from .lattice import (
    Vec,
    cone_contains,
    cone_is_pointed,
    content,
    int_rank,
    primitive,
    rational_feasible,
    rational_solve,
    smith_normal_form,
)


class TorusFactorError(ValueError):
    """The rays do not span the ambient space over Q."""


class FanValidationError(ValueError):
    pass


@dataclass(frozen=True)
class Fan:
    """Primitive rays plus maximal cones as frozensets of 0-based ray indices."""

    rays: tuple[Vec, ...]
    max_cones: tuple[frozenset[int], ...]
    name: str = ""
    warnings: tuple[str, ...] = ()

    @property
    def num_rays(self) -> int:
        return len(self.rays)

    @property
    def ambient_rank(self) -> int:
        return len(self.rays[0])

    def cone(self, indices) -> "Cone":
        return Cone(self, frozenset(indices))

    def cones(self) -> list["Cone"]:
        """All cones of the fan (faces of the maximal ones), deduplicated."""
        seen: set[frozenset[int]] = set()
        for idx in self.max_cones:
            for f in faces(self.cone(idx)):
                seen.add(f)
        return [self.cone(s) for s in sorted(seen, key=lambda s: (len(s), sorted(s)))]


@dataclass(frozen=True)
class Cone:
    fan: Fan
    indices: frozenset[int]

    @property
    def ray_vectors(self) -> tuple[Vec, ...]:
        return tuple(self.fan.rays[i] for i in sorted(self.indices))

    @property
    def dim(self) -> int:
        return int_rank(self.ray_vectors) if self.indices else 0


def validate_fan(rays, max_cones, name: str = "") -> Fan:
    """Normalize and check a raw fan description.

    Non-primitive rays are normalized with a warning; rays that coincide
    after normalization, non-pointed cones, out-of-range indices and an
    empty cone list are rejected.
    """
    if not rays:
        raise FanValidationError("fan needs at least one ray")
    n = len(rays[0])
    warnings: list[str] = []
    prim: list[Vec] = []
    for i, ray in enumerate(rays):
        if len(ray) != n:
            raise FanValidationError(f"ray {i} has length {len(ray)}, expected {n}")
        if not any(ray):
            raise FanValidationError(f"ray {i} is zero")
        p = primitive(ray)
        if p != tuple(ray):
            warnings.append(f"ray {i} = {tuple(ray)} normalized to primitive {p}")
        prim.append(p)
    for (i, a), (j, b) in itertools.combinations(enumerate(prim), 2):
        if a == b:
            raise FanValidationError(f"rays {i} and {j} coincide after normalization")
    if not max_cones:
        raise FanValidationError("fan needs at least one cone")
    cones: list[frozenset[int]] = []
    for cone in max_cones:
        idx = frozenset(cone)
        for i in idx:
            if not 0 <= i < len(prim):
                raise FanValidationError(f"cone {sorted(idx)} has out-of-range ray index {i}")
        if not cone_is_pointed([prim[i] for i in idx]):
            raise FanValidationError(f"cone {sorted(idx)} is not pointed")
        if idx not in cones:
            cones.append(idx)
    return Fan(tuple(prim), tuple(cones), name=name, warnings=tuple(warnings))


def affine_cone(rays, name: str = "") -> Cone:
    """The full cone on the given rays, wrapped in a one-cone fan."""
    fan = validate_fan(rays, [tuple(range(len(rays)))], name=name)
    return fan.cone(range(len(rays)))


# ---------------------------------------------------------------------------
# Faces


@lru_cache(maxsize=None)
def _faces_of(rays: tuple[Vec, ...], indices: frozenset[int]) -> tuple[frozenset[int], ...]:
    idx = sorted(indices)
    out: list[frozenset[int]] = []
    for r in range(len(idx) + 1):
        for sub in itertools.combinations(idx, r):
            rest = [i for i in idx if i not in sub]
            rows = [(rays[i], 0) for i in sub] + [(tuple(-c for c in rays[i]), 0) for i in sub]
            rows += [(rays[j], 1) for j in rest]
            n = len(rays[0])
            if rational_feasible(rows, n):
                out.append(frozenset(sub))
    return tuple(out)


def faces(cone: Cone) -> tuple[frozenset[int], ...]:
    """All faces of the cone as ray-index sets, from the empty face up.

    A subset F is a face exactly when some covector vanishes on F and is
    strictly positive on the remaining rays of the cone.
    """
    return _faces_of(cone.fan.rays, cone.indices)


def is_simplicial(cone: Cone) -> bool:
    return int_rank(cone.ray_vectors) == len(cone.indices)


def is_smooth(cone: Cone) -> bool:
    """Smooth means the rays extend to a basis of the ambient lattice."""
    if not cone.indices:
        return True
    if not is_simplicial(cone):
        return False
    snf = smith_normal_form(cone.ray_vectors)
    return all(f == 1 for f in snf.invariant_factors if f != 0) and snf.rank == len(
        cone.indices
    )


def _face_cones(obj: Fan | Cone) -> list[Cone]:
    if isinstance(obj, Fan):
        return obj.cones()
    return [obj.fan.cone(f) for f in faces(obj)]


def singular_codim(obj: Fan | Cone) -> int | float:
    """Least dimension of a non-smooth cone (= codimension of its orbit
    closure); infinity when everything is smooth."""
    dims = [c.dim for c in _face_cones(obj) if not is_smooth(c)]
    return min(dims) if dims else inf


def simplicial_codim(obj: Fan | Cone) -> int | float:
    dims = [c.dim for c in _face_cones(obj) if not is_simplicial(c)]
    return min(dims) if dims else inf


# ---------------------------------------------------------------------------
# Class group and Cox grading


@dataclass(frozen=True)
class CoxData:
    """Grading data of the total coordinate ring.

    ``grading_matrix`` is an r x m integer matrix whose rows project the
    ray-divisor lattice Z^m onto the free part of the class group; it
    annihilates the row lattice of ``ray_matrix``.  Torsion is reported
    separately and never encoded in the grading matrix.
    """

    num_rays: int
    ambient_rank: int
    grading_matrix: tuple[Vec, ...]
    ray_matrix: tuple[Vec, ...]
    torsion: tuple[int, ...]

    @property
    def free_rank(self) -> int:
        return self.num_rays - self.ambient_rank

    def column_degree(self, j: int) -> Vec:
        return tuple(row[j] for row in self.grading_matrix)


def class_group(fan: Fan) -> CoxData:
    """Class group presentation from the ray matrix.

    The cokernel of u -> (<u, v_1>, ..., <u, v_m>) is computed by Smith
    reduction; requires the rays to span (no torus factor).
    """
    m = fan.num_rays
    n = fan.ambient_rank
    b = fan.rays  # m x n, rows are the rays
    if int_rank(b) != n:
        raise TorusFactorError("rays do not span the ambient space")
    snf = smith_normal_form(b)
    r = m - n
    a_rows = tuple(snf.u[i] for i in range(n, m))
    torsion = tuple(f for f in snf.invariant_factors if f > 1)
    for row in a_rows:  # rows of U past the rank annihilate the image of b
        assert all(
            sum(row[i] * b[i][j] for i in range(m)) == 0 for j in range(n)
        )
    return CoxData(
        num_rays=m,
        ambient_rank=n,
        grading_matrix=a_rows,
        ray_matrix=b,
        torsion=torsion,
    )


def degree_zero_membership(cox: CoxData, p: Vec) -> Vec | None:
    """If p lies in the row lattice of the ray matrix, return the u with
    p = (<u, v_j>)_j, else None.  This is exactly class-group degree zero."""
    from .lattice import solve_diophantine

    cols = [[cox.ray_matrix[i][j] for j in range(cox.ambient_rank)] for i in range(cox.num_rays)]
    sol = solve_diophantine(cols, list(p))
    if sol is None:
        return None
    u, basis = sol
    assert not basis  # rays span, so the solution is unique
    return u


def irrelevant_ideal(fan: Fan) -> SquarefreeMonomialIdeal:
    """Ideal generated, per cone, by the product of variables off the cone."""
    m = fan.num_rays
    gens = [frozenset(range(m)) - idx for idx in fan.max_cones]
    return SquarefreeMonomialIdeal(m, minimalize(gens))


# ---------------------------------------------------------------------------
# Q-Gorenstein / Gorenstein


@dataclass(frozen=True)
class QGorensteinCertificate:
    """Primitive covector evaluating to the same positive integer on all rays."""

    covector: Vec
    index: int

    def __post_init__(self) -> None:
        if self.index <= 0:
            raise ValueError("index must be positive")


def q_gorenstein(cone: Cone) -> QGorensteinCertificate | None:
    """Certificate with <u0, v_i> = g for every ray, or None.

    Requires a full-dimensional pointed cone, so the interpolating covector
    is unique up to scaling whenever it exists.
    """
    rays = cone.ray_vectors
    n = cone.fan.ambient_rank
    if int_rank(rays) != n:
        raise ValueError("cone must be full-dimensional")
    sol = rational_solve(rays, [Fraction(1)] * len(rays))
    if sol is None:
        return None
    denom = 1
    for x in sol:
        denom = denom * x.denominator // gcd(denom, x.denominator)
    w = [int(x * denom) for x in sol]
    c = content(w)
    u0 = tuple(x // c for x in w)
    g = denom // c
    assert all(sum(a * b for a, b in zip(u0, v)) == g for v in rays)
    return QGorensteinCertificate(covector=u0, index=g)


def gorenstein(cone: Cone) -> bool:
    cert = q_gorenstein(cone)
    return cert is not None and cert.index == 1


# ---------------------------------------------------------------------------
# Completeness and the Fano property


def is_complete(fan: Fan) -> bool:
    """Support covers the whole space.

    Checked by the facet-pairing criterion (every facet of a maximal cone is
    shared by exactly two maximal cones) together with a point-location probe
    on each sign orthant.
    """
    n = fan.ambient_rank
    if not fan.max_cones:
        return False
    for idx in fan.max_cones:
        if int_rank([fan.rays[i] for i in idx]) != n:
            return False
    facet_count: dict[frozenset[int], int] = {}
    for idx in fan.max_cones:
        for f in faces(fan.cone(idx)):
            if int_rank([fan.rays[i] for i in f]) == n - 1:
                facet_count[f] = facet_count.get(f, 0) + 1
    if not facet_count or any(c != 2 for c in facet_count.values()):
        return False
    for signs in itertools.product((-1, 1), repeat=n):
        if not any(
            cone_contains([fan.rays[i] for i in idx], signs) for idx in fan.max_cones
        ):
            return False
    return True


def is_fano(fan: Fan) -> bool:
    """Complete fan equal to the face fan of the ray hull, all rays vertices."""
    if not is_complete(fan):
        return False
    rays = fan.rays
    n = fan.ambient_rank
    # every ray must be a vertex of conv(rays): some u has <u, v> > <u, w>
    for i, v in enumerate(rays):
        rows = [
            (tuple(v[j] - w[j] for j in range(n)), 1)
            for k, w in enumerate(rays)
            if k != i
        ]
        if not rational_feasible(rows, n):
            return False
    # each maximal cone must be the cone over a facet of the hull
    for idx in fan.max_cones:
        cone_rays = [rays[i] for i in sorted(idx)]
        sol = rational_solve(cone_rays, [Fraction(1)] * len(cone_rays))
        if sol is None:
            return False
        for k, w in enumerate(rays):
            if k in idx:
                continue
            if sum(a * b for a, b in zip(sol, w)) >= 1:
                return False
    return True


# ---------------------------------------------------------------------------
# Weighted projective space


@dataclass(frozen=True)
class WeightSystem:
    weights: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.weights) < 2 or any(q < 1 for q in self.weights):
            raise ValueError("need at least two positive weights")

    @property
    def dim(self) -> int:
        return len(self.weights) - 1


def _gcd_of(values) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g


def wps_well_formed(q: WeightSystem) -> bool:
    """No n of the n+1 weights share a common factor."""
    w = q.weights
    return all(
        _gcd_of(w[:i] + w[i + 1 :]) == 1 for i in range(len(w))
    )


def wps_normalize(q: WeightSystem) -> WeightSystem:
    """Standard reduction: while some n weights share a factor d, divide them
    out; the result is well formed and defines the same space."""
    w = list(q.weights)
    changed = True
    while changed:
        changed = False
        for i in range(len(w)):
            d = _gcd_of(w[:i] + w[i + 1 :])
            if d > 1:
                for j in range(len(w)):
                    if j != i:
                        w[j] //= d
                changed = True
    return WeightSystem(tuple(w))


def wps_singular_ideal(q: WeightSystem) -> SquarefreeMonomialIdeal:
    """Intersection over primes p | lcm(q) of the ideals (x_i : p does not
    divide q_i); its vanishing locus is the singular locus."""
    w = q.weights
    lcm = 1
    for v in w:
        lcm = lcm * v // gcd(lcm, v)
    primes = []
    rest = lcm
    p = 2
    while p * p <= rest:
        if rest % p == 0:
            primes.append(p)
            while rest % p == 0:
                rest //= p
        p += 1
    if rest > 1:
        primes.append(rest)
    ideal = SquarefreeMonomialIdeal(len(w), (frozenset(),))  # unit ideal
    for p in primes:
        gens = tuple(frozenset([i]) for i, qi in enumerate(w) if qi % p != 0)
        ideal = ideal.intersect(SquarefreeMonomialIdeal(len(w), gens))
    return ideal


def wps_rigidity_condition(q: WeightSystem) -> bool:
    """No n-1 of the n+1 weights share a common factor."""
    w = q.weights
    n = q.dim
    if n < 2:
        return True
    return all(
        _gcd_of(sub) == 1 for sub in itertools.combinations(w, n - 1)
    )


# ---------------------------------------------------------------------------
# The graphs built from cone membership


@dataclass(frozen=True)
class Graph:
    vertices: frozenset[int]
    edges: frozenset[frozenset[int]]

    def induced(self, subset) -> "Graph":
        sub = frozenset(subset) & self.vertices
        return Graph(sub, frozenset(e for e in self.edges if e <= sub))

    def connected_components(self) -> list[frozenset[int]]:
        adj: dict[int, set[int]] = {v: set() for v in self.vertices}
        for e in self.edges:
            a, b = sorted(e)
            adj[a].add(b)
            adj[b].add(a)
        seen: set[int] = set()
        comps: list[frozenset[int]] = []
        for start in sorted(self.vertices):
            if start in seen:
                continue
            stack = [start]
            comp = set()
            while stack:
                v = stack.pop()
                if v in comp:
                    continue
                comp.add(v)
                stack.extend(adj[v] - comp)
            seen |= comp
            comps.append(frozenset(comp))
        return comps

    def is_connected(self) -> bool:
        """Graphs with at most one component count as connected (so the empty
        graph does too)."""
        return len(self.connected_components()) <= 1


def graph_gamma(fan: Fan) -> Graph:
    """Vertices are all rays; {i, j} is an edge when both lie in one cone."""
    edges: set[frozenset[int]] = set()
    for idx in fan.max_cones:
        for pair in itertools.combinations(sorted(idx), 2):
            edges.add(frozenset(pair))
    return Graph(frozenset(range(fan.num_rays)), frozenset(edges))


def graph_gamma_f(cone: Cone) -> Graph:
    """Vertices are the cone's rays; edges are its two-dimensional faces."""
    edges = {f for f in faces(cone) if len(f) == 2}
    return Graph(frozenset(cone.indices), frozenset(edges))


# ---------------------------------------------------------------------------
# Derived fans


def smooth_subfan(cone: Cone) -> Fan:
    """Fan of all smooth faces of the cone (maximal ones listed)."""
    smooth = [f for f in faces(cone) if is_smooth(cone.fan.cone(f))]
    maximal = [f for f in smooth if not any(f < g for g in smooth)]
    maximal.sort(key=lambda s: (len(s), sorted(s)))
    return Fan(cone.fan.rays, tuple(maximal), name=cone.fan.name)


def proper_faces_fan(cone: Cone) -> Fan:
    """Fan of all proper faces of the cone."""
    proper = [f for f in faces(cone) if f != cone.indices]
    maximal = [f for f in proper if not any(f < g for g in proper)]
    maximal.sort(key=lambda s: (len(s), sorted(s)))
    return Fan(cone.fan.rays, tuple(maximal), name=cone.fan.name)
