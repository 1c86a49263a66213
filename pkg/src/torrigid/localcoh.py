"""Fine-graded local cohomology of a polynomial ring at a squarefree ideal.

The graded piece at a multidegree p only depends on which coordinates of p
are negative; it is the reduced cohomology of a simplicial complex attached
to that sign pattern, shifted down by two.  Multiplication by a variable is
induced by an inclusion of these complexes.  An independent oracle computes
the same dimensions from the fine strand of a Cech complex on the ideal
generators, with no simplicial conventions involved; the two must always
agree, and the test suite enforces that on randomized inputs.

All cohomology is over the exact rationals.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .ideals import SquarefreeMonomialIdeal, minimalize
from .lattice import Vec, int_rank, rational_kernel, rational_solve, rref
from .toric import Fan, Graph, graph_gamma


class DegenerateIdealError(ValueError):
    """Local cohomology at the zero or unit ideal is not supported."""


def _check_proper(b: SquarefreeMonomialIdeal) -> None:
    if b.is_zero:
        raise DegenerateIdealError("zero ideal")
    if b.is_unit:
        raise DegenerateIdealError("unit ideal")


def negative(p: Sequence[int]) -> frozenset[int]:
    """Indices where the multidegree is negative."""
    return frozenset(i for i, x in enumerate(p) if x <= -1)


# ---------------------------------------------------------------------------
# Simplicial complexes


@dataclass(frozen=True)
class SimplicialComplex:
    """Finite simplicial complex given by its facets.

    ``facets == ()`` is the void complex (no faces at all) while
    ``facets == (frozenset(),)`` is the complex whose only face is empty;
    the two have different reduced cohomology and are kept distinct.
    """

    vertices: tuple[int, ...]
    facets: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        vset = set(self.vertices)
        for f in self.facets:
            if not f <= vset:
                raise ValueError("facet outside the vertex set")
        maximal = tuple(
            sorted(
                (f for f in set(self.facets) if not any(f < g for g in self.facets)),
                key=lambda s: (len(s), sorted(s)),
            )
        )
        object.__setattr__(self, "facets", maximal)

    @property
    def is_void(self) -> bool:
        return not self.facets

    @property
    def is_irrelevant(self) -> bool:
        return self.facets == (frozenset(),)

    def faces_of_dim(self, q: int) -> list[frozenset[int]]:
        """All q-dimensional faces (q + 1 vertices), sorted; q = -1 gives the
        empty face when the complex is nonvoid."""
        if self.is_void or q < -1:
            return []
        out = {
            frozenset(c)
            for f in self.facets
            for c in itertools.combinations(sorted(f), q + 1)
        }
        return sorted(out, key=sorted)

    def has_face(self, s: frozenset[int]) -> bool:
        return any(s <= f for f in self.facets)

    def dim(self) -> int:
        if self.is_void:
            return -2  # below even the empty face
        return max(len(f) for f in self.facets) - 1


def t_complex(b: SquarefreeMonomialIdeal, i_set) -> SimplicialComplex:
    """Complex on the generator indices attached to a set of variables.

    Generators j_1..j_k span a face when some variable in the set divides
    none of them.  The empty variable set gives the void complex.
    """
    return _t_complex_cached(b, frozenset(i_set))


@lru_cache(maxsize=None)
def _t_complex_cached(b: SquarefreeMonomialIdeal, i_set: frozenset[int]) -> SimplicialComplex:
    _check_proper(b)
    facets = []
    for var in sorted(i_set):
        facets.append(frozenset(j for j, g in enumerate(b.generators) if var not in g))
    return SimplicialComplex(tuple(range(len(b.generators))), tuple(facets))


def _coboundary(kompl: SimplicialComplex, q: int) -> tuple[list[frozenset[int]], list[frozenset[int]], list[list[int]]]:
    """Faces of dimensions q and q+1 and the matrix of the coboundary map
    C^q -> C^{q+1} (rows indexed by (q+1)-faces)."""
    lower = kompl.faces_of_dim(q)
    upper = kompl.faces_of_dim(q + 1)
    index = {f: k for k, f in enumerate(lower)}
    rows = []
    for g in upper:
        row = [0] * len(lower)
        ordered = sorted(g)
        for pos, v in enumerate(ordered):
            f = g - {v}
            row[index[f]] = (-1) ** pos
        rows.append(row)
    return lower, upper, rows


@lru_cache(maxsize=None)
def _cohomology_dims(kompl: SimplicialComplex) -> dict:
    """Reduced cohomology dimensions, indexed by cochain degree."""
    if kompl.is_void:
        return {}
    top = kompl.dim()
    ranks = {}
    counts = {}
    for q in range(-1, top + 1):
        lower, _, rows = _coboundary(kompl, q)
        counts[q] = len(lower)
        ranks[q] = int_rank(rows) if rows else 0
    dims = {}
    for q in range(-1, top + 1):
        dims[q] = counts[q] - ranks[q] - ranks.get(q - 1, 0)
    return dims


def reduced_cohomology_dim(kompl: SimplicialComplex, q: int) -> int:
    return _cohomology_dims(kompl).get(q, 0)


@lru_cache(maxsize=None)
def _cohomology_basis(kompl: SimplicialComplex, q: int):
    """Canonical representatives of H^q as cocycle vectors.

    Returns (q-faces, representatives, reduced coboundary rows); the
    representatives are reduced against the coboundary row space, so they are
    deterministic for a fixed face order.
    """
    lower, _, rows = _coboundary(kompl, q)
    if not lower:
        return (), (), ()
    cocycles = rational_kernel(rows, len(lower)) if rows else [
        [Fraction(1) if i == k else Fraction(0) for i in range(len(lower))]
        for k in range(len(lower))
    ]
    # rows of the (q-1)-coboundary matrix are indexed by q-faces, so its
    # columns are the coboundary vectors inside C^q
    _, _, prev = _coboundary(kompl, q - 1)
    cob_vectors = []
    if prev:
        for k in range(len(prev[0])):
            cob_vectors.append([Fraction(row[k]) for row in prev])
    bnd_rref, _ = rref(cob_vectors) if cob_vectors else ([], [])

    def reduce_mod(vec):
        v = list(vec)
        for row in bnd_rref:
            piv = next(i for i, x in enumerate(row) if x != 0)
            if v[piv] != 0:
                f = v[piv] / row[piv]
                v = [a - f * b for a, b in zip(v, row)]
        return v

    reps = []
    span: list[list[Fraction]] = []
    for z in cocycles:
        v = reduce_mod(z)
        w = list(v)
        for row in span:
            piv = next(i for i, x in enumerate(row) if x != 0)
            if w[piv] != 0:
                f = w[piv] / row[piv]
                w = [a - f * b for a, b in zip(w, row)]
        if any(w):
            piv = next(i for i, x in enumerate(w) if x != 0)
            w = [a / w[piv] for a in w]
            span.append(w)
            reps.append(tuple(v))
    assert len(reps) == reduced_cohomology_dim(kompl, q)
    return tuple(lower), tuple(reps), tuple(tuple(r) for r in bnd_rref)


class GradedPiece:
    """A finite-dimensional piece of a graded module with a labeled basis."""

    def __init__(
        self,
        kompl: SimplicialComplex,
        cochain_degree: int,
        fine_degree: Vec | None = None,
        index: int | None = None,
    ) -> None:
        self.complex = kompl
        self.cochain_degree = cochain_degree
        self.fine_degree = fine_degree
        self.index = index
        self.dimension = reduced_cohomology_dim(kompl, cochain_degree)

    @property
    def basis_labels(self) -> tuple[str, ...]:
        return tuple(f"z{k}" for k in range(self.dimension))

    def cocycle_basis(self):
        """(q-faces, representative cocycle vectors over those faces)."""
        faces, reps, _ = _cohomology_basis(self.complex, self.cochain_degree)
        return faces, reps

    def __repr__(self) -> str:
        return f"GradedPiece(dim={self.dimension}, i={self.index}, p={self.fine_degree})"


def reduced_cohomology(kompl: SimplicialComplex, degree: int) -> GradedPiece:
    """Reduced simplicial cohomology over Q at the given cochain degree."""
    return GradedPiece(kompl, degree)


def local_coh_piece(
    b: SquarefreeMonomialIdeal, i: int, p: Sequence[int]
) -> GradedPiece:
    """The degree-p piece of the i-th local cohomology of the polynomial ring
    supported at the ideal: reduced cohomology of the sign-pattern complex in
    degree i - 2."""
    _check_proper(b)
    if i < 0:
        raise ValueError("cohomological index must be >= 0")
    if len(p) != b.num_vars:
        raise ValueError(f"degree has length {len(p)}, expected {b.num_vars}")
    kompl = t_complex(b, negative(p))
    return GradedPiece(kompl, i - 2, fine_degree=tuple(p), index=i)


@dataclass(frozen=True)
class MultMap:
    """Multiplication by one variable between two graded pieces, as a matrix
    in the canonical cocycle bases (target dimension x source dimension)."""

    source_dimension: int
    target_dimension: int
    matrix: tuple[tuple[Fraction, ...], ...]

    def is_bijective(self) -> bool:
        if self.source_dimension != self.target_dimension:
            return False
        if self.source_dimension == 0:
            return True
        _, pivots = rref(self.matrix)
        return len(pivots) == self.source_dimension

    def apply(self, vec: Sequence[Fraction]) -> list[Fraction]:
        return [
            sum((r * v for r, v in zip(row, vec)), Fraction(0)) for row in self.matrix
        ]


@lru_cache(maxsize=None)
def _mult_matrix(
    b: SquarefreeMonomialIdeal, q: int, src_pattern: frozenset[int], j: int, leaves: bool
):
    """Matrix of the restriction map H^q(T_src) -> H^q(T_tgt) where the
    target pattern drops j when ``leaves`` is set."""
    tgt_pattern = src_pattern - {j} if leaves else src_pattern
    src = t_complex(b, src_pattern)
    tgt = t_complex(b, tgt_pattern)
    src_faces, src_reps, _ = _cohomology_basis(src, q)
    tgt_faces, tgt_reps, tgt_bnd = _cohomology_basis(tgt, q)
    sdim, tdim = len(src_reps), len(tgt_reps)
    if sdim == 0 or tdim == 0:
        return tuple(tuple(Fraction(0) for _ in range(sdim)) for _ in range(tdim))
    src_index = {f: k for k, f in enumerate(src_faces)}
    cols = []
    for z in src_reps:
        restricted = [z[src_index[f]] for f in tgt_faces]
        # solve restricted = sum c_k * rep_k + coboundary
        mat = [
            [tgt_reps[k][idx] for k in range(tdim)]
            + [tgt_bnd[r][idx] for r in range(len(tgt_bnd))]
            for idx in range(len(tgt_faces))
        ]
        sol = rational_solve(mat, restricted)
        assert sol is not None, "restriction of a cocycle must stay a cocycle class"
        cols.append(sol[:tdim])
    return tuple(tuple(cols[c][r] for c in range(sdim)) for r in range(tdim))


def mult_map(b: SquarefreeMonomialIdeal, i: int, p: Sequence[int], j: int) -> MultMap:
    """The map multiplication-by-x_j from the piece at p to the piece at
    p + e_j.  When p_j != -1 the sign pattern does not move and the map is a
    bijection."""
    _check_proper(b)
    if not 0 <= j < b.num_vars:
        raise ValueError("variable index out of range")
    pattern = negative(p)
    leaves = p[j] == -1
    matrix = _mult_matrix(b, i - 2, pattern, j, leaves)
    src = local_coh_piece(b, i, p)
    tgt_p = list(p)
    tgt_p[j] += 1
    tgt = local_coh_piece(b, i, tgt_p)
    return MultMap(
        source_dimension=src.dimension,
        target_dimension=tgt.dimension,
        matrix=matrix,
    )


# ---------------------------------------------------------------------------
# The Cech oracle


@lru_cache(maxsize=None)
def _cech_dims(b: SquarefreeMonomialIdeal, pattern: frozenset[int]) -> dict:
    """Cohomology dimensions of the fine strand of the Cech complex on the
    generators, for the sign pattern of negative coordinates."""
    supports = b.generators
    s = len(supports)
    union: dict[frozenset[int], frozenset[int]] = {}
    alive: dict[int, list[frozenset[int]]] = {}
    for t in range(s + 1):
        alive[t] = []
        for combo in itertools.combinations(range(s), t):
            key = frozenset(combo)
            u = frozenset().union(*(supports[j] for j in combo)) if combo else frozenset()
            union[key] = u
            if pattern <= u:
                alive[t].append(key)
    ranks = {}
    for t in range(s):
        src = alive[t]
        tgt = alive[t + 1]
        if not src or not tgt:
            ranks[t] = 0
            continue
        tgt_index = {k: idx for idx, k in enumerate(tgt)}
        rows = []
        for key in src:
            row = [0] * len(tgt)
            members = sorted(key)
            for l in range(s):
                if l in key:
                    continue
                bigger = key | {l}
                if bigger in tgt_index:
                    sign = (-1) ** sum(1 for j in members if j < l)
                    row[tgt_index[bigger]] = sign
            rows.append(row)
        # rows currently describe the map from C^t; transpose for rank
        ranks[t] = int_rank(rows)
    dims = {}
    for t in range(s + 1):
        dims[t] = len(alive[t]) - ranks.get(t, 0) - ranks.get(t - 1, 0)
    return dims


def cech_piece(b: SquarefreeMonomialIdeal, i: int, p: Sequence[int]) -> int:
    """Dimension of the degree-p strand of local cohomology computed from the
    Cech complex on the generators; independent of the simplicial route and
    must agree with it everywhere."""
    _check_proper(b)
    if i < 0:
        raise ValueError("cohomological index must be >= 0")
    if len(p) != b.num_vars:
        raise ValueError(f"degree has length {len(p)}, expected {b.num_vars}")
    return _cech_dims(b, negative(p)).get(i, 0)


# ---------------------------------------------------------------------------
# Graph shortcuts for the second cohomology


def clique_complex(g: Graph) -> SimplicialComplex:
    """Faces are the cliques of the graph."""
    adj: dict[int, set[int]] = {v: set() for v in g.vertices}
    for e in g.edges:
        a, bb = sorted(e)
        adj[a].add(bb)
        adj[bb].add(a)
    cliques: list[frozenset[int]] = []

    def extend(r: set[int], p: set[int], x: set[int]) -> None:
        if not p and not x:
            cliques.append(frozenset(r))
            return
        for v in sorted(p):
            extend(r | {v}, p & adj[v], x & adj[v])
            p = p - {v}
            x = x | {v}

    extend(set(), set(g.vertices), set())
    if not cliques:
        cliques = [frozenset()]
    return SimplicialComplex(tuple(sorted(g.vertices)), tuple(cliques))


def alexander_dual(kompl: SimplicialComplex) -> SimplicialComplex:
    """Complex whose faces are complements of the non-faces."""
    verts = frozenset(kompl.vertices)
    dual_faces = []
    for r in range(len(verts) + 1):
        for combo in itertools.combinations(sorted(verts), r):
            f = frozenset(combo)
            if not kompl.has_face(verts - f):
                dual_faces.append(f)
    return SimplicialComplex(tuple(sorted(verts)), tuple(dual_faces))


def stanley_reisner_complex(b: SquarefreeMonomialIdeal) -> SimplicialComplex:
    """Faces are the supports of squarefree monomials outside the ideal."""
    faces = []
    gens = b.generators
    for r in range(b.num_vars + 1):
        for combo in itertools.combinations(range(b.num_vars), r):
            f = frozenset(combo)
            if not any(g <= f for g in gens):
                faces.append(f)
    return SimplicialComplex(tuple(range(b.num_vars)), tuple(faces))


def codim2_ideal(fan: Fan) -> SquarefreeMonomialIdeal:
    """Intersection of the codimension-two components of the irrelevant
    ideal: one generator per maximal clique of the ray graph, namely the
    product of the variables off the clique.  A complete graph yields the
    unit ideal (no codimension-two components), flagged by ``is_unit``."""
    g = graph_gamma(fan)
    cliques = clique_complex(g).facets
    m = fan.num_rays
    gens = [frozenset(range(m)) - f for f in cliques]
    return SquarefreeMonomialIdeal(m, minimalize(gens))


def h2_via_graph(fan: Fan, p: Sequence[int]) -> int:
    """Components of the induced ray graph on the negative coordinates,
    minus one; agrees with the full second local cohomology computation."""
    if len(p) != fan.num_rays:
        raise ValueError(f"degree has length {len(p)}, expected {fan.num_rays}")
    sub = graph_gamma(fan).induced(negative(p))
    if not sub.vertices:
        return 0
    return len(sub.connected_components()) - 1
