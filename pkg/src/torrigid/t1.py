"""First-order deformations of affine toric varieties and hypersurfaces.

The tangent space of an affine toric variety splits into a derivation part,
valued in second local cohomology of the total coordinate ring, and a part
indexed by the cokernel of the Euler derivations, valued in third local
cohomology.  Both are assembled degree by degree over class-group degree
zero.  The set of contributing fine degrees is enumerated inside a finite
box; completeness of that enumeration is tracked explicitly and only the
Gorenstein-over-a-smooth-polygon case is flagged as provably complete.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .lattice import (
    AffineSystem,
    Vec,
    int_det,
    integer_kernel,
    lattice_points,
    rref,
)
from .localcoh import local_coh_piece, mult_map, negative
from .rigidity import (
    Hypothesis,
    RigidityCertificate,
    Verdict,
    der_vanishing_gamma,
)
from .toric import (
    Cone,
    CoxData,
    Fan,
    class_group,
    degree_zero_membership,
    faces,
    gorenstein,
    irrelevant_ideal,
    is_complete,
    is_fano,
    is_simplicial,
    q_gorenstein,
    singular_codim,
    smooth_subfan,
)


class UnsupportedModeError(ValueError):
    """The input lies outside the territory where a formula is available."""


@dataclass(frozen=True)
class Completeness:
    guaranteed: bool
    bound: int | None = None
    note: str = ""

    def as_text(self) -> str:
        if self.guaranteed:
            return "guaranteed"
        return f"bounded({self.bound})"


@dataclass(frozen=True)
class DegreeContribution:
    fine_degree: Vec
    dimension: int


@dataclass(frozen=True)
class QPresentation:
    """Presentation of the Euler-derivation cokernel: the map sending the
    j-th generator to (a_1j x_j, ..., a_rj x_j)."""

    free_rank: int
    num_vars: int
    grading_matrix: tuple[Vec, ...]
    column_degrees: tuple[Vec, ...]

    def entry(self, i: int, j: int) -> str:
        a = self.grading_matrix[i][j]
        if a == 0:
            return "0"
        if a == 1:
            return f"x{j + 1}"
        if a == -1:
            return f"-x{j + 1}"
        return f"{a}*x{j + 1}"


def q_presentation(cox: CoxData) -> QPresentation:
    return QPresentation(
        free_rank=cox.free_rank,
        num_vars=cox.num_rays,
        grading_matrix=cox.grading_matrix,
        column_degrees=tuple(cox.column_degree(j) for j in range(cox.num_rays)),
    )


@dataclass(frozen=True)
class T1Report:
    mode: str  # simplicial | codim_ge_3 | unsupported
    bound: int
    der_dimension: int | None = None
    der_completeness: Completeness | None = None
    homq_dimension: int | None = None
    homq_completeness: Completeness | None = None
    contributions: tuple[DegreeContribution, ...] = ()
    hypotheses: tuple[Hypothesis, ...] = ()

    @property
    def total(self) -> int | None:
        if self.der_dimension is None or self.homq_dimension is None:
            return None
        return self.der_dimension + self.homq_dimension

    @property
    def complete(self) -> bool:
        return bool(
            self.der_completeness
            and self.der_completeness.guaranteed
            and self.homq_completeness
            and self.homq_completeness.guaranteed
        )


def default_bound(cone: Cone) -> int:
    return 2 * max(abs(c) for v in cone.ray_vectors for c in v)


def _require_full_dim(cone: Cone) -> None:
    n = cone.fan.ambient_rank
    if cone.dim != n:
        raise ValueError("cone must be full-dimensional")


def _fine_degree(cone: Cone, u: Sequence[int]) -> Vec:
    return tuple(
        sum(a * b for a, b in zip(u, cone.fan.rays[i])) for i in sorted(cone.indices)
    )


# ---------------------------------------------------------------------------
# The part valued in third local cohomology


def hom_q_h3(
    cone: Cone, bound: int | None = None
) -> tuple[int, tuple[DegreeContribution, ...], Completeness]:
    """Dimension of the degree-zero maps from the Euler cokernel into third
    local cohomology, summed over contributing fine degrees.

    Fine degrees run over the ray-evaluation image of the covector box of the
    given radius.  For a three-dimensional Gorenstein cone with isolated
    singularity only the all-minus-ones degree can contribute, so the result
    is flagged as complete; otherwise it is a bounded enumeration.
    """
    _require_full_dim(cone)
    if singular_codim(cone) < 3:
        raise UnsupportedModeError("requires a singular locus of codimension >= 3")
    if bound is None:
        bound = default_bound(cone)
    cox = class_group(cone.fan)
    r = cox.free_rank
    if r == 0:
        return 0, (), Completeness(guaranteed=True, note="free class rank is zero")
    n = cone.fan.ambient_rank
    m = len(cone.indices)
    a_matrix = cox.grading_matrix
    b = irrelevant_ideal(smooth_subfan(cone))

    cert = q_gorenstein(cone)
    guaranteed = n == 3 and cert is not None and cert.index == 1

    candidates = {tuple(u) for u in itertools.product(range(-bound, bound + 1), repeat=n)}
    if guaranteed:
        candidates.add(tuple(-c for c in cert.covector))

    contributions = []
    total = 0
    for u in sorted(candidates):
        p = _fine_degree(cone, u)
        if not negative(p):
            continue
        piece = local_coh_piece(b, 3, p)
        h = piece.dimension
        if h == 0:
            continue
        blocks = []
        for j in range(m):
            mm = mult_map(b, 3, p, j)
            if mm.target_dimension == 0:
                continue
            rows = [
                [a_matrix[i][j] * mm.matrix[rr][cc] for i in range(r) for cc in range(h)]
                for rr in range(mm.target_dimension)
            ]
            blocks.extend(rows)
        if blocks:
            _, pivots = rref(blocks)
            rank = len(pivots)
        else:
            rank = 0
        ker = r * h - rank
        if ker:
            assert degree_zero_membership(cox, p) is not None
            contributions.append(DegreeContribution(p, ker))
            total += ker
    completeness = (
        Completeness(guaranteed=True, note="single contributing degree")
        if guaranteed
        else Completeness(guaranteed=False, bound=bound)
    )
    return total, tuple(contributions), completeness


# ---------------------------------------------------------------------------
# The derivation part


def dual_cone_generators(cone: Cone) -> list[Vec]:
    """Extreme rays of the dual cone, one per facet of the cone."""
    _require_full_dim(cone)
    n = cone.fan.ambient_rank
    rays = cone.ray_vectors
    gens: list[Vec] = []
    for f in faces(cone):
        fr = [cone.fan.rays[i] for i in sorted(f)]
        from .lattice import int_rank

        if int_rank(fr) != n - 1:
            continue
        kernel = integer_kernel(fr) if fr else [tuple(1 if k == 0 else 0 for k in range(n))]
        assert len(kernel) == 1
        w = kernel[0]
        values = [sum(a * bb for a, bb in zip(w, v)) for v in rays]
        if all(x >= 0 for x in values):
            gens.append(w)
        else:
            assert all(x <= 0 for x in values)
            gens.append(tuple(-c for c in w))
    return sorted(set(gens))


def _monomial_mult_matrix(b, i: int, start: Vec, exponent: Vec):
    """Matrix of multiplication by the monomial with the given exponent,
    composed one variable step at a time; returns (matrix rows, target dim)."""
    piece = local_coh_piece(b, i, start)
    cur_dim = piece.dimension
    cur = [
        [Fraction(1) if rr == cc else Fraction(0) for cc in range(cur_dim)]
        for rr in range(cur_dim)
    ]
    p = list(start)
    for k in range(len(exponent)):
        for _ in range(exponent[k]):
            mm = mult_map(b, i, p, k)
            cur = [
                [
                    sum(
                        (mm.matrix[rr][t] * cur[t][cc] for t in range(len(cur))),
                        Fraction(0),
                    )
                    for cc in range(cur_dim)
                ]
                for rr in range(mm.target_dimension)
            ]
            p[k] += 1
    return cur


def der_part_exact(
    cone: Cone, bound: int | None = None
) -> tuple[int, Completeness]:
    """Degree-zero derivations into second local cohomology, computed as the
    kernel of the linearity conditions on the dual-monoid generators.

    The unknowns are the components of the images of the variables, supported
    on fine degrees inside the enumeration window; the conditions themselves
    are evaluated exactly wherever they land, so the result is the dimension
    of the space of solutions supported in the window (non-decreasing in the
    bound).  The covector window is the box of radius bound scaled by the
    largest ray coordinate: contributing degrees provably escape any window
    of fixed radius as the rays grow (already for the two-dimensional index-n
    cones), so the window has to track the ray height."""
    _require_full_dim(cone)
    if not (is_simplicial(cone) or singular_codim(cone) >= 3):
        raise UnsupportedModeError(
            "no formula for non-simplicial cones singular in codimension 2"
        )
    if bound is None:
        bound = default_bound(cone)
    n = cone.fan.ambient_rank
    m = len(cone.indices)
    radius = bound * max(
        1, max(abs(c) for v in cone.ray_vectors for c in v)
    )
    b = irrelevant_ideal(smooth_subfan(cone))

    hilbert = _dual_hilbert_basis(cone)
    exponents = [_fine_degree(cone, w) for w in hilbert]
    for beta in exponents:
        assert all(x >= 0 for x in beta)

    # unknown blocks: component of D(x_j) in fine degree d = e_j + <u, rays>
    unknowns: list[tuple[int, Vec, int]] = []  # (j, degree, dimension)
    seen: set[tuple[int, Vec]] = set()
    for j in range(m):
        for u in itertools.product(range(-radius, radius + 1), repeat=n):
            base = _fine_degree(cone, u)
            d = tuple(base[k] + (1 if k == j else 0) for k in range(m))
            if (j, d) in seen:
                continue
            seen.add((j, d))
            dim = local_coh_piece(b, 2, d).dimension
            if dim:
                unknowns.append((j, d, dim))
    unknowns.sort(key=lambda t: (t[0], t[1]))
    if not unknowns:
        return 0, Completeness(guaranteed=False, bound=bound)

    offsets = {}
    col = 0
    for j, d, dim in unknowns:
        offsets[(j, d)] = (col, dim)
        col += dim
    total_cols = col

    rows: list[list[Fraction]] = []
    for beta in exponents:
        by_target: dict[Vec, list[tuple[int, Vec, int, list[list[Fraction]]]]] = {}
        for j, d, dim in unknowns:
            if beta[j] == 0:
                continue
            gamma = tuple(beta[k] - (1 if k == j else 0) for k in range(m))
            target = tuple(d[k] + gamma[k] for k in range(m))
            tdim = local_coh_piece(b, 2, target).dimension
            if tdim == 0:
                continue
            mat = _monomial_mult_matrix(b, 2, d, gamma)
            by_target.setdefault(target, []).append((j, d, beta[j], mat))
        for target, terms in sorted(by_target.items()):
            tdim = local_coh_piece(b, 2, target).dimension
            for rr in range(tdim):
                row = [Fraction(0)] * total_cols
                for j, d, coeff, mat in terms:
                    start, dim = offsets[(j, d)]
                    for cc in range(dim):
                        row[start + cc] += coeff * mat[rr][cc]
                rows.append(row)

    if rows:
        _, pivots = rref(rows)
        rank = len(pivots)
    else:
        rank = 0
    return total_cols - rank, Completeness(guaranteed=False, bound=bound)


def _dual_hilbert_basis(cone: Cone) -> list[Vec]:
    from .lattice import hilbert_basis

    return hilbert_basis(dual_cone_generators(cone))


def der_part_sufficient(cone: Cone, search_bound: int = 8) -> RigidityCertificate:
    """Sufficient vanishing of the derivation part: the Q-Gorenstein
    criterion when available, otherwise the connectivity test."""
    codim = singular_codim(cone)
    if codim >= 3 and q_gorenstein(cone) is not None:
        return RigidityCertificate(
            criterion="qgorenstein_der",
            verdict=Verdict.DER_PART_VANISHES,
            hypotheses=(
                Hypothesis("q_gorenstein", "satisfied", "interpolating covector exists"),
                Hypothesis(
                    "smooth_in_codim_2", "satisfied", f"singular codimension {codim}"
                ),
            ),
            reason="all ray generators lie on one hyperplane",
        )
    return der_vanishing_gamma(cone, search_bound=search_bound)


def der_part(cone: Cone, mode: str = "exact", bound: int | None = None):
    """Dispatch between the exact computation and the vanishing certificate."""
    if mode == "exact":
        return der_part_exact(cone, bound)
    if mode == "sufficient":
        if singular_codim(cone) < 3:
            raise UnsupportedModeError(
                "the vanishing criteria require a singular locus of codimension >= 3"
            )
        return der_part_sufficient(cone, search_bound=bound or 8)
    raise ValueError(f"unknown mode {mode!r}")


# ---------------------------------------------------------------------------
# Assembly


def t1_affine(cone: Cone, bound: int | None = None) -> T1Report:
    """Tangent-space dimension of the affine toric variety of a cone.

    Simplicial cones use the derivation part alone; cones with singular
    locus of codimension at least three add the third-cohomology part, the
    two contributions being additive.  Anything else is refused rather than
    approximated.
    """
    _require_full_dim(cone)
    if bound is None:
        bound = default_bound(cone)
    simplicial = is_simplicial(cone)
    codim = singular_codim(cone)
    hyps = [
        Hypothesis(
            "simplicial",
            "satisfied" if simplicial else "failed",
            f"{len(cone.indices)} rays in rank {cone.fan.ambient_rank}",
        ),
        Hypothesis(
            "smooth_in_codim_2",
            "satisfied" if codim >= 3 else "failed",
            f"singular codimension {codim}",
        ),
    ]
    if not simplicial and codim < 3:
        return T1Report(mode="unsupported", bound=bound, hypotheses=tuple(hyps))

    der_dim: int
    if codim >= 3:
        cert = der_part_sufficient(cone, search_bound=bound)
        if cert.verdict is Verdict.DER_PART_VANISHES:
            der_dim, der_comp = 0, Completeness(
                guaranteed=True, note=f"vanishing certificate ({cert.criterion})"
            )
        else:
            der_dim, der_comp = der_part_exact(cone, bound)
    else:
        der_dim, der_comp = der_part_exact(cone, bound)

    if simplicial:
        assert class_group(cone.fan).free_rank == 0
        homq_dim, contributions, homq_comp = 0, (), Completeness(
            guaranteed=True, note="free class rank is zero"
        )
        mode = "simplicial"
    else:
        homq_dim, contributions, homq_comp = hom_q_h3(cone, bound)
        mode = "codim_ge_3"
    return T1Report(
        mode=mode,
        bound=bound,
        der_dimension=der_dim,
        der_completeness=der_comp,
        homq_dimension=homq_dim,
        homq_completeness=homq_comp,
        contributions=contributions,
        hypotheses=tuple(hyps),
    )


# ---------------------------------------------------------------------------
# Polygon cones


@dataclass(frozen=True)
class PolygonReport:
    dimension: int
    vertex_count: int
    minor_condition: bool
    cross_check_total: int


def _cyclic_hull_order(points: list[Vec]) -> list[Vec]:
    """Vertices of a convex polygon in counterclockwise order, exactly."""
    start = min(points)
    rest = sorted(points)
    rest.remove(start)

    def cross(o, a, bb):
        return (a[0] - o[0]) * (bb[1] - o[1]) - (a[1] - o[1]) * (bb[0] - o[0])

    import functools

    def compare(a, bb):
        c = cross(start, a, bb)
        if c > 0:
            return -1
        if c < 0:
            return 1
        da = (a[0] - start[0]) ** 2 + (a[1] - start[1]) ** 2
        db = (bb[0] - start[0]) ** 2 + (bb[1] - start[1]) ** 2
        return -1 if da < db else 1

    return [start] + sorted(rest, key=functools.cmp_to_key(compare))


def t1_polygon(vertices: Sequence[Sequence[int]], bound: int | None = None) -> PolygonReport:
    """Tangent dimension of the cone over a lattice polygon at height one.

    Requires every listed point to be a hull vertex and every edge cone of
    the lifted polygon to be smooth (so the singularity is isolated and
    Gorenstein); then the dimension is the vertex count minus three.  The
    result is cross-checked against the general affine computation and the
    grading matrix is audited for nowhere-vanishing maximal minors.
    """
    pts = [tuple(p) for p in vertices]
    if len(set(pts)) != len(pts):
        raise ValueError("duplicate polygon vertices")
    if any(len(p) != 2 for p in pts):
        raise ValueError("polygon vertices must be two-dimensional")
    if len(pts) < 3:
        raise ValueError("need at least three vertices")
    from .rigidity import _is_vertex

    for i in range(len(pts)):
        if not _is_vertex(pts, i):
            raise ValueError(f"{pts[i]} is not a vertex of the hull")
    ordered = _cyclic_hull_order(pts)
    m = len(ordered)
    lifted = [(p[0], p[1], 1) for p in ordered]
    from .lattice import smith_normal_form

    for k in range(m):
        pair = [lifted[k], lifted[(k + 1) % m]]
        snf = smith_normal_form(pair)
        if snf.invariant_factors != (1, 1):
            raise UnsupportedModeError(
                f"edge cone over {ordered[k]}, {ordered[(k + 1) % m]} is not smooth; "
                "use the general affine computation"
            )
    from .toric import affine_cone

    cone = affine_cone(lifted)
    cox = class_group(cone.fan)
    r = cox.free_rank
    minor_ok = True
    if r:
        for cols in itertools.combinations(range(m), r):
            sub = [[cox.grading_matrix[i][j] for j in cols] for i in range(r)]
            if int_det(sub) == 0:
                minor_ok = False
                break
    report = t1_affine(cone, bound)
    assert report.total == m - 3, "polygon formula disagrees with the affine computation"
    return PolygonReport(
        dimension=m - 3,
        vertex_count=m,
        minor_condition=minor_ok,
        cross_check_total=report.total,
    )


# ---------------------------------------------------------------------------
# Anticanonical hypersurfaces


@dataclass(frozen=True)
class CoxPolynomial:
    """Polynomial in the total coordinate ring, all terms of one degree."""

    terms: tuple[tuple[Fraction, Vec], ...]

    def __post_init__(self) -> None:
        if not self.terms:
            raise ValueError("polynomial must have at least one term")
        width = len(self.terms[0][1])
        for c, e in self.terms:
            if c == 0:
                raise ValueError("zero coefficient")
            if len(e) != width or any(x < 0 for x in e):
                raise ValueError(f"bad exponent {e}")

    @property
    def num_vars(self) -> int:
        return len(self.terms[0][1])


def cox_polynomial(fan: Fan, terms) -> CoxPolynomial:
    """Build a polynomial and check all terms share one class degree."""
    poly = CoxPolynomial(tuple((Fraction(c), tuple(e)) for c, e in terms))
    if poly.num_vars != fan.num_rays:
        raise ValueError(
            f"exponents have length {poly.num_vars}, fan has {fan.num_rays} rays"
        )
    cox = class_group(fan)
    ref = poly.terms[0][1]
    for _, e in poly.terms[1:]:
        diff = tuple(a - bb for a, bb in zip(e, ref))
        if degree_zero_membership(cox, diff) is None:
            raise ValueError(f"terms {ref} and {e} have different class degrees")
    return poly


@dataclass(frozen=True)
class CyReport:
    dimension: int | None
    hypotheses: tuple[Hypothesis, ...]
    monomial_count: int | None = None
    jacobian_rank: int | None = None

    @property
    def hypotheses_ok(self) -> bool:
        return all(h.status == "satisfied" for h in self.hypotheses)


def cy_t1(fan: Fan, poly: CoxPolynomial) -> CyReport:
    """Tangent dimension of an anticanonical hypersurface: the anticanonical
    graded piece of the quotient by the partial derivatives.

    The ambient fan must be simplicial, complete, Fano and Gorenstein, of
    dimension at least four, with singular locus of codimension at least
    four (the computable stand-in for the hypersurface meeting the singular
    locus in codimension three); the polynomial must have anticanonical
    degree.  Hypothesis failures produce a report without a dimension.
    The monomial enumerations are finite because the fan is complete, so no
    search window is involved.
    """
    cox = class_group(fan)
    m, n = cox.num_rays, cox.ambient_rank
    hyps = [
        Hypothesis(
            "dim_at_least_4",
            "satisfied" if n >= 4 else "failed",
            f"ambient rank {n}",
        ),
        Hypothesis(
            "complete", "satisfied" if is_complete(fan) else "failed", ""
        ),
        Hypothesis(
            "simplicial",
            "satisfied"
            if all(is_simplicial(fan.cone(c)) for c in fan.max_cones)
            else "failed",
            "",
        ),
        Hypothesis("fano", "satisfied" if is_fano(fan) else "failed", ""),
    ]
    if hyps[1].status == "satisfied":
        gor = all(gorenstein(fan.cone(c)) for c in fan.max_cones)
        hyps.append(
            Hypothesis(
                "gorenstein",
                "satisfied" if gor else "failed",
                "anticanonical class is Cartier" if gor else "some cone has index > 1",
            )
        )
        codim = singular_codim(fan)
        hyps.append(
            Hypothesis(
                "singular_codim_ge_4",
                "satisfied" if codim >= 4 else "failed",
                f"singular codimension {codim} (stand-in for the hypersurface cut)",
            )
        )
    if poly.num_vars != m:
        raise ValueError("polynomial does not match the fan")
    one = tuple([1] * m)
    bad_exp = None
    for _, e in poly.terms:
        diff = tuple(a - bb for a, bb in zip(e, one))
        if degree_zero_membership(cox, diff) is None:
            bad_exp = e
            break
    hyps.append(
        Hypothesis(
            "degree_anticanonical",
            "satisfied" if bad_exp is None else "failed",
            "" if bad_exp is None else f"offending exponent {bad_exp}",
        )
    )
    if any(h.status != "satisfied" for h in hyps):
        return CyReport(dimension=None, hypotheses=tuple(hyps))

    rays = fan.rays
    target_system = AffineSystem(
        num_vars=n, inequalities=tuple((v, -1) for v in rays)
    )
    monomials = sorted(
        tuple(1 + sum(a * bb for a, bb in zip(u, v)) for v in rays)
        for u in lattice_points(target_system)
    )
    index = {e: k for k, e in enumerate(monomials)}

    rows = []
    for k in range(m):
        mult_system = AffineSystem(
            num_vars=n,
            inequalities=tuple(
                (v, -1 if j == k else 0) for j, v in enumerate(rays)
            ),
        )
        for u in lattice_points(mult_system):
            gamma = tuple(
                (1 if j == k else 0) + sum(a * bb for a, bb in zip(u, v))
                for j, v in enumerate(rays)
            )
            row = [Fraction(0)] * len(monomials)
            hit = False
            for c, e in poly.terms:
                if e[k] == 0:
                    continue
                target = tuple(g + x - (1 if j == k else 0) for j, (g, x) in enumerate(zip(gamma, e)))
                row[index[target]] += c * e[k]
                hit = True
            if hit:
                rows.append(row)
    if rows:
        _, pivots = rref(rows)
        rank = len(pivots)
    else:
        rank = 0
    return CyReport(
        dimension=len(monomials) - rank,
        hypotheses=tuple(hyps),
        monomial_count=len(monomials),
        jacobian_rank=rank,
    )
