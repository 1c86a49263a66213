"""Exact integer and rational linear algebra on small dense matrices.

Everything here works over arbitrary-precision integers or exact rationals
(``fractions.Fraction``); there is no floating point anywhere.  Matrices are
plain sequences of row sequences.  All functions are pure and deterministic,
with lexicographic tie-breaking wherever an order has to be chosen.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Vec = tuple[int, ...]


class NonPointedConeError(ValueError):
    """The generators span a cone containing a line."""


class UnboundedPolyhedronError(ValueError):
    """Enumeration was requested for a polyhedron with unbounded directions."""


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and x*a + y*b = g."""
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


def content(v: Iterable[int]) -> int:
    g = 0
    for a in v:
        g = gcd(g, a)
    return g


def primitive(v: Sequence[int]) -> Vec:
    """Divide an integer vector by its content (zero vector is returned as is)."""
    g = content(v)
    if g == 0:
        return tuple(v)
    return tuple(a // g for a in v)


def normalize_sign(v: Sequence[int]) -> Vec:
    """Flip the sign so the first nonzero entry is positive."""
    for a in v:
        if a > 0:
            return tuple(v)
        if a < 0:
            return tuple(-x for x in v)
    return tuple(v)


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SmithDecomposition:
    """Unimodular U, V and diagonal D with U * M * V = D.

    The diagonal entries are nonnegative and each divides the next.
    """

    u: tuple[Vec, ...]
    d: tuple[Vec, ...]
    v: tuple[Vec, ...]

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return tuple(
            self.d[i][i] for i in range(min(len(self.d), len(self.d[0]) if self.d else 0))
        )

    @property
    def rank(self) -> int:
        return sum(1 for f in self.invariant_factors if f != 0)


def _identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_normal_form(m: Sequence[Sequence[int]]) -> SmithDecomposition:
    """Smith normal form of an integer matrix, with transformation matrices.

    Pivots are chosen as the entry of least absolute value (row-major ties),
    so the result is deterministic for a fixed input.
    """
    nr = len(m)
    nc = len(m[0]) if nr else 0
    a = [list(row) for row in m]
    for row in a:
        if len(row) != nc:
            raise ValueError("ragged matrix")
    u = _identity(nr)
    v = _identity(nc)

    def row_op(i: int, k: int, coeffs: tuple[int, int, int, int]) -> None:
        # rows (i, k) <- (p*row_i + q*row_k, r*row_i + s*row_k), ps - qr = +-1
        p, q, r, s = coeffs
        for mat in (a, u):
            ri, rk = mat[i], mat[k]
            for j in range(len(ri)):
                ri[j], rk[j] = p * ri[j] + q * rk[j], r * ri[j] + s * rk[j]

    def col_op(j: int, k: int, coeffs: tuple[int, int, int, int]) -> None:
        p, q, r, s = coeffs
        for mat in (a, v):
            for row in mat:
                row[j], row[k] = p * row[j] + q * row[k], r * row[j] + s * row[k]

    t = 0
    while t < min(nr, nc):
        # locate the smallest nonzero entry of the trailing block
        pivot = None
        for i in range(t, nr):
            for j in range(t, nc):
                if a[i][j] != 0 and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        if pi != t:
            row_op(t, pi, (0, 1, 1, 0))
        if pj != t:
            col_op(t, pj, (0, 1, 1, 0))
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, nr):
                b = a[i][t]
                if b == 0:
                    continue
                d = a[t][t]
                if b % d == 0:
                    row_op(t, i, (1, 0, -(b // d), 1))
                else:
                    g, x, y = xgcd(d, b)
                    row_op(t, i, (x, y, -(b // g), d // g))
                    dirty = True
            for j in range(t + 1, nc):
                b = a[t][j]
                if b == 0:
                    continue
                d = a[t][t]
                if b % d == 0:
                    col_op(t, j, (1, 0, -(b // d), 1))
                    dirty = True  # column ops can reintroduce entries in column t
                else:
                    g, x, y = xgcd(d, b)
                    col_op(t, j, (x, y, -(b // g), d // g))
                    dirty = True
        # enforce divisibility: pivot must divide the trailing block
        d = a[t][t]
        fixed = True
        for i in range(t + 1, nr):
            for j in range(t + 1, nc):
                if a[i][j] % d != 0:
                    row_op(t, i, (1, 1, 0, 1))  # absorb row i, then restart clearing
                    fixed = False
                    break
            if not fixed:
                break
        if fixed:
            t += 1

    for i in range(min(nr, nc)):
        if a[i][i] < 0:
            for mat in (a, u):
                mat[i][:] = [-x for x in mat[i]]

    return SmithDecomposition(
        u=tuple(tuple(r) for r in u),
        d=tuple(tuple(r) for r in a),
        v=tuple(tuple(r) for r in v),
    )


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> list[list[int]]:
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def int_det(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def int_rank(m: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix, by fraction-free (Bareiss) elimination.

    Every row below the pivot is updated, including rows with a zero entry
    in the pivot column; the rescaling keeps later divisions exact.
    """
    a = [list(row) for row in m]
    nr = len(a)
    nc = len(a[0]) if nr else 0
    rank = 0
    prev = 1
    for col in range(nc):
        piv = None
        for i in range(rank, nr):
            if a[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for i in range(rank + 1, nr):
            for j in range(col + 1, nc):
                a[i][j] = (a[i][j] * a[rank][col] - a[i][col] * a[rank][j]) // prev
            a[i][col] = 0
        prev = a[rank][col]
        rank += 1
        if rank == nr:
            break
    return rank


def integer_kernel(m: Sequence[Sequence[int]]) -> list[Vec]:
    """Lattice basis of { a : M*a = 0 }, sign-normalized and sorted."""
    nr = len(m)
    nc = len(m[0]) if nr else 0
    if nc == 0:
        return []
    snf = smith_normal_form(m)
    rank = snf.rank
    basis = [normalize_sign(tuple(snf.v[i][j] for i in range(nc))) for j in range(rank, nc)]
    return sorted(basis)


def solve_diophantine(
    a: Sequence[Sequence[int]], rhs: Sequence[int]
) -> tuple[Vec, list[Vec]] | None:
    """Integer solutions of A*x = rhs as (particular, kernel basis), or None."""
    nr = len(a)
    nc = len(a[0]) if nr else 0
    if nr == 0:
        return tuple([0] * nc), [tuple(row) for row in _identity(nc)]
    snf = smith_normal_form(a)
    w = [sum(snf.u[i][k] * rhs[k] for k in range(nr)) for i in range(nr)]
    y = [0] * nc
    for i in range(nr):
        d = snf.d[i][i] if i < min(nr, nc) else 0
        if d == 0:
            if w[i] != 0:
                return None
        else:
            if w[i] % d != 0:
                return None
            y[i] = w[i] // d
    particular = tuple(sum(snf.v[i][j] * y[j] for j in range(nc)) for i in range(nc))
    rank = snf.rank
    basis = [tuple(snf.v[i][j] for i in range(nc)) for j in range(rank, nc)]
    return particular, basis


# ---------------------------------------------------------------------------
# Rational elimination (reduced row echelon form and friends)


def rref(
    rows: Sequence[Sequence[Fraction | int]],
) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    a = [[Fraction(x) for x in row] for row in rows]
    nr = len(a)
    nc = len(a[0]) if nr else 0
    pivots: list[int] = []
    r = 0
    for c in range(nc):
        piv = None
        for i in range(r, nr):
            if a[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = a[r][c]
        a[r] = [x / inv for x in a[r]]
        for i in range(nr):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return a[:r], pivots


def rational_kernel(rows: Sequence[Sequence[Fraction | int]], num_cols: int) -> list[list[Fraction]]:
    """Basis of the rational nullspace of the given matrix."""
    red, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(num_cols) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * num_cols
        vec[f] = Fraction(1)
        for r, c in enumerate(pivots):
            vec[c] = -red[r][f]
        basis.append(vec)
    return basis


def rational_solve(
    rows: Sequence[Sequence[Fraction | int]], rhs: Sequence[Fraction | int]
) -> list[Fraction] | None:
    """One rational solution of A*x = rhs, or None if inconsistent."""
    nc = len(rows[0]) if rows else 0
    aug = [list(row) + [b] for row, b in zip(rows, rhs)]
    red, pivots = rref(aug)
    if nc in pivots:
        return None
    sol = [Fraction(0)] * nc
    for r, c in enumerate(pivots):
        sol[c] = red[r][nc]
    return sol


# ---------------------------------------------------------------------------
# Affine systems over the integers and Fourier-Motzkin elimination


@dataclass(frozen=True)
class AffineSystem:
    """Integer constraints on u in Z^num_vars.

    ``equalities`` are pairs (a, c) meaning <a, u> = c and ``inequalities``
    mean <a, u> >= c.
    """

    num_vars: int
    equalities: tuple[tuple[Vec, int], ...] = ()
    inequalities: tuple[tuple[Vec, int], ...] = ()

    def __post_init__(self) -> None:
        for a, _ in itertools.chain(self.equalities, self.inequalities):
            if len(a) != self.num_vars:
                raise ValueError(
                    f"constraint row has length {len(a)}, expected {self.num_vars}"
                )

    def satisfied_by(self, u: Sequence[int]) -> bool:
        if len(u) != self.num_vars:
            return False
        for a, c in self.equalities:
            if sum(x * y for x, y in zip(a, u)) != c:
                return False
        for a, c in self.inequalities:
            if sum(x * y for x, y in zip(a, u)) < c:
                return False
        return True


@dataclass(frozen=True)
class Witness:
    point: Vec


@dataclass(frozen=True)
class Infeasible:
    pass


@dataclass(frozen=True)
class BoundExceeded:
    search_bound: int


FeasibilityResult = Witness | Infeasible | BoundExceeded

_Row = tuple[Vec, int]  # <a, x> >= c


def _normalize_row(coeffs: Sequence[int], c: int) -> _Row:
    g = gcd(content(coeffs), c)
    if g > 1:
        coeffs = [x // g for x in coeffs]
        c //= g
    return tuple(coeffs), c


class _FMContradiction(Exception):
    pass


def _fm_eliminate(rows: list[_Row], var: int) -> list[_Row]:
    """Eliminate one variable from a weak inequality system.

    Raises _FMContradiction if a constraint 0 >= positive appears.
    """
    pos: list[_Row] = []
    neg: list[_Row] = []
    out: set[_Row] = set()
    for a, c in rows:
        if a[var] > 0:
            pos.append((a, c))
        elif a[var] < 0:
            neg.append((a, c))
        else:
            if all(x == 0 for x in a):
                if c > 0:
                    raise _FMContradiction
            else:
                out.add(_normalize_row(a, c))
    for (ap, cp) in pos:
        for (an, cn) in neg:
            mp, mn = -an[var], ap[var]
            a = tuple(mp * x + mn * y for x, y in zip(ap, an))
            c = mp * cp + mn * cn
            if all(x == 0 for x in a):
                if c > 0:
                    raise _FMContradiction
                continue
            out.add(_normalize_row(a, c))
    return sorted(out)


def _as_rows(system: AffineSystem) -> list[_Row]:
    rows: list[_Row] = []
    for a, c in system.equalities:
        rows.append((tuple(a), c))
        rows.append((tuple(-x for x in a), -c))
    for a, c in system.inequalities:
        rows.append((tuple(a), c))
    return rows


def rational_feasible(rows: list[_Row], num_vars: int) -> bool:
    """Exact feasibility of a weak inequality system over the rationals."""
    cur = list(rows)
    try:
        for var in range(num_vars):
            cur = _fm_eliminate(cur, var)
    except _FMContradiction:
        return False
    return True


def variable_bounds(
    rows: list[_Row], num_vars: int
) -> list[tuple[Fraction | None, Fraction | None]] | None:
    """Per-variable rational bounds of the solution set.

    Returns a (lower, upper) pair per variable with None for an unbounded
    side, or None if the system is infeasible over the rationals.
    """
    bounds: list[tuple[Fraction | None, Fraction | None]] = []
    for var in range(num_vars):
        cur = list(rows)
        try:
            for other in range(num_vars):
                if other != var:
                    cur = _fm_eliminate(cur, other)
        except _FMContradiction:
            return None
        lo: Fraction | None = None
        hi: Fraction | None = None
        for a, c in cur:
            coef = a[var]
            if coef > 0:
                val = Fraction(c, coef)
                lo = val if lo is None else max(lo, val)
            elif coef < 0:
                val = Fraction(c, coef)
                hi = val if hi is None else min(hi, val)
            elif c > 0:
                return None
        bounds.append((lo, hi))
    return bounds


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def _floor(x: Fraction) -> int:
    return x.numerator // x.denominator


def _shell_points(ranges: list[tuple[int, int]], radius: int):
    """Points of prod([lo,hi]) with L-infinity norm == radius, in lex order."""
    clipped = [(max(lo, -radius), min(hi, radius)) for lo, hi in ranges]
    if any(lo > hi for lo, hi in clipped):
        return
    for point in itertools.product(*(range(lo, hi + 1) for lo, hi in clipped)):
        if max((abs(x) for x in point), default=0) == radius:
            yield point


def integer_feasible(system: AffineSystem, search_bound: int) -> FeasibilityResult:
    """Decide whether the system has an integer solution.

    Equalities are absorbed by a lattice parametrization, leaving a pure
    inequality system in the free coordinates.  If Fourier-Motzkin bounds
    certify a bounded rational relaxation, its integer points are exhausted
    and the answer is exact; otherwise the free box of radius
    ``search_bound`` is searched and exhaustion yields BoundExceeded.
    """
    if search_bound < 1:
        raise ValueError("search_bound must be >= 1")
    n = system.num_vars
    if system.equalities:
        eq_mat = [list(a) for a, _ in system.equalities]
        eq_rhs = [c for _, c in system.equalities]
        sol = solve_diophantine(eq_mat, eq_rhs)
        if sol is None:
            return Infeasible()
        origin, basis = sol
    else:
        origin, basis = tuple([0] * n), [tuple(row) for row in _identity(n)]

    k = len(basis)

    def to_ambient(t: Sequence[int]) -> Vec:
        return tuple(
            origin[i] + sum(basis[j][i] * t[j] for j in range(k)) for i in range(n)
        )

    if k == 0:
        return Witness(origin) if system.satisfied_by(origin) else Infeasible()

    rows: list[_Row] = []
    for a, c in system.inequalities:
        coeffs = tuple(
            sum(a[i] * basis[j][i] for i in range(n)) for j in range(k)
        )
        rows.append(_normalize_row(coeffs, c - sum(x * y for x, y in zip(a, origin))))

    bounds = variable_bounds(rows, k)
    if bounds is None:
        return Infeasible()

    bounded = all(lo is not None and hi is not None for lo, hi in bounds)
    ranges: list[tuple[int, int]] = []
    for lo, hi in bounds:
        ilo = _ceil(lo) if lo is not None else -search_bound
        ihi = _floor(hi) if hi is not None else search_bound
        if ilo > ihi:
            if lo is not None and hi is not None:
                return Infeasible()
            return BoundExceeded(search_bound)
        ranges.append((ilo, ihi))
    if bounded:
        radius_cap = max(max(abs(lo), abs(hi)) for lo, hi in ranges)
    else:
        radius_cap = search_bound

    def check(t: Vec) -> bool:
        return all(sum(x * y for x, y in zip(a, t)) >= c for a, c in rows)

    for radius in range(radius_cap + 1):
        for t in _shell_points(ranges, radius):
            if check(t):
                u = to_ambient(t)
                assert system.satisfied_by(u)
                return Witness(u)
    return Infeasible() if bounded else BoundExceeded(search_bound)


def lattice_points(system: AffineSystem) -> list[Vec]:
    """All integer solutions of a bounded system, in lexicographic order.

    Raises UnboundedPolyhedronError when the rational solution set has an
    unbounded coordinate; an infeasible system yields the empty list.
    """
    n = system.num_vars
    rows = _as_rows(system)
    if n == 0:
        try:
            for a, c in rows:
                if c > 0:
                    raise _FMContradiction
        except _FMContradiction:
            return []
        return [()]
    bounds = variable_bounds(rows, n)
    if bounds is None:
        return []
    if any(lo is None or hi is None for lo, hi in bounds):
        raise UnboundedPolyhedronError("polyhedron has an unbounded direction")

    # chain of systems: level k constrains variables 0..k only
    levels: list[list[_Row]] = [[] for _ in range(n)]
    cur = rows
    levels[n - 1] = cur
    try:
        for k in range(n - 1, 0, -1):
            cur = _fm_eliminate(cur, k)
            levels[k - 1] = cur
    except _FMContradiction:
        return []

    out: list[Vec] = []
    point = [0] * n

    def descend(level: int) -> None:
        lo: Fraction | None = None
        hi: Fraction | None = None
        for a, c in levels[level]:
            coef = a[level]
            resid = c - sum(a[i] * point[i] for i in range(level))
            if coef > 0:
                val = Fraction(resid, coef)
                lo = val if lo is None else max(lo, val)
            elif coef < 0:
                val = Fraction(resid, coef)
                hi = val if hi is None else min(hi, val)
            elif resid > 0:
                return
        if lo is None or hi is None:
            # globally bounded, so this cannot happen on a feasible branch
            glo, ghi = bounds[level]
            lo = glo if lo is None else lo
            hi = ghi if hi is None else hi
        for value in range(_ceil(lo), _floor(hi) + 1):
            point[level] = value
            if level == n - 1:
                out.append(tuple(point))
            else:
                descend(level + 1)

    descend(0)
    return out


# ---------------------------------------------------------------------------
# Cones


def cone_contains(generators: Sequence[Vec], x: Sequence[int]) -> bool:
    """Is x a nonnegative rational combination of the generators?"""
    k = len(generators)
    if k == 0:
        return all(a == 0 for a in x)
    n = len(generators[0])
    rows: list[_Row] = []
    for j in range(n):
        a = tuple(g[j] for g in generators)
        rows.append((a, x[j]))
        rows.append((tuple(-c for c in a), -x[j]))
    for i in range(k):
        e = tuple(1 if j == i else 0 for j in range(k))
        rows.append((e, 0))
    return rational_feasible(rows, k)


def cone_is_pointed(generators: Sequence[Vec]) -> bool:
    """A cone is pointed iff some covector is strictly positive on all generators."""
    gens = [g for g in generators if any(g)]
    if not gens:
        return True
    n = len(gens[0])
    rows = [(tuple(g), 1) for g in gens]
    return rational_feasible(rows, n)


def hilbert_basis(generators: Sequence[Sequence[int]]) -> list[Vec]:
    """Minimal generating set of the monoid of lattice points of a pointed cone.

    Candidates are the lattice points of the zonotope spanned by the
    primitive generators (Gordan's lemma makes these generate); reducible
    elements are then filtered out.  Intended for small ambient rank and
    small determinants.
    """
    gens = sorted({primitive(g) for g in generators if any(g)})
    if not gens:
        return []
    if not cone_is_pointed(gens):
        raise NonPointedConeError("cone contains a line; Hilbert basis undefined")
    n = len(gens[0])
    k = len(gens)

    box = []
    for j in range(n):
        lo = sum(min(0, g[j]) for g in gens)
        hi = sum(max(0, g[j]) for g in gens)
        box.append((lo, hi))

    def in_zonotope(x: Vec) -> bool:
        rows: list[_Row] = []
        for j in range(n):
            a = tuple(g[j] for g in gens)
            rows.append((a, x[j]))
            rows.append((tuple(-c for c in a), -x[j]))
        for i in range(k):
            e = tuple(1 if j == i else 0 for j in range(k))
            rows.append((e, 0))
            rows.append((tuple(-c for c in e), -1))
        return rational_feasible(rows, k)

    candidates = set(gens)
    for x in itertools.product(*(range(lo, hi + 1) for lo, hi in box)):
        if any(x) and x not in candidates and cone_contains(gens, x) and in_zonotope(x):
            candidates.add(tuple(x))

    ordered = sorted(candidates)
    basis = []
    for h in ordered:
        reducible = False
        for c in ordered:
            if c == h:
                continue
            diff = tuple(a - b for a, b in zip(h, c))
            if all(d == 0 for d in diff):
                continue
            if cone_contains(gens, diff):
                reducible = True
                break
        if not reducible:
            basis.append(h)
    return basis
