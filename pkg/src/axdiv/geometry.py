"""Exact linear programming over the rationals and fiber-polytope enumeration.

The simplex here is deliberately small: equality-form problems in nonnegative
variables, Bland's rule for guaranteed termination, Fraction arithmetic
throughout.  Nothing in this module touches floating point, so feasibility
verdicts come with exact witnesses and infeasibility with Farkas certificates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .model import (
    CoefficientKey,
    ExponentVector,
    SubsetPair,
    SupportSystem,
    restrict_support,
)

Point = tuple[Fraction, ...]


class InfeasibleError(Exception):
    """LP that was required to be feasible is not; carries the certificate."""

    def __init__(self, certificate: Point | None = None):
        super().__init__("infeasible linear program")
        self.certificate = certificate


class UnboundedError(Exception):
    """Minimization objective unbounded below on the feasible region."""


@dataclass(frozen=True)
class RationalLP:
    """min objective . x  subject to  rows . x = rhs  and  x >= 0.

    objective may be None for pure feasibility questions.
    """

    rows: tuple[tuple[Fraction, ...], ...]
    rhs: tuple[Fraction, ...]
    objective: tuple[Fraction, ...] | None = None

    def __post_init__(self) -> None:
        if len(self.rows) != len(self.rhs):
            raise ValueError("rows and rhs length mismatch")
        widths = {len(row) for row in self.rows}
        if self.objective is not None:
            widths.add(len(self.objective))
        if len(widths) > 1:
            raise ValueError("ragged constraint matrix")


@dataclass(frozen=True)
class Feasibility:
    feasible: bool
    witness: Point | None = None
    # Farkas vector y with y.rows <= 0 componentwise and y.rhs > 0.
    certificate: Point | None = None


def rational_lp(rows: Iterable[Iterable], rhs: Iterable,
                objective: Iterable | None = None) -> RationalLP:
    frows = tuple(tuple(Fraction(x) for x in row) for row in rows)
    frhs = tuple(Fraction(x) for x in rhs)
    fobj = None if objective is None else tuple(Fraction(x) for x in objective)
    return RationalLP(frows, frhs, fobj)


def _pivot(tableau: list[list[Fraction]], basis: list[int], row: int, col: int) -> None:
    piv = tableau[row][col]
    tableau[row] = [x / piv for x in tableau[row]]
    prow = tableau[row]
    for i, other in enumerate(tableau):
        if i == row:
            continue
        factor = other[col]
        if factor:
            tableau[i] = [a - factor * b for a, b in zip(other, prow)]
    basis[row] = col


def _run_simplex(tableau: list[list[Fraction]], basis: list[int], ncols: int) -> None:
    """Iterate Bland pivots until the cost row (last) has no negative entry."""
    while True:
        cost = tableau[-1]
        enter = next((j for j in range(ncols) if cost[j] < 0), None)
        if enter is None:
            return
        leave = None
        best = None
        for i in range(len(tableau) - 1):
            coef = tableau[i][enter]
            if coef > 0:
                ratio = tableau[i][-1] / coef
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            raise UnboundedError("no leaving row")
        _pivot(tableau, basis, leave, enter)


def _solve(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction],
           objective: Sequence[Fraction] | None):
    """Two-phase exact simplex.

    Returns ("optimal", value, x, None) or ("infeasible", None, None, farkas).
    Raises UnboundedError if the phase-2 objective has no finite minimum.
    """
    m = len(rows)
    k = len(rows[0]) if m else (len(objective) if objective else 0)
    if m == 0:
        if objective and any(c < 0 for c in objective):
            raise UnboundedError("no constraints")
        zero = tuple(Fraction(0) for _ in range(k))
        return "optimal", Fraction(0), zero, None

    flips = [Fraction(-1) if b < 0 else Fraction(1) for b in rhs]
    tableau = []
    for i in range(m):
        row = [flips[i] * x for x in rows[i]]
        row += [Fraction(1) if t == i else Fraction(0) for t in range(m)]
        row.append(flips[i] * rhs[i])
        tableau.append(row)
    basis = [k + i for i in range(m)]

    # Phase 1 cost row: artificials cost 1, already basic, so eliminate them.
    cost = [Fraction(0)] * (k + m + 1)
    for row in tableau:
        cost = [c - x for c, x in zip(cost, row)]
    for j in range(k, k + m):
        cost[j] += 1
    tableau.append(cost)
    _run_simplex(tableau, basis, k + m)

    value = -tableau[-1][-1]
    if value > 0:
        # Farkas: y_i = 1 - reduced cost of artificial i, undoing row flips.
        farkas = tuple(flips[i] * (1 - tableau[-1][k + i]) for i in range(m))
        return "infeasible", None, None, farkas

    # Drive leftover artificials out of the basis; drop redundant rows.
    keep = []
    for i in range(m):
        if basis[i] >= k:
            col = next((j for j in range(k) if tableau[i][j] != 0), None)
            if col is None:
                continue  # redundant constraint
            _pivot(tableau, basis, i, col)
        keep.append(i)
    tableau = [tableau[i][:k] + [tableau[i][-1]] for i in keep]
    basis = [basis[i] for i in keep]

    if objective is not None:
        cost = [Fraction(c) for c in objective] + [Fraction(0)]
        for i, b in enumerate(basis):
            factor = cost[b]
            if factor:
                cost = [c - factor * x for c, x in zip(cost, tableau[i])]
        tableau.append(cost)
        _run_simplex(tableau, basis, k)
        tableau.pop()

    x = [Fraction(0)] * k
    for i, b in enumerate(basis):
        x[b] = tableau[i][-1]
    val = Fraction(0) if objective is None else sum(c * v for c, v in zip(objective, x))
    return "optimal", val, tuple(x), None


def lp_feasible(lp: RationalLP) -> Feasibility:
    """Exact feasibility with witness or Farkas certificate."""
    status, _, x, farkas = _solve(lp.rows, lp.rhs, None)
    if status == "optimal":
        return Feasibility(True, witness=x)
    return Feasibility(False, certificate=farkas)


def lp_minimize(lp: RationalLP) -> tuple[Fraction, Point]:
    """Exact minimum of the objective; raises InfeasibleError or UnboundedError."""
    if lp.objective is None:
        raise ValueError("objective required")
    status, value, x, farkas = _solve(lp.rows, lp.rhs, lp.objective)
    if status == "infeasible":
        raise InfeasibleError(farkas)
    return value, x


def minimal_dilation(vertices: Iterable[Iterable], y: Iterable) -> Fraction | None:
    """Least rational c >= 0 with y in c * conv(vertices cup {0}), or None.

    Since the hull contains the origin the dilations are nested, and the
    minimum is  min sum(mu)  over  mu >= 0  with  sum mu_v * v = y.
    """
    vs = [tuple(Fraction(x) for x in v) for v in vertices]
    if not vs:
        raise ValueError("empty vertex set")
    ty = tuple(Fraction(x) for x in y)
    dim = len(ty)
    if any(len(v) != dim for v in vs):
        raise ValueError("vertex dimension mismatch")
    vs = [v for v in vs if any(x != 0 for x in v)]
    if all(x == 0 for x in ty):
        return Fraction(0)
    if not vs:
        return None
    rows = tuple(tuple(v[i] for v in vs) for i in range(dim))
    lp = RationalLP(rows, ty, tuple(Fraction(1) for _ in vs))
    try:
        value, _ = lp_minimize(lp)
    except InfeasibleError:
        return None
    return value


@dataclass(frozen=True)
class FiberPolytope:
    """Solutions u >= 0 of: sum of u_g over G_{j,C} equals t_j for each j in B,
    and sum u_g * g = v, one variable per restricted generator.

    level records the scaling that produced (t, v) and is bookkeeping only.
    Targets may be arbitrary integers; infeasible targets give the empty set.
    """

    pair: SubsetPair
    level: int
    t: tuple[int, ...]
    v: ExponentVector
    gens: tuple[CoefficientKey, ...]


def fiber_polytope(system: SupportSystem, pair: SubsetPair,
                   t: Sequence[int], v: Sequence[int], level: int = 1) -> FiberPolytope:
    t = tuple(int(x) for x in t)
    v = tuple(int(x) for x in v)
    if len(t) != len(pair.B):
        raise ValueError("t must have one entry per index in B")
    if len(v) != system.n:
        raise ValueError("v must have length n")
    cset = set(pair.C)
    if any(x != 0 for i, x in enumerate(v, start=1) if i not in cset):
        raise ValueError("v must vanish off C")
    gens = tuple((j, g) for j in pair.B for g in restrict_support(system, j, pair.C))
    return FiberPolytope(pair, level, t, v, gens)


def _fiber_equations(f: FiberPolytope):
    """Equality system rows.u = rhs plus per-variable upper bounds."""
    k = len(f.gens)
    budget = dict(zip(f.pair.B, f.t))
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for j in f.pair.B:
        rows.append([Fraction(1 if gj == j else 0) for gj, _ in f.gens])
        rhs.append(Fraction(budget[j]))
    for i in f.pair.C:
        rows.append([Fraction(g[i - 1]) for _, g in f.gens])
        rhs.append(Fraction(f.v[i - 1]))
    ubounds = [budget[gj] for gj, _ in f.gens]
    return rows, rhs, ubounds


def fiber_feasible(system: SupportSystem, pair: SubsetPair,
                   t: Sequence[int], v: Sequence[int]) -> Feasibility:
    """Rational feasibility of the fiber, i.e. membership of (t, v) in Z_{B,C}."""
    f = fiber_polytope(system, pair, t, v)
    if any(x < 0 for x in f.t) or any(x < 0 for x in f.v):
        return Feasibility(False)
    if not f.gens:
        ok = all(x == 0 for x in f.t) and all(x == 0 for x in f.v)
        return Feasibility(ok, witness=() if ok else None)
    rows, rhs, _ = _fiber_equations(f)
    return lp_feasible(RationalLP(tuple(map(tuple, rows)), tuple(rhs)))


def _rref(matrix: list[list[Fraction]], rhs: list[Fraction]):
    """Row reduce; returns (pivot columns, reduced rows, reduced rhs, consistent)."""
    mat = [row[:] for row in matrix]
    vec = rhs[:]
    m = len(mat)
    k = len(mat[0]) if m else 0
    pivots: list[int] = []
    row = 0
    for col in range(k):
        sel = next((i for i in range(row, m) if mat[i][col] != 0), None)
        if sel is None:
            continue
        mat[row], mat[sel] = mat[sel], mat[row]
        vec[row], vec[sel] = vec[sel], vec[row]
        piv = mat[row][col]
        mat[row] = [x / piv for x in mat[row]]
        vec[row] /= piv
        for i in range(m):
            if i != row and mat[i][col] != 0:
                factor = mat[i][col]
                mat[i] = [a - factor * b for a, b in zip(mat[i], mat[row])]
                vec[i] -= factor * vec[row]
        pivots.append(col)
        row += 1
        if row == m:
            break
    consistent = all(vec[i] == 0 for i in range(row, m))
    return pivots, mat[:row], vec[:row], consistent


def _bounded_integer_solutions(rows, rhs, ubounds) -> list[tuple[int, ...]]:
    """All integer u with 0 <= u <= ubounds (componentwise) and rows.u = rhs.

    Row reduction first, then depth-first search over the free variables with
    interval pruning of every pivot expression.
    """
    k = len(ubounds)
    if any(u < 0 for u in ubounds):
        return []
    pivots, red, redrhs, consistent = _rref(rows, rhs)
    if not consistent:
        return []
    free = [j for j in range(k) if j not in pivots]
    # pivot row i reads: u[pivots[i]] = redrhs[i] - sum over free j of red[i][j]*u[j]
    out: list[tuple[int, ...]] = []
    values = [0] * k

    def recurse(fidx: int) -> None:
        for i, pcol in enumerate(pivots):
            lo = hi = redrhs[i] - sum(red[i][j] * values[j] for j in free[:fidx])
            for j in free[fidx:]:
                coef = red[i][j]
                if coef > 0:
                    lo -= coef * ubounds[j]
                elif coef < 0:
                    hi -= coef * ubounds[j]
            if hi < 0 or lo > ubounds[pcol]:
                return
        if fidx == len(free):
            for i, pcol in enumerate(pivots):
                val = redrhs[i] - sum(red[i][j] * values[j] for j in free)
                if val.denominator != 1 or not 0 <= val <= ubounds[pcol]:
                    return
                values[pcol] = int(val)
            out.append(tuple(values))
            return
        j = free[fidx]
        for x in range(int(ubounds[j]) + 1):
            values[j] = x
            recurse(fidx + 1)
        values[j] = 0

    recurse(0)
    out.sort()
    return out


def enumerate_integral_points(f: FiberPolytope) -> list[tuple[int, ...]]:
    """Exactly the nonnegative integer points of the fiber, in lex order."""
    if any(x < 0 for x in f.t) or any(x < 0 for x in f.v):
        return []
    if not f.gens:
        return [()] if all(x == 0 for x in f.t) and all(x == 0 for x in f.v) else []
    rows, rhs, ubounds = _fiber_equations(f)
    return _bounded_integer_solutions(rows, rhs, ubounds)


def _affine_dimension(points: list[Point]) -> int:
    if not points:
        return -1
    base = points[0]
    diffs = [[x - b for x, b in zip(pt, base)] for pt in points[1:]]
    if not diffs:
        return 0
    pivots, _, _, _ = _rref(diffs, [Fraction(0)] * len(diffs))
    return len(pivots)


def enumerate_vertices(f: FiberPolytope) -> tuple[list[Point], int]:
    """All vertices of the fiber polytope plus its affine dimension.

    Exhaustive basic-solution enumeration over the reduced equality system;
    fine at desk scale where fibers have at most a dozen variables.
    Returns ([], -1) for an empty fiber.
    """
    if any(x < 0 for x in f.t) or any(x < 0 for x in f.v):
        return [], -1
    if not f.gens:
        if all(x == 0 for x in f.t) and all(x == 0 for x in f.v):
            return [()], 0
        return [], -1
    rows, rhs, _ = _fiber_equations(f)
    pivots, red, redrhs, consistent = _rref(rows, rhs)
    if not consistent:
        return [], -1
    k = len(f.gens)
    rank = len(red)
    found: set[Point] = set()
    for cols in combinations(range(k), rank):
        sub = [[red[i][j] for j in cols] for i in range(rank)]
        subpiv, subred, subrhs, ok = _rref(sub, list(redrhs))
        if not ok or len(subpiv) < rank:
            continue  # singular basis
        u = [Fraction(0)] * k
        for i in range(rank):
            u[cols[subpiv[i]]] = subrhs[i]
        if all(x >= 0 for x in u):
            found.add(tuple(u))
    vertices = sorted(found)
    return vertices, _affine_dimension(vertices)
