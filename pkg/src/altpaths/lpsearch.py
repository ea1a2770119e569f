"""Exact-rational LP feasibility search for valid sequence triples.

Variables are the 6k+5 sequence entries plus one common cover target t.
Every spine vertex and edge must be covered by exactly t (the coefficient
rows come verbatim from the covering module), mirrored entries are tied
together, structurally impossible classes are pinned to zero, and the
sequence entries sum to one.  Any feasible rational point scales by the
LCM of its denominators to an integer triple that synthesises into a
uniformly covered forest.

The solver is a two-phase primal simplex over ``Fraction`` with Bland's
anti-cycling rule, so feasibility verdicts are exact and termination is
guaranteed.  Tie/fix rows are eliminated exactly before pivoting starts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .constructions import LabelledForest, SequenceTriple, materialise, plan_odd
from .covering import edge_cover_row, vertex_cover_row


@dataclass(frozen=True)
class LpRow:
    coeffs: tuple[Fraction, ...]
    relation: str            # "=" or ">="
    rhs: Fraction
    kind: str = "extra"      # vertex | edge | tie | fix | norm | extra


@dataclass(frozen=True)
class LpProblem:
    num_vars: int
    rows: tuple[LpRow, ...]
    objective: Optional[tuple[Fraction, ...]] = None   # minimised when present
    k: Optional[int] = None

    def row_counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for row in self.rows:
            counts[row.kind] = counts.get(row.kind, 0) + 1
        return counts


@dataclass(frozen=True)
class LpSolution:
    status: str              # "feasible" | "infeasible"
    assignment: Optional[tuple[Fraction, ...]] = None
    k: Optional[int] = None

    @property
    def feasible(self) -> bool:
        return self.status == "feasible"


# -- problem construction ----------------------------------------------------

def variable_layout(k: int) -> dict[tuple[str, int], int]:
    """Column index of each sequence entry; the cover target t is last."""
    layout = {}
    for i in range(2 * k + 2):
        layout[("x", i)] = i
    for i in range(2 * k + 1):
        layout[("y", i)] = 2 * k + 2 + i
    for i in range(2 * k + 2):
        layout[("z", i)] = 4 * k + 3 + i
    return layout


def t_index(k: int) -> int:
    return 6 * k + 5


def variable_names(k: int) -> list[str]:
    names = [""] * (6 * k + 6)
    for (series, i), col in variable_layout(k).items():
        names[col] = f"{series}{i}"
    names[t_index(k)] = "t"
    return names


def build_constraints(k: int, extra: Sequence[LpRow] = ()) -> LpProblem:
    """The covering LP: all cover counts equal t, entries symmetric and
    normalised to sum one, structurally unmappable classes pinned to zero.

    The default objective minimises t, i.e. prefers the smallest uniform
    cover multiplicity.  Caller-supplied extra rows are appended as-is.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    layout = variable_layout(k)
    num_vars = 6 * k + 6
    t_col = t_index(k)
    zero = Fraction(0)
    rows: list[LpRow] = []

    def cover_row(row_map, kind: str) -> LpRow:
        coeffs = [zero] * num_vars
        for key, coeff in row_map.items():
            coeffs[layout[key]] = Fraction(coeff)
        coeffs[t_col] = Fraction(-1)
        return LpRow(tuple(coeffs), "=", zero, kind)

    for idx in range(2 * k + 2):
        rows.append(cover_row(vertex_cover_row(k, idx), "vertex"))
    for idx in range(2 * k + 1):
        rows.append(cover_row(edge_cover_row(k, idx), "edge"))

    def tie(a: int, b: int) -> LpRow:
        coeffs = [zero] * num_vars
        coeffs[a] = Fraction(1)
        coeffs[b] = Fraction(-1)
        return LpRow(tuple(coeffs), "=", zero, "tie")

    for i in range(k + 1):
        rows.append(tie(layout[("x", i)], layout[("x", 2 * k + 1 - i)]))
        rows.append(tie(layout[("z", i)], layout[("z", 2 * k + 1 - i)]))
    for i in range(k):
        rows.append(tie(layout[("y", i)], layout[("y", 2 * k - i)]))

    def fix_zero(col: int) -> LpRow:
        coeffs = [zero] * num_vars
        coeffs[col] = Fraction(1)
        return LpRow(tuple(coeffs), "=", zero, "fix")

    # Classes with no colour-compatible spine image must stay empty:
    # blue leaves at an endpoint (x_0), two-paths at v_0 and v_1 (z_0, z_1).
    rows.append(fix_zero(layout[("x", 0)]))
    rows.append(fix_zero(layout[("z", 0)]))
    rows.append(fix_zero(layout[("z", 1)]))

    norm = [Fraction(1)] * num_vars
    norm[t_col] = zero
    rows.append(LpRow(tuple(norm), "=", Fraction(1), "norm"))

    for row in extra:
        if len(row.coeffs) != num_vars:
            raise ValueError("extra row has wrong coefficient count")
        rows.append(LpRow(tuple(map(Fraction, row.coeffs)), row.relation, Fraction(row.rhs), "extra"))

    objective = [zero] * num_vars
    objective[t_col] = Fraction(1)
    return LpProblem(num_vars, tuple(rows), tuple(objective), k)


def row_satisfied(row: LpRow, assignment: Sequence[Fraction]) -> bool:
    lhs = sum(c * v for c, v in zip(row.coeffs, assignment) if c)
    return lhs == row.rhs if row.relation == "=" else lhs >= row.rhs


def witness_assignment(k: int, s: SequenceTriple) -> tuple[Fraction, ...]:
    """The normalised sequence vectors plus matching t, for feasibility
    cross-checks."""
    from .covering import cover_target

    total = s.total()
    layout = variable_layout(k)
    assignment = [Fraction(0)] * (6 * k + 6)
    for i, v in enumerate(s.x):
        assignment[layout[("x", i)]] = Fraction(v, total)
    for i, v in enumerate(s.y):
        assignment[layout[("y", i)]] = Fraction(v, total)
    for i, v in enumerate(s.z):
        assignment[layout[("z", i)]] = Fraction(v, total)
    assignment[t_index(k)] = Fraction(cover_target(k), total)
    return tuple(assignment)


# -- exact presolve -----------------------------------------------------------

def _presolve(problem: LpProblem):
    """Eliminate single-variable fixes and two-variable ties exactly.

    Returns (reduced column list, representative map, fixed values, rows)
    or the string "infeasible".  rep maps every original column to the
    column that carries its value; fixed maps columns to constants.
    """
    num = problem.num_vars
    parent = list(range(num))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    fixed: dict[int, Fraction] = {}
    pending = [(row.coeffs, row.relation, row.rhs, row.kind) for row in problem.rows]
    remaining = []
    changed = True
    while changed:
        changed = False
        next_pending = []
        for coeffs, relation, rhs, kind in pending:
            folded: dict[int, Fraction] = {}
            const = rhs
            for col, c in enumerate(coeffs):
                if not c:
                    continue
                root = find(col)
                if root in fixed:
                    const -= c * fixed[root]
                else:
                    folded[root] = folded.get(root, Fraction(0)) + c
            folded = {c: v for c, v in folded.items() if v}
            if relation == "=" and len(folded) == 1:
                (col, coeff), = folded.items()
                value = const / coeff
                if value < 0:
                    return "infeasible"
                fixed[col] = value
                changed = True
                continue
            if relation == "=" and len(folded) == 2 and const == 0:
                (c1, v1), (c2, v2) = sorted(folded.items())
                if v1 == -v2:
                    parent[find(c2)] = find(c1)
                    changed = True
                    continue
            if not folded:
                ok = const == 0 if relation == "=" else const <= 0
                if not ok:
                    return "infeasible"
                continue
            next_pending.append((dict(folded), relation, const, kind))
        if changed:
            pending = [
                (tuple(row.get(col, Fraction(0)) for col in range(num)), rel, rhs, kind)
                for row, rel, rhs, kind in next_pending
            ]
        else:
            remaining = next_pending
    for col in list(fixed):
        if find(col) != col and find(col) in fixed and fixed[find(col)] != fixed[col]:
            return "infeasible"
    live = sorted({find(c) for c in range(num)} - set(fixed))
    return live, find, fixed, remaining


# -- simplex core -------------------------------------------------------------

def _bland_simplex(tableau, basis, cost, num_structural):
    """Minimise over the tableau in place; returns "optimal" or "unbounded".

    cost is the reduced-cost row (last entry = minus the objective value).
    Entering column: lowest index with negative reduced cost.  Leaving row:
    lexicographic (ratio, basis index).  Bland's rule, so no cycling.
    """
    m = len(tableau)
    width = len(cost)
    while True:
        entering = -1
        for col in range(width - 1):
            if cost[col] < 0:
                entering = col
                break
        if entering < 0:
            return "optimal"
        leaving = -1
        best = None
        for r in range(m):
            coeff = tableau[r][entering]
            if coeff > 0:
                ratio = tableau[r][-1] / coeff
                key = (ratio, basis[r])
                if best is None or key < best:
                    best = key
                    leaving = r
        if leaving < 0:
            return "unbounded"
        _pivot(tableau, basis, cost, leaving, entering)


def _pivot(tableau, basis, cost, r, c):
    row = tableau[r]
    inv = 1 / row[c]
    tableau[r] = row = [v * inv for v in row]
    for rr in range(len(tableau)):
        if rr != r and tableau[rr][c]:
            factor = tableau[rr][c]
            tableau[rr] = [a - factor * b for a, b in zip(tableau[rr], row)]
    if cost[c]:
        factor = cost[c]
        for i in range(len(cost)):
            cost[i] -= factor * row[i]
    basis[r] = c


def solve_feasible(problem: LpProblem) -> LpSolution:
    """Exact phase-1 (+ optional phase-2) simplex over the problem rows."""
    pre = _presolve(problem)
    if pre == "infeasible":
        return LpSolution("infeasible", k=problem.k)
    live, find, fixed, remaining = pre
    col_of = {orig: i for i, orig in enumerate(live)}
    n = len(live)

    rows = []
    for folded, relation, rhs, _ in remaining:
        coeffs = [Fraction(0)] * n
        for col, c in folded.items():
            coeffs[col_of[col]] = c
        if rhs < 0:
            coeffs = [-c for c in coeffs]
            rhs = -rhs
            relation = {"=": "=", ">=": "<="}[relation]
        rows.append((coeffs, relation, rhs))

    num_slack = sum(1 for _, rel, _ in rows if rel in ("<=", ">="))
    m = len(rows)
    width = n + num_slack + m + 1   # structural + slack/surplus + artificial + rhs
    tableau = []
    basis = []
    slack_at = n
    art_at = n + num_slack
    for i, (coeffs, relation, rhs) in enumerate(rows):
        row = coeffs + [Fraction(0)] * (num_slack + m) + [rhs]
        if relation in ("<=", ">="):
            row[slack_at] = Fraction(1) if relation == "<=" else Fraction(-1)
            slack_at += 1
        art_col = art_at + i
        row[art_col] = Fraction(1)
        tableau.append(row)
        basis.append(art_col)

    # Phase 1: minimise the sum of artificials.
    cost = [Fraction(0)] * width
    for i in range(m):
        cost[art_at + i] = Fraction(1)
    for r in range(m):
        factor = cost[basis[r]]
        if factor:
            for i in range(width):
                cost[i] -= factor * tableau[r][i]
    status = _bland_simplex(tableau, basis, cost, n)
    if status == "unbounded" or -cost[-1] != 0:
        return LpSolution("infeasible", k=problem.k)

    # Drive leftover (necessarily zero-valued) artificials out of the basis.
    for r in range(m - 1, -1, -1):
        if basis[r] >= art_at:
            pivot_col = next(
                (c for c in range(art_at) if tableau[r][c] != 0), None
            )
            if pivot_col is None:
                del tableau[r]
                del basis[r]
            else:
                _pivot(tableau, basis, cost, r, pivot_col)

    if problem.objective is not None:
        obj = [Fraction(0)] * width
        for orig, c in enumerate(problem.objective):
            if not c:
                continue
            root = find(orig)
            if root in fixed:
                continue   # constant shift, irrelevant to the argmin
            obj[col_of[root]] += c
        for i in range(m):
            obj[art_at + i] = Fraction(10**12)   # keep artificials unused
        for r in range(len(tableau)):
            factor = obj[basis[r]]
            if factor:
                for i in range(width):
                    obj[i] -= factor * tableau[r][i]
        status = _bland_simplex(tableau, basis, obj, n)
        if status == "unbounded":
            raise ValueError("objective is unbounded below on the feasible region")

    reduced = [Fraction(0)] * n
    for r, b in enumerate(basis):
        if b < n:
            reduced[b] = tableau[r][-1]
    assignment = []
    for orig in range(problem.num_vars):
        root = find(orig)
        assignment.append(fixed[root] if root in fixed else reduced[col_of[root]])
    solution = LpSolution("feasible", tuple(assignment), problem.k)
    for row in problem.rows:
        if not row_satisfied(row, solution.assignment):
            raise ArithmeticError("solver returned an assignment violating a row")
    return solution


# -- scaling and synthesis ----------------------------------------------------

def scale_vector(values: Sequence[Fraction]) -> list[int]:
    """Clear denominators by the LCM; an integral vector is returned as-is."""
    lcm = 1
    for v in values:
        lcm = math.lcm(lcm, Fraction(v).denominator)
    return [int(Fraction(v) * lcm) for v in values]


def scale_to_integers(sol: LpSolution) -> SequenceTriple:
    """Integer sequence triple from a feasible covering-LP solution."""
    if not sol.feasible or sol.assignment is None:
        raise ValueError("cannot scale an infeasible solution")
    if sol.k is None:
        raise ValueError("solution does not carry a covering-LP layout")
    k = sol.k
    scaled = scale_vector(sol.assignment)
    layout = variable_layout(k)
    x = tuple(scaled[layout[("x", i)]] for i in range(2 * k + 2))
    y = tuple(scaled[layout[("y", i)]] for i in range(2 * k + 1))
    z = tuple(scaled[layout[("z", i)]] for i in range(2 * k + 2))
    triple = SequenceTriple(k, x, y, z)
    triple.require_valid()
    return triple


def synthesize_forest(k: int, s: SequenceTriple) -> LabelledForest:
    """The decorated-spine construction applied to an arbitrary valid triple."""
    s.require_valid()
    return materialise(2 * k + 1, plan_odd(k, s))
