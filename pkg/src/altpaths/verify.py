"""Exact checks of the path-vs-forest density inequalities on concrete hosts.

Both directions relate t(P, G) and t(H, G) through fractional powers; every
check here first clears the exponents by cross-exponentiation, so each
verdict is a comparison of two explicit rationals with no floating point
anywhere.  Theorem bounds, the circulant tightness family, exhaustive host
sweeps and the finite-n algebraic expansion identity round out the module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .constructions import LabelledForest, alternating_path
from .covering import cover_profile
from .ecgraph import (
    BLUE,
    RED,
    BudgetExceeded,
    EdgeColouredGraph,
    circulant_host,
    host_count,
    host_from_index,
    symmetric_residues,
)
from .homcount import hom, hom_forest, is_forest


@dataclass(frozen=True)
class InequalityReport:
    name: str
    k: int
    host: str                  # canonical key of the host graph
    lhs: Fraction
    rhs: Fraction

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs

    @property
    def slack(self) -> Fraction:
        return self.rhs - self.lhs

    def record(self) -> dict:
        return {
            "name": self.name,
            "k": self.k,
            "host": self.host,
            "lhs": f"{self.lhs.numerator}/{self.lhs.denominator}",
            "rhs": f"{self.rhs.numerator}/{self.rhs.denominator}",
            "holds": self.holds,
        }


def bound_odd(k: int) -> Fraction:
    """Density ceiling for the odd alternating path: k^k (k+1)^(k+1) / (2k+1)^(2k+1)."""
    return Fraction(k**k * (k + 1) ** (k + 1), (2 * k + 1) ** (2 * k + 1))


def bound_even(k: int) -> Fraction:
    """Density ceiling for the even alternating path: (1/2)^(2k)."""
    return Fraction(1, 4**k)


def _require_uniform(h: LabelledForest) -> int:
    profile = cover_profile(h)
    mult = profile.uniform_multiplicity
    if mult is None:
        raise ValueError(
            "forest covering is not uniform; the density comparison needs a "
            f"uniformly covering spine homomorphism (profile {profile})"
        )
    return mult


def check_eq_ph(h: LabelledForest, k: int, g: EdgeColouredGraph) -> InequalityReport:
    """t(P)^(1/e(P)) <= t(H)^(1/e(H)), checked as t(P)^e(H) <= t(H)^e(P)."""
    if h.spine_edges != 2 * k + 1:
        raise ValueError(f"forest spine has {h.spine_edges} edges, expected {2 * k + 1}")
    _require_uniform(h)
    spine = alternating_path(2 * k + 1)
    e_p = 2 * k + 1
    e_h = len(h.graph.edges)
    t_p = Fraction(hom_forest(spine, g), g.n ** spine.n)
    t_h = Fraction(hom_forest(h.graph, g), g.n ** h.graph.n)
    return InequalityReport("path-vs-forest", k, g.canonical_key(), t_p**e_h, t_h**e_p)


def check_eq_hp(h: LabelledForest, k: int, g: EdgeColouredGraph) -> InequalityReport:
    """t(H) <= c^(e(H)-e(P)) t(P) with the irrational constant c cleared by
    raising both sides to the power 2k+1."""
    if h.spine_edges != 2 * k + 1:
        raise ValueError(f"forest spine has {h.spine_edges} edges, expected {2 * k + 1}")
    _require_uniform(h)
    spine = alternating_path(2 * k + 1)
    e_p = 2 * k + 1
    e_h = len(h.graph.edges)
    t_p = Fraction(hom_forest(spine, g), g.n ** spine.n)
    t_h = Fraction(hom_forest(h.graph, g), g.n ** h.graph.n)
    lhs = t_h ** (2 * k + 1)
    rhs = bound_odd(k) ** (e_h - e_p) * t_p ** (2 * k + 1)
    return InequalityReport("forest-vs-path", k, g.canonical_key(), lhs, rhs)


def check_theorem_odd(k: int, g: EdgeColouredGraph) -> InequalityReport:
    spine = alternating_path(2 * k + 1)
    t_p = Fraction(hom_forest(spine, g), g.n ** spine.n)
    return InequalityReport("theorem-odd", k, g.canonical_key(), t_p, bound_odd(k))


def check_theorem_even(k: int, g: EdgeColouredGraph) -> InequalityReport:
    spine = alternating_path(2 * k)
    t_p = Fraction(hom_forest(spine, g), g.n ** spine.n)
    return InequalityReport("theorem-even", k, g.canonical_key(), t_p, bound_even(k))


# -- tightness along the circulant family -----------------------------------

@dataclass(frozen=True)
class TightnessPoint:
    n: int
    red_degree: Optional[int]
    density: Optional[Fraction]
    gap: Optional[Fraction]       # bound - density
    note: str = ""

    def record(self) -> dict:
        return {
            "n": self.n,
            "red_degree": self.red_degree,
            "density": None if self.density is None else f"{self.density.numerator}/{self.density.denominator}",
            "gap": None if self.gap is None else f"{self.gap.numerator}/{self.gap.denominator}",
            "note": self.note,
        }


def tightness_curve(k: int, n_list: Sequence[int]) -> list[TightnessPoint]:
    """Exact odd-path densities on near-extremal circulants.

    The red degree targets round((k+1)(n-1)/(2k+1)); when no negation-closed
    residue set of that size exists the degree is lowered by one, and an n
    admitting neither is reported and skipped.
    """
    bound = bound_odd(k)
    spine = alternating_path(2 * k + 1)
    points = []
    for n in n_list:
        target = round(Fraction((k + 1) * (n - 1), 2 * k + 1))
        chosen = None
        for degree in (target, target - 1):
            if degree >= 0:
                residues = symmetric_residues(n, degree)
                if residues is not None:
                    chosen = (degree, residues)
                    break
        if chosen is None:
            points.append(TightnessPoint(n, None, None, None, "no valid residue set"))
            continue
        degree, residues = chosen
        g = circulant_host(n, residues)
        t = Fraction(hom_forest(spine, g), n**spine.n)
        points.append(TightnessPoint(n, degree, t, bound - t))
    return points


# -- exhaustive and heuristic extremal search --------------------------------

@dataclass(frozen=True)
class MaxResult:
    density: Fraction
    host: EdgeColouredGraph
    exhaustive: bool
    index: Optional[int]       # counter index of the argmax when exhaustive


def _scan_chunk(args) -> tuple[int, int]:
    pattern, n, start, stop = args
    best_hom = -1
    best_index = -1
    for index in range(start, stop):
        value = hom_forest(pattern, host_from_index(n, index))
        if value > best_hom:
            best_hom = value
            best_index = index
    return best_hom, best_index


def exhaustive_max(
    pattern: EdgeColouredGraph,
    n: int,
    budget: int = 10**8,
    workers: int = 1,
    heuristic: bool = False,
    restarts: int = 40,
    seed: int = 0,
) -> MaxResult:
    """Maximum homomorphism density of the pattern over hosts on n vertices.

    Exhaustive (exact, with deterministic first-attaining argmax) while the
    3^(n(n-1)/2) host count fits the budget; beyond it, a seeded
    random-restart single-pair recolouring climb, flagged non-exhaustive.
    """
    if not is_forest(pattern):
        raise ValueError("exhaustive search is implemented for forest patterns")
    total = host_count(n)
    denom = n**pattern.n
    if total <= budget:
        chunk_count = max(1, min(workers, total))
        bounds = [total * i // chunk_count for i in range(chunk_count + 1)]
        chunks = [
            (pattern, n, bounds[i], bounds[i + 1]) for i in range(chunk_count)
        ]
        if chunk_count == 1:
            results = [_scan_chunk(chunks[0])]
        else:
            import multiprocessing

            with multiprocessing.Pool(chunk_count) as pool:
                results = pool.map(_scan_chunk, chunks)
        best_hom, best_index = -1, -1
        for value, index in results:       # chunk order fixes the tie-break
            if value > best_hom:
                best_hom, best_index = value, index
        return MaxResult(
            Fraction(best_hom, denom), host_from_index(n, best_index), True, best_index
        )
    if not heuristic:
        raise BudgetExceeded(
            f"{total} hosts exceed budget {budget}; pass heuristic=True for local search",
            required=total,
        )
    import random

    rng = random.Random(seed)
    from .ecgraph import random_host

    best_hom = -1
    best_host = None
    states = (None, RED, BLUE)
    for _ in range(restarts):
        g = random_host(n, rng)
        pairs = {(u, v): c for u, v, c in g.edges}
        current = hom_forest(pattern, g)
        improved = True
        while improved:
            improved = False
            for u in range(n):
                for v in range(u + 1, n):
                    original = pairs.get((u, v))
                    for state in states:
                        if state == original:
                            continue
                        trial = dict(pairs)
                        if state is None:
                            trial.pop((u, v), None)
                        else:
                            trial[(u, v)] = state
                        candidate = EdgeColouredGraph.from_pairs(n, trial)
                        value = hom_forest(pattern, candidate)
                        if value > current:
                            pairs, current, improved = trial, value, True
        if current > best_hom:
            best_hom = current
            best_host = EdgeColouredGraph.from_pairs(n, pairs)
    return MaxResult(Fraction(best_hom, denom), best_host, False, None)


# -- the algebraic expansion identity ----------------------------------------

@dataclass(frozen=True)
class ExpansionReport:
    n: int
    alt_path: int        # hom of the red-blue-red path
    red_path: int        # hom of the all-red 3-edge path
    red_edge_sq: int     # hom(single red edge)^2
    red_walk: int        # hom of the all-red 2-edge path

    @property
    def holds(self) -> bool:
        return self.alt_path + self.red_path == self.red_edge_sq - self.red_walk

    def record(self) -> dict:
        return {
            "n": self.n,
            "alt_path": self.alt_path,
            "red_path": self.red_path,
            "red_edge_sq": self.red_edge_sq,
            "red_walk": self.red_walk,
            "holds": self.holds,
        }


def expansion_identity(g: EdgeColouredGraph) -> ExpansionReport:
    """Exact finite-n form of the walk-splitting identity on complete hosts.

    Summing red-*-red walks over both middle colours telescopes to all
    ordered red-edge pairs minus the red two-walks through a shared middle
    vertex; that correction is the identity's exact lower-order term.
    """
    if len(g.edges) != g.n * (g.n - 1) // 2:
        raise ValueError("expansion identity requires a complete 2-coloured host")
    red_edge = EdgeColouredGraph.make(2, [(0, 1, RED)])
    red_walk = EdgeColouredGraph.make(3, [(0, 1, RED), (1, 2, RED)])
    red_path3 = EdgeColouredGraph.make(4, [(0, 1, RED), (1, 2, RED), (2, 3, RED)])
    return ExpansionReport(
        g.n,
        hom_forest(alternating_path(3), g),
        hom_forest(red_path3, g),
        hom_forest(red_edge, g) ** 2,
        hom_forest(red_walk, g),
    )
