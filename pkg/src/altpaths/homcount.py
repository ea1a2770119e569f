"""Exact counting of colour-preserving homomorphisms and their densities.

``hom_brute`` enumerates every map V(H) -> V(G) and is the reference oracle.
``hom_forest`` is the production counter for acyclic patterns: a rooted
bottom-up product/sum dynamic program, exact over arbitrary-precision
integers.  Densities are exact rationals hom / n^v(H).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Optional

from .ecgraph import BudgetExceeded, EdgeColouredGraph, require_valid

BRUTE_BUDGET = 10**8


class NotAForest(ValueError):
    """Raised when a forest-only operation receives a cyclic pattern."""

    def __init__(self, cycle: list[int]):
        super().__init__(f"pattern contains a cycle through vertices {cycle}")
        self.cycle = cycle


def hom_brute(h: EdgeColouredGraph, g: EdgeColouredGraph, budget: int = BRUTE_BUDGET) -> int:
    """Count homomorphisms by checking all n^v(H) vertex maps."""
    require_valid(h)
    require_valid(g)
    if h.n == 0:
        return 1
    needed = g.n ** h.n
    if needed > budget:
        raise BudgetExceeded(
            f"brute-force enumeration needs {needed} maps, budget is {budget}",
            required=needed,
        )
    edges = h.edges
    gset = {(u, v): c for u, v, c in g.edges}
    count = 0
    for assignment in product(range(g.n), repeat=h.n):
        for u, v, c in edges:
            a, b = assignment[u], assignment[v]
            if a > b:
                a, b = b, a
            if gset.get((a, b)) != c:
                break
        else:
            count += 1
    return count


def _find_cycle(h: EdgeColouredGraph) -> Optional[list[int]]:
    """Vertices of some cycle in h, or None when h is acyclic."""
    adj = h.adjacency()
    parent: dict[int, Optional[int]] = {}
    for start in range(h.n):
        if start in parent:
            continue
        parent[start] = None
        stack = [(start, -1)]
        while stack:
            v, from_v = stack.pop()
            for colour_nbrs in adj[v]:
                for w in colour_nbrs:
                    if w == from_v:
                        continue
                    if w in parent:
                        # Back edge: walk both endpoints up to their meeting point.
                        seen = [v]
                        x = v
                        while parent[x] is not None:
                            x = parent[x]
                            seen.append(x)
                        chain = [w]
                        x = w
                        while x not in seen:
                            x = parent[x]
                            chain.append(x)
                        cycle = chain + seen[: seen.index(chain[-1])][::-1]
                        return sorted(set(cycle))
                    parent[w] = v
                    stack.append((w, v))
    return None


def components(h: EdgeColouredGraph) -> list[list[int]]:
    adj = h.adjacency()
    seen = [False] * h.n
    comps = []
    for start in range(h.n):
        if seen[start]:
            continue
        comp = [start]
        seen[start] = True
        queue = [start]
        while queue:
            v = queue.pop()
            for colour_nbrs in adj[v]:
                for w in colour_nbrs:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        queue.append(w)
        comps.append(sorted(comp))
    return comps


def hom_forest(h: EdgeColouredGraph, g: EdgeColouredGraph) -> int:
    """Count homomorphisms of an acyclic pattern via rooted tree DP.

    Each tree is rooted at its minimum-index vertex, children visited in
    index order.  Identical child subtrees (same shape and same colour of
    the edge to the parent) are grouped and raised to their multiplicity,
    which keeps the DP cheap on the highly repetitive built forests.
    """
    require_valid(h)
    require_valid(g)
    cycle = _find_cycle(h)
    if cycle is not None:
        raise NotAForest(cycle)
    if g.n == 0:
        return 1 if h.n == 0 else 0

    adj = h.adjacency()
    gadj = g.adjacency()
    n = g.n

    # Intern subtree shapes so equal subtrees share one DP table.
    shape_ids: dict[tuple, int] = {}
    shape_tables: dict[int, list[int]] = {}

    def shape_of(v: int, parent: int) -> int:
        children = []
        for colour in (0, 1):
            for w in adj[v][colour]:
                if w != parent:
                    children.append((colour, w))
        child_keys = []
        for colour, w in children:
            child_keys.append((colour, shape_of(w, v)))
        key = tuple(sorted(child_keys))
        sid = shape_ids.get(key)
        if sid is None:
            sid = len(shape_ids)
            shape_ids[key] = sid
            # table[w] = number of homomorphisms of the subtree with the
            # root mapped to w, for each host vertex w.
            table = [1] * n
            for (colour, child_sid), mult in _multiset(key):
                child_table = shape_tables[child_sid]
                for w in range(n):
                    s = 0
                    for w2 in gadj[w][colour]:
                        s += child_table[w2]
                    if s == 0:
                        table[w] = 0
                    elif table[w]:
                        table[w] *= s if mult == 1 else s**mult
            shape_tables[sid] = table
        return sid

    total = 1
    comp_cache: dict[int, int] = {}
    for comp in components(h):
        root = comp[0]
        sid = shape_of(root, -1)
        value = comp_cache.get(sid)
        if value is None:
            value = sum(shape_tables[sid])
            comp_cache[sid] = value
        total *= value
        if total == 0:
            return 0
    return total


def _multiset(keys):
    counts: dict = {}
    for k in keys:
        counts[k] = counts.get(k, 0) + 1
    return counts.items()


def is_forest(h: EdgeColouredGraph) -> bool:
    return _find_cycle(h) is None


def hom(h: EdgeColouredGraph, g: EdgeColouredGraph, budget: int = BRUTE_BUDGET) -> int:
    """Forest DP when the pattern is acyclic, brute force otherwise."""
    if is_forest(h):
        return hom_forest(h, g)
    return hom_brute(h, g, budget=budget)


def density(h: EdgeColouredGraph, g: EdgeColouredGraph, budget: int = BRUTE_BUDGET) -> Fraction:
    """Exact homomorphism density hom(H,G) / n^v(H)."""
    if g.n == 0:
        raise ValueError("density undefined for a host with no vertices")
    return Fraction(hom(h, g, budget=budget), g.n ** h.n)


def weighted_ab_bound(a: int, b: int, m: Fraction | int) -> Fraction:
    """Maximum of x^a y^b over x, y >= 0 with x + y <= m.

    Equals m^(a+b) a^a b^b / (a+b)^(a+b), attained at the proportional
    split x = am/(a+b), y = bm/(a+b).
    """
    if a <= 0 or b <= 0:
        raise ValueError("exponents must be positive integers")
    m = Fraction(m)
    if m <= 0:
        raise ValueError("m must be positive")
    return m ** (a + b) * Fraction(a**a * b**b, (a + b) ** (a + b))
