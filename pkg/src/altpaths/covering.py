"""Covering profiles of spine homomorphisms and their closed forms.

A covering profile tallies, for each spine vertex and spine edge, how many
forest vertices/edges map onto it.  The closed-form evaluators express the
same counts (excluding the spine itself) as linear functionals of (x, y, z);
``verify_covering`` cross-checks formula against direct count and against
the common target k(k+1)^2(2k+1).

The linear functionals are built once as coefficient rows and reused
verbatim by the LP feasibility search.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .constructions import (
    LabelledForest,
    Plan,
    SequenceTriple,
    class_blocks,
    homomorphism_violation,
    plan_odd,
    sequences,
)

# Coefficient rows are maps (series, index) -> coefficient with
# series in {"x", "y", "z"}; out-of-range indexes are dropped.
Row = dict[tuple[str, int], int]


def cover_target(k: int) -> int:
    return k * (k + 1) ** 2 * (2 * k + 1)


def _keep(k: int, terms: Iterable[tuple[str, int, int]]) -> Row:
    row: Row = {}
    for series, i, coeff in terms:
        top = 2 * k if series == "y" else 2 * k + 1
        if 0 <= i <= top and coeff:
            row[(series, i)] = row.get((series, i), 0) + coeff
    return row


def vertex_cover_row(k: int, idx: int) -> Row:
    """Non-spine preimage count of spine vertex v_idx as a row over (x,y,z)."""
    if not 0 <= idx <= 2 * k + 1:
        raise ValueError(f"vertex index {idx} outside spine")
    if idx % 2 == 0:
        j = idx // 2
        terms = [
            ("x", 2 * j - 1, k),
            ("x", 2 * j + 1, k + 1),
            ("y", 2 * j - 1, k + 1),
            ("y", 2 * j, k + 1),
            ("z", 2 * j - 2, k + 1),
            ("z", 2 * j - 1, k),
            ("z", 2 * j, k),
            ("z", 2 * j + 1, k + 1),
        ]
    else:
        j = (idx - 1) // 2
        terms = [
            ("x", 2 * j, k + 1),
            ("x", 2 * j + 2, k),
            ("y", 2 * j, k + 1),
            ("y", 2 * j + 1, k + 1),
            ("z", 2 * j, k + 1),
            ("z", 2 * j + 1, k),
            ("z", 2 * j + 2, k),
            ("z", 2 * j + 3, k + 1),
        ]
    return _keep(k, terms)


def edge_cover_row(k: int, idx: int) -> Row:
    """Non-spine preimage count of spine edge (v_idx, v_idx+1) as a row."""
    if not 0 <= idx <= 2 * k:
        raise ValueError(f"edge index {idx} outside spine")
    if idx % 2 == 0:
        j = idx // 2
        terms = [
            ("x", 2 * j, k + 1),
            ("x", 2 * j + 1, k + 1),
            ("y", 2 * j, k + 1),
            ("z", 2 * j, k + 1),
            ("z", 2 * j + 1, k + 1),
        ]
    else:
        j = (idx - 1) // 2
        terms = [
            ("x", 2 * j + 1, k),
            ("x", 2 * j + 2, k),
            ("y", 2 * j + 1, k + 1),
            ("z", 2 * j, k + 1),
            ("z", 2 * j + 1, 2 * k),
            ("z", 2 * j + 2, 2 * k),
            ("z", 2 * j + 3, k + 1),
        ]
    return _keep(k, terms)


def _evaluate(row: Row, s: SequenceTriple) -> int:
    lookup = {"x": s.x_at, "y": s.y_at, "z": s.z_at}
    return sum(coeff * lookup[series](i) for (series, i), coeff in row.items())


def c_vertex(k: int, idx: int, s: SequenceTriple) -> int:
    return _evaluate(vertex_cover_row(k, idx), s)


def c_edge(k: int, idx: int, s: SequenceTriple) -> int:
    return _evaluate(edge_cover_row(k, idx), s)


# -- covering profiles -----------------------------------------------------

@dataclass(frozen=True)
class CoverProfile:
    vertex_cover: tuple[int, ...]
    edge_cover: tuple[int, ...]

    @property
    def uniform_multiplicity(self) -> Optional[int]:
        values = set(self.vertex_cover) | set(self.edge_cover)
        return values.pop() if len(values) == 1 else None


def cover_profile(f: LabelledForest) -> CoverProfile:
    """Exact preimage tally of a labelled forest over its spine."""
    bad = homomorphism_violation(f)
    if bad is not None:
        raise ValueError(f"phi is not a homomorphism: edge {bad} maps off the spine")
    vertex_cover = [0] * (f.spine_edges + 1)
    for img in f.phi:
        vertex_cover[img] += 1
    edge_cover = [0] * f.spine_edges
    for u, v, _ in f.graph.edges:
        edge_cover[min(f.phi[u], f.phi[v])] += 1
    return CoverProfile(tuple(vertex_cover), tuple(edge_cover))


def cover_profile_blocks(length: int, plan: Plan) -> CoverProfile:
    """Covering tally of a planned forest, grouped by construction class.

    Identical in content to materialising and counting: every class block
    contributes its cardinality to the spine image its vertices/edges share.
    """
    vblocks, eblocks = class_blocks(length, plan)
    vertex_cover = [0] * (length + 1)
    for b in vblocks:
        vertex_cover[b.phi] += b.count
    edge_cover = [0] * length
    for eb in eblocks:
        edge_cover[min(vblocks[eb.a_block].phi, vblocks[eb.b_block].phi)] += eb.count
    return CoverProfile(tuple(vertex_cover), tuple(edge_cover))


_BINCOUNT_CHUNK = 1 << 24


def cover_profile_arrays(length: int, plan: Plan) -> CoverProfile:
    """Covering tally over physically laid-out image arrays.

    Materialises one entry per forest vertex (its spine image) and one per
    forest edge (the left endpoint of its spine image), one class block at
    a time, and tallies with chunked bincounts — an element-by-element
    count that stays in bounded memory on forests far past per-object
    storage.
    """
    vblocks, eblocks = class_blocks(length, plan)

    def tally(arrays, size):
        counts = np.zeros(size, dtype=np.int64)
        for arr in arrays:
            for lo in range(0, len(arr), _BINCOUNT_CHUNK):
                chunk = arr[lo : lo + _BINCOUNT_CHUNK]
                counts += np.bincount(chunk, minlength=size)
        return tuple(int(c) for c in counts)

    vertex_arrays = (
        np.full(b.count, b.phi, dtype=np.int16) for b in vblocks if b.count
    )
    edge_arrays = (
        np.full(
            eb.count,
            min(vblocks[eb.a_block].phi, vblocks[eb.b_block].phi),
            dtype=np.int16,
        )
        for eb in eblocks
        if eb.count
    )
    return CoverProfile(tally(vertex_arrays, length + 1), tally(edge_arrays, length))


# -- formula-vs-count verification -------------------------------------------------

@dataclass(frozen=True)
class CoverCheck:
    k: int
    kind: str        # "vertex" | "edge"
    index: int
    formula: int
    counted: int     # direct count including the spine contribution
    target: int

    @property
    def ok(self) -> bool:
        return self.formula == self.target and self.counted == self.formula + 1


@dataclass(frozen=True)
class CoveringReport:
    k: int
    checks: tuple[CoverCheck, ...]
    multiplicity: Optional[int]
    method: str

    @property
    def ok(self) -> bool:
        return (
            all(c.ok for c in self.checks)
            and self.multiplicity == cover_target(self.k) + 1
        )

    def failures(self) -> list[CoverCheck]:
        return [c for c in self.checks if not c.ok]

    def lines(self) -> list[str]:
        out = [
            f"k={self.k} target={cover_target(self.k)} "
            f"multiplicity={self.multiplicity} method={self.method} "
            f"{'PASS' if self.ok else 'FAIL'}"
        ]
        out.extend(
            f"  MISMATCH {c.kind} {c.index}: formula={c.formula} "
            f"counted={c.counted} target={c.target}"
            for c in self.failures()
        )
        return out

    def records(self) -> list[dict]:
        return [
            {
                "k": c.k,
                "kind": c.kind,
                "index": c.index,
                "formula": c.formula,
                "counted": c.counted,
                "target": c.target,
                "ok": c.ok,
            }
            for c in self.checks
        ]


_ARRAYS_CAP = 500_000_000


def verify_covering(k: int, method: str = "auto", materialise_cap: int = 2_000_000) -> CoveringReport:
    """Check formulas against the built forest's actual covering for one k.

    method: "tuples" materialises the forest as Python objects and uses
    ``cover_profile``; "arrays" uses the physically laid-out image arrays;
    "blocks" uses the grouped class tally; "auto" picks tuples below the
    materialisation cap, arrays up to ~5e8 edges, grouped blocks beyond.
    """
    s = sequences(k)
    plan = plan_odd(k, s)
    length = 2 * k + 1
    if method == "auto":
        edges = (2 * k + 1) * (cover_target(k) + 1)
        if edges <= materialise_cap:
            method = "tuples"
        elif edges <= _ARRAYS_CAP:
            method = "arrays"
        else:
            method = "blocks"
    if method == "tuples":
        from .constructions import materialise

        profile = cover_profile(materialise(length, plan))
    elif method == "arrays":
        profile = cover_profile_arrays(length, plan)
    elif method == "blocks":
        profile = cover_profile_blocks(length, plan)
    else:
        raise ValueError(f"unknown method {method!r}")

    target = cover_target(k)
    checks = []
    for idx in range(length + 1):
        checks.append(
            CoverCheck(k, "vertex", idx, c_vertex(k, idx, s), profile.vertex_cover[idx], target)
        )
    for idx in range(length):
        checks.append(
            CoverCheck(k, "edge", idx, c_edge(k, idx, s), profile.edge_cover[idx], target)
        )
    return CoveringReport(k, tuple(checks), profile.uniform_multiplicity, method)


def _covering_worker(args) -> CoveringReport:
    k, method = args
    return verify_covering(k, method=method)


def verify_covering_range(
    k_max: int, method: str = "auto", workers: int = 1
) -> list[CoveringReport]:
    """Covering verification for k = 1..k_max; independent k values may fan
    out over worker processes, with reports returned in k order either way."""
    jobs = [(k, method) for k in range(1, k_max + 1)]
    if workers <= 1 or len(jobs) <= 1:
        return [_covering_worker(job) for job in jobs]
    import multiprocessing

    with multiprocessing.Pool(min(workers, len(jobs))) as pool:
        return pool.map(_covering_worker, jobs)
