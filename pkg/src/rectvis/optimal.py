"""Instance-adaptive reporting: doubly-exponential pruning with batched
range emptiness.

Each round partitions the surviving points with a fresh depth-2^j kd-tree,
tests every cell box for safety against the survivors and prunes safe cells;
pruning never removes a participating point and never changes which of the
survivors participate, so the final direct sweep on the remainder returns the
answer for the original instance.  Safety tests run against the cross-safety
trees built once on the full instance; only their range-emptiness probes are
answered on the survivor subset, which is valid on any conforming subset.

Emptiness probes are batched per round: all cross-safety slab probes first,
then the quadrant tree queries advance in lockstep, suspending at their
(at most one each) corner probes, which are answered in grid batches.  A
batch over r rectangles ranks every survivor into the grid spanned by the
rectangle bounds in O(m log r) comparisons and answers each rectangle from
prefix counts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    AXIS_X,
    AXIS_Y,
    Comparator,
    SymBox,
    cell_bbox,
    is_finite,
    neg_inf,
    pos_inf,
    sym_less,
    uniform_color,
)
from .baseline import report_bichromatic_pairs, report_participating_sweep
from .crosstree import (
    CrossTrees,
    MonoRuns,
    build_c_kdtree,
    build_cross_safety_trees,
    build_mono_runs,
    quadrants_safe_gen,
    scan_emptiness,
)

DEFAULT_DELTA = 0.125
CUTOFF = 32


@dataclass
class RoundStats:
    j: int
    r_j: int
    cells: int
    pruned_points: int
    comparisons_at_round: int

    def to_dict(self) -> dict:
        return {
            "j": self.j,
            "r_j": self.r_j,
            "cells": self.cells,
            "pruned_points": self.pruned_points,
            "comparisons_at_round": self.comparisons_at_round,
        }


def _sort_syms(cmp: Comparator, syms: list) -> list:
    """Mergesort over symbolic coordinates (counted anchor comparisons)."""
    runs = [[s] for s in syms]
    if not runs:
        return []
    while len(runs) > 1:
        nxt = []
        for a, b in zip(runs[::2], runs[1::2]):
            merged = []
            ia = ib = 0
            while ia < len(a) and ib < len(b):
                if sym_less(cmp, b[ib], a[ia]):
                    merged.append(b[ib])
                    ib += 1
                else:
                    merged.append(a[ia])
                    ia += 1
            merged.extend(a[ia:])
            merged.extend(b[ib:])
            nxt.append(merged)
        if len(runs) % 2:
            nxt.append(runs[-1])
        runs = nxt
    return runs[0]


def batch_emptiness(cmp: Comparator, ids, queries) -> list[bool]:
    """Answer emptiness for (SymBox, color-or-None) queries known upfront.

    Builds the rank grid of the distinct finite bounds, bins every id by two
    binary searches, accumulates per-color prefix counts, then answers each
    query from four prefix lookups.
    """
    if not queries:
        return []
    if len(ids) == 0:
        return [True] * len(queries)
    xb: set = set()
    yb: set = set()
    for box, _ in queries:
        for c in (box.x_lo, box.x_hi):
            if is_finite(c):
                assert c.side != 0, "grid bounds must be off-point"
                xb.add(c)
        for c in (box.y_lo, box.y_hi):
            if is_finite(c):
                assert c.side != 0, "grid bounds must be off-point"
                yb.add(c)
    xs = _sort_syms(cmp, list(xb))
    ys = _sort_syms(cmp, list(yb))
    xpos = {c: k for k, c in enumerate(xs)}
    ypos = {c: k for k, c in enumerate(ys)}
    cx = np.asarray(cmp.bisect_ids(AXIS_X, xs, ids), dtype=np.int64)
    cy = np.asarray(cmp.bisect_ids(AXIS_Y, ys, ids), dtype=np.int64)
    kx, ky = len(xs) + 1, len(ys) + 1
    colors_np = getattr(cmp, "colors_np", None)
    if colors_np is not None:
        cols = colors_np[np.asarray(ids, dtype=np.int64)].astype(np.int64)
    else:
        colors = cmp.colors
        cols = np.fromiter((colors[i] for i in ids), dtype=np.int64,
                           count=len(ids))
    grids = np.zeros((2, kx, ky), dtype=np.int64)
    np.add.at(grids, (cols, cx, cy), 1)
    pref = grids.cumsum(axis=1).cumsum(axis=2)
    total = pref[0] + pref[1]

    def count(table, x0, x1, y0, y1) -> int:
        # inclusive cell ranges; x0 > x1 means empty
        if x0 > x1 or y0 > y1:
            return 0
        out = table[x1, y1]
        if x0:
            out -= table[x0 - 1, y1]
        if y0:
            out -= table[x1, y0 - 1]
        if x0 and y0:
            out += table[x0 - 1, y0 - 1]
        return int(out)

    answers = []
    for box, color in queries:
        x0 = xpos[box.x_lo] + 1 if is_finite(box.x_lo) else 0
        x1 = xpos[box.x_hi] if is_finite(box.x_hi) else kx - 1
        y0 = ypos[box.y_lo] + 1 if is_finite(box.y_lo) else 0
        y1 = ypos[box.y_hi] if is_finite(box.y_hi) else ky - 1
        table = total if color is None else pref[color]
        answers.append(count(table, x0, x1, y0, y1) == 0)
    return answers


def _run_lockstep(gens, answer_batch):
    """Advance generators together, answering each wave of yielded
    emptiness requests as one batch."""
    results = [None] * len(gens)
    active = []
    for k, g in enumerate(gens):
        try:
            active.append((k, g, next(g)))
        except StopIteration as fin:
            results[k] = fin.value
    while active:
        answers = answer_batch([req for _, _, req in active])
        nxt = []
        for (k, g, _), ans in zip(active, answers):
            try:
                nxt.append((k, g, g.send(ans)))
            except StopIteration as fin:
                results[k] = fin.value
        active = nxt
    return results


def prepare(cmp: Comparator, ids=None) -> tuple[CrossTrees, MonoRuns]:
    """Preprocessing for the adaptive solver: monochromatic runs, then the
    four cross-safety trees."""
    runs = build_mono_runs(cmp, ids)
    trees = build_cross_safety_trees(cmp, runs, ids)
    return trees, runs


def run_instance_optimal(cmp: Comparator, trees: CrossTrees, runs: MonoRuns,
                         *, delta: float = DEFAULT_DELTA, cutoff: int = CUTOFF,
                         emptiness: str = "grid",
                         ids=None) -> tuple[set[int], list[RoundStats]]:
    """Prune provably non-participating cells round by round, then solve the
    remainder with the direct sweep."""
    n = cmp.n
    Q = np.arange(n, dtype=np.int64) if ids is None else np.asarray(
        sorted(int(i) for i in ids), dtype=np.int64)
    rounds: list[RoundStats] = []
    counter = cmp.counter
    m0 = len(Q)
    if m0 > cutoff and m0 >= 2:
        dl = delta * math.log2(m0)
        jmax = int(math.floor(math.log2(dl))) if dl >= 1 else -1
        for j in range(jmax + 1):
            if len(Q) <= cutoff:
                break
            depth = 2 ** j
            r_j = 2 ** depth
            assert r_j <= max(2.0, m0 ** delta) + 1e-9
            root = build_c_kdtree(cmp, Q, max_depth=depth, boxes="none")
            cells = list(root.leaves())
            mono = []
            for cell in cells:
                c0 = uniform_color(cmp, cell.ids)
                if c0 is not None:
                    # mixed cells can never be cross-safe; only these need boxes
                    mono.append((cell, c0, cell_bbox(cmp, cell.ids)))

            if emptiness == "grid":
                def answer(reqs, _Q=Q):
                    return batch_emptiness(cmp, _Q, reqs)
            else:
                scan = scan_emptiness(cmp, Q.tolist())

                def answer(reqs, _scan=scan):
                    return [_scan(box, color) for box, color in reqs]

            # stage A: batched cross-safety slab probes
            slab_reqs = []
            for cell, c0, bb in mono:
                opp = 1 - c0
                slab_reqs.append((SymBox(bb.x_lo, bb.x_hi, neg_inf(AXIS_Y),
                                         pos_inf(AXIS_Y)), opp))
                slab_reqs.append((SymBox(neg_inf(AXIS_X), pos_inf(AXIS_X),
                                         bb.y_lo, bb.y_hi), opp))
            slab_ans = answer(slab_reqs)
            cross_safe = [mc for k, mc in enumerate(mono)
                          if slab_ans[2 * k] and slab_ans[2 * k + 1]]

            # stage B: quadrant tree queries in lockstep
            gens = [quadrants_safe_gen(trees, bb, c0)
                    for cell, c0, bb in cross_safe]
            safe_flags = _run_lockstep(gens, answer)

            pruned_cells = [np.asarray(cell.ids, dtype=np.int64)
                            for (cell, _c0, _bb), ok in zip(cross_safe, safe_flags)
                            if ok]
            n_pruned = 0
            if pruned_cells:
                gone = np.concatenate(pruned_cells)
                n_pruned = len(gone)
                Q = Q[~np.isin(Q, gone, assume_unique=True)]
            rounds.append(RoundStats(j, r_j, len(cells), n_pruned,
                                     counter.count))
    participating = report_participating_sweep(cmp, ids=Q.tolist())
    return participating, rounds


def report_pairs_instance_optimal(cmp: Comparator, trees: CrossTrees,
                                  runs: MonoRuns, **kwargs
                                  ) -> tuple[set[tuple[int, int]], list[RoundStats]]:
    """Participating points first, then the pair sweep restricted to them;
    the restriction preserves pairs because a blocked bichromatic rectangle
    always contains a participating blocker."""
    participating, rounds = run_instance_optimal(cmp, trees, runs, **kwargs)
    pairs = report_bichromatic_pairs(cmp, ids=sorted(participating))
    return pairs, rounds
