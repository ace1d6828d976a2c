"""Brute-force reference implementations: visibility pairs, participating
points, box safety classification, respectful-partition checks and exact
structural entropy for tiny instances.

Everything here works in rank space, derived from the instance's validated
coordinate ranks, and serves as the ground truth for differential tests.
The entropy search is exact: block cost products are compared as integers, so
no float tie can flip a minimum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    AXIS_X,
    AXIS_Y,
    Color,
    Instance,
    SafetyLabel,
    SymBox,
    SymCoord,
    above,
    below,
    is_neg_inf,
    is_pos_inf,
)

_NP_MIN = 512  # switch box classification to the vectorized path beyond this


class TooLarge(ValueError):
    """Instance exceeds the exact-enumeration cap."""


@dataclass(frozen=True)
class SafetyReport:
    """Box classification: per-color cross-safety and full safety flags."""

    red_cross_safe: bool
    blue_cross_safe: bool
    red_safe: bool
    blue_safe: bool

    @property
    def cross_safe(self) -> bool:
        return self.red_cross_safe or self.blue_cross_safe

    @property
    def safe(self) -> bool:
        return self.red_safe or self.blue_safe

    @property
    def label(self) -> SafetyLabel:
        if not self.cross_safe:
            return SafetyLabel.NOT_CROSS_SAFE
        if self.red_safe and self.blue_safe:
            return SafetyLabel.BOTH_SAFE
        if self.red_safe:
            return SafetyLabel.RED_SAFE
        if self.blue_safe:
            return SafetyLabel.BLUE_SAFE
        if self.red_cross_safe and self.blue_cross_safe:
            return SafetyLabel.BOTH_CROSS_SAFE_ONLY
        return SafetyLabel.NOT_SAFE


def _dbl(inst: Instance, sc: SymCoord) -> int:
    """Doubled-rank key of a symbolic coordinate; infinities become sentinels."""
    if is_pos_inf(sc):
        return 2 * inst.n + 2
    if is_neg_inf(sc):
        return -2
    rank = inst.xrank if sc.axis == AXIS_X else inst.yrank
    return 2 * rank[sc.anchor] + sc.side


def oracle_visible_pairs(inst: Instance, ids=None) -> set[tuple[int, int]]:
    """All unordered bichromatic pairs spanning an empty open box, by direct
    evaluation of the definition over the given ids (default: all)."""
    ids = list(range(inst.n)) if ids is None else sorted(ids)
    xr, yr, colors = inst.xrank, inst.yrank, inst.colors
    pts = [(xr[i], yr[i]) for i in ids]
    m = len(ids)
    out = set()
    for a in range(m):
        xa, ya = pts[a]
        ca = colors[ids[a]]
        for b in range(a + 1, m):
            if colors[ids[b]] == ca:
                continue
            xb, yb = pts[b]
            xlo, xhi = (xa, xb) if xa < xb else (xb, xa)
            ylo, yhi = (ya, yb) if ya < yb else (yb, ya)
            blocked = False
            for c in range(m):
                if c == a or c == b:
                    continue
                xc, yc = pts[c]
                if xlo < xc < xhi and ylo < yc < yhi:
                    blocked = True
                    break
            if not blocked:
                out.add((ids[a], ids[b]))
    return out


def oracle_participating(inst: Instance, ids=None) -> set[int]:
    """Ids visible from at least one point of the opposite color."""
    out: set[int] = set()
    for a, b in oracle_visible_pairs(inst, ids):
        out.add(a)
        out.add(b)
    return out


def _minimal_colors(pts: list[tuple[int, int, int]]) -> set[int]:
    """Colors on the staircase of points dominating nothing else in the set.

    pts are (x, y, color) with x, y already reflected for the orientation.
    """
    if not pts:
        return set()
    pts = sorted(pts)
    out = set()
    run_min = None
    for x, y, c in pts:
        if run_min is None or y < run_min:
            out.add(c)
            run_min = y
    return out


def _quadrant_minimal_colors(pts, flip_x, flip_y) -> set[int]:
    sx = -1 if flip_x else 1
    sy = -1 if flip_y else 1
    return _minimal_colors([(sx * x, sy * y, c) for x, y, c in pts])


def oracle_box_safe(inst: Instance, box: SymBox, ids=None) -> SafetyReport:
    """Classify a box directly: cross color check, then the minimal set of
    each quadrant under its own orientation."""
    if ids is None and inst.n >= _NP_MIN:
        return _box_safe_np(inst, box)
    ids = range(inst.n) if ids is None else ids
    xlo, xhi = _dbl(inst, box.x_lo), _dbl(inst, box.x_hi)
    ylo, yhi = _dbl(inst, box.y_lo), _dbl(inst, box.y_hi)
    xr, yr, colors = inst.xrank, inst.yrank, inst.colors
    cross_colors: set[int] = set()
    quads: dict[tuple[bool, bool], list] = {
        (False, False): [], (True, False): [], (False, True): [], (True, True): []}
    for i in ids:
        px, py = 2 * xr[i], 2 * yr[i]
        in_x = xlo < px < xhi
        in_y = ylo < py < yhi
        if in_x or in_y:
            cross_colors.add(colors[i])
        else:
            quads[(px < xlo, py < ylo)].append((px, py, colors[i]))
    red_cross = Color.BLUE not in cross_colors
    blue_cross = Color.RED not in cross_colors
    quad_colors: set[int] = set()
    for (west, south), pts in quads.items():
        quad_colors |= _quadrant_minimal_colors(pts, west, south)
    return SafetyReport(
        red_cross_safe=red_cross,
        blue_cross_safe=blue_cross,
        red_safe=red_cross and Color.BLUE not in quad_colors,
        blue_safe=blue_cross and Color.RED not in quad_colors,
    )


def _box_safe_np(inst: Instance, box: SymBox) -> SafetyReport:
    xr = 2 * np.fromiter(inst.xrank, dtype=np.int64, count=inst.n)
    yr = 2 * np.fromiter(inst.yrank, dtype=np.int64, count=inst.n)
    colors = np.fromiter(inst.colors, dtype=np.int8, count=inst.n)
    xlo, xhi = _dbl(inst, box.x_lo), _dbl(inst, box.x_hi)
    ylo, yhi = _dbl(inst, box.y_lo), _dbl(inst, box.y_hi)
    in_x = (xlo < xr) & (xr < xhi)
    in_y = (ylo < yr) & (yr < yhi)
    cross = in_x | in_y
    cc = colors[cross]
    red_cross = not np.any(cc == Color.BLUE)
    blue_cross = not np.any(cc == Color.RED)
    quad_colors: set[int] = set()
    out = ~cross
    for west in (False, True):
        mx = (xr < xlo) if west else (xr > xhi)
        for south in (False, True):
            my = (yr < ylo) if south else (yr > yhi)
            mask = out & mx & my
            if not np.any(mask):
                continue
            qx = xr[mask]
            qy = yr[mask]
            if west:
                qx = -qx
            if south:
                qy = -qy
            order = np.argsort(qx, kind="stable")
            ys = qy[order]
            run = np.minimum.accumulate(ys)
            minimal = np.empty(len(ys), dtype=bool)
            minimal[0] = True
            minimal[1:] = ys[1:] < run[:-1]
            for c in np.unique(colors[mask][order][minimal]):
                quad_colors.add(int(c))
    return SafetyReport(
        red_cross_safe=red_cross,
        blue_cross_safe=blue_cross,
        red_safe=red_cross and Color.BLUE not in quad_colors,
        blue_safe=blue_cross and Color.RED not in quad_colors,
    )


def block_bbox(inst: Instance, block) -> SymBox:
    """Symbolically extended bounding box of a non-empty id set."""
    ids = list(block)
    xr, yr = inst.xrank, inst.yrank
    xmin = min(ids, key=lambda i: xr[i])
    xmax = max(ids, key=lambda i: xr[i])
    ymin = min(ids, key=lambda i: yr[i])
    ymax = max(ids, key=lambda i: yr[i])
    return SymBox(below(AXIS_X, xmin), above(AXIS_X, xmax),
                  below(AXIS_Y, ymin), above(AXIS_Y, ymax))


def check_respectful(inst: Instance, blocks, ids=None) -> bool:
    """True iff the blocks partition the ids and every non-singleton block's
    bounding box is safe.  Sub-boxes of safe boxes stay safe, so testing the
    bounding box is exact."""
    universe = set(range(inst.n)) if ids is None else set(ids)
    seen: set[int] = set()
    for block in blocks:
        bs = set(block)
        if not bs or (bs & seen):
            return False
        seen |= bs
    if seen != universe:
        return False
    for block in blocks:
        block = list(block)
        if len(block) == 1:
            continue
        if not oracle_box_safe(inst, block_bbox(inst, block), ids=ids).safe:
            return False
    return True


def partition_cost_exact(n: int, sizes) -> int:
    """prod(s^s): monotone transform of partition entropy (smaller H means
    larger product), exact over the integers."""
    out = 1
    for s in sizes:
        out *= s ** s
    return out


def entropy_from_sizes(n: int, sizes) -> float:
    return sum((s / n) * math.log2(n / s) for s in sizes) if n else 0.0


def oracle_structural_entropy(inst: Instance, cap: int = 10) -> tuple[float, list[list[int]]]:
    """Minimum entropy over respectful partitions, with a witness.

    Exhaustive over all partitions via a subset DP: a block is eligible if it
    is a singleton or its bounding box is safe; the DP maximizes prod(s^s),
    which minimizes H exactly.
    """
    n = inst.n
    if n > cap:
        raise TooLarge(f"exact entropy capped at n={cap}, got {n}")
    if n == 0:
        return 0.0, []
    ids = list(range(n))
    eligible = {}
    for mask in range(1, 1 << n):
        block = [i for i in ids if mask >> i & 1]
        if len(block) == 1:
            eligible[mask] = True
        else:
            eligible[mask] = oracle_box_safe(inst, block_bbox(inst, block)).safe

    best: dict[int, int] = {0: 1}
    choice: dict[int, int] = {}
    for mask in range(1, 1 << n):
        first = (mask & -mask).bit_length() - 1
        sub = mask
        best_val = -1
        best_block = 0
        while sub:
            if sub >> first & 1 and eligible[sub]:
                s = bin(sub).count("1")
                val = best[mask ^ sub] * s ** s
                if val > best_val:
                    best_val = val
                    best_block = sub
            sub = (sub - 1) & mask
        best[mask] = best_val
        choice[mask] = best_block

    full = (1 << n) - 1
    witness = []
    mask = full
    while mask:
        blk = choice[mask]
        witness.append([i for i in ids if blk >> i & 1])
        mask ^= blk
    value = math.log2(n) - math.log2(best[full]) / n
    return value, witness
