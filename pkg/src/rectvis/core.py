"""Domain types, geometric predicates and the counted comparison layer.

Solvers never read coordinates.  They see an :class:`Instance` only for its
size and per-index colors, and funnel every coordinate access through a
:class:`Comparator`, which answers order queries between two point indices on
one axis and counts each answer.  Box boundaries are symbolic: a boundary is
anchored just below or just above some point's coordinate, so no point of the
instance ever lies on a boundary of a box or of its quadrants, and no
arithmetic on coordinates is ever performed.

Counting conventions (shared by the pure and the vectorized paths):
  * ``less(axis, i, j)`` costs one comparison.
  * comparing two symbolic coordinates with different anchors costs one
    comparison; with the same anchor it is resolved by side logic for free.
  * bulk helpers (extremes, select/split, merges, binary-search probes) charge
    exactly what their scalar algorithm performs; binary-search probes are
    charged one comparison each.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from enum import Enum, IntEnum
from fractions import Fraction
from decimal import Decimal, InvalidOperation
from typing import Iterable, NamedTuple, Sequence

import numpy as np

AXIS_X = 0
AXIS_Y = 1

# SymCoord side markers.  Finite sides sort below/at/above the anchor
# coordinate; +-2 are the infinity sentinels (anchor ignored).
SIDE_BELOW = -1
SIDE_EXACT = 0
SIDE_ABOVE = 1
_SIDE_NEG_INF = -2
_SIDE_POS_INF = 2

# Vectorized bulk paths only pay off beyond roughly this many ids.
_BULK_MIN = 64


class Color(IntEnum):
    RED = 0
    BLUE = 1

    @property
    def opposite(self) -> "Color":
        return Color.BLUE if self is Color.RED else Color.RED


class SafetyLabel(str, Enum):
    """Box safety classification vocabulary shared by the brute-force and
    tree-backed testers."""

    RED_SAFE = "RedSafe"
    BLUE_SAFE = "BlueSafe"
    BOTH_SAFE = "BothSafe"
    BOTH_CROSS_SAFE_ONLY = "BothCrossSafeOnly"
    NOT_SAFE = "NotSafe"
    NOT_CROSS_SAFE = "NotCrossSafe"


class Region(IntEnum):
    """Outcome of locating a point relative to a box."""

    IN_BOX = 0
    CROSS = 1
    NE = 2
    NW = 3
    SE = 4
    SW = 5


class Orientation(IntEnum):
    """Quadrant direction; each value is a reflection mapping it to NE."""

    NE = 0
    NW = 1
    SE = 2
    SW = 3

    @property
    def flip_x(self) -> bool:
        return self in (Orientation.NW, Orientation.SW)

    @property
    def flip_y(self) -> bool:
        return self in (Orientation.SE, Orientation.SW)

    @property
    def region(self) -> Region:
        return Region[self.name]


ORIENTATIONS = (Orientation.NE, Orientation.NW, Orientation.SE, Orientation.SW)


class DegenerateInput(ValueError):
    """Two points share a coordinate on one axis."""

    def __init__(self, axis: int, id_a: int, id_b: int):
        self.axis = axis
        self.id_a = id_a
        self.id_b = id_b
        name = "x" if axis == AXIS_X else "y"
        super().__init__(f"points {id_a} and {id_b} share the same {name} coordinate")


class InvalidRanges(ValueError):
    """A query range boundary cuts through an opposite-role leaf box."""


class PreconditionViolated(ValueError):
    """A caller-supplied witness does not certify what it must."""


@dataclass(frozen=True)
class ColoredPoint:
    x: object  # exact ordered key (int or Fraction)
    y: object
    color: Color
    id: int


class SymCoord(NamedTuple):
    """Symbolic coordinate: a point's coordinate, or a position immediately
    next to it, or an infinity.  Total order per axis; never equals a point
    coordinate unless side is exact."""

    axis: int
    anchor: int  # point id; -1 for infinities
    side: int


def below(axis: int, anchor: int) -> SymCoord:
    return SymCoord(axis, anchor, SIDE_BELOW)


def exact(axis: int, anchor: int) -> SymCoord:
    return SymCoord(axis, anchor, SIDE_EXACT)


def above(axis: int, anchor: int) -> SymCoord:
    return SymCoord(axis, anchor, SIDE_ABOVE)


def neg_inf(axis: int) -> SymCoord:
    return SymCoord(axis, -1, _SIDE_NEG_INF)


def pos_inf(axis: int) -> SymCoord:
    return SymCoord(axis, -1, _SIDE_POS_INF)


def is_pos_inf(c: SymCoord) -> bool:
    return c.side == _SIDE_POS_INF


def is_neg_inf(c: SymCoord) -> bool:
    return c.side == _SIDE_NEG_INF


def is_finite(c: SymCoord) -> bool:
    return -2 < c.side < 2


def flip_sym(c: SymCoord) -> SymCoord:
    """Mirror a symbolic coordinate across the axis reflection."""
    return SymCoord(c.axis, c.anchor, -c.side)


class SymBox(NamedTuple):
    """Axis-aligned box with symbolic boundaries.

    Partition boxes use only off-point boundaries (side != exact), which
    enforces the standing assumption that no instance point lies on the
    boundary of a box or of its four quadrants.  Query regions may carry
    exact-sided bounds."""

    x_lo: SymCoord
    x_hi: SymCoord
    y_lo: SymCoord
    y_hi: SymCoord

    def bounds(self, axis: int) -> tuple[SymCoord, SymCoord]:
        return (self.x_lo, self.x_hi) if axis == AXIS_X else (self.y_lo, self.y_hi)


def flip_box(b: SymBox, flip_x: bool, flip_y: bool) -> SymBox:
    x_lo, x_hi = b.x_lo, b.x_hi
    y_lo, y_hi = b.y_lo, b.y_hi
    if flip_x:
        x_lo, x_hi = flip_sym(x_hi), flip_sym(x_lo)
    if flip_y:
        y_lo, y_hi = flip_sym(y_hi), flip_sym(y_lo)
    return SymBox(x_lo, x_hi, y_lo, y_hi)


def whole_plane() -> SymBox:
    return SymBox(neg_inf(AXIS_X), pos_inf(AXIS_X), neg_inf(AXIS_Y), pos_inf(AXIS_Y))


class ComparisonCounter:
    """Monotone comparison tally, optionally with a transcript of
    (axis, id_a, id_b, outcome) records."""

    __slots__ = ("count", "transcript")

    def __init__(self, record: bool = False):
        self.count = 0
        self.transcript: list[tuple[int, int, int, bool]] | None = [] if record else None

    def snapshot(self) -> int:
        return self.count


def _parse_coordinate(token: str):
    try:
        return int(token)
    except ValueError:
        pass
    try:
        return Fraction(Decimal(token))
    except (InvalidOperation, ValueError):
        try:
            return Fraction(token)
        except ValueError as exc:
            raise ValueError(f"cannot parse coordinate {token!r}") from exc


class Instance:
    """Validated point set.  Points keep their input order; ids are dense
    input positions.  Exact coordinate keys are retained for I/O and for the
    uncounted conditioning step that assigns coordinate ranks."""

    __slots__ = ("n", "xs", "ys", "colors", "xrank", "yrank", "xorder", "yorder")

    def __init__(self, xs, ys, colors, xrank, yrank, xorder, yorder):
        self.n = len(xs)
        self.xs = xs
        self.ys = ys
        self.colors = colors
        self.xrank = xrank
        self.yrank = yrank
        self.xorder = xorder
        self.yorder = yorder

    @property
    def points(self) -> tuple[ColoredPoint, ...]:
        return tuple(
            ColoredPoint(self.xs[i], self.ys[i], Color(self.colors[i]), i)
            for i in range(self.n)
        )

    def ids_of_color(self, color: Color) -> list[int]:
        return [i for i in range(self.n) if self.colors[i] == color]

    def permuted(self, sigma: Sequence[int]) -> "Instance":
        """New instance whose point at position i is this instance's point
        sigma[i] (fresh dense ids)."""
        pts = [(self.xs[j], self.ys[j], Color(self.colors[j])) for j in sigma]
        return validate_instance(pts)


def _rank_axis(keys: list, tie_break: bool, axis: int) -> tuple[list[int], list[int]]:
    n = len(keys)
    np_order = None
    if n and all(isinstance(k, int) for k in keys):
        arr = np.fromiter(keys, dtype=np.int64, count=n)
        np_order = np.argsort(arr, kind="stable")
        ka = arr[np_order]
        dup = np.nonzero(ka[1:] == ka[:-1])[0]
        if dup.size and not tie_break:
            d = int(dup[0])
            raise DegenerateInput(axis, int(np_order[d]), int(np_order[d + 1]))
        rank_np = np.empty(n, dtype=np.int64)
        rank_np[np_order] = np.arange(n)
        return rank_np.tolist(), np_order.tolist()
    if tie_break:
        order = sorted(range(n), key=lambda i: (keys[i], i))
    else:
        order = sorted(range(n), key=lambda i: keys[i])
        for a, b in zip(order, order[1:]):
            if keys[a] == keys[b]:
                raise DegenerateInput(axis, a, b)
    rank = [0] * n
    for r, i in enumerate(order):
        rank[i] = r
    return rank, order


def validate_instance(points: Iterable, tie_break: bool = False) -> Instance:
    """Check the non-degeneracy assumption and assign coordinate ranks.

    Accepts ColoredPoint objects or (x, y, color) triples; color may be a
    Color, 'R'/'B', or 0/1.  Raises DegenerateInput on shared coordinates
    unless tie_break is set, in which case ties are ordered by id.
    """
    xs: list = []
    ys: list = []
    colors: list[int] = []
    for item in points:
        if isinstance(item, ColoredPoint):
            x, y, c = item.x, item.y, item.color
        else:
            x, y, c = item
        if isinstance(c, str):
            c = Color.RED if c.upper() == "R" else Color.BLUE
        xs.append(x)
        ys.append(y)
        colors.append(int(c))
    xrank, xorder = _rank_axis(xs, tie_break, AXIS_X)
    yrank, yorder = _rank_axis(ys, tie_break, AXIS_Y)
    return Instance(xs, ys, colors, xrank, yrank, xorder, yorder)


def _load_points_fast(path, tie_break: bool):
    """Bulk parse for large all-integer files; None when inapplicable."""
    try:
        import pandas as pd
    except ImportError:
        return None
    try:
        df = pd.read_csv(path, sep="\t", comment="#", header=None,
                         names=["x", "y", "c"],
                         dtype={"x": np.int64, "y": np.int64, "c": str})
    except (ValueError, TypeError):
        return None
    cs = df["c"].to_numpy()
    if not np.isin(cs, ("R", "B")).all():
        return None
    xs = df["x"].to_numpy()
    ys = df["y"].to_numpy()
    colors = (cs == "B").astype(np.int8)
    xrank, xorder = _rank_np(xs, tie_break, AXIS_X)
    yrank, yorder = _rank_np(ys, tie_break, AXIS_Y)
    return Instance(xs.tolist(), ys.tolist(), colors.tolist(),
                    xrank, yrank, xorder, yorder)


def _rank_np(arr, tie_break: bool, axis: int):
    order = np.argsort(arr, kind="stable")
    ka = arr[order]
    dup = np.nonzero(ka[1:] == ka[:-1])[0]
    if dup.size and not tie_break:
        d = int(dup[0])
        raise DegenerateInput(axis, int(order[d]), int(order[d + 1]))
    rank = np.empty(len(arr), dtype=np.int64)
    rank[order] = np.arange(len(arr))
    return rank.tolist(), order.tolist()


def load_points(path, tie_break: bool = False) -> Instance:
    """Read a point file: one `x<TAB>y<TAB>{R|B}` record per line, `#`
    comments ignored, ids assigned by line order."""
    try:
        if os.path.getsize(path) > (1 << 21):
            inst = _load_points_fast(path, tie_break)
            if inst is not None:
                return inst
    except OSError:
        pass
    pts = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                parts = line.split()
            if len(parts) != 3:
                raise ValueError(f"{path}:{lineno}: expected `x<TAB>y<TAB>color`")
            xs, ys, cs = parts
            c = cs.strip().upper()
            if c not in ("R", "B"):
                raise ValueError(f"{path}:{lineno}: color must be R or B, got {cs!r}")
            try:
                pts.append((_parse_coordinate(xs), _parse_coordinate(ys), c))
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from exc
    return validate_instance(pts, tie_break=tie_break)


def save_points(inst_or_rows, path) -> None:
    if isinstance(inst_or_rows, Instance):
        rows = (
            (inst_or_rows.xs[i], inst_or_rows.ys[i], "RB"[inst_or_rows.colors[i]])
            for i in range(inst_or_rows.n)
        )
    else:
        rows = inst_or_rows
    content = "\n".join(f"{x}\t{y}\t{c}" for x, y, c in rows)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(content)
        if content:
            fh.write("\n")


# ---------------------------------------------------------------------------
# Comparators


class Comparator:
    """Order oracle over point indices.  Subclasses provide `less`; the bulk
    helpers here are the pure reference paths and are exact in their counts."""

    counter: ComparisonCounter
    colors: list[int]
    n: int

    def less(self, axis: int, i: int, j: int) -> bool:
        raise NotImplementedError

    def view(self, flip_x: bool, flip_y: bool) -> "Comparator":
        if not flip_x and not flip_y:
            return self
        return _FlippedComparator(self, flip_x, flip_y)

    # -- bulk helpers ------------------------------------------------------

    def argextremes(self, axis: int, ids) -> tuple[int, int]:
        """(argmin, argmax) by two linear scans: 2(s-1) comparisons."""
        it = iter(ids)
        lo = hi = next(it)
        less = self.less
        for i in it:
            if less(axis, i, lo):
                lo = i
        for i in ids:
            if i != hi and less(axis, hi, i):
                hi = i
        return lo, hi

    def argmin(self, axis: int, ids) -> int:
        it = iter(ids)
        lo = next(it)
        less = self.less
        for i in it:
            if less(axis, i, lo):
                lo = i
        return lo

    def argmax(self, axis: int, ids) -> int:
        it = iter(ids)
        hi = next(it)
        less = self.less
        for i in it:
            if less(axis, hi, i):
                hi = i
        return hi

    def bbox_extremes(self, ids) -> tuple[int, int, int, int]:
        """(xmin, xmax, ymin, ymax) ids: 4(s-1) comparisons."""
        xmin, xmax = self.argextremes(AXIS_X, ids)
        ymin, ymax = self.argextremes(AXIS_Y, ids)
        return xmin, xmax, ymin, ymax

    def _med3(self, axis: int, a: int, b: int, c: int) -> int:
        less = self.less
        if less(axis, a, b):
            if less(axis, b, c):
                return b
            return c if less(axis, a, c) else a
        if less(axis, a, c):
            return a
        return c if less(axis, b, c) else b

    def select_and_split(self, axis: int, ids, k: int) -> tuple[list[int], int, list[int]]:
        """Return (k-1 smallest, k-th smallest, rest) by quickselect with a
        deterministic median-of-three pivot."""
        ids = list(ids)
        assert 1 <= k <= len(ids)
        low_acc: list[int] = []
        high_acc: list[int] = []
        less = self.less
        while True:
            s = len(ids)
            if s == 1:
                return low_acc, ids[0], high_acc
            if s == 2:
                a, b = ids
                if less(axis, b, a):
                    a, b = b, a
                if k == 1:
                    return low_acc, a, [b] + high_acc
                return low_acc + [a], b, high_acc
            pivot = self._med3(axis, ids[0], ids[s // 2], ids[-1])
            left = []
            right = []
            for i in ids:
                if i == pivot:
                    continue
                if less(axis, i, pivot):
                    left.append(i)
                else:
                    right.append(i)
            nl = len(left)
            if k <= nl:
                high_acc = right + [pivot] + high_acc
                ids = left
            elif k == nl + 1:
                return low_acc + left, pivot, right + high_acc
            else:
                low_acc = low_acc + left + [pivot]
                k -= nl + 1
                ids = right

    def sort_ids(self, axis: int, ids) -> list[int]:
        """Bottom-up mergesort; count equals the merges actually performed."""
        runs = [[i] for i in ids]
        if not runs:
            return []
        less = self.less
        while len(runs) > 1:
            nxt = []
            for a, b in zip(runs[::2], runs[1::2]):
                merged = []
                ia = ib = 0
                while ia < len(a) and ib < len(b):
                    if less(axis, b[ib], a[ia]):
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

    def bisect_ids(self, axis: int, bounds: list[SymCoord], ids) -> list[int]:
        """For each id, the count of bounds at or below its coordinate.

        Binary search per id; probes against a bound anchored at the probed
        point itself resolve by side logic and cost nothing.
        """
        k = len(bounds)
        if k == 0:
            return [0] * len(ids)
        out = []
        for i in ids:
            lo, hi = 0, k
            while lo < hi:
                mid = (lo + hi) // 2
                if pt_less_sym(self, axis, i, bounds[mid]):
                    hi = mid
                else:
                    lo = mid + 1
            out.append(lo)
        return out


class _FlippedComparator(Comparator):
    """Reflection adapter: reverses outcomes on the flipped axes."""

    def __init__(self, base: Comparator, flip_x: bool, flip_y: bool):
        self._base = base
        self._flip = (flip_x, flip_y)
        self.counter = base.counter
        self.colors = base.colors
        self.n = base.n

    def less(self, axis: int, i: int, j: int) -> bool:
        if self._flip[axis]:
            return self._base.less(axis, j, i)
        return self._base.less(axis, i, j)

    def view(self, flip_x: bool, flip_y: bool) -> Comparator:
        fx = self._flip[0] ^ flip_x
        fy = self._flip[1] ^ flip_y
        return self._base.view(fx, fy)


class FastComparator(Comparator):
    """Standard comparator answering from an instance's coordinate ranks,
    with vectorized bulk paths whose counts match the pure algorithms."""

    def __init__(self, inst: Instance, counter: ComparisonCounter | None = None,
                 flip_x: bool = False, flip_y: bool = False, _base=None):
        self.inst = inst
        self.counter = counter if counter is not None else ComparisonCounter()
        self.n = inst.n
        self.colors = inst.colors
        self._flips = (flip_x, flip_y)
        if _base is None:
            xnp = np.fromiter(inst.xrank, dtype=np.int64, count=inst.n)
            ynp = np.fromiter(inst.yrank, dtype=np.int64, count=inst.n)
            self.colors_np = np.fromiter(inst.colors, dtype=np.int8, count=inst.n)
        else:
            xnp, ynp = _base._npkeys_plain
            self.colors_np = _base.colors_np
        self._npkeys_plain = (xnp, ynp)
        n1 = inst.n - 1
        xk = (n1 - xnp) if flip_x else xnp
        yk = (n1 - ynp) if flip_y else ynp
        self._npkeys = (xk, yk)
        self._keys = (xk.tolist(), yk.tolist())

    def less(self, axis: int, i: int, j: int) -> bool:
        c = self.counter
        c.count += 1
        k = self._keys[axis]
        out = k[i] < k[j]
        if c.transcript is not None:
            fx, fy = self._flips
            if (axis == AXIS_X and fx) or (axis == AXIS_Y and fy):
                c.transcript.append((axis, j, i, out))
            else:
                c.transcript.append((axis, i, j, out))
        return out

    def view(self, flip_x: bool, flip_y: bool) -> "FastComparator":
        if not flip_x and not flip_y:
            return self
        fx, fy = self._flips
        return FastComparator(self.inst, self.counter, fx ^ flip_x, fy ^ flip_y,
                              _base=self)

    def sym_key(self, sc: SymCoord) -> int:
        """Doubled-rank key of a view-space symbolic coordinate."""
        n = self.n
        if sc.side == _SIDE_POS_INF:
            return 2 * n + 2
        if sc.side == _SIDE_NEG_INF:
            return -2
        return 2 * self._keys[sc.axis][sc.anchor] + sc.side

    # -- vectorized bulk paths ---------------------------------------------

    def _ids_array(self, ids):
        if isinstance(ids, np.ndarray):
            return ids
        return np.fromiter(ids, dtype=np.int64, count=len(ids))

    def argextremes(self, axis: int, ids):
        s = len(ids)
        if s < _BULK_MIN or self.counter.transcript is not None:
            return super().argextremes(axis, ids)
        a = self._ids_array(ids)
        vals = self._npkeys[axis][a]
        self.counter.count += 2 * (s - 1)
        return int(a[np.argmin(vals)]), int(a[np.argmax(vals)])

    def argmin(self, axis: int, ids):
        s = len(ids)
        if s < _BULK_MIN or self.counter.transcript is not None:
            return super().argmin(axis, ids)
        a = self._ids_array(ids)
        self.counter.count += s - 1
        return int(a[np.argmin(self._npkeys[axis][a])])

    def argmax(self, axis: int, ids):
        s = len(ids)
        if s < _BULK_MIN or self.counter.transcript is not None:
            return super().argmax(axis, ids)
        a = self._ids_array(ids)
        self.counter.count += s - 1
        return int(a[np.argmax(self._npkeys[axis][a])])

    def bbox_extremes(self, ids):
        s = len(ids)
        if s < _BULK_MIN or self.counter.transcript is not None:
            return super().bbox_extremes(ids)
        a = self._ids_array(ids)
        xs = self._npkeys[AXIS_X][a]
        ys = self._npkeys[AXIS_Y][a]
        self.counter.count += 4 * (s - 1)
        return (int(a[np.argmin(xs)]), int(a[np.argmax(xs)]),
                int(a[np.argmin(ys)]), int(a[np.argmax(ys)]))

    def select_and_split(self, axis: int, ids, k: int):
        want_np = isinstance(ids, np.ndarray)
        if len(ids) < _BULK_MIN or self.counter.transcript is not None:
            low, med, high = super().select_and_split(
                axis, ids.tolist() if want_np else ids, k)
            if want_np:
                return (np.asarray(low, dtype=np.int64), med,
                        np.asarray(high, dtype=np.int64))
            return low, med, high
        keys = self._npkeys[axis]
        arr = self._ids_array(ids)
        vals = keys[arr]
        low_parts: list[np.ndarray] = []
        high_parts: list[np.ndarray] = []
        counter = self.counter
        while True:
            s = len(arr)
            if s < _BULK_MIN:
                low, med, high = super().select_and_split(axis, arr.tolist(), k)
                low_parts.append(np.asarray(low, dtype=np.int64))
                high_parts.insert(0, np.asarray(high, dtype=np.int64))
                break
            pivot = self._med3(axis, int(arr[0]), int(arr[s // 2]), int(arr[-1]))
            pv = keys[pivot]
            counter.count += s - 1
            mask = vals < pv
            mask[arr == pivot] = False
            left = arr[mask]
            lv = vals[mask]
            rmask = ~mask
            rmask[arr == pivot] = False
            right = arr[rmask]
            rv = vals[rmask]
            nl = len(left)
            if k <= nl:
                high_parts.insert(0, np.append(right, pivot))
                arr, vals = left, lv
            elif k == nl + 1:
                low_parts.append(left)
                high_parts.insert(0, right)
                med = pivot
                break
            else:
                low_parts.append(np.append(left, pivot))
                k -= nl + 1
                arr, vals = right, rv
        lows_np = np.concatenate(low_parts) if low_parts else np.empty(0, dtype=np.int64)
        highs_np = np.concatenate(high_parts) if high_parts else np.empty(0, dtype=np.int64)
        if want_np:
            return lows_np, med, highs_np
        return lows_np.tolist(), med, highs_np.tolist()

    def bisect_ids(self, axis: int, bounds: list[SymCoord], ids) -> list[int]:
        k = len(bounds)
        s = len(ids)
        if k == 0:
            return [0] * s
        if s < _BULK_MIN or self.counter.transcript is not None:
            return super().bisect_ids(axis, bounds, ids)
        bkeys = np.fromiter((self.sym_key(b) for b in bounds), dtype=np.int64, count=k)
        pkeys = 2 * self._npkeys[axis][self._ids_array(ids)]
        # binary search does at most ceil(log2(k+1)) probes per key
        self.counter.count += s * math.ceil(math.log2(k + 1))
        return np.searchsorted(bkeys, pkeys, side="right")


class ReplayComparator(Comparator):
    """Re-answers a recorded transcript in order, asserting each query
    matches; proves a solver's output is a function of its transcript."""

    def __init__(self, n: int, colors: list[int], transcript):
        self.n = n
        self.colors = colors
        self.counter = ComparisonCounter()
        self._tape = list(transcript)
        self._pos = 0

    def less(self, axis: int, i: int, j: int) -> bool:
        rec_axis, rec_i, rec_j, out = self._tape[self._pos]
        if (rec_axis, rec_i, rec_j) != (axis, i, j):
            raise AssertionError(
                f"transcript mismatch at {self._pos}: recorded "
                f"{(rec_axis, rec_i, rec_j)}, queried {(axis, i, j)}"
            )
        self._pos += 1
        self.counter.count += 1
        return out


def replay_transcript(inst: Instance, transcript) -> bool:
    """True iff every recorded outcome matches the raw coordinate order."""
    for axis, i, j, out in transcript:
        rank = inst.xrank if axis == AXIS_X else inst.yrank
        if (rank[i] < rank[j]) != out:
            return False
    return True


# ---------------------------------------------------------------------------
# Symbolic order and predicates


def sym_less(cmp: Comparator, a: SymCoord, b: SymCoord) -> bool:
    assert a.axis == b.axis
    sa, sb = a.side, b.side
    if sa == _SIDE_NEG_INF:
        return sb != _SIDE_NEG_INF
    if sb == _SIDE_NEG_INF:
        return False
    if sb == _SIDE_POS_INF:
        return sa != _SIDE_POS_INF
    if sa == _SIDE_POS_INF:
        return False
    if a.anchor == b.anchor:
        return sa < sb
    return cmp.less(a.axis, a.anchor, b.anchor)


def sym_min(cmp: Comparator, a: SymCoord, b: SymCoord) -> SymCoord:
    return a if sym_less(cmp, a, b) else b


def pt_less_sym(cmp: Comparator, axis: int, pid: int, sc: SymCoord) -> bool:
    """coordinate(pid) < sc, counting one comparison when anchors differ."""
    if sc.side == _SIDE_POS_INF:
        return True
    if sc.side == _SIDE_NEG_INF:
        return False
    if sc.anchor == pid:
        return 0 < sc.side
    return cmp.less(axis, pid, sc.anchor)


def sym_less_pt(cmp: Comparator, axis: int, sc: SymCoord, pid: int) -> bool:
    """sc < coordinate(pid)."""
    if sc.side == _SIDE_POS_INF:
        return False
    if sc.side == _SIDE_NEG_INF:
        return True
    if sc.anchor == pid:
        return sc.side < 0
    return cmp.less(axis, sc.anchor, pid)


def uniform_color(cmp: Comparator, ids) -> int | None:
    """The single color of the ids, or None if mixed.  Color checks are free
    in the comparison model."""
    colors_np = getattr(cmp, "colors_np", None)
    if colors_np is not None and len(ids) >= 1024:
        arr = colors_np[np.asarray(ids, dtype=np.int64)]
        return int(arr[0]) if bool((arr == arr[0]).all()) else None
    colors = cmp.colors
    c0 = colors[ids[0]]
    for i in ids:
        if colors[i] != c0:
            return None
    return c0


def cell_bbox(cmp: Comparator, ids) -> SymBox:
    """Smallest symbolic box around the ids, extended off the extreme
    coordinates so no point lies on the box or quadrant boundaries."""
    xmin, xmax, ymin, ymax = cmp.bbox_extremes(ids)
    return SymBox(
        below(AXIS_X, xmin), above(AXIS_X, xmax),
        below(AXIS_Y, ymin), above(AXIS_Y, ymax),
    )


def dominates(cmp: Comparator, p: int, q: int) -> bool:
    """Both coordinates of p exceed q's; exactly two counted comparisons."""
    a = cmp.less(AXIS_X, q, p)
    b = cmp.less(AXIS_Y, q, p)
    return a and b


def visible(cmp: Comparator, p: int, q: int, ids=None) -> bool:
    """No third point lies strictly inside the box spanned by p and q."""
    if ids is None:
        ids = range(cmp.n)
    less = cmp.less
    for r in ids:
        if r == p or r == q:
            continue
        if less(AXIS_X, p, r) == less(AXIS_X, r, q):
            if less(AXIS_Y, p, r) == less(AXIS_Y, r, q):
                return False
    return True


def locate_quadrant(cmp: Comparator, box: SymBox, p: int) -> Region:
    """Exactly one of: inside the box, in its cross, or in one quadrant."""
    right_of_lo = sym_less_pt(cmp, AXIS_X, box.x_lo, p)
    left_of_hi = pt_less_sym(cmp, AXIS_X, p, box.x_hi)
    above_lo = sym_less_pt(cmp, AXIS_Y, box.y_lo, p)
    below_hi = pt_less_sym(cmp, AXIS_Y, p, box.y_hi)
    in_x = right_of_lo and left_of_hi
    in_y = above_lo and below_hi
    if in_x and in_y:
        return Region.IN_BOX
    if in_x or in_y:
        return Region.CROSS
    if right_of_lo:  # east side
        return Region.NE if above_lo else Region.SE
    return Region.NW if above_lo else Region.SW
