"""Cross-safety tree: entropy-bounded construction and quadrant queries.

The tree is a median-split kd-tree that stops subdividing once a cell's
cross (the union of its full vertical and horizontal slabs) contains one
color only.  The stop test runs in time linear in the cell thanks to a
one-dimensional preprocessing pass that assigns every point its maximal
monochromatic interval per axis; a cell is cross-safe exactly when it is
monochromatic and its bounding range on each axis fits inside any member's
interval.

One tree shape serves all four quadrant orientations.  Each node carries,
per orientation and color role, the role-colored leaf-box corners of minimum
x and minimum y (in that orientation's reflection) and the list of relevant
opposite-color points on the cell's minimal set (a point is relevant when it
has the minimum x or y inside its own leaf).  Interior nodes keep only O(1)
region bounds derived from the split lines; tight bounding boxes are scanned
at leaves and at monochromatic cells, which keeps construction linear per
node in the sense of the entropy bound.

A query takes a lower range [x,+inf) x [y,+inf) and an upper range
(-inf,x] x (-inf,y] whose boundaries avoid opposite-color leaf boxes, visits
O(sqrt(n)) nodes, and needs at most one range-emptiness probe, issued
through a callback so callers can answer it on any conforming subset.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Generator, NamedTuple

import numpy as np

from .core import (
    AXIS_X,
    AXIS_Y,
    Color,
    Comparator,
    InvalidRanges,
    ORIENTATIONS,
    Orientation,
    PreconditionViolated,
    SafetyLabel,
    SymBox,
    SymCoord,
    above,
    below,
    cell_bbox,
    flip_box,
    flip_sym,
    is_finite,
    neg_inf,
    pos_inf,
    pt_less_sym,
    sym_less,
    sym_less_pt,
    sym_min,
    uniform_color,
    whole_plane,
)

EmptinessFn = Callable[[SymBox, int | None], bool]


@dataclass
class KDNode:
    """One cell of a median-split tree."""

    ids: list[int]
    depth: int
    box: SymBox | None = None       # tight symbolic bbox (leaves, mono cells)
    region: SymBox | None = None    # O(1) bounds from ancestor split lines
    axis: int | None = None
    line: SymCoord | None = None
    lo: "KDNode | None" = None
    hi: "KDNode | None" = None
    payload: object = None

    @property
    def is_leaf(self) -> bool:
        return self.lo is None

    def leaves(self):
        stack = [self]
        while stack:
            nd = stack.pop()
            if nd.is_leaf:
                yield nd
            else:
                stack.append(nd.hi)
                stack.append(nd.lo)

    def nodes(self):
        stack = [self]
        while stack:
            nd = stack.pop()
            yield nd
            if not nd.is_leaf:
                stack.append(nd.hi)
                stack.append(nd.lo)


def build_c_kdtree(cmp: Comparator, ids, *, stop=None, max_depth=None,
                   leaf_payload=None, merge_payload=None,
                   boxes: str = "all", regions: bool = False,
                   axes=(AXIS_X, AXIS_Y)) -> KDNode | None:
    """Top-down median-split tree with a monotone stopping condition.

    Splits by the k-th smallest coordinate with k = ceil(s/2), alternating
    the axes given; the split line sits just above the median point so the
    halves are proper point partitions of sizes ceil(s/2) and floor(s/2).
    `stop(node)` is consulted on the cell before splitting and may assign
    node.box as a side effect; `boxes` is "all", "leaf" or "none".
    """
    if not isinstance(ids, np.ndarray):
        ids = list(ids)
    if len(ids) == 0:
        return None

    def rec(cell, depth: int, region: SymBox | None) -> KDNode:
        node = KDNode(ids=cell, depth=depth, region=region)
        s = len(cell)
        if boxes == "all":
            node.box = cell_bbox(cmp, cell)
        if (s == 1 or (max_depth is not None and depth >= max_depth)
                or (stop is not None and stop(node))):
            if boxes != "none" and node.box is None:
                node.box = cell_bbox(cmp, cell)
            if leaf_payload is not None:
                node.payload = leaf_payload(node)
            return node
        axis = axes[depth % len(axes)]
        k = (s + 1) // 2
        low, med, high = cmp.select_and_split(axis, cell, k)
        node.axis = axis
        node.line = above(axis, med)
        if isinstance(low, np.ndarray):
            low = np.append(low, med)
        else:
            low.append(med)
        reg_lo = reg_hi = None
        if regions and region is not None:
            if axis == AXIS_X:
                reg_lo = SymBox(region.x_lo, node.line, region.y_lo, region.y_hi)
                reg_hi = SymBox(node.line, region.x_hi, region.y_lo, region.y_hi)
            else:
                reg_lo = SymBox(region.x_lo, region.x_hi, region.y_lo, node.line)
                reg_hi = SymBox(region.x_lo, region.x_hi, node.line, region.y_hi)
        node.lo = rec(low, depth + 1, reg_lo)
        node.hi = rec(high, depth + 1, reg_hi)
        if merge_payload is not None:
            node.payload = merge_payload(node)
        return node

    return rec(ids, 0, whole_plane() if regions else None)


# ---------------------------------------------------------------------------
# Monochromatic runs (1-D preprocessing)


@dataclass
class MonoRuns:
    """Per point and axis, the maximal interval around its coordinate whose
    instance points all share its color; finite ends anchor at the nearest
    opposite-color point."""

    x_int: list
    y_int: list

    def interval(self, axis: int, pid: int) -> tuple[SymCoord, SymCoord]:
        return (self.x_int if axis == AXIS_X else self.y_int)[pid]


def _axis_runs(cmp: Comparator, ids, axis: int) -> list:
    colors = cmp.colors

    def mono(node: KDNode) -> bool:
        return uniform_color(cmp, node.ids) is not None

    root = build_c_kdtree(cmp, ids, stop=mono, boxes="none", axes=(axis,))
    out: list = [None] * cmp.n
    if root is None:
        return out
    leaves = list(root.leaves())  # in coordinate order
    if len(leaves) == 1:
        iv = (neg_inf(axis), pos_inf(axis))
        if len(leaves[0].ids) == cmp.n:
            return [iv] * cmp.n
        for i in leaves[0].ids:
            out[i] = iv
        return out
    runs: list[list[int]] = []
    for leaf in leaves:
        if runs and colors[runs[-1][0]] == colors[leaf.ids[0]]:
            runs[-1].extend(leaf.ids)
        else:
            runs.append(list(leaf.ids))
    # maximal runs alternate in color; interval ends anchor at the adjacent
    # run's nearest point
    nr = len(runs)
    argmins = [cmp.argmin(axis, runs[k]) if k > 0 else None for k in range(nr)]
    argmaxs = [cmp.argmax(axis, runs[k]) if k + 1 < nr else None for k in range(nr)]
    for k, run in enumerate(runs):
        left = above(axis, argmaxs[k - 1]) if k > 0 else neg_inf(axis)
        right = below(axis, argmins[k + 1]) if k + 1 < nr else pos_inf(axis)
        iv = (left, right)
        for i in run:
            out[i] = iv
    return out


def build_mono_runs(cmp: Comparator, ids=None) -> MonoRuns:
    """Assign maximal monochromatic intervals on both axes via the 1-D
    stopping-condition trees plus a linear merge of adjacent leaf runs."""
    if ids is None:
        ids = np.arange(cmp.n, dtype=np.int64)
    return MonoRuns(
        x_int=_axis_runs(cmp, ids, AXIS_X),
        y_int=_axis_runs(cmp, ids, AXIS_Y),
    )


# ---------------------------------------------------------------------------
# Cross-safety tree with per-orientation payloads


def _slot(o: Orientation, role: int) -> int:
    return int(o) * 2 + role


class NodePayload(NamedTuple):
    """Real-space cell extremes plus per (orientation, role) slots: extreme
    box-point leaves and the sorted relevant opposite-color minimal list
    (view-x ascending, view-y descending)."""

    mn_x: int
    mx_x: int
    mn_y: int
    mx_y: int
    ext_x: tuple  # leaf KDNode or None, per slot
    ext_y: tuple
    mlist: tuple  # list of point ids, per slot


@dataclass
class CrossTree:
    """One orientation's face of the shared cross-safety tree."""

    orientation: Orientation
    view: Comparator
    root: KDNode | None


@dataclass
class CrossTrees:
    """All four orientation faces over one shared tree."""

    base: Comparator
    runs: MonoRuns
    trees: dict[Orientation, CrossTree]

    def __getitem__(self, o: Orientation) -> CrossTree:
        return self.trees[o]

    @property
    def root(self) -> KDNode | None:
        return self.trees[Orientation.NE].root


def cross_safe_cell(base: Comparator, runs: MonoRuns, ids, box: SymBox) -> bool:
    """O(|cell|) cross-safety: monochromatic and slab-contained per axis."""
    if uniform_color(base, ids) is None:
        return False
    p0 = ids[0]
    for axis, lo, hi in ((AXIS_X, box.x_lo, box.x_hi), (AXIS_Y, box.y_lo, box.y_hi)):
        left, right = runs.interval(axis, p0)
        if sym_less(base, lo, left) or sym_less(base, right, hi):
            return False
    return True


def _view_min_x(pl: NodePayload, o: Orientation) -> int:
    return pl.mx_x if o.flip_x else pl.mn_x


def _view_min_y(pl: NodePayload, o: Orientation) -> int:
    return pl.mx_y if o.flip_y else pl.mn_y


def _corner(leaf: KDNode, o: Orientation) -> tuple[SymCoord, SymCoord]:
    """View-space box-point (the o-corner of the leaf box)."""
    b = leaf.box
    cx = flip_sym(b.x_lo) if o.flip_x else b.x_hi
    cy = flip_sym(b.y_lo) if o.flip_y else b.y_hi
    return cx, cy


def _leaf_payload(cmp: Comparator) -> Callable[[KDNode], NodePayload]:
    colors = cmp.colors

    def payload(node: KDNode) -> NodePayload:
        cc = colors[node.ids[0]]
        b = node.box
        mn_x, mx_x = b.x_lo.anchor, b.x_hi.anchor
        mn_y, mx_y = b.y_lo.anchor, b.y_hi.anchor
        ext_x = [None] * 8
        ext_y = [None] * 8
        mlist = [()] * 8
        for o in ORIENTATIONS:
            rel_x = mx_x if o.flip_x else mn_x
            rel_y = mx_y if o.flip_y else mn_y
            relevant = (rel_x,) if rel_x == rel_y else (rel_x, rel_y)
            s_own = _slot(o, cc)
            ext_x[s_own] = node
            ext_y[s_own] = node
            mlist[_slot(o, 1 - cc)] = relevant
        return NodePayload(mn_x, mx_x, mn_y, mx_y,
                           tuple(ext_x), tuple(ext_y), tuple(mlist))

    return payload


def _pick_min(a: int, b: int, less) -> int:
    return a if less(a, b) else b


def _merge_payload(cmp: Comparator, views: dict) -> Callable[[KDNode], NodePayload]:
    def merge(node: KDNode) -> NodePayload:
        pa: NodePayload = node.lo.payload
        pb: NodePayload = node.hi.payload
        less = cmp.less
        mn_x = pa.mn_x if less(AXIS_X, pa.mn_x, pb.mn_x) else pb.mn_x
        mx_x = pb.mx_x if less(AXIS_X, pa.mx_x, pb.mx_x) else pa.mx_x
        mn_y = pa.mn_y if less(AXIS_Y, pa.mn_y, pb.mn_y) else pb.mn_y
        mx_y = pb.mx_y if less(AXIS_Y, pa.mx_y, pb.mx_y) else pa.mx_y
        ext_x = [None] * 8
        ext_y = [None] * 8
        mlist = [()] * 8
        axis = node.axis
        for o in ORIENTATIONS:
            view = views[o]
            flipped = o.flip_x if axis == AXIS_X else o.flip_y
            near, far = (node.hi, node.lo) if flipped else (node.lo, node.hi)
            pn: NodePayload = near.payload
            pf: NodePayload = far.payload
            for role in (0, 1):
                s = _slot(o, role)
                # extreme box-points: min view-x / view-y corner
                for out, getter, caxis in ((ext_x, 0, AXIS_X), (ext_y, 1, AXIS_Y)):
                    la = pa.ext_x[s] if getter == 0 else pa.ext_y[s]
                    lb = pb.ext_x[s] if getter == 0 else pb.ext_y[s]
                    if la is None:
                        out[s] = lb
                    elif lb is None:
                        out[s] = la
                    else:
                        ca = _corner(la, o)[getter]
                        cb = _corner(lb, o)[getter]
                        out[s] = la if sym_less(view, ca, cb) else lb
                # relevant minimal list: near survives whole, far filtered
                fl = pf.mlist[s]
                if axis == AXIS_X:
                    thr = _view_min_y(pn, o)
                    lo_i, hi_i = 0, len(fl)
                    while lo_i < hi_i:  # first view-y below thr (list y-desc)
                        mid = (lo_i + hi_i) // 2
                        if view.less(AXIS_Y, fl[mid], thr):
                            hi_i = mid
                        else:
                            lo_i = mid + 1
                    mlist[s] = pn.mlist[s] + fl[lo_i:]
                else:
                    thr = _view_min_x(pn, o)
                    lo_i, hi_i = 0, len(fl)
                    while lo_i < hi_i:  # first view-x at or above thr (x-asc)
                        mid = (lo_i + hi_i) // 2
                        if view.less(AXIS_X, fl[mid], thr):
                            lo_i = mid + 1
                        else:
                            hi_i = mid
                    mlist[s] = fl[:lo_i] + pn.mlist[s]
        return NodePayload(mn_x, mx_x, mn_y, mx_y,
                           tuple(ext_x), tuple(ext_y), tuple(mlist))

    return merge


def build_cross_safety_trees(cmp: Comparator, runs: MonoRuns, ids=None) -> CrossTrees:
    """Build the shared tree and expose its four orientation faces."""
    if ids is None:
        ids = np.arange(cmp.n, dtype=np.int64)
    views = {o: cmp.view(o.flip_x, o.flip_y) for o in ORIENTATIONS}

    def stop(node: KDNode) -> bool:
        if uniform_color(cmp, node.ids) is None:
            return False
        if node.box is None:
            node.box = cell_bbox(cmp, node.ids)
        return cross_safe_cell(cmp, runs, node.ids, node.box)

    root = build_c_kdtree(
        cmp, ids, stop=stop, boxes="leaf", regions=True,
        leaf_payload=_leaf_payload(cmp),
        merge_payload=_merge_payload(cmp, views),
    )
    trees = {o: CrossTree(orientation=o, view=views[o], root=root)
             for o in ORIENTATIONS}
    return CrossTrees(base=cmp, runs=runs, trees=trees)


# ---------------------------------------------------------------------------
# Queries


class QueryRanges(NamedTuple):
    """Lower range [x_lo,+inf) x [y_lo,+inf) and upper range
    (-inf,x_hi] x (-inf,y_hi], in the orientation's view space."""

    x_lo: SymCoord
    y_lo: SymCoord
    x_hi: SymCoord
    y_hi: SymCoord


class QueryResult(NamedTuple):
    """Minimum view coordinates over the queried region: role-colored
    leaf-box corners within the lower range (rx, ry) and opposite-color
    minimal-set points within both ranges (bx, by); +inf when absent."""

    rx: SymCoord
    ry: SymCoord
    bx: SymCoord
    by: SymCoord


@dataclass
class QueryStats:
    visits: int = 0
    emptiness_calls: int = 0


def _all_inf() -> QueryResult:
    return QueryResult(pos_inf(AXIS_X), pos_inf(AXIS_Y),
                       pos_inf(AXIS_X), pos_inf(AXIS_Y))


def _answer_inside(tree: CrossTree, node: KDNode, role: int, xU, yU) -> QueryResult:
    view = tree.view
    o = tree.orientation
    s = _slot(o, role)
    pl: NodePayload = node.payload
    ex = pl.ext_x[s]
    ey = pl.ext_y[s]
    rx = _corner(ex, o)[0] if ex is not None else pos_inf(AXIS_X)
    ry = _corner(ey, o)[1] if ey is not None else pos_inf(AXIS_Y)
    lst = pl.mlist[s]
    bx = pos_inf(AXIS_X)
    by = pos_inf(AXIS_Y)
    if lst:
        # first index with view-y <= yU (list is y-descending)
        lo, hi = 0, len(lst)
        while lo < hi:
            mid = (lo + hi) // 2
            if sym_less_pt(view, AXIS_Y, yU, lst[mid]):
                lo = mid + 1
            else:
                hi = mid
        if lo < len(lst) and not sym_less_pt(view, AXIS_X, xU, lst[lo]):
            bx = SymCoord(AXIS_X, lst[lo], 0)
        # last index with view-x <= xU (list is x-ascending)
        lo2, hi2 = 0, len(lst)
        while lo2 < hi2:
            mid = (lo2 + hi2) // 2
            if sym_less_pt(view, AXIS_X, xU, lst[mid]):
                hi2 = mid
            else:
                lo2 = mid + 1
        j = lo2 - 1
        if j >= 0 and not sym_less_pt(view, AXIS_Y, yU, lst[j]):
            by = SymCoord(AXIS_Y, lst[j], 0)
    return QueryResult(rx, ry, bx, by)


def _query(tree: CrossTree, node: KDNode, role: int, xL, yL, xU, yU,
           stats: QueryStats) -> Generator:
    stats.visits += 1
    view = tree.view
    o = tree.orientation
    if not node.is_leaf:
        region = flip_box(node.region, o.flip_x, o.flip_y)
        # cell points are strictly inside their region bounds
        if not sym_less(view, xL, region.x_hi) or not sym_less(view, yL, region.y_hi):
            return _all_inf()
        if (not sym_less(view, region.x_lo, xL)
                and not sym_less(view, region.y_lo, yL)):
            return _answer_inside(tree, node, role, xU, yU)
        flipped = o.flip_x if node.axis == AXIS_X else o.flip_y
        near, far = (node.hi, node.lo) if flipped else (node.lo, node.hi)
        res_n = yield from _query(tree, near, role, xL, yL, xU, yU, stats)
        if node.axis == AXIS_X:
            res_f = yield from _query(tree, far, role, xL, yL, xU,
                                      sym_min(view, yU, res_n.ry), stats)
        else:
            res_f = yield from _query(tree, far, role, xL, yL,
                                      sym_min(view, xU, res_n.rx), yU, stats)
        return QueryResult(
            sym_min(view, res_n.rx, res_f.rx),
            sym_min(view, res_n.ry, res_f.ry),
            sym_min(view, res_n.bx, res_f.bx),
            sym_min(view, res_n.by, res_f.by),
        )
    # leaf: dispatch on the tight box in view space
    box = flip_box(node.box, o.flip_x, o.flip_y)
    if (pt_less_sym(view, AXIS_X, box.x_hi.anchor, xL)
            or pt_less_sym(view, AXIS_Y, box.y_hi.anchor, yL)):
        return _all_inf()
    x_all_in = not pt_less_sym(view, AXIS_X, box.x_lo.anchor, xL)
    y_all_in = not pt_less_sym(view, AXIS_Y, box.y_lo.anchor, yL)
    if x_all_in and y_all_in:
        return _answer_inside(tree, node, role, xU, yU)
    if view.colors[node.ids[0]] != role:
        raise InvalidRanges("lower-range boundary cuts an opposite-role leaf box")
    cx, cy = _corner(node, o)
    if x_all_in or y_all_in:
        # one boundary only: the extreme point on the contained axis is in range
        return QueryResult(cx, cy, pos_inf(AXIS_X), pos_inf(AXIS_Y))
    # corner of the lower range lies inside this box: one emptiness probe
    region_view = SymBox(xL, box.x_hi, yL, box.y_hi)
    stats.emptiness_calls += 1
    empty = yield (flip_box(region_view, o.flip_x, o.flip_y), None)
    if empty:
        return _all_inf()
    return QueryResult(cx, cy, pos_inf(AXIS_X), pos_inf(AXIS_Y))


def query_cross_tree_gen(tree: CrossTree, role: int, ranges: QueryRanges,
                         stats: QueryStats | None = None) -> Generator:
    """Generator form: yields (real-space SymBox, color-or-None) emptiness
    requests (at most one) and expects a bool answer (True means empty)."""
    stats = stats if stats is not None else QueryStats()
    if tree.root is None:
        return _all_inf()
    res = yield from _query(tree, tree.root, role, ranges.x_lo, ranges.y_lo,
                            ranges.x_hi, ranges.y_hi, stats)
    return res


def drive(gen: Generator, emptiness: EmptinessFn | None):
    """Run a query/safety generator against a direct emptiness callback."""
    try:
        req = next(gen)
        while True:
            box, color = req
            if emptiness is None:
                raise PreconditionViolated("emptiness callback required")
            req = gen.send(emptiness(box, color))
    except StopIteration as fin:
        return fin.value


def query_cross_tree(tree: CrossTree, role: int, ranges: QueryRanges,
                     emptiness: EmptinessFn | None = None,
                     stats: QueryStats | None = None,
                     validate: bool = False) -> QueryResult:
    """Four-case quadrant query; O(sqrt n) node visits, at most one
    emptiness probe, answered by the callback on any conforming subset."""
    if validate:
        validate_ranges(tree, role, ranges)
    return drive(query_cross_tree_gen(tree, role, ranges, stats), emptiness)


def validate_ranges(tree: CrossTree, role: int, ranges: QueryRanges) -> None:
    """Debug check: no range boundary may cut an opposite-role leaf box."""
    if tree.root is None:
        return
    view = tree.view
    o = tree.orientation
    xL, yL, xU, yU = ranges

    def cuts(b: SymBox) -> bool:
        inx = lambda c: sym_less(view, b.x_lo, c) and sym_less(view, c, b.x_hi)
        iny = lambda c: sym_less(view, b.y_lo, c) and sym_less(view, c, b.y_hi)
        if is_finite(xL) and inx(xL) and sym_less(view, yL, b.y_hi):
            return True
        if is_finite(yL) and iny(yL) and sym_less(view, xL, b.x_hi):
            return True
        if is_finite(xU) and inx(xU) and sym_less(view, b.y_lo, yU):
            return True
        if is_finite(yU) and iny(yU) and sym_less(view, b.x_lo, xU):
            return True
        return False

    for leaf in tree.root.leaves():
        if view.colors[leaf.ids[0]] != role:
            if cuts(flip_box(leaf.box, o.flip_x, o.flip_y)):
                raise InvalidRanges(
                    f"range boundary cuts an opposite-role leaf box")


# ---------------------------------------------------------------------------
# Full box safety on conforming subsets


def quadrant_ranges(box: SymBox, o: Orientation) -> QueryRanges:
    """The o-quadrant of a box as a lower range in o's view space."""
    vb = flip_box(box, o.flip_x, o.flip_y)
    return QueryRanges(x_lo=vb.x_hi, y_lo=vb.y_hi,
                       x_hi=pos_inf(AXIS_X), y_hi=pos_inf(AXIS_Y))


def quadrants_safe_gen(trees: CrossTrees, box: SymBox, role: int,
                       stats: QueryStats | None = None) -> Generator:
    """One quadrant query per orientation: True iff no opposite-color point
    sits on any quadrant's minimal set.  Assumes the box is already known to
    be role-cross-safe."""
    for o in ORIENTATIONS:
        res = yield from query_cross_tree_gen(trees[o], role,
                                              quadrant_ranges(box, o), stats)
        if is_finite(res.bx):
            return False
    return True


def test_box_safe_gen(trees: CrossTrees, box: SymBox, role: int,
                      stats: QueryStats | None = None) -> Generator:
    """Yields emptiness requests; returns True iff the box is role-safe.

    Two opposite-color slab probes decide cross-safety; if they pass, one
    quadrant query per orientation checks that no opposite-color point sits
    on the quadrant's minimal set.
    """
    opp = 1 - role
    vslab = SymBox(box.x_lo, box.x_hi, neg_inf(AXIS_Y), pos_inf(AXIS_Y))
    if not (yield (vslab, opp)):
        return False
    hslab = SymBox(neg_inf(AXIS_X), pos_inf(AXIS_X), box.y_lo, box.y_hi)
    if not (yield (hslab, opp)):
        return False
    safe = yield from quadrants_safe_gen(trees, box, role, stats)
    return safe


def test_box_safe(trees: CrossTrees, emptiness: EmptinessFn, box: SymBox,
                  witness: int, stats: QueryStats | None = None) -> SafetyLabel:
    """Classify a box against a conforming subset.

    The witness must be a subset point inside the box; its color fixes the
    only possible safe role, since the box lies inside its own cross.
    """
    base = trees.base
    inx = (sym_less_pt(base, AXIS_X, box.x_lo, witness)
           and pt_less_sym(base, AXIS_X, witness, box.x_hi))
    iny = (sym_less_pt(base, AXIS_Y, box.y_lo, witness)
           and pt_less_sym(base, AXIS_Y, witness, box.y_hi))
    if not (inx and iny):
        raise PreconditionViolated(f"witness {witness} lies outside the box")
    role = base.colors[witness]
    safe = drive(test_box_safe_gen(trees, box, role, stats), emptiness)
    if not safe:
        return SafetyLabel.NOT_SAFE
    return SafetyLabel.RED_SAFE if role == Color.RED else SafetyLabel.BLUE_SAFE


def scan_emptiness(cmp: Comparator, ids) -> EmptinessFn:
    """Per-query linear-scan emptiness on an id subset (counted)."""
    ids = list(ids)
    colors = cmp.colors

    def is_empty(box: SymBox, color: int | None) -> bool:
        for i in ids:
            if color is not None and colors[i] != color:
                continue
            if pt_less_sym(cmp, AXIS_X, i, box.x_lo):
                continue
            if sym_less_pt(cmp, AXIS_X, box.x_hi, i):
                continue
            if pt_less_sym(cmp, AXIS_Y, i, box.y_lo):
                continue
            if sym_less_pt(cmp, AXIS_Y, box.y_hi, i):
                continue
            return False
        return True

    return is_empty


def tree_debug_dict(tree: CrossTree) -> dict:
    """JSON-friendly dump of node boxes, regions and payload sizes."""

    def sym(c: SymCoord):
        if not is_finite(c):
            return "+inf" if c.side > 0 else "-inf"
        return [c.anchor, c.side]

    def walk(node: KDNode) -> dict:
        out = {
            "size": len(node.ids),
            "box": [sym(c) for c in node.box] if node.box else None,
            "region": [sym(c) for c in node.region] if node.region else None,
            "leaf": node.is_leaf,
        }
        if node.payload is not None:
            pl: NodePayload = node.payload
            out["mlist_sizes"] = [len(m) for m in pl.mlist]
        if not node.is_leaf:
            out["axis"] = "x" if node.axis == AXIS_X else "y"
            out["children"] = [walk(node.lo), walk(node.hi)]
        return out

    return {"orientation": tree.orientation.name,
            "root": walk(tree.root) if tree.root else None}
