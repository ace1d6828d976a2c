"""Worst-case sweep solvers.

Participation: a point p participates through a quadrant exactly when some
opposite-color point b in that quadrant dominates (toward p) no point of p's
color there.  Sweeping by decreasing x with a tournament tree over y slots,
that test becomes: is there an inserted opposite b above p whose x is below
the minimum x of p's color strictly between them?  The tree keeps, per node
and per color, the min-x inserted point and the min-x "staircase candidate"
(a point lying left of every other-color point below it inside the node),
which merge bottom-up in O(1) comparisons.

Pair reporting walks, for each arriving point, the staircase of already
inserted points visible from it, jumping directly to opposite-color staircase
members via a max-augmented tree, so the cost is O((m + j) log m) comparisons
for j reported pairs.

Both routines are exercised exhaustively against the brute-force oracle at
small sizes before anything else trusts them.
"""

from __future__ import annotations

from .core import AXIS_X, AXIS_Y, Comparator, ORIENTATIONS, Orientation


class StairAugTree:
    """Tournament tree over y slots for the participation query.

    Per color c, each node stores the min-x inserted point of color c and
    cand_c: the min-x point b of color c such that x(b) is below the min x of
    opposite-color points inserted strictly below b within the node.
    """

    def __init__(self, m: int, cmp: Comparator):
        size = 1
        while size < max(m, 1):
            size <<= 1
        self.size = size
        self.cmp = cmp
        self.minx = ([None] * (2 * size), [None] * (2 * size))
        self.cand = ([None] * (2 * size), [None] * (2 * size))

    def _xmin(self, a, b):
        if a is None:
            return b
        if b is None:
            return a
        return a if self.cmp.less(AXIS_X, a, b) else b

    def _pull(self, i: int) -> None:
        lo, hi = 2 * i, 2 * i + 1
        cmp = self.cmp
        minx, cand = self.minx, self.cand
        for c in (0, 1):
            minx[c][i] = self._xmin(minx[c][lo], minx[c][hi])
            ch = cand[c][hi]
            gate = minx[1 - c][lo]
            if ch is not None and gate is not None and not cmp.less(AXIS_X, ch, gate):
                ch = None
            cand[c][i] = self._xmin(cand[c][lo], ch)

    def insert(self, slot: int, pid: int, color: int) -> None:
        i = self.size + slot
        self.minx[color][i] = pid
        self.cand[color][i] = pid
        i >>= 1
        while i:
            self._pull(i)
            i >>= 1

    def query(self, slot: int, color: int) -> bool:
        """Does an inserted opposite-color point above `slot` sit left of all
        inserted `color` points between it and `slot`?"""
        size = self.size
        l = size + slot + 1
        r = 2 * size
        lows: list[int] = []
        highs: list[int] = []
        while l < r:
            if l & 1:
                lows.append(l)
                l += 1
            if r & 1:
                r -= 1
                highs.append(r)
            l >>= 1
            r >>= 1
        cmp = self.cmp
        cand_o = self.cand[1 - color]
        minx_s = self.minx[color]
        t = None
        for nd in lows + highs[::-1]:
            c = cand_o[nd]
            if c is not None and (t is None or cmp.less(AXIS_X, c, t)):
                return True
            mm = minx_s[nd]
            if mm is not None and (t is None or cmp.less(AXIS_X, mm, t)):
                t = mm
        return False

    # -- debug -------------------------------------------------------------

    def recompute_node(self, i: int):
        """Brute-force (minx, cand) of node i from the leaves; O(size)."""
        size = self.size
        lo, hi = i, i
        while lo < size:
            lo = 2 * lo
            hi = 2 * hi + 1
        slots = range(lo - size, hi - size + 1)
        pts = []  # (slot, pid, color) inserted, increasing slot
        for s in slots:
            for c in (0, 1):
                pid = self.minx[c][size + s]
                if pid is not None:
                    pts.append((s, pid, c))
        cmp = self.cmp
        out = {}
        for c in (0, 1):
            mine = [p for _, p, pc in pts if pc == c]
            mn = None
            for p in mine:
                mn = p if mn is None or cmp.less(AXIS_X, p, mn) else mn
            cands = []
            for s, p, pc in pts:
                if pc != c:
                    continue
                below_min = None
                for s2, p2, pc2 in pts:
                    if pc2 == 1 - c and s2 < s:
                        below_min = p2 if below_min is None or cmp.less(AXIS_X, p2, below_min) else below_min
                if below_min is None or cmp.less(AXIS_X, p, below_min):
                    cands.append(p)
            cd = None
            for p in cands:
                cd = p if cd is None or cmp.less(AXIS_X, p, cd) else cd
            out[c] = (mn, cd)
        return out


def _yslots(cmp: Comparator, ids) -> tuple[list[int], dict[int, int]]:
    order = cmp.sort_ids(AXIS_Y, ids)
    return order, {pid: s for s, pid in enumerate(order)}


def report_participating_sweep(cmp: Comparator, ids=None,
                               orientations=ORIENTATIONS) -> set[int]:
    """Ids visible from an opposite color point, by four reflected sweeps."""
    ids = list(range(cmp.n)) if ids is None else list(ids)
    m = len(ids)
    if m < 2:
        return set()
    colors = cmp.colors
    xsorted = cmp.sort_ids(AXIS_X, ids)
    _, yslot = _yslots(cmp, ids)
    out: set[int] = set()
    for o in orientations:
        view = cmp.view(o.flip_x, o.flip_y)
        order = xsorted if o.flip_x else xsorted[::-1]  # view-x descending
        tree = StairAugTree(m, view)
        for pid in order:
            slot = yslot[pid]
            if o.flip_y:
                slot = m - 1 - slot
            if tree.query(slot, colors[pid]):
                out.add(pid)
            tree.insert(slot, pid, colors[pid])
    return out


class PairScanTree:
    """Max-augmented tournament tree for staircase extraction.

    Per color c, each node stores the max-x inserted point of color c and
    best_c: the max-x point b of color c whose x exceeds the max x of all
    points inserted strictly above b within the node.  maxx_all merges both
    colors so thresholds accumulate in one comparison per node.
    """

    def __init__(self, m: int, cmp: Comparator):
        size = 1
        while size < max(m, 1):
            size <<= 1
        self.size = size
        self.cmp = cmp
        self.maxx = ([None] * (2 * size), [None] * (2 * size))
        self.maxx_all = [None] * (2 * size)
        self.best = ([None] * (2 * size), [None] * (2 * size))

    def _xmax(self, a, b):
        if a is None:
            return b
        if b is None:
            return a
        return b if self.cmp.less(AXIS_X, a, b) else a

    def _pull(self, i: int) -> None:
        lo, hi = 2 * i, 2 * i + 1
        cmp = self.cmp
        self.maxx_all[i] = self._xmax(self.maxx_all[lo], self.maxx_all[hi])
        for c in (0, 1):
            self.maxx[c][i] = self._xmax(self.maxx[c][lo], self.maxx[c][hi])
            bl = self.best[c][lo]
            gate = self.maxx_all[hi]
            if bl is not None and gate is not None and not cmp.less(AXIS_X, gate, bl):
                bl = None
            self.best[c][i] = self._xmax(self.best[c][hi], bl)

    def insert(self, slot: int, pid: int, color: int) -> None:
        i = self.size + slot
        self.maxx[color][i] = pid
        self.maxx_all[i] = pid
        self.best[color][i] = pid
        i >>= 1
        while i:
            self._pull(i)
            i >>= 1

    def _beats(self, pid, t) -> bool:
        return pid is not None and (t is None or self.cmp.less(AXIS_X, t, pid))

    def _descend(self, nd: int, color: int, t):
        size = self.size
        best = self.best[color]
        while nd < size:
            hi = 2 * nd + 1
            if self._beats(best[hi], t):
                nd = hi
            else:
                m = self.maxx_all[hi]
                if self._beats(m, t):
                    t = m
                nd = 2 * nd
        return self.maxx_all[nd]

    def extract_topmost(self, limit_slot: int, color: int, t):
        """Topmost `color` point below `limit_slot` left-unblocked above
        threshold t (a point id acting as an x threshold; None for -inf)."""
        size = self.size
        l = size
        r = size + limit_slot
        lows: list[int] = []
        highs: list[int] = []
        while l < r:
            if l & 1:
                lows.append(l)
                l += 1
            if r & 1:
                r -= 1
                highs.append(r)
            l >>= 1
            r >>= 1
        best = self.best[color]
        for nd in highs + lows[::-1]:  # decreasing y
            if self._beats(best[nd], t):
                return self._descend(nd, color, t)
            m = self.maxx_all[nd]
            if self._beats(m, t):
                t = m
        return None


def report_bichromatic_pairs(cmp: Comparator, ids=None) -> set[tuple[int, int]]:
    """All bichromatic visible pairs, two reflected sweeps by increasing x."""
    ids = list(range(cmp.n)) if ids is None else list(ids)
    m = len(ids)
    out: set[tuple[int, int]] = set()
    if m < 2:
        return out
    colors = cmp.colors
    xsorted = cmp.sort_ids(AXIS_X, ids)
    _, yslot = _yslots(cmp, ids)
    for flip_y in (False, True):
        view = cmp.view(False, flip_y)
        tree = PairScanTree(m, view)
        for q in xsorted:
            slot = yslot[q] if not flip_y else m - 1 - yslot[q]
            opp = 1 - colors[q]
            t = None
            cursor = slot
            while True:
                b = tree.extract_topmost(cursor, opp, t)
                if b is None:
                    break
                out.add((q, b) if q < b else (b, q))
                t = b
                cursor = yslot[b] if not flip_y else m - 1 - yslot[b]
            tree.insert(slot, q, colors[q])
    return out
