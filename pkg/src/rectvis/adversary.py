"""Comparison adversary: answers order queries while deferring point
identities.

Indices of each color start at the root of that color's safe-stopping
kd-tree and sink toward leaves only when an answer forces it.  The invariant
maintained throughout is that the number of indices mapped into any subtree
never exceeds the points available there and no point carries two indices,
so a consistent assignment always exists; the final descent emits a concrete
permutation that reproduces every answer given.

Increment bookkeeping follows the accounting that turns the final mapping
depth into a lower bound: ordinary increments resolve a query by separating
two subtrees across their split lines, exceptional ones dodge a full child,
parity increments sink an index one level so its node splits on the queried
axis.  The post-finalize descent may add at most 4(n-1) further levels when
the driving algorithm was correct and complete.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import (
    AXIS_X,
    AXIS_Y,
    Color,
    Comparator,
    ComparisonCounter,
    FastComparator,
    Instance,
    SymBox,
    SymCoord,
)
from .crosstree import KDNode
from .entropy import build_safe_stop_tree, oracle_safety_tester


class InconsistentState(RuntimeError):
    """The invariant on index-to-point capacities was violated."""


@dataclass
class AdvCounters:
    ordinary: int = 0
    exceptional: int = 0
    step2: int = 0
    post: int = 0
    queries: int = 0
    D: int = 0
    D_post: int = 0

    def to_dict(self) -> dict:
        return {
            "ordinary": self.ordinary, "exceptional": self.exceptional,
            "step2": self.step2, "post": self.post, "queries": self.queries,
            "D": self.D, "D_post": self.D_post,
        }


class AdvNode:
    """Box of a safe-stopping tree with capacity bookkeeping."""

    __slots__ = ("cell", "box", "axis", "line", "lo", "hi", "depth",
                 "cap", "n_mapped", "parent", "free", "free_ptr")

    def __init__(self, kd: KDNode, parent=None):
        self.cell = kd.ids
        self.box = kd.box
        self.axis = kd.axis
        self.line = kd.line
        self.depth = kd.depth
        self.cap = len(kd.ids)
        self.n_mapped = 0
        self.parent = parent
        if kd.is_leaf:
            self.lo = self.hi = None
            self.free = sorted(kd.ids)
            self.free_ptr = 0
        else:
            self.lo = AdvNode(kd.lo, self)
            self.hi = AdvNode(kd.hi, self)
            self.free = None
            self.free_ptr = 0

    @property
    def is_leaf(self) -> bool:
        return self.lo is None

    @property
    def full(self) -> bool:
        return self.n_mapped >= self.cap

    def nodes(self):
        stack = [self]
        while stack:
            nd = stack.pop()
            yield nd
            if not nd.is_leaf:
                stack.append(nd.hi)
                stack.append(nd.lo)


class AdversaryState:
    """Mapping from input indices to tree boxes or concrete points."""

    def __init__(self, inst: Instance, safety=None):
        self.inst = inst
        self.counters = AdvCounters()
        if safety is None:
            safety = oracle_safety_tester(inst)
        # private knowledge of S; these comparisons are adversary-internal
        priv = FastComparator(inst, ComparisonCounter())
        self.trees: dict[int, AdvNode | None] = {}
        for color in (Color.RED, Color.BLUE):
            ids = inst.ids_of_color(color)
            root = build_safe_stop_tree(priv, ids, safety)
            self.trees[int(color)] = AdvNode(root) if root is not None else None
        self.idx_node: list[AdvNode | None] = [None] * inst.n
        self.idx_point: list[int | None] = [None] * inst.n
        for i in range(inst.n):
            root = self.trees[inst.colors[i]]
            root.n_mapped += 1
            self.idx_node[i] = root
            if root.is_leaf:
                self._fix(i, root, charge_depth=False)

    # -- internals ----------------------------------------------------------

    def _fix(self, idx: int, leaf: AdvNode, charge_depth: bool) -> None:
        if leaf.free_ptr >= len(leaf.free):
            raise InconsistentState(f"leaf out of free points for index {idx}")
        self.idx_point[idx] = leaf.free[leaf.free_ptr]
        leaf.free_ptr += 1

    def _push(self, idx: int, child: AdvNode, kind: str) -> None:
        if child.full:
            raise InconsistentState("push into a full box")
        child.n_mapped += 1
        self.idx_node[idx] = child
        c = self.counters
        if kind == "ordinary":
            c.ordinary += 1
        elif kind == "exceptional":
            c.exceptional += 1
        elif kind == "step2":
            c.step2 += 1
        else:
            c.post += 1
        if kind != "post":
            c.D += 1
        if child.is_leaf:
            self._fix(idx, child, charge_depth=False)

    def _nonfull_child(self, nd: AdvNode) -> AdvNode:
        if not nd.lo.full:
            return nd.lo
        if not nd.hi.full:
            return nd.hi
        raise InconsistentState("both children full")

    def _raw_less(self, axis: int, p: int, q: int) -> bool:
        rank = self.inst.xrank if axis == AXIS_X else self.inst.yrank
        return rank[p] < rank[q]

    def _line_rank(self, axis: int, line: SymCoord) -> int:
        rank = self.inst.xrank if axis == AXIS_X else self.inst.yrank
        return 2 * rank[line.anchor] + line.side

    # -- the four answering steps -------------------------------------------

    def answer(self, axis: int, i: int, j: int) -> bool:
        """Answer `coordinate(i) < coordinate(j)` consistently."""
        if i == j:
            raise ValueError("comparison of an index with itself")
        self.counters.queries += 1
        guard = 0
        limit = 4 * (self.inst.n + 2) * (self.inst.n.bit_length() + 2)
        while True:
            guard += 1
            if guard > limit:
                raise InconsistentState("answering did not converge")
            pi, pj = self.idx_point[i], self.idx_point[j]
            if pi is not None and pj is not None:
                return self._raw_less(axis, pi, pj)
            # step 2: sink floating indices to nodes split on the query axis
            moved = False
            for idx in (i, j):
                if self.idx_point[idx] is None and self.idx_node[idx].axis != axis:
                    self._push(idx, self._nonfull_child(self.idx_node[idx]), "step2")
                    moved = True
            if moved:
                continue
            pi, pj = self.idx_point[i], self.idx_point[j]
            if pi is not None and pj is not None:
                continue
            if pi is None and pj is None:
                a, b = i, j
                na, nb = self.idx_node[a], self.idx_node[b]
                if na is not nb:
                    la = self._line_rank(axis, na.line)
                    lb = self._line_rank(axis, nb.line)
                    if lb < la:
                        a, b, na, nb = b, a, nb, na
                # step 3: separate across the ordered split lines
                if not na.lo.full and not nb.hi.full:
                    self._push(a, na.lo, "ordinary")
                    self._push(b, nb.hi, "ordinary")
                    return a == i
                # step 4: dodge the full child, then retry
                if na.lo.full:
                    self._push(a, na.hi, "exceptional")
                else:
                    self._push(b, nb.lo, "exceptional")
                continue
            # mixed: only the floating index ever moves
            f = i if pi is None else j
            fixed_pt = pj if pi is None else pi
            nd = self.idx_node[f]
            frank = 2 * (self.inst.xrank if axis == AXIS_X else self.inst.yrank)[fixed_pt]
            if frank < self._line_rank(axis, nd.line):
                # fixed point left of the line: float must land right
                if not nd.hi.full:
                    self._push(f, nd.hi, "ordinary")
                    return f == j
                self._push(f, nd.lo, "exceptional")
            else:
                if not nd.lo.full:
                    self._push(f, nd.lo, "ordinary")
                    return f == i
                self._push(f, nd.hi, "exceptional")
            continue

    # -- debug ---------------------------------------------------------------

    def check_invariant(self) -> None:
        """Recompute subtree loads and point assignments from scratch."""
        loads: dict[int, int] = {}
        for idx in range(self.inst.n):
            nd = self.idx_node[idx]
            while nd is not None:
                loads[id(nd)] = loads.get(id(nd), 0) + 1
                nd = nd.parent
        for root in self.trees.values():
            if root is None:
                continue
            for nd in root.nodes():
                got = loads.get(id(nd), 0)
                if got != nd.n_mapped:
                    raise InconsistentState("subtree load drifted")
                if nd.n_mapped > nd.cap:
                    raise InconsistentState("capacity exceeded")
        assigned = [p for p in self.idx_point if p is not None]
        if len(assigned) != len(set(assigned)):
            raise InconsistentState("a point carries two indices")
        for idx, p in enumerate(self.idx_point):
            if p is not None and self.inst.colors[p] != self.inst.colors[idx]:
                raise InconsistentState("color-violating assignment")


def adversary_new(inst: Instance, safety=None) -> AdversaryState:
    return AdversaryState(inst, safety=safety)


def adversary_compare(state: AdversaryState, axis: int, i: int, j: int) -> bool:
    return state.answer(axis, i, j)


def adversary_finalize(state: AdversaryState, check_chips: bool = True
                       ) -> tuple[list[int], AdvCounters]:
    """Sink every floating index (lower non-full child first), emit the
    consistent permutation and the increment accounting."""
    c = state.counters
    descents = 0
    for idx in range(state.inst.n):
        while state.idx_point[idx] is None:
            state._push(idx, state._nonfull_child(state.idx_node[idx]), "post")
            descents += 1
    c.D_post = c.D + descents
    sigma = [p for p in state.idx_point]
    if sorted(sigma) != list(range(state.inst.n)):
        raise InconsistentState("final mapping is not a permutation")
    n = state.inst.n
    if check_chips and n >= 1 and not (c.D_post - c.D <= 4 * (n - 1)):
        raise InconsistentState(
            f"post-descent exceeded the path bound: {c.D_post - c.D} > {4 * (n - 1)}")
    return sigma, c


class AdversaryComparator(Comparator):
    """Comparison-oracle face of the adversary; drop-in for any solver."""

    def __init__(self, state: AdversaryState, counter: ComparisonCounter | None = None):
        self.state = state
        self.counter = counter if counter is not None else ComparisonCounter()
        self.n = state.inst.n
        self.colors = state.inst.colors  # index colors are public

    def less(self, axis: int, i: int, j: int) -> bool:
        out = self.state.answer(axis, i, j)
        c = self.counter
        c.count += 1
        if c.transcript is not None:
            c.transcript.append((axis, i, j, out))
        return out
