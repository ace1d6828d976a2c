"""Respectful-partition builders and entropy certificates.

Two constructive partitions witness the instance's difficulty: the pair of
safe-stopping kd-trees (one per color class, stopping at cells whose box is
safe for the whole instance) and the slab grid around the participating
points.  Their entropies upper-bound the structural entropy; the report also
checks the participation lower bound n*H >= h*log2(n), which holds because a
respectful partition must isolate every participating point in a singleton.

Inequities between entropies of partitions of the same instance reduce to
integer comparisons of prod(s^s), so the small-n certificates carry no float
tolerance at all.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    AXIS_X,
    AXIS_Y,
    Color,
    Comparator,
    ComparisonCounter,
    FastComparator,
    Instance,
    SafetyLabel,
    SymBox,
    is_finite,
)
from .crosstree import CrossTrees, KDNode, build_c_kdtree, test_box_safe
from .oracle import (
    TooLarge,
    check_respectful,
    entropy_from_sizes,
    oracle_box_safe,
    oracle_structural_entropy,
    partition_cost_exact,
)

_EXACT_CMP_CAP = 4096  # bigint certificate checks up to here, floats beyond
_ORACLE_TESTER_CAP = 4096


def raw_emptiness_index(inst: Instance, ids=None):
    """Uncounted numpy emptiness over a fixed id set, for certificate
    builders that are not part of the counted solving path."""
    ids = list(range(inst.n)) if ids is None else sorted(ids)
    xr = np.fromiter((inst.xrank[i] for i in ids), dtype=np.int64, count=len(ids))
    yr = np.fromiter((inst.yrank[i] for i in ids), dtype=np.int64, count=len(ids))
    cols = np.fromiter((inst.colors[i] for i in ids), dtype=np.int8, count=len(ids))
    order = np.argsort(xr)
    by_color = {}
    for c in (None, 0, 1):
        mask = slice(None) if c is None else (cols[order] == c)
        by_color[c] = (2 * xr[order][mask], 2 * yr[order][mask])

    def dbl(sc, axis):
        if not is_finite(sc):
            return (2 * inst.n + 2) if sc.side > 0 else -2
        rank = inst.xrank if axis == AXIS_X else inst.yrank
        return 2 * rank[sc.anchor] + sc.side

    def is_empty(box: SymBox, color=None) -> bool:
        xs, ys = by_color[color]
        lo = np.searchsorted(xs, dbl(box.x_lo, AXIS_X), side="left")
        hi = np.searchsorted(xs, dbl(box.x_hi, AXIS_X), side="right")
        if lo >= hi:
            return True
        yl = dbl(box.y_lo, AXIS_Y)
        yh = dbl(box.y_hi, AXIS_Y)
        seg = ys[lo:hi]
        return not bool(((seg >= yl) & (seg <= yh)).any())

    return is_empty


def oracle_safety_tester(inst: Instance):
    """Full-instance box safety by direct evaluation."""

    def safe(box: SymBox, witness: int) -> bool:
        return oracle_box_safe(inst, box).safe

    return safe


def tree_safety_tester(inst: Instance, trees: CrossTrees):
    """Full-instance box safety through the cross-safety trees, answering
    emptiness probes straight on the instance."""
    emptiness = raw_emptiness_index(inst)

    def safe(box: SymBox, witness: int) -> bool:
        label = test_box_safe(trees, emptiness, box, witness)
        return label in (SafetyLabel.RED_SAFE, SafetyLabel.BLUE_SAFE,
                         SafetyLabel.BOTH_SAFE)

    return safe


def default_safety_tester(inst: Instance, trees: CrossTrees | None = None):
    """Oracle-backed below the cap, tree-backed above (same semantics)."""
    if inst.n <= _ORACLE_TESTER_CAP or trees is None:
        return oracle_safety_tester(inst)
    return tree_safety_tester(inst, trees)


def build_safe_stop_tree(cmp: Comparator, ids, safe) -> KDNode | None:
    """Median-split kd-tree stopping at cells whose extended bounding box is
    safe for the full instance, or at singletons."""

    def stop(node: KDNode) -> bool:
        return safe(node.box, node.ids[0])

    return build_c_kdtree(cmp, ids, stop=stop, boxes="all")


def build_pikd_partition(inst: Instance, safety=None,
                         cmp: Comparator | None = None) -> list[list[int]]:
    """Blocks from the two per-color safe-stopping kd-trees."""
    if safety is None:
        safety = oracle_safety_tester(inst)
    if cmp is None:
        cmp = FastComparator(inst, ComparisonCounter())
    blocks: list[list[int]] = []
    for color in (Color.RED, Color.BLUE):
        ids = inst.ids_of_color(color)
        root = build_safe_stop_tree(cmp, ids, safety)
        if root is not None:
            blocks.extend(list(leaf.ids) for leaf in root.leaves())
    return blocks


def partition_entropy(blocks, n: int) -> float:
    """Entropy of a partition: sum (s/n) * log2(n/s); tolerance 1e-9 when
    compared as floats (exact integer route used for certificates)."""
    return entropy_from_sizes(n, [len(b) for b in blocks])


def build_slab_partition(inst: Instance, participating) -> list[list[int]]:
    """Slab grid around the participating points: each non-participating
    point goes to the grid box of the open slabs it falls in, participating
    points become singletons."""
    part = sorted(participating)
    if inst.n == 0:
        return []
    px = sorted(inst.xrank[i] for i in part)
    py = sorted(inst.yrank[i] for i in part)
    part_set = set(part)
    groups: dict[tuple[int, int], list[int]] = {}
    for i in range(inst.n):
        if i in part_set:
            continue
        gx = int(np.searchsorted(px, inst.xrank[i]))
        gy = int(np.searchsorted(py, inst.yrank[i]))
        groups.setdefault((gx, gy), []).append(i)
    blocks = list(groups.values())
    blocks.extend([i] for i in part)
    return blocks


def _lower_bound_exactly(n: int, h: int, sizes) -> bool:
    """n*H >= h*log2(n) as the integer inequality n^n >= n^h * prod(s^s)."""
    return n ** n >= n ** h * partition_cost_exact(n, sizes)


@dataclass
class EntropyReport:
    n: int
    h: int
    H_pikd: float
    H_slab: float
    H_exact: float | None
    nH1_pikd: float
    nH1_slab: float
    respectful_pikd: bool | None
    respectful_slab: bool | None
    cert_lower_bound_pikd: bool
    cert_lower_bound_slab: bool
    cert_exact_le_pikd: bool | None
    cert_exact_le_slab: bool | None
    cert_slab_nlogh: bool

    @property
    def all_ok(self) -> bool:
        checks = [self.cert_lower_bound_pikd, self.cert_lower_bound_slab,
                  self.cert_slab_nlogh]
        if self.respectful_pikd is not None:
            checks += [self.respectful_pikd, self.respectful_slab]
        if self.cert_exact_le_pikd is not None:
            checks += [self.cert_exact_le_pikd, self.cert_exact_le_slab]
        return all(checks)

    def to_dict(self) -> dict:
        return {
            "n": self.n, "h": self.h,
            "H_pikd": self.H_pikd, "H_slab": self.H_slab,
            "H_exact": self.H_exact,
            "nH1_pikd": self.nH1_pikd, "nH1_slab": self.nH1_slab,
            "respectful_pikd": self.respectful_pikd,
            "respectful_slab": self.respectful_slab,
            "cert_lower_bound_pikd": self.cert_lower_bound_pikd,
            "cert_lower_bound_slab": self.cert_lower_bound_slab,
            "cert_exact_le_pikd": self.cert_exact_le_pikd,
            "cert_exact_le_slab": self.cert_exact_le_slab,
            "cert_slab_nlogh": self.cert_slab_nlogh,
        }


def certify_bounds(inst: Instance, participating, pikd_blocks, slab_blocks,
                   exact_cap: int = 10, verify: bool = True) -> EntropyReport:
    """Evaluate the lower-bound certificates for the produced partitions.

    (a) every participating point is a singleton, hence n*H >= h*log2(n),
        checked exactly over the integers at small n;
    (b) at tiny n the exact structural entropy is below both constructive
        entropies (exact integer comparison of the cost products);
    (c) the slab partition obeys n*(H+1) <= 10 * n * log2(max(h, 2)).
    """
    n = inst.n
    part = set(participating)
    h = len(part)
    pikd_sizes = [len(b) for b in pikd_blocks]
    slab_sizes = [len(b) for b in slab_blocks]
    H_pikd = entropy_from_sizes(n, pikd_sizes)
    H_slab = entropy_from_sizes(n, slab_sizes)

    def lower_bound_ok(blocks, sizes) -> bool:
        singleton_ids = {b[0] if isinstance(b, list) else next(iter(b))
                         for b in blocks if len(b) == 1}
        if not part <= singleton_ids:
            return False
        if n == 0:
            return True
        if n <= _EXACT_CMP_CAP:
            return _lower_bound_exactly(n, h, sizes)
        return n * entropy_from_sizes(n, sizes) >= h * math.log2(n) - 1e-9

    H_exact = None
    exact_cost = None
    if n <= exact_cap:
        H_exact, witness = oracle_structural_entropy(inst, cap=exact_cap)
        exact_cost = partition_cost_exact(n, [len(b) for b in witness])

    respectful_pikd = respectful_slab = None
    if verify:
        respectful_pikd = check_respectful(inst, pikd_blocks)
        respectful_slab = check_respectful(inst, slab_blocks)

    cert_exact_le_pikd = cert_exact_le_slab = None
    if exact_cost is not None:
        # H_exact <= H(blocks)  <=>  exact cost product >= blocks' product
        cert_exact_le_pikd = exact_cost >= partition_cost_exact(n, pikd_sizes)
        cert_exact_le_slab = exact_cost >= partition_cost_exact(n, slab_sizes)

    cert_slab = n * (H_slab + 1) <= 10 * n * math.log2(max(h, 2)) + 1e-9

    return EntropyReport(
        n=n, h=h, H_pikd=H_pikd, H_slab=H_slab, H_exact=H_exact,
        nH1_pikd=n * (H_pikd + 1), nH1_slab=n * (H_slab + 1),
        respectful_pikd=respectful_pikd, respectful_slab=respectful_slab,
        cert_lower_bound_pikd=lower_bound_ok(pikd_blocks, pikd_sizes),
        cert_lower_bound_slab=lower_bound_ok(slab_blocks, slab_sizes),
        cert_exact_le_pikd=cert_exact_le_pikd,
        cert_exact_le_slab=cert_exact_le_slab,
        cert_slab_nlogh=cert_slab,
    )


def entropy_report(inst: Instance, participating, trees: CrossTrees | None = None,
                   exact_cap: int = 10, verify: bool = True) -> EntropyReport:
    """Build both constructive partitions and certify them."""
    tester = default_safety_tester(inst, trees)
    pikd = build_pikd_partition(inst, safety=tester)
    slab = build_slab_partition(inst, participating)
    return certify_bounds(inst, participating, pikd, slab,
                          exact_cap=exact_cap, verify=verify)
