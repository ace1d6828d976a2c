"""Bichromatic empty-rectangle visibility: report the points that see an
opposite-color point across an empty axis-aligned rectangle, and the pairs.

Four interchangeable solvers (brute-force oracle, worst-case sweep, the
instance-adaptive pruning algorithm, and an adversary-driven lower-bound
simulator) share one counted comparison layer, so their comparison counts
are directly comparable.
"""

from .core import (
    AXIS_X,
    AXIS_Y,
    Color,
    ColoredPoint,
    ComparisonCounter,
    DegenerateInput,
    FastComparator,
    Instance,
    Orientation,
    SafetyLabel,
    SymBox,
    SymCoord,
    load_points,
    save_points,
    validate_instance,
)
from .baseline import report_bichromatic_pairs, report_participating_sweep
from .oracle import oracle_participating, oracle_visible_pairs
from .optimal import prepare, report_pairs_instance_optimal, run_instance_optimal

__version__ = "0.1.0"

__all__ = [
    "AXIS_X", "AXIS_Y", "Color", "ColoredPoint", "ComparisonCounter",
    "DegenerateInput", "FastComparator", "Instance", "Orientation",
    "SafetyLabel", "SymBox", "SymCoord", "load_points", "save_points",
    "validate_instance", "report_bichromatic_pairs",
    "report_participating_sweep", "oracle_participating",
    "oracle_visible_pairs", "prepare", "report_pairs_instance_optimal",
    "run_instance_optimal", "VisibilityCondenser",
]


def __getattr__(name):
    # sklearn import deferred so the CLI starts fast
    if name == "VisibilityCondenser":
        from .condenser import VisibilityCondenser
        return VisibilityCondenser
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")
