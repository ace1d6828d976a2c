"""scikit-learn facade: training-set condensation for L1 nearest-neighbour
classification in the plane.

Dropping every point that spans no empty axis-aligned rectangle with a point
of the other class leaves the smallest subset that preserves the 1-NN
decision under the L1 metric, for any monotone per-axis rescaling.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted, check_X_y, check_array

from .baseline import report_bichromatic_pairs, report_participating_sweep
from .core import ComparisonCounter, FastComparator, validate_instance
from .optimal import prepare, run_instance_optimal


class VisibilityCondenser(BaseEstimator):
    """Select the training samples that matter to a planar L1 1-NN classifier.

    Parameters
    ----------
    solver : {"sweep", "optimal", "oracle"}
        Backend used to report participating points.
    tie_break : bool
        Break duplicate coordinates by sample index instead of raising.

    Attributes
    ----------
    support_mask_ : ndarray of shape (n_samples,)
        True for samples participating in an empty bichromatic rectangle.
    classes_ : ndarray of shape (n_classes,)
    n_participating_ : int
    """

    def __init__(self, solver: str = "sweep", tie_break: bool = True):
        self.solver = solver
        self.tie_break = tie_break

    def fit(self, X, y):
        X, y = check_X_y(X, y)
        if X.shape[1] != 2:
            raise ValueError(f"expected 2 features, got {X.shape[1]}")
        self.classes_, y_idx = np.unique(y, return_inverse=True)
        if len(self.classes_) > 2:
            raise ValueError("at most two classes are supported")
        n = X.shape[0]
        mask = np.zeros(n, dtype=bool)
        if len(self.classes_) == 2 and n >= 2:
            pts = [(float(X[i, 0]), float(X[i, 1]), int(y_idx[i])) for i in range(n)]
            inst = validate_instance(pts, tie_break=self.tie_break)
            cmp = FastComparator(inst, ComparisonCounter())
            if self.solver == "sweep":
                part = report_participating_sweep(cmp)
            elif self.solver == "optimal":
                trees, runs = prepare(cmp)
                part, _ = run_instance_optimal(cmp, trees, runs)
            elif self.solver == "oracle":
                from .oracle import oracle_participating
                part = oracle_participating(inst)
            else:
                raise ValueError(f"unknown solver {self.solver!r}")
            mask[sorted(part)] = True
        self.support_mask_ = mask
        self.n_participating_ = int(mask.sum())
        self._X = np.asarray(X, dtype=float)
        self._y = np.asarray(y)
        return self

    def get_support(self, indices: bool = False):
        check_is_fitted(self, "support_mask_")
        return np.flatnonzero(self.support_mask_) if indices else self.support_mask_

    def fit_resample(self, X, y):
        """Fit and return the condensed training set (X, y)."""
        self.fit(X, y)
        X = np.asarray(X)
        y = np.asarray(y)
        if self.n_participating_ == 0:
            return X, y  # monochromatic data condenses to itself
        return X[self.support_mask_], y[self.support_mask_]

    def predict(self, X):
        """1-NN under L1 against the condensed set (full set when nothing
        participates); matches the uncondensed classifier's decisions."""
        check_is_fitted(self, "support_mask_")
        X = check_array(X)
        if self.n_participating_:
            ref = self._X[self.support_mask_]
            lab = self._y[self.support_mask_]
        else:
            ref = self._X
            lab = self._y
        dists = np.abs(X[:, None, :] - ref[None, :, :]).sum(axis=2)
        return lab[np.argmin(dists, axis=1)]
