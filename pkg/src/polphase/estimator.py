"""scikit-learn style front end for the phase densities.

``PhaseDensityTransformer`` maps a column of phases to the four density
components, so it slots into pipelines and ``FunctionTransformer``-style
feature stacks::

    >>> t = PhaseDensityTransformer(state="coherent", alpha=1.0).fit()
    >>> t.transform([[0.0], [1.0]]).shape
    (2, 4)
"""

from __future__ import annotations

import math

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .distribution import (
    DistributionComponents,
    ExponentConvention,
    StateSpec,
    matched_terms,
    pdf_oracle,
)
from .space import make_window
from .states import Normalization


def check_phases(X) -> np.ndarray:
    """Validate phases: 1-D or single-column, finite, within [-pi, pi]."""
    arr = check_array(X, ensure_2d=False, dtype=float)
    if arr.ndim == 2:
        if arr.shape[1] != 1:
            raise ValueError(f"expected a single column of phases, got {arr.shape[1]} columns")
        arr = arr[:, 0]
    if np.any(np.abs(arr) > math.pi + 1e-12):
        raise ValueError("phases must lie in [-pi, pi]")
    return arr


class PhaseDensityTransformer(TransformerMixin, BaseEstimator):
    """Phase probability density of a coherent, squeezed or thermal state.

    Parameters
    ----------
    state : {"coherent", "squeezed", "thermal"}
    alpha, r, theta, nbar : state parameters
    n_min, n_max : truncation window of the oracle path
    method : {"oracle", "series"}
    convention : {"derived", "literal"}
        Interference exponent of the series path.
    normalize : {"raw", "unit"}
    n_terms : int or None
        Series length; ``None`` matches the window (oracle-equivalent).
    """

    def __init__(
        self,
        state="coherent",
        alpha=1.0,
        r=0.0,
        theta=0.0,
        nbar=1.0,
        n_min=-32,
        n_max=31,
        method="oracle",
        convention="derived",
        normalize="raw",
        n_terms=None,
    ):
        self.state = state
        self.alpha = alpha
        self.r = r
        self.theta = theta
        self.nbar = nbar
        self.n_min = n_min
        self.n_max = n_max
        self.method = method
        self.convention = convention
        self.normalize = normalize
        self.n_terms = n_terms

    def fit(self, X=None, y=None):
        if self.method not in ("oracle", "series"):
            raise ValueError(f"unknown method {self.method!r}")
        self.window_ = make_window(self.n_min, self.n_max)
        self.spec_ = StateSpec(self.state, complex(self.alpha), self.r, self.theta, self.nbar)
        self.convention_ = ExponentConvention(self.convention)
        self.normalization_ = Normalization(self.normalize)
        if self.method == "oracle":
            self.state_ = self.spec_.state(self.window_, self.normalization_)
        else:
            terms = self.n_terms
            if terms is None:
                terms = matched_terms(self.window_)
            self.terms_ = terms
            self.scale_ = 1.0
            if self.normalization_ is Normalization.UNIT:
                self.scale_ = 1.0 / self.spec_.series_norm2(terms)
        self.n_features_in_ = 1
        return self

    def _point(self, phi: float) -> DistributionComponents:
        if self.method == "oracle":
            return pdf_oracle(self.state_, phi)
        comps = self.spec_.series(phi, self.convention_, self.terms_)
        return DistributionComponents(*(c * self.scale_ for c in comps))

    def transform(self, X) -> np.ndarray:
        """Rows ``(pR, pL, pI, total)`` for each phase in ``X``."""
        check_is_fitted(self, "window_")
        phis = check_phases(X)
        return np.array([self._point(x) for x in phis], dtype=float).reshape(len(phis), 4)

    def get_feature_names_out(self, input_features=None):
        return np.array(DistributionComponents._fields, dtype=object)
