"""scikit-learn style wrapper: targets in, adapted gripper surfaces out."""
import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from ._validation import check_heights, check_scale_range
from .config import SimConfig
from .dynamics import make_rng, simulate
from .exceptions import ShapeError


class GripperAdapter(BaseEstimator, TransformerMixin):
    """Adapt a flat gripper to each row of ``X``.

    Each row of ``X`` is a target profile of integer heights. ``transform``
    returns the gripper surface reached after ``cycles`` cycles (or when
    the dynamics halt), so a perfect fit reproduces the row itself up to a
    constant offset.

    Parameters
    ----------
    s_min, s_max : int
        Scale range of the fitting measure.
    cycles : int
    edge_argmax : bool
    random_state : int
        Row ``i`` uses sub-stream ``i`` of this seed.

    Attributes
    ----------
    n_features_in_ : int
    n_exp_ : int
        ``log2(n_features_in_)``.
    """

    def __init__(self, s_min=2, s_max=7, cycles=1500, edge_argmax=True, random_state=0):
        self.s_min = s_min
        self.s_max = s_max
        self.cycles = cycles
        self.edge_argmax = edge_argmax
        self.random_state = random_state

    def _config(self):
        return SimConfig(
            n_exp=self.n_exp_, s_min=self.s_min, s_max=self.s_max, cycles=self.cycles,
            seed=self.random_state, edge_argmax=self.edge_argmax,
        ).validate()

    def fit(self, X, y=None):
        X = check_array(X, dtype=None)
        check_heights(X[0], "X[0]")
        self.n_features_in_ = X.shape[1]
        self.n_exp_ = self.n_features_in_.bit_length() - 1
        check_scale_range(self.s_min, self.s_max, self.n_exp_)
        return self

    def _runs(self, X):
        check_is_fitted(self)
        X = check_array(X, dtype=None)
        if X.shape[1] != self.n_features_in_:
            raise ShapeError(f"X has {X.shape[1]} columns, fitted with {self.n_features_in_}")
        cfg = self._config()
        for i, row in enumerate(X):
            target = check_heights(row, f"X[{i}]")
            yield target, simulate(target, cfg, make_rng(self.random_state, i), seed=self.random_state)

    def transform(self, X):
        return np.vstack([traj.final_h + target for target, traj in self._runs(X)])

    def roughness(self, X):
        """Final Ra of each row's run."""
        return np.array([traj.ra[-1] for _, traj in self._runs(X)])

    def score(self, X, y=None):
        """Mean relative Ra reduction, ``1 - Ra(end) / Ra(0)``; higher is better."""
        return float(np.mean([
            1 - traj.ra[-1] / traj.ra[0] if traj.ra[0] else 1.0 for _, traj in self._runs(X)
        ]))
