import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from softgrip import ConfigError, ShapeError, target_a, target_b
from softgrip.estimator import GripperAdapter


def data():
    return np.vstack([target_a(6, 10).heights, target_b(6, 10).heights])


def test_params_and_clone():
    est = GripperAdapter(s_min=1, s_max=4, cycles=50)
    assert est.get_params()["s_max"] == 4
    assert clone(est).get_params() == est.get_params()
    est.set_params(cycles=10)
    assert est.cycles == 10


def test_fit_transform_conserves_and_improves():
    X = data()
    est = GripperAdapter(s_min=1, s_max=4, cycles=300, random_state=3)
    out = est.fit_transform(X)
    assert out.shape == X.shape and est.n_features_in_ == 64 and est.n_exp_ == 6
    # particles are conserved: the gripper surface keeps its total (zero)
    assert np.all(out.sum(axis=1) == 0)
    ra = est.roughness(X)
    assert np.all(ra < [np.mean(np.abs(r - r.mean())) for r in X])
    assert 0 < est.score(X) <= 1
    assert np.array_equal(est.transform(X), out)


def test_not_fitted_and_shape_errors():
    with pytest.raises(NotFittedError):
        GripperAdapter().transform(data())
    with pytest.raises(ShapeError):
        GripperAdapter(s_min=1, s_max=2).fit(np.zeros((2, 12)))
    est = GripperAdapter(s_min=1, s_max=4).fit(data())
    with pytest.raises(ShapeError):
        est.transform(np.zeros((1, 32)))
    with pytest.raises(ConfigError):
        GripperAdapter(s_min=1, s_max=6).fit(data())
    with pytest.raises(ShapeError):
        GripperAdapter(s_min=1, s_max=4).fit(data() + 0.5)
