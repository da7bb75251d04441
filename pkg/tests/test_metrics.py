from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from softgrip import DomainError, target_b
from softgrip.metrics import (
    EnsembleCurves, Trajectory, cycles_to_fraction, ensemble_mean, moving_average,
    roughness_ra, roughness_ra_exact, upward_jumps,
)


def traj(ra, moved=None, scale=None):
    n = len(ra)
    return Trajectory(
        ra=np.asarray(ra, float),
        scale=np.asarray(scale if scale is not None else [-1] * n),
        position=np.full(n, -1), sign=np.zeros(n, int),
        moved=np.asarray(moved if moved is not None else [0] * n), total=np.zeros(n, int),
    )


def test_ra_examples():
    assert roughness_ra([5, 5, 5, 5]) == 0
    assert roughness_ra([1, 3]) == 1
    assert roughness_ra_exact([0, 0, 1]) == Fraction(4, 9)


def test_ra_of_target_b():
    assert roughness_ra(-target_b(10, 128).heights) / 128 == pytest.approx(2 / np.pi, abs=0.02)


def test_ra_empty():
    with pytest.raises(DomainError):
        roughness_ra([])


ints = st.lists(st.integers(-1000, 1000), min_size=1, max_size=64).map(np.array)


@settings(max_examples=200)
@given(ints, st.integers(-100, 100), st.integers(-5, 5))
def test_ra_invariants(h, c, k):
    exact = roughness_ra_exact(h)
    mean = Fraction(int(h.sum()), len(h))
    assert exact == sum(abs(int(v) - mean) for v in h) / len(h)
    assert roughness_ra_exact(h + c) == exact
    assert roughness_ra_exact(k * h) == abs(k) * exact
    assert (exact == 0) == (len(set(h.tolist())) == 1)
    assert roughness_ra(h) == pytest.approx(float(exact), abs=1e-9)


def test_moving_average_examples():
    assert list(moving_average([4, 4, 4, 4])) == [4, 4, 4, 4]
    assert list(moving_average([0, 10], window=2)) == [0, 5]
    assert list(moving_average([3, 1, 2], window=1)) == [3, 1, 2]
    with pytest.raises(DomainError):
        moving_average([1], window=0)


@settings(max_examples=100)
@given(st.lists(st.lists(st.integers(0, 128), min_size=20, max_size=20), min_size=1, max_size=5),
       st.integers(1, 12))
def test_ensemble_commutes_with_moving_average(rows, window):
    trajs = [traj([1.0] * 20, moved=r) for r in rows]
    lhs = moving_average(ensemble_mean(trajs).moved_mean, window)
    rhs = np.mean([moving_average(r, window) for r in rows], axis=0)
    assert np.allclose(lhs, rhs)


def test_ensemble_examples():
    one = traj([5.0, 4.0, 3.0], moved=[0, 4, 8])
    e = ensemble_mean([one])
    assert list(e.ra_mean) == [5, 4, 3] and list(e.moved_mean) == [0, 4, 8]
    assert list(ensemble_mean([traj([2.0]), traj([4.0])]).ra_mean) == [3]
    with pytest.raises(DomainError):
        ensemble_mean([])


def test_ensemble_pads_halted_runs():
    e = ensemble_mean([traj([4.0, 2.0], moved=[0, 8]), traj([4.0, 3.0, 1.0, 1.0], moved=[0, 2, 2, 2])])
    assert list(e.ra_mean) == [4, 2.5, 1.5, 1.5]
    assert list(e.moved_mean) == [0, 5, 1, 1]
    assert e.padded == 1


def test_cycles_to_fraction_and_jumps():
    assert cycles_to_fraction([10, 8, 6, 5, 4]) == 3
    assert cycles_to_fraction([10, 9]) is None
    s = [-1, 2, 3, 2, 4, 4, 5]
    assert upward_jumps(s) == 3  # 2->3, 2->4, 4->5; -1->2 is the initial row
    assert upward_jumps(s, after=4) == 1


def test_trajectory_csv_round_trip(tmp_path):
    t = traj([3.25, 1.0, 0.5], moved=[0, 4, 8], scale=[-1, 2, 3])
    path = tmp_path / "t.csv"
    t.to_csv(path)
    text = path.read_text()
    assert text.splitlines()[0] == "cycle,ra,scale_exp,position,sign,particles_moved"
    assert text.splitlines()[1] == "0,3.250000,-1,-1,0,0"
    back = Trajectory.from_csv(path)
    assert list(back.ra) == [3.25, 1.0, 0.5] and list(back.moved) == [0, 4, 8]
    back.to_csv(tmp_path / "u.csv")
    assert (tmp_path / "u.csv").read_bytes() == path.read_bytes()


def test_trajectory_csv_rejects_foreign(tmp_path):
    p = tmp_path / "x.csv"
    p.write_text("a,b\n1,2\n")
    with pytest.raises(ValueError):
        Trajectory.from_csv(p)


def test_ensemble_csv_round_trip(tmp_path):
    e = ensemble_mean([traj([4.0, 2.0, 1.0], moved=[0, 8, 4]), traj([2.0, 2.0, 2.0], moved=[0, 4, 4])])
    path = tmp_path / "e.csv"
    e.to_csv(path)
    assert path.read_text().splitlines()[0] == "cycle,ra_mean,ra_std,moved_mean"
    back = EnsembleCurves.from_csv(path)
    assert np.allclose(back.ra_mean, e.ra_mean) and np.allclose(back.ra_std, e.ra_std)
    back.to_csv(tmp_path / "f.csv")
    assert (tmp_path / "f.csv").read_bytes() == path.read_bytes()
