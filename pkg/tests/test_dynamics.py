from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from softgrip import ConfigError, HaltedError, SimConfig, target_a
from softgrip.dynamics import GripperState, apply_move, init_state, make_rng, run, simulate, step
from softgrip.multiscale import MoveSite, maximizers

SMALL = SimConfig(n_exp=6, amplitude=6, s_min=1, s_max=4, cycles=300, runs=1)


def test_init_state():
    prof = target_a(10, 128)
    st0 = init_state(prof)
    assert np.array_equal(st0.h, -prof.heights)
    assert st0.total == -prof.heights.sum() and st0.cycle == 0
    assert np.mean(np.abs(st0.h - st0.h.mean())) / 128 == pytest.approx(2 / np.pi, abs=0.02)


def test_zero_target_halts_immediately():
    cfg = SMALL.replace(target=tuple([0] * 64))
    st0 = init_state(np.zeros(64, int))
    state, rec = step(st0, cfg, make_rng(0))
    assert rec is None and state is st0
    state2, rec2 = step(state, cfg, make_rng(1))
    assert rec2 is None and np.array_equal(state2.h, st0.h)
    t = run(cfg)
    assert t.halted and t.cycles == 0


def test_interior_outflow_hand_trace():
    h = np.zeros(16, dtype=np.int64)
    h[4:8] = 5
    state = GripperState(h, int(h.sum()))
    new, rec = apply_move(state, MoveSite(2, 1, 1, Fraction(5)), make_rng(3))
    assert list(new.h[4:8]) == [4, 4, 4, 4]
    left, right = new.h[0:4], new.h[8:12]
    assert sorted(left) == [0, 0, 1, 1] and sorted(right) == [0, 0, 1, 1]
    assert list(new.h[12:]) == [0] * 4
    assert new.h.sum() == h.sum() and new.cycle == 1
    assert rec.particles_moved == 4 and rec.sign == 1
    assert list(state.h[4:8]) == [5] * 4  # input untouched


def test_interior_inflow_mirror():
    h = np.zeros(16, dtype=np.int64)
    new, _ = apply_move(GripperState(h, 0), MoveSite(2, 2, -1, Fraction(1)), make_rng(0))
    assert list(new.h[8:12]) == [1] * 4
    assert sorted(new.h[4:8]) == [-1, -1, 0, 0] and sorted(new.h[12:16]) == [-1, -1, 0, 0]


def test_edge_outflow_hand_trace():
    h = np.zeros(16, dtype=np.int64)
    h[0:4] = 5
    new, _ = apply_move(GripperState(h, 20), MoveSite(2, 0, 1, Fraction(5)), make_rng(0))
    assert list(new.h[:8]) == [4] * 4 + [1] * 4
    assert list(new.h[8:]) == [0] * 8
    new, _ = apply_move(GripperState(h, 20), MoveSite(2, 3, -1, Fraction(5)), make_rng(0))
    assert list(new.h[12:]) == [1] * 4 and list(new.h[8:12]) == [-1] * 4


def test_apply_move_on_halted_site():
    with pytest.raises(HaltedError):
        apply_move(GripperState(np.zeros(8, np.int64), 0), MoveSite(1, 0, 0, Fraction(0)), make_rng(0))


@settings(max_examples=40, deadline=None)
@given(
    st.lists(st.integers(-5, 5), min_size=32, max_size=32),
    st.integers(1, 3), st.integers(0, 2), st.integers(0, 2**32), st.booleans(),
)
def test_conservation_and_move_size(target, s_min, extra, seed, edges):
    s_max = min(4, s_min + extra)
    cfg = SimConfig(n_exp=5, s_min=s_min, s_max=s_max, cycles=200, target=tuple(target), edge_argmax=edges)
    t = run(cfg, seed=seed)
    assert np.all(t.total == t.total[0])
    assert t.final_h.sum() == t.total[0]
    assert np.array_equal(t.moved[1:], 2 ** t.scale[1:])
    if t.halted:
        assert maximizers(t.final_h, s_min, s_max, edges)[0].max_value == 0


def test_stepwise_agrees_with_fast_loop():
    cfg = SMALL.replace(target="B", cycles=60)
    fast = run(cfg, seed=5)
    rng = make_rng(5)
    state = init_state(cfg.target_profile())
    for t in range(1, 61):
        state, rec = step(state, cfg, rng)
        assert (rec.scale_exp, rec.position, rec.sign) == (fast.scale[t], fast.position[t], fast.sign[t])
    assert np.array_equal(state.h, fast.final_h)


def test_seed_reproducibility(tmp_path):
    cfg = SMALL.replace(target="A")
    run(cfg, seed=11).to_csv(tmp_path / "a.csv")
    run(cfg, seed=11).to_csv(tmp_path / "b.csv")
    run(cfg, seed=12).to_csv(tmp_path / "c.csv")
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()
    assert (tmp_path / "a.csv").read_bytes() != (tmp_path / "c.csv").read_bytes()


def test_zero_cycles():
    t = run(SMALL.replace(cycles=0))
    assert len(t) == 1 and t.scale[0] == -1 and t.moved[0] == 0


def test_default_target_a_decreases_ra():
    t = run(SimConfig(runs=1))
    assert t.ra[-1] < t.ra[0]


def test_full_size_conservation_on_b():
    t = run(SimConfig(target="B"), seed=3)
    assert len(t) == 1501 and np.all(t.total == t.total[0])


def test_invalid_config_names_field():
    with pytest.raises(ConfigError) as err:
        run(SimConfig(s_min=5, s_max=3))
    assert err.value.field == "s_min"


def test_run_index_substreams_differ():
    a = simulate(target_a(6, 6), SMALL, make_rng(0, 0))
    b = simulate(target_a(6, 6), SMALL, make_rng(0, 1))
    assert not np.array_equal(a.ra, b.ra)
