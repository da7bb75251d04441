import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import oracle_block_space
from softgrip import CapacityError, ConfigError, SimConfig
from softgrip.fincat import check_category, load_category, preorder_category, terminal_category
from softgrip.mobility import (
    ProjectionFunctor, block_successors, build_mobility, classify_rigidity, export_mobility,
    find_critical_states, gripper_projection, is_effective, preorders_isomorphic,
    static_target_category, successors, target_projection, thin_category, verify_control,
)

TOY8 = SimConfig(n_exp=3, s_min=1, s_max=2, cycles=2000, target=(2, 2, 1, -3, 0, 0, 3, 3))


def toy4(target):
    return SimConfig(n_exp=2, s_min=1, s_max=1, cycles=50, target=tuple(target))


def test_zero_target_single_critical_state():
    mob = build_mobility(toy4([0, 0, 0, 0]))
    assert len(mob) == 1
    P = target_projection(mob, static_target_category([0] * 4))
    crit = find_critical_states(mob, P)
    assert crit == {0}
    eff = is_effective(mob, crit)
    assert eff.effective and eff.has_critical


@pytest.mark.parametrize("resolution", ["block", "column"])
def test_two_block_hand_enumeration(resolution):
    mob = build_mobility(toy4([1, 1, -1, -1]), resolution=resolution)
    flat = (0, 0) if resolution == "block" else (0, 0, 0, 0)
    start = (-2, 2) if resolution == "block" else (-1, -1, 1, 1)
    assert set(mob.states) == {start, flat}
    assert sorted(mob.arrows) == [(0, 0), (0, 1), (1, 1)]
    assert mob.absorbing() == {mob.index(flat)}


def test_oscillating_toy_has_no_critical_state():
    mob = build_mobility(toy4([-1, 0, 0, 0]))
    assert len(mob) == 2 and mob.absorbing() == set()
    crit = find_critical_states(mob, target_projection(mob, static_target_category([-1, 0, 0, 0])))
    assert crit == set()
    eff = is_effective(mob, crit)
    assert not eff.effective and not eff.has_critical
    assert classify_rigidity(mob, terminal_category()) == "soft-not-hard"


def test_horizon_monotone_and_boundary():
    sizes = []
    prev = set()
    for k in range(0, 8):
        mob = build_mobility(TOY8, horizon=k)
        states = set(mob.states)
        assert prev <= states
        prev = states
        sizes.append(len(mob))
        crit = find_critical_states(mob, target_projection(mob, static_target_category(TOY8.target)))
        assert crit <= mob.expanded
    assert sizes[0] == 1 and sizes == sorted(sizes)
    with pytest.raises(ConfigError):
        build_mobility(TOY8, horizon=-1)


def test_toy8_matches_independent_enumeration():
    mob = build_mobility(TOY8)
    states, absorbing = oracle_block_space(TOY8)
    assert set(mob.states) == states
    assert {mob.states[i] for i in mob.absorbing()} == absorbing
    crit = find_critical_states(mob, target_projection(mob, static_target_category(TOY8.target)))
    assert {mob.states[i] for i in crit} == absorbing
    assert check_category(mob.to_fincat()) == []


@pytest.mark.parametrize("target", [
    (-3, -1, -1, -1, 2, 0, -2, -2), (1, 2, 0, 0, 0, -3, 0, 0), (1, -1, 2, 0, -2, 0, 1, -1),
])
@pytest.mark.parametrize("edges", [True, False])
def test_more_toys_match_oracle(target, edges):
    cfg = TOY8.replace(target=target, edge_argmax=edges)
    mob = build_mobility(cfg)
    states, absorbing = oracle_block_space(cfg)
    assert set(mob.states) == states
    assert {mob.states[i] for i in mob.absorbing()} == absorbing


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=8, max_size=8), st.booleans())
def test_block_successors_are_image_of_column_successors(h, edges):
    h = np.array(h)
    cols = successors(h, 1, 2, edges)
    image = {tuple(int(v) for v in np.array(c).reshape(-1, 2).sum(axis=1)) for c in cols}
    sums = tuple(int(v) for v in h.reshape(-1, 2).sum(axis=1))
    assert block_successors(sums, 1, 2, edges) == image


def test_capacity_guards():
    with pytest.raises(CapacityError):
        build_mobility(SimConfig(n_exp=5, s_min=1, s_max=2, target=tuple([0] * 32)))
    with pytest.raises(CapacityError):
        build_mobility(toy4([5, 0, 0, -5]))
    with pytest.raises(CapacityError) as err:
        build_mobility(TOY8, max_states=5)
    assert err.value.size >= 1


def test_effectiveness_verdict_vs_monte_carlo():
    from softgrip.harness import halting_runs

    for target, effective in [((2, 2, 1, -3, 0, 0, 3, 3), True), ((1, 2, 0, 0, 0, -3, 0, 0), False)]:
        cfg = TOY8.replace(target=target)
        mob = build_mobility(cfg)
        crit = find_critical_states(mob, target_projection(mob, static_target_category(target)))
        assert is_effective(mob, crit).effective is effective
        assert (halting_runs(cfg) == cfg.runs) is effective


def test_verify_control_examples():
    comp = thin_category([0, 1], [(0, 1)])
    ident = ProjectionFunctor(comp, comp, {0: 0, 1: 1})
    assert ident.violations() == []
    assert verify_control(ident, {0: 0, 1: 1}) == []
    assert verify_control(ident, {0: 1, 1: 1}) == [("section", 0)]
    # two lifts of component state 0
    whole = thin_category([(0, "x"), (0, "y"), (1, "x")], [(0, 2), (1, 2)])
    P0 = ProjectionFunctor(whole, comp, {0: 0, 1: 0, 2: 1})
    assert P0.violations() == []
    assert verify_control(P0, {0: 0, 1: 2}) == []
    assert verify_control(P0, {0: 1, 1: 2}) == []
    assert ("functor", (0, 1)) in verify_control(P0, {0: 0, 1: 1})


def test_classify_examples():
    chain = thin_category([0, 1, 2], [(0, 1), (1, 2)])
    assert classify_rigidity(chain, chain) == "hard"
    cluster = thin_category([0, 1], [(0, 1), (1, 0)])
    single = thin_category([0], [])
    assert classify_rigidity(cluster, single) == "soft-not-hard"
    apart = thin_category([0, 1], [])
    assert classify_rigidity(apart, single) == "neither"
    assert classify_rigidity(single, preorder_category("ab", [("a", "b")])) == "neither"


def test_gripper_projection_is_functor_and_hard_for_static_target():
    mob = build_mobility(TOY8)
    cat, P = gripper_projection(mob, TOY8.target)
    assert P.violations() == []
    assert classify_rigidity(mob, cat) == "hard"


def test_preorders_isomorphic_relabelled():
    a = preorder_category(range(5), [(0, 1), (1, 2), (0, 3), (3, 4)])
    b = preorder_category("vwxyz", [("z", "y"), ("y", "x"), ("z", "w"), ("w", "v")])
    m = preorders_isomorphic(a, b)
    assert m is not None and m[0] == "z"
    c = preorder_category(range(5), [(0, 1), (1, 2), (2, 3), (3, 4)])
    assert preorders_isomorphic(a, c) is None


def test_export_round_trip(tmp_path):
    mob = build_mobility(TOY8)
    cat_path, tsv = export_mobility(mob, tmp_path / "toy")
    parsed = load_category(cat_path)
    assert check_category(parsed) == []
    assert preorders_isomorphic(parsed, mob.to_fincat()) is not None
    rows = tsv.read_text().splitlines()
    assert rows[0] == "id\theights" and len(rows) == len(mob) + 1
    assert rows[1].split("\t")[1] == ",".join(str(v) for v in mob.states[0])
