"""Particle-flow adaptation of the gripper surface to a fixed target.

Each cycle finds the worst-fit block over the configured scales and moves
``2**S`` particles between that block and its neighbours. The total number
of particles (``sum(h)``) never changes.
"""
from dataclasses import dataclass

import numpy as np

from .exceptions import HaltedError
from .metrics import Trajectory, roughness_ra
from .multiscale import argmax_fitness


@dataclass(frozen=True)
class GripperState:
    """Relative height ``h = GRIPPER - TARGET`` with its conserved total."""

    h: np.ndarray
    total: int
    cycle: int = 0

    @property
    def n(self):
        return self.h.shape[0]


@dataclass(frozen=True)
class MoveRecord:
    cycle: int
    scale_exp: int
    position: int
    sign: int

    @property
    def particles_moved(self):
        return 2**self.scale_exp


def make_rng(seed, run_index=None):
    """PCG64 stream for ``seed``; ``run_index`` selects an independent sub-stream."""
    key = () if run_index is None else (int(run_index),)
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=key)))


def init_state(target):
    """Flat gripper at level 0 facing ``target``."""
    heights = getattr(target, "heights", target)
    h = -np.asarray(heights, dtype=np.int64)
    return GripperState(h, int(h.sum()), 0)


def _move_inplace(h, scale, position, sign, rng):
    w = 1 << scale
    blocks = h.shape[0] >> scale
    start = position * w
    h[start:start + w] -= sign
    if position == 0 or position == blocks - 1:
        nb = 1 if position == 0 else blocks - 2
        h[nb * w:(nb + 1) * w] += sign
        return
    half = w >> 1
    left = (position - 1) * w + rng.permutation(w)[:half]
    right = (position + 1) * w + rng.permutation(w)[:half]
    h[left] += sign
    h[right] += sign


def apply_move(state, site, rng):
    """Move the particles of ``site`` and return ``(new_state, record)``.

    A positive sign empties one unit from every column of the block and
    deposits half of the ``2**S`` particles at distinct random columns of
    each neighbour; a negative sign is the mirror image. Edge blocks route
    everything to/from their single neighbour.
    """
    if site.max_value == 0 or site.sign == 0:
        raise HaltedError("state is absorbing; no move to apply")
    h = state.h.copy()
    _move_inplace(h, site.scale, site.position, site.sign, rng)
    cycle = state.cycle + 1
    return (
        GripperState(h, state.total, cycle),
        MoveRecord(cycle, site.scale, site.position, site.sign),
    )


def step(state, cfg, rng):
    """One cycle. Returns ``(state, record)``; ``record`` is None when halted."""
    site = argmax_fitness(state.h, cfg.s_min, cfg.s_max, rng, cfg.edge_argmax)
    if site.max_value == 0:
        return state, None
    return apply_move(state, site, rng)


def simulate(target, cfg, rng, seed=0):
    """Run ``cfg.cycles`` cycles from the flat gripper or until absorbed."""
    h = -np.asarray(getattr(target, "heights", target), dtype=np.int64)
    n = h.shape[0]
    rows = cfg.cycles + 1
    ra = np.empty(rows)
    scale = np.full(rows, -1, dtype=np.int64)
    position = np.full(rows, -1, dtype=np.int64)
    sign = np.zeros(rows, dtype=np.int64)
    moved = np.zeros(rows, dtype=np.int64)
    total = np.empty(rows, dtype=np.int64)
    ra[0] = roughness_ra(h)
    total[0] = h.sum()
    t = 0
    halted = False
    while t < cfg.cycles:
        site = argmax_fitness(h, cfg.s_min, cfg.s_max, rng, cfg.edge_argmax)
        if site.max_value == 0:
            halted = True
            break
        _move_inplace(h, site.scale, site.position, site.sign, rng)
        t += 1
        scale[t], position[t], sign[t] = site.scale, site.position, site.sign
        moved[t] = 1 << site.scale
        total[t] = h.sum()
        ra[t] = int(np.abs(n * h - total[t]).sum()) / (n * n)
    end = t + 1
    return Trajectory(
        ra=ra[:end], scale=scale[:end], position=position[:end], sign=sign[:end],
        moved=moved[:end], total=total[:end], halted=halted, seed=seed, config=cfg,
        final_h=h,
    )


def run(cfg, seed=None, run_index=None):
    """Single trajectory; a pure function of ``(cfg, seed, run_index)``."""
    cfg.validate()
    seed = cfg.seed if seed is None else seed
    return simulate(cfg.target_profile(), cfg, make_rng(seed, run_index), seed=seed)
