"""Block coarse-graining and the scale/position dependent fitting measure.

All comparisons are done on integers. A block at scale ``S`` has width
``2**S`` and integer sum ``s``; its mean is ``s / 2**S``. The fitting
measure at an interior block is

    R = |s_p / 2**S - (s_L + s_R) / 2**(S + 1)| = |2 s_p - s_L - s_R| / 2**(S + 1)

and at an edge block, where only one neighbour exists,

    R = |s_e - s_n| / 2**S = |2 s_e - 2 s_n| / 2**(S + 1).

Multiplying by ``2**(s_max + 1)`` turns every R in ``[s_min, s_max]`` into
an exact integer, so the argmax is free of floating-point ties.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from ._validation import check_heights
from .exceptions import DomainError


@dataclass(frozen=True)
class ScaleView:
    """Block sums of a height field at one scale; means are ``sums / 2**scale_exp``."""

    scale_exp: int
    sums: np.ndarray

    @property
    def block_width(self):
        return 2**self.scale_exp

    @property
    def means(self):
        w = self.block_width
        return [Fraction(int(s), w) for s in self.sums]

    def __len__(self):
        return len(self.sums)


@dataclass(frozen=True)
class FitnessField:
    """Exact fitting measure: ``values[p] = numerators[p] / denominator``.

    ``signed`` keeps the sign of the deviation before the absolute value.
    """

    scale_exp: int
    signed: np.ndarray

    @property
    def denominator(self):
        return 2 ** (self.scale_exp + 1)

    @property
    def numerators(self):
        return np.abs(self.signed)

    @property
    def values(self):
        d = self.denominator
        return [Fraction(int(v), d) for v in self.numerators]

    @property
    def signs(self):
        return np.sign(self.signed)


@dataclass(frozen=True)
class MoveSite:
    """Winning block of the argmax; ``max_value`` is the exact fitting measure there."""

    scale: int
    position: int
    sign: int
    max_value: Fraction

    @property
    def halted(self):
        return self.max_value == 0


def coarsen(h, scale_exp):
    """Block sums of ``h`` at scale ``scale_exp`` (width ``2**scale_exp``)."""
    h = check_heights(h, "h")
    n_exp = h.shape[0].bit_length() - 1
    if not 0 <= scale_exp <= n_exp:
        raise DomainError(f"scale {scale_exp} outside [0, {n_exp}]")
    return ScaleView(scale_exp, h.reshape(-1, 2**scale_exp).sum(axis=1))


def _signed_deviation(sums):
    d = np.empty_like(sums)
    d[1:-1] = 2 * sums[1:-1] - sums[:-2] - sums[2:]
    d[0] = 2 * (sums[0] - sums[1])
    d[-1] = 2 * (sums[-1] - sums[-2])
    return d


def fitness(view):
    if len(view) < 2:
        raise DomainError("fitting measure needs at least two blocks")
    sums = np.asarray(view.sums, dtype=np.int64)
    return FitnessField(view.scale_exp, _signed_deviation(sums))


@lru_cache(maxsize=64)
def _layout(n, s_min, s_max, edge_argmax):
    """Offsets and integer weights for the concatenated fields of all scales."""
    scales, offsets, weights = [], [], []
    offset = 0
    for s in range(s_min, s_max + 1):
        blocks = n >> s
        w = np.full(blocks, 1 << (s_max - s), dtype=np.int64)
        if not edge_argmax:
            w[0] = w[-1] = 0
        scales.append(s)
        offsets.append(offset)
        weights.append(w)
        offset += blocks
    starts = np.array(offsets + [offset])
    return tuple(scales), starts, np.concatenate(weights)


def _scaled_fields(h, s_min, s_max, edge_argmax):
    return _fields_from_sums(h.reshape(-1, 1 << s_min).sum(axis=1), s_min, s_max, edge_argmax)


def _fields_from_sums(sums, s_min, s_max, edge_argmax):
    n = sums.shape[0] << s_min
    scales, starts, weights = _layout(n, s_min, s_max, edge_argmax)
    parts = []
    for _ in scales:
        parts.append(_signed_deviation(sums))
        sums = sums[0::2] + sums[1::2]
    signed = np.concatenate(parts)
    return scales, starts, signed, np.abs(signed) * weights


def _site(scales, starts, signed, flat, best, s_max):
    k = int(np.searchsorted(starts, flat, side="right")) - 1
    s = scales[k]
    sign = int(np.sign(signed[flat]))
    return MoveSite(s, int(flat - starts[k]), sign, Fraction(int(best), 2 ** (s_max + 1)))


def maximizers(h, s_min, s_max, edge_argmax=True, block_sums=False):
    """Every (scale, position) attaining the exact maximum fitting measure.

    With ``block_sums=True``, ``h`` holds the block sums at scale ``s_min``
    instead of column heights; the result is the same.
    """
    h = np.asarray(h, dtype=np.int64)
    if block_sums:
        scales, starts, signed, scaled = _fields_from_sums(h, s_min, s_max, edge_argmax)
    else:
        scales, starts, signed, scaled = _scaled_fields(h, s_min, s_max, edge_argmax)
    best = scaled.max()
    return [
        _site(scales, starts, signed, f, best, s_max)
        for f in np.flatnonzero(scaled == best)
    ]


def argmax_fitness(h, s_min, s_max, rng, edge_argmax=True):
    """Scale and position maximizing the fitting measure over ``[s_min, s_max]``.

    Exact ties are broken uniformly with ``rng``, which is consumed only when
    more than one maximizer exists. A returned ``max_value`` of zero marks an
    absorbing state.
    """
    h = np.asarray(h, dtype=np.int64)
    scales, starts, signed, scaled = _scaled_fields(h, s_min, s_max, edge_argmax)
    best = scaled.max()
    if best == 0:
        return MoveSite(scales[0], 0, 0, Fraction(0))
    ties = np.flatnonzero(scaled == best)
    flat = ties[0] if len(ties) == 1 else ties[rng.integers(len(ties))]
    return _site(scales, starts, signed, flat, best, s_max)
