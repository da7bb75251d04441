"""Roughness (Ra) and the per-cycle series derived from trajectories."""
import csv
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .exceptions import DomainError

TRAJECTORY_HEADER = ["cycle", "ra", "scale_exp", "position", "sign", "particles_moved"]
ENSEMBLE_HEADER = ["cycle", "ra_mean", "ra_std", "moved_mean"]


def roughness_ra_exact(h):
    """Mean absolute deviation of ``h`` from its mean, as an exact fraction."""
    h = np.asarray(h, dtype=np.int64)
    n = h.shape[0]
    if n < 1:
        raise DomainError("Ra of an empty height field")
    num = int(np.abs(n * h - h.sum()).sum())
    return Fraction(num, n * n)


def roughness_ra(h):
    """Ra = sum |h - mean(h)| / N, evaluated from exact integers."""
    h = np.asarray(h, dtype=np.int64)
    n = h.shape[0]
    if n < 1:
        raise DomainError("Ra of an empty height field")
    return int(np.abs(n * h - h.sum()).sum()) / (n * n)


@dataclass
class Trajectory:
    """Per-cycle record of one run.

    Row 0 is the initial state: ``scale == position == -1`` and
    ``sign == moved == 0``. Row ``t`` describes the move made at cycle ``t``
    and the roughness after it. A halted run stops early and has
    ``halted = True``.
    """

    ra: np.ndarray
    scale: np.ndarray
    position: np.ndarray
    sign: np.ndarray
    moved: np.ndarray
    total: np.ndarray
    halted: bool = False
    seed: int = 0
    config: object = field(default=None, repr=False)
    final_h: np.ndarray = field(default=None, repr=False)

    def __len__(self):
        return len(self.ra)

    @property
    def cycles(self):
        return len(self.ra) - 1

    def to_csv(self, path):
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(TRAJECTORY_HEADER)
            for t in range(len(self.ra)):
                w.writerow([
                    t, f"{self.ra[t]:.6f}", int(self.scale[t]), int(self.position[t]),
                    int(self.sign[t]), int(self.moved[t]),
                ])

    @classmethod
    def from_csv(cls, path):
        with open(path, newline="", encoding="utf-8") as fh:
            rows = list(csv.reader(fh))
        if not rows or rows[0] != TRAJECTORY_HEADER:
            raise ValueError(f"{path}: not a trajectory CSV")
        body = rows[1:]
        col = lambda i, dt: np.array([r[i] for r in body], dtype=dt)  # noqa: E731
        return cls(
            ra=col(1, float), scale=col(2, np.int64), position=col(3, np.int64),
            sign=col(4, np.int64), moved=col(5, np.int64),
            total=np.zeros(len(body), dtype=np.int64),
        )


def moving_average(series, window=10):
    """Trailing mean over ``window`` samples, truncated at the start."""
    if window < 1:
        raise DomainError("window must be >= 1")
    x = np.asarray(series, dtype=float)
    c = np.concatenate(([0.0], np.cumsum(x)))
    idx = np.arange(1, len(x) + 1)
    lo = np.maximum(idx - window, 0)
    return (c[idx] - c[lo]) / (idx - lo)


@dataclass
class EnsembleCurves:
    ra_mean: np.ndarray
    ra_std: np.ndarray
    moved_mean: np.ndarray
    runs: int
    padded: int = 0

    @property
    def cycle(self):
        return np.arange(len(self.ra_mean))

    def to_csv(self, path):
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(ENSEMBLE_HEADER)
            for t in range(len(self.ra_mean)):
                w.writerow([
                    t, f"{self.ra_mean[t]:.6f}", f"{self.ra_std[t]:.6f}",
                    f"{self.moved_mean[t]:.6f}",
                ])

    @classmethod
    def from_csv(cls, path):
        data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
        return cls(ra_mean=data[:, 1], ra_std=data[:, 2], moved_mean=data[:, 3], runs=0)


def _padded(values, length, fill):
    out = np.full(length, fill, dtype=float)
    out[: len(values)] = values
    return out


def ensemble_mean(trajs):
    """Pointwise mean over runs.

    Runs that halted early are padded to the longest run by carrying their
    final Ra forward with zero particles moved; ``padded`` counts them.
    """
    trajs = list(trajs)
    if not trajs:
        raise DomainError("ensemble_mean of an empty list")
    length = max(len(t) for t in trajs)
    ra = np.vstack([_padded(t.ra, length, t.ra[-1]) for t in trajs])
    moved = np.vstack([_padded(t.moved, length, 0) for t in trajs])
    padded = sum(len(t) < length for t in trajs)
    return EnsembleCurves(
        ra_mean=ra.mean(axis=0), ra_std=ra.std(axis=0), moved_mean=moved.mean(axis=0),
        runs=len(trajs), padded=padded,
    )


def cycles_to_fraction(curve, fraction=0.5):
    """First index where ``curve / curve[0] <= fraction``; ``None`` if never reached."""
    curve = np.asarray(curve, dtype=float)
    hit = np.flatnonzero(curve <= fraction * curve[0])
    return int(hit[0]) if len(hit) else None


def upward_jumps(scale, after=0):
    """Number of cycles ``t > after`` whose chosen scale exceeds the previous one."""
    s = np.asarray(scale)
    t = np.arange(1, len(s))
    up = (s[1:] > s[:-1]) & (s[:-1] >= 0) & (t > after)
    return int(up.sum())
