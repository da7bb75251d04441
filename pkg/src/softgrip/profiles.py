"""Target surface profiles quantized to integer particle units.

Heights are stored zero-based: ``heights[i]`` is the profile at the
one-based coordinate ``x = i + 1``.
"""
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ._validation import check_heights, check_int
from .exceptions import ConfigError, ProfileParseError, ShapeError

MIN_N_EXP = 4


@dataclass(frozen=True)
class Profile:
    heights: np.ndarray = field(repr=False)
    label: str = ""

    def __post_init__(self):
        arr = check_heights(self.heights)
        arr.setflags(write=False)
        object.__setattr__(self, "heights", arr)

    @property
    def n(self):
        return self.heights.shape[0]

    @property
    def n_exp(self):
        return self.n.bit_length() - 1

    def __len__(self):
        return self.n

    def __eq__(self, other):
        if not isinstance(other, Profile):
            return NotImplemented
        return self.label == other.label and np.array_equal(self.heights, other.heights)

    def __hash__(self):
        return hash((self.label, self.heights.tobytes()))


def round_half_away(values):
    values = np.asarray(values, dtype=float)
    return (np.sign(values) * np.floor(np.abs(values) + 0.5)).astype(np.int64)


def _phase(n_exp, amplitude):
    check_int(n_exp, "n_exp")
    if n_exp < MIN_N_EXP:
        raise ConfigError(
            f"n_exp={n_exp} is too small; sine targets need n_exp >= {MIN_N_EXP}",
            field="n_exp",
        )
    check_int(amplitude, "amplitude", minimum=1)
    n = 2**n_exp
    x = np.arange(1, n + 1)
    return 2.0 * np.pi * x / n


def target_a(n_exp=10, amplitude=128):
    """Single-frequency target, eight periods across the surface."""
    u = _phase(n_exp, amplitude)
    return Profile(round_half_away(amplitude * np.sin(8 * u)), label="A")


def target_b(n_exp=10, amplitude=128):
    """Two-frequency target: ``0.8 * (sin(4u) + sin(8u))``."""
    u = _phase(n_exp, amplitude)
    return Profile(
        round_half_away(amplitude * 0.8 * (np.sin(4 * u) + np.sin(8 * u))), label="B"
    )


def load_profile(path, label=None):
    """Read one decimal integer per line.

    Raises
    ------
    ProfileParseError
        A line is not an integer; ``err.line`` is one-based.
    ShapeError
        The number of values is not a power of two.
    """
    path = Path(path)
    values = []
    with path.open(encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            text = raw.strip()
            try:
                values.append(int(text))
            except ValueError:
                raise ProfileParseError(
                    f"{path}:{lineno}: expected an integer, got {text!r}", line=lineno
                ) from None
    if not values:
        raise ShapeError(f"{path}: empty profile")
    return Profile(np.array(values, dtype=np.int64), label=label or path.stem)


def save_profile(profile, path):
    heights = profile.heights if isinstance(profile, Profile) else check_heights(profile)
    Path(path).write_text("".join(f"{int(v)}\n" for v in heights), encoding="utf-8")
