"""Input validation helpers in the spirit of ``sklearn.utils.validation``."""
import numbers

import numpy as np

from .exceptions import ConfigError, ShapeError


def is_power_of_two(n):
    return isinstance(n, numbers.Integral) and n >= 1 and (n & (n - 1)) == 0


def check_heights(heights, name="heights"):
    """Return ``heights`` as a 1-D int64 array whose length is a power of two.

    Float input is accepted only when every entry is integral.
    """
    arr = np.asarray(heights)
    if arr.ndim != 1:
        raise ShapeError(f"{name} must be 1-D, got shape {arr.shape}")
    if not is_power_of_two(arr.shape[0]):
        raise ShapeError(f"{name} length {arr.shape[0]} is not a power of two")
    if arr.dtype.kind == "f":
        if not np.all(np.isfinite(arr)):
            raise ShapeError(f"{name} contains non-finite values")
        if not np.all(arr == np.round(arr)):
            raise ShapeError(f"{name} must hold integer particle counts")
    elif arr.dtype.kind not in "iub":
        raise ShapeError(f"{name} must be numeric, got dtype {arr.dtype}")
    return arr.astype(np.int64)


def check_int(value, name, minimum=None, maximum=None):
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise ConfigError(f"{name} must be an integer, got {value!r}", field=name)
    if minimum is not None and value < minimum:
        raise ConfigError(f"{name}={value} is below the minimum {minimum}", field=name)
    if maximum is not None and value > maximum:
        raise ConfigError(f"{name}={value} exceeds the maximum {maximum}", field=name)
    return int(value)


def check_scale_range(s_min, s_max, n_exp):
    """Validate ``0 < s_min <= s_max < n_exp``."""
    check_int(s_min, "s_min", minimum=1)
    check_int(s_max, "s_max", minimum=1)
    if s_min > s_max:
        raise ConfigError(f"s_min={s_min} exceeds s_max={s_max}", field="s_min")
    if s_max >= n_exp:
        raise ConfigError(
            f"s_max={s_max} leaves fewer than two blocks for N=2**{n_exp}",
            field="s_max",
        )
