"""Run configuration and its flat ``key=value`` file format."""
import dataclasses
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ._validation import check_int, check_scale_range
from .exceptions import ConfigError
from .profiles import Profile, load_profile, target_a, target_b

_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


@dataclass(frozen=True)
class SimConfig:
    """Parameters of one experiment.

    ``target`` is ``"A"``, ``"B"``, a path to a profile file, or a tuple of
    integer heights. For the last two, ``n_exp`` must match the profile
    length. ``runs`` defaults to 100; pass 1000 for the full-size ensemble.
    """

    n_exp: int = 10
    amplitude: int = 48
    s_min: int = 2
    s_max: int = 7
    cycles: int = 1500
    runs: int = 100
    target: object = "A"
    seed: int = 0
    edge_argmax: bool = True

    def __post_init__(self):
        if isinstance(self.target, (list, np.ndarray)):
            object.__setattr__(self, "target", tuple(int(v) for v in self.target))

    def validate(self):
        check_int(self.n_exp, "n_exp", minimum=1)
        check_int(self.amplitude, "amplitude", minimum=1)
        check_scale_range(self.s_min, self.s_max, self.n_exp)
        check_int(self.cycles, "cycles", minimum=0)
        check_int(self.runs, "runs", minimum=1)
        check_int(self.seed, "seed", minimum=0, maximum=2**64 - 1)
        if not isinstance(self.edge_argmax, bool):
            raise ConfigError("edge_argmax must be a boolean", field="edge_argmax")
        if isinstance(self.target, str) and self.target not in ("A", "B"):
            if not Path(self.target).is_file():
                raise ConfigError(f"target file {self.target!r} not found", field="target")
        elif not isinstance(self.target, (str, tuple)):
            raise ConfigError(f"unsupported target {self.target!r}", field="target")
        return self

    def target_profile(self):
        self.validate()
        if self.target == "A":
            return target_a(self.n_exp, self.amplitude)
        if self.target == "B":
            return target_b(self.n_exp, self.amplitude)
        if isinstance(self.target, tuple):
            profile = Profile(np.array(self.target, dtype=np.int64), label="custom")
        else:
            profile = load_profile(self.target)
        if profile.n_exp != self.n_exp:
            raise ConfigError(
                f"target has N=2**{profile.n_exp} but n_exp={self.n_exp}", field="n_exp"
            )
        return profile

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)

    def as_dict(self):
        d = dataclasses.asdict(self)
        if isinstance(self.target, tuple):
            d["target"] = list(self.target)
        return d

    def to_text(self):
        lines = []
        for f in dataclasses.fields(self):
            v = getattr(self, f.name)
            if isinstance(v, tuple):
                v = ",".join(str(x) for x in v)
            elif isinstance(v, bool):
                v = "true" if v else "false"
            lines.append(f"{f.name}={v}\n")
        return "".join(lines)


_FIELDS = {f.name: f for f in dataclasses.fields(SimConfig)}


def _coerce(key, text):
    default = _FIELDS[key].default
    if isinstance(default, bool):
        low = text.strip().lower()
        if low in _TRUE:
            return True
        if low in _FALSE:
            return False
        raise ConfigError(f"{key}: expected a boolean, got {text!r}", field=key)
    if isinstance(default, int):
        try:
            return int(text)
        except ValueError:
            raise ConfigError(f"{key}: expected an integer, got {text!r}", field=key) from None
    if key == "target" and "," in text:
        try:
            return tuple(int(v) for v in text.split(","))
        except ValueError:
            raise ConfigError(f"target: bad height list {text!r}", field=key) from None
    return text.strip()


def config_from_mapping(values, base=None):
    """Overlay string ``values`` onto ``base``; unknown keys are errors."""
    changes = {}
    for key, text in values.items():
        key = key.strip().replace("-", "_")
        if key not in _FIELDS:
            raise ConfigError(f"unknown configuration key {key!r}", field=key)
        changes[key] = _coerce(key, str(text))
    return (base or SimConfig()).replace(**changes)


def parse_config_text(text, base=None):
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        values[key.strip()] = value.strip()
    return config_from_mapping(values, base)


def load_config(path, base=None):
    return parse_config_text(Path(path).read_text(encoding="utf-8"), base)
