"""Multiscale particle-flow gripper simulation and finite-category tooling."""
__version__ = "0.1.0"

from .config import SimConfig, load_config, parse_config_text  # noqa: E402
from .dynamics import apply_move, init_state, make_rng, run, simulate, step  # noqa: E402
from .exceptions import (  # noqa: E402
    CapacityError, CategoryParseError, ConfigError, DomainError, HaltedError,
    ProfileParseError, ShapeError, SoftgripError, StructureError,
)
from .metrics import Trajectory, ensemble_mean, moving_average, roughness_ra  # noqa: E402
from .multiscale import argmax_fitness, coarsen, fitness  # noqa: E402
from .profiles import Profile, load_profile, save_profile, target_a, target_b  # noqa: E402
from .statespace import count_states, count_transitions, enumerate_space  # noqa: E402

__all__ = [
    "SimConfig", "load_config", "parse_config_text", "apply_move", "init_state", "make_rng",
    "run", "simulate", "step", "CapacityError", "CategoryParseError", "ConfigError",
    "DomainError", "HaltedError", "ProfileParseError", "ShapeError", "SoftgripError",
    "StructureError", "Trajectory", "ensemble_mean", "moving_average", "roughness_ra",
    "argmax_fitness", "coarsen", "fitness", "Profile", "load_profile", "save_profile",
    "target_a", "target_b", "count_states", "count_transitions", "enumerate_space",
]
