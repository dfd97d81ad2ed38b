"""Generalized area spectral efficiency (GASE) of fading wireless links.

Tables come back as ``{column: list}`` dicts, the same columns the ``gase``
command line tool writes as CSV.
"""

from ._core import (
    Config,
    ConfigError,
    ConvergenceError,
    evaluate,
    optimize,
    preset,
    preset_names,
    sweep,
    verify,
)

__all__ = [
    "Config",
    "ConfigError",
    "ConvergenceError",
    "evaluate",
    "optimize",
    "preset",
    "preset_names",
    "sweep",
    "verify",
]

__version__ = "0.1.0"
