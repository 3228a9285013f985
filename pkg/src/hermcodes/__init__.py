"""
Hermcodes.

Functional codes defined by quadratic forms on quadrics and hermitian
varieties of projective spaces over finite fields.
"""

from hermcodes import (
    cli,
    codes,
    config,
    directory,
    exceptions,
    forms,
    geometry_classify,
    gf_arith,
    intersect,
    presets,
    progress_bar,
    proj_space,
    results,
    safe_workers,
    utils,
    version,
)
from hermcodes.version import __date__, __version__

__all__ = [
    "cli",
    "codes",
    "config",
    "directory",
    "exceptions",
    "forms",
    "geometry_classify",
    "gf_arith",
    "intersect",
    "presets",
    "progress_bar",
    "proj_space",
    "results",
    "safe_workers",
    "utils",
    "version",
    "__version__",
    "__date__",
]
