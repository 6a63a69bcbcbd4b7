"""Central numerical tolerances.

Every validation threshold used by the package lives here so that all
modules agree on what "numerically zero" means.  The environment variable
``QFL_TOLERANCE_SCALE`` multiplies every tolerance (default 1); it is read
at call time, so tests may tighten or loosen the whole package at once.
"""

import os

_BASE = {
    # operator-type invariants
    "hermiticity": 1e-10,
    "psd": 1e-9,
    "effect_upper": 1e-9,
    "unitarity": 1e-9,
    "trace": 1e-10,
    "orthonormality": 1e-9,
    # POVM / frame-function machinery
    "completeness": 1e-9,
    "frame_value": 1e-12,
    "rank": 1e-8,
    "residual": 1e-6,
    "psd_repair": 1e-6,
    # measurement updates
    "zero_probability": 1e-12,
    # entropy
    "entropy_zero": 1e-12,
    "degeneracy": 1e-7,
    # ensembles
    "weight_sum": 1e-10,
    "outcome_probability": 1e-15,
}


def tolerance_scale() -> float:
    return float(os.environ.get("QFL_TOLERANCE_SCALE", "1"))


def tol(name: str) -> float:
    """Scaled tolerance for the named check."""
    return _BASE[name] * tolerance_scale()
