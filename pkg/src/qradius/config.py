"""Centralized numeric tolerances and optimizer defaults."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    entry: float = 1e-12          # per-entry reconstruction / exact parameter checks
    eigen: float = 1e-10          # Hermitian deviation accepted by eigensolvers
    slack_floor: float = -1e-9    # hard floor: an inequality "holds" above this
    slack_soft: float = -1e-4     # soft floor: below slack_floor but above this is a warning
    sep: float = 1e-9             # strict-positivity separation for sector membership


TOL = Tolerances()

# Optimizer defaults (multi-start projected gradient on the unit sphere).
DEFAULT_RESTARTS = 32
DEFAULT_DIRECTIONS = 256
MAX_ITER = 500
GAIN_TOL = 1e-11
FD_STEP = 1e-6

# Sampling oracle size used by the conservative radius estimator.
ESTIMATOR_SAMPLES = 2048
