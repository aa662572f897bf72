"""Hyperspectral mixed-noise removal.

Couples a low-rank spectral factor model with 3-D total variation and a
sparse/Gaussian noise split, solved by ADMM.  See :mod:`.solver` for the
model, :mod:`.noise` for the benchmark degradations, :mod:`.metrics` for
scoring and :mod:`.cli` for the command line pipeline.
"""

from .factorization import MvtfFactors, compose, init_factors
from .io import read_cube, write_cube
from .metrics import MetricsReport, evaluate
from .noise import DeadlineSpec, NoiseSpec, StripeSpec, apply_case, apply_noise, case_spec
from .solver import SolveReport, SolverParams, solve
from .synthetic import smooth_lowrank_cube, smooth_lowrank_factors

__version__ = "0.1.0"

__all__ = [
    "MvtfFactors",
    "compose",
    "init_factors",
    "read_cube",
    "write_cube",
    "MetricsReport",
    "evaluate",
    "DeadlineSpec",
    "NoiseSpec",
    "StripeSpec",
    "apply_case",
    "apply_noise",
    "case_spec",
    "SolveReport",
    "SolverParams",
    "solve",
    "smooth_lowrank_cube",
    "smooth_lowrank_factors",
    "__version__",
]
