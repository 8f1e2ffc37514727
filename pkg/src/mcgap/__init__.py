"""
mcgap: confidence intervals for the mixing of a reversible Markov chain
from a single sample path.

Given one trajectory of an ergodic reversible chain on ``d`` states, mcgap
estimates the stationary distribution and the spectral gap (and hence the
relaxation time) and returns confidence intervals that depend only on
observable quantities.

Modules
-------
core        value types, path validation, detailed-balance check
linalg      stationary distribution, group inverse, symmetrised eigenvalues
path_stats  transition counts and the smoothed transition matrix
intervals   error bounds and interval construction
estimator   the end-to-end pipeline (:func:`estimate`)
simulator   reversible test chains, path sampling, coverage experiments
report      JSON serialisation
cli         the ``mcgap`` command
"""

from .core import (MCGapError, InputError, NumericalError, SamplePath, StochasticMatrix,
                   ProbabilityVector, validate_path, check_reversible)
from .estimator import EstimationReport, estimate
from .intervals import DeviationBounds, Interval, IntervalSet
from .simulator import (ChainModel, birth_death_chain, random_walk_on_weighted_graph,
                        from_matrix, sample_path, run_coverage)

__version__ = "0.1.0"

__all__ = [
    "MCGapError", "InputError", "NumericalError",
    "SamplePath", "StochasticMatrix", "ProbabilityVector", "validate_path", "check_reversible",
    "EstimationReport", "estimate",
    "DeviationBounds", "Interval", "IntervalSet",
    "ChainModel", "birth_death_chain", "random_walk_on_weighted_graph", "from_matrix",
    "sample_path", "run_coverage",
]
