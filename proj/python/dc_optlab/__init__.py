"""DC loss laboratory: Lambert W, DC loss, convergence rates and a single-neuron trainer."""

import json

from ._core import (
    DCParams,
    Dataset,
    DimensionError,
    DomainError,
    EmptyDatasetError,
    Error,
    FormatError,
    IoError,
    NumericalError,
    ValidationError,
    accuracy,
    dc_rate,
    default_rate,
    empirical_loss,
    generate,
    grid_size,
    log_response_probability,
    loss_derivative,
    loss_gradient,
    margin_transform,
    per_sample_loss,
    rate_onset,
    response_probability,
    sample_grid,
    split,
    theorem_bracket,
    train,
    two_pl,
    w0,
    w0_log_enclosure,
)
from ._core import run_suites as _run_suites

__version__ = "0.1.0"


def verify(suite="all", seed=7):
    """Run property suites; returns {name: report dict} plus an overall "passed" flag."""
    results = _run_suites(suite, seed)
    out = {name: json.loads(report) for name, _, report in results}
    out["passed"] = all(passed for _, passed, _ in results)
    return out
