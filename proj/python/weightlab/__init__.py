"""Numerical experiments on weighted inequalities: maximal functions, A_p
constants, Lorentz norms, Fourier multipliers and extrapolation constants.

Arrays are numpy float64 of length grid.size (1D) or shape (n, n) (2D).
"""

import json as _json

from ._core import (
    DomainError,
    Grid,
    GridMismatch,
    UnknownNameError,
    WeightlabError,
    a1_constant,
    ap_constant,
    bochner_limited_window,
    bochner_riesz,
    c_p_theta_mu,
    half_line_multiplier,
    hilbert,
    hl_maximal,
    kolmogorov_sup,
    lorentz_p1_norm,
    lp_norm,
    phi_up_exponents,
    power_maximal,
    run_experiment_json,
    suites,
    theta_mu_t_selection,
    weak_norm,
    weighted_maximal,
)

__version__ = "0.1.0"


def run_experiment(suite, include_runtime=True, **settings):
    """Run a suite and return its report as a dict.

    Settings use the config keys with the dot replaced by a double
    underscore, e.g. ``grid__n=1024``; values may be numbers or strings.
    """
    cfg = {"run.suite": suite}
    for key, value in settings.items():
        if isinstance(value, (list, tuple)):
            value = ",".join(str(v) for v in value)
        cfg[key.replace("__", ".", 1)] = str(value)
    return _json.loads(run_experiment_json(cfg, include_runtime))
