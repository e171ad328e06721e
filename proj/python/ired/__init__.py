"""Asymptotic electrodynamics toolkit."""

import json

from ._ired import (
    Event,
    FreeField,
    IredError,
    Particle,
    casimir,
    extract_null_asymptote,
    fock_product,
    four_velocity,
    ir_divergence_scan,
    kirchhoff_eval,
    matching_verify,
    run_scenario_json,
    s_field,
    soft_relation,
    sphere_quadrature,
    symp_cauchy,
    symp_null,
)


def run_scenario(scenario, order=None, tolerance_scale=1.0):
    """Run a scenario given as a dict or a path; returns the report as a dict."""
    if isinstance(scenario, dict):
        text = json.dumps(scenario)
    else:
        with open(scenario) as f:
            text = f.read()
    return json.loads(run_scenario_json(text, order, tolerance_scale))


__all__ = [
    "Event",
    "FreeField",
    "IredError",
    "Particle",
    "casimir",
    "extract_null_asymptote",
    "fock_product",
    "four_velocity",
    "ir_divergence_scan",
    "kirchhoff_eval",
    "matching_verify",
    "run_scenario",
    "s_field",
    "soft_relation",
    "sphere_quadrature",
    "symp_cauchy",
    "symp_null",
]
