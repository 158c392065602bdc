"""Rate regions of the interference channel with generalized feedback."""

import json

from ._core import (
    Scenario,
    Split,
    binning_families,
    bound_names,
    check_ids,
    closed_form,
    dump_template,
    eval_bound,
    eval_term,
    fm,
    region_at,
    symmetric_network,
    templates,
)
from . import _core


def sweep(scenario, template="sup", units=8, refinements=200, max_iterations=400, seed=0):
    """Frontier of the swept region: {"vertices": [...], "metrics": {...}}."""
    return json.loads(_core.sweep(scenario, template, units, refinements, max_iterations, seed))


def verify(check="all", seed=7, trials=100, draws=100):
    """List of check reports (id, pass, diagnostics, witness)."""
    return json.loads(_core.verify(check, seed, trials, draws))
