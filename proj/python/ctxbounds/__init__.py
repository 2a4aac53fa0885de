"""Classical, general and quantum bounds for contextuality scenarios."""

import json

from ._ctxbounds import (
    BudgetExceeded,
    Hypergraph,
    ParseError,
    beta_classical,
    beta_general,
    beta_quantum,
    critical_epsilon,
    exclusivity_edges,
    instance,
    load_hypergraph,
    make_hypergraph,
    parse_hypergraph,
    quantum_model,
    robust_bound,
    sample_onc,
    validate,
    verify_onc,
    verify_quantum,
)
from ._ctxbounds import analyze_json as _analyze_json


def analyze(path, bounds="all", target=None, epsilon=None, sdp_iterations=10000):
    """Bounds report for a hypergraph file, as a dict."""
    if target is not None:
        target = str(target)
    if epsilon is not None:
        epsilon = str(epsilon)
    return json.loads(_analyze_json(str(path), bounds, target, epsilon, sdp_iterations))


__all__ = [
    "BudgetExceeded",
    "Hypergraph",
    "ParseError",
    "analyze",
    "beta_classical",
    "beta_general",
    "beta_quantum",
    "critical_epsilon",
    "exclusivity_edges",
    "instance",
    "load_hypergraph",
    "make_hypergraph",
    "parse_hypergraph",
    "quantum_model",
    "robust_bound",
    "sample_onc",
    "validate",
    "verify_onc",
    "verify_quantum",
]
