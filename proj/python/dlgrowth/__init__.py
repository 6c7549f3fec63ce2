"""Python bindings for the dlgrowth toolkit."""

from ._core import (  # noqa: F401
    SteadyState,
    steady_state,
    capital_cost_share,
    share_to_beta,
    project_growth,
    proposition1_effect,
    ces_marginal_product,
    perf_to_tech,
    tech_to_perf,
    gtilde,
    baseline_for,
    estimate_method1,
    estimate_method2,
    reconcile,
    simulate,
    scaling_experiment,
    ols_robust,
    kde,
)

__all__ = [name for name in dir() if not name.startswith("_")]
