"""Recover temporal edge activity from node activity on a static graph."""

from ._core import (
    Graph,
    NumericError,
    UndefinedError,
    ValidationError,
    __version__,
    auc,
    default_alpha_grid,
    degree_assortativity,
    disparity_backbone,
    error_series,
    expected_active_nodes,
    expected_active_nodes_mc,
    incidence,
    kernel_baseline,
    kkt_residual,
    lambda_max,
    line_graph,
    pearson,
    project,
    re_check,
    recover,
    roc_curve,
    select_lambda,
    spearman,
    synth,
    tie_strengths,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
