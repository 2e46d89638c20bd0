"""Numerical local theory of submanifolds with potential of normals.

The heavy lifting lives in the compiled extension; this package adds thin
wrappers that hand structured reports back as dictionaries.
"""

import json as _json

from ._core import (
    Error,
    FrameState,
    FrobeniusSpec,
    Jet3,
    PointAnalysis,
    SubmanifoldSpec,
    ToleranceConfig,
    __version__,
    analyze_point,
    curvature_residual,
    dualize,
    eval_expr,
    eval_jet,
    fd_partial,
    flat_connection,
    flat_curvature,
    fundamental_forms,
    load_frobenius,
    load_submanifold,
    realization_form,
    realize,
    realize_verify,
    wdvv_residual,
)
from ._core import analyze_report as _analyze_report
from ._core import dualize_report as _dualize_report
from ._core import realize_report as _realize_report
from ._core import wdvv_report as _wdvv_report


def analyze(spec_path, grid, tol=None):
    """Run the pointwise analysis over a grid; returns the report as a dict."""
    return _json.loads(_analyze_report(spec_path, grid, tol or ToleranceConfig()))


def dualize_analysis(spec_path, grid, tol=None):
    """Analyze a spec and its dual and verify the swap; returns a dict."""
    return _json.loads(_dualize_report(spec_path, grid, tol or ToleranceConfig()))


def wdvv(spec_path, grid, tol=None):
    """Associativity residuals over a grid; returns the report as a dict."""
    return _json.loads(_wdvv_report(spec_path, grid, tol or ToleranceConfig()))


def realize_path(spec_path, path, step=1e-3, tol=None):
    """Integrate the frame system along a polyline; returns the report as a dict."""
    return _json.loads(_realize_report(spec_path, path, step, tol or ToleranceConfig()))


__all__ = [
    "Error",
    "FrameState",
    "FrobeniusSpec",
    "Jet3",
    "PointAnalysis",
    "SubmanifoldSpec",
    "ToleranceConfig",
    "__version__",
    "analyze",
    "analyze_point",
    "curvature_residual",
    "dualize",
    "dualize_analysis",
    "eval_expr",
    "eval_jet",
    "fd_partial",
    "flat_connection",
    "flat_curvature",
    "fundamental_forms",
    "load_frobenius",
    "load_submanifold",
    "realization_form",
    "realize",
    "realize_path",
    "realize_verify",
    "wdvv",
    "wdvv_residual",
]
