"""Exact symbolic verification engine for the parallel-mean-curvature
surface computations: function catalog, identity replay, and numeric
non-vanishing certificates."""

__version__ = "0.1.0"
