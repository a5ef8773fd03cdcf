"""Discrete integrable maps, invariant varieties of periodic points, and
the fixed-period recurrence equations attached to them."""

__version__ = "0.1.0"
