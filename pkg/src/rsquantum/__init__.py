"""Exact engine for two-parameter quantum groups of simply-laced type."""

__version__ = "0.1.0"
