"""Homology and cohomology of finite higher-rank graphs."""

__version__ = "0.1.0"
