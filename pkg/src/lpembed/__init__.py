"""Embed unweighted graph metrics into tree and outerplanar metrics via layering partitions."""

__version__ = "0.1.0"
