"""Marked simplicial sets, strict 2-categories, their nerves and anodyne certificates."""

__version__ = "0.1.0"
