"""Exact-arithmetic tools for stable 3-forms on R^7 and the catalog of
compact homogeneous 7-spaces carrying invariant ones."""

__version__ = "0.1.0"
