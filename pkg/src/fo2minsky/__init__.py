"""Counter machines to two-variable logic with a linear and a preorder successor."""

__version__ = "0.1.0"
