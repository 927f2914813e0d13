"""Exact verification of Weyl group coinvariant and Cherednik algebra identities."""

__version__ = "0.1.0"
