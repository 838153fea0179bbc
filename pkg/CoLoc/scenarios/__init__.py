"""Packaged scenario sets."""
