"""Exact intersection theory on iterated blowups of smooth projective threefolds."""

__version__ = "0.1.0"
