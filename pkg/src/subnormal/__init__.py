"""Exact workbench for subnormalisers, picky p-elements and character-level
local invariants in finite permutation groups."""

__version__ = "0.1.0"
