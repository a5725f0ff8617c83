"""Explicit constructions: full-support free subgroups and graph-of-groups lattices."""
