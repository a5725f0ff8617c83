"""Exact arithmetic in right-angled Artin groups and their parabolic subgroups."""
