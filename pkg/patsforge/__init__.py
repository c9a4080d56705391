"""Tile self-assembly of colored patterns: simulation, synthesis, reduction and checks."""
