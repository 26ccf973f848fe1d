"""Finite-model laboratory for lattices, their ultrafilter spaces, and the
first-order lattice language: validated finite lattices, the rational
interval lattice, finite topological spaces, Wallman/Stone representations,
a formula evaluator with builtins, pebble games, mapping searches, and a
bounded model finder."""

__version__ = "0.1.0"
