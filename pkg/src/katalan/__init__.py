"""Exact computation with Katalan functions and K-k-Schur functions."""
