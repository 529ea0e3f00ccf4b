"""Numerical and output helpers shared by the physics modules and the CLI."""
