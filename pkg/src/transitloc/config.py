"""Numeric tolerances used throughout the package."""

# absolute, on coordinates and objective differences
TOL = 1e-9

# breakpoint deduplication, radians
TOL_THETA = 1e-12

# relative band for the tangent test on coordinate-pinned optima
TOL_ANGLE = 1e-7
