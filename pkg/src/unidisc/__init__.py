"""Point sets that discretize L_q norms of trigonometric polynomials.

The package builds sampling sets (digital nets, sparse grids, tensor
grids) that act as universal discretization sets for whole collections
of trigonometric subspaces, and ships the measurement harness used to
verify the constructions numerically: net-balance checks, covering and
dispersion certificates, kernel bounds, and two-sided discretization
constants.
"""

__version__ = "0.1.0"

from . import frequency, geometry, norms, pointsets, trigpoly, universality

__all__ = [
    "frequency",
    "trigpoly",
    "norms",
    "pointsets",
    "geometry",
    "universality",
    "__version__",
]
