"""Point-line incidence configurations: exact projective geometry, forbidden patterns, and the lower-bound sampler."""
__version__ = "0.1.0"
