"""Exponential Riesz bases on multi-rectangles and polygons with certified frame bounds."""

from .estimates import BoundsEstimate
from .geometry import (DyadicApproximant, Interval, Lattice, MultiInterval, SignedCell,
                       SignedDomain, cut_translate, dyadic_approximant, figure3_domain, measure,
                       octagon, rhombus, symm_diff_measure, tiling_level, transform, unit_square)
from .spectra import (FrequencySet, TruncatedSpectrum, dual_lattice, main_spectrum,
                      set_difference, shifted_family, truncate)

__version__ = "0.1.0"

__all__ = [
    "BoundsEstimate", "DyadicApproximant", "Interval", "Lattice", "MultiInterval", "SignedCell",
    "SignedDomain", "cut_translate", "dyadic_approximant", "figure3_domain", "measure", "octagon",
    "rhombus", "symm_diff_measure", "tiling_level", "transform", "unit_square", "FrequencySet",
    "TruncatedSpectrum", "dual_lattice", "main_spectrum", "set_difference", "shifted_family",
    "truncate",
]
