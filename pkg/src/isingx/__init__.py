"""Exact low-temperature series for the planar Ising model via Bell polynomials."""
from .bell import complete_bell, lah, log_bell, partial_bell
from .exact_core import QuadSurd, TrigPoly, XSeries, series_exp, series_log
from .expansion import FreeEnergySeries, expand_free_energy
from .lattices import LatticeSpec, SpecError, build_integrand, parse_lattice
from .states import (DOSTable, bulk_states, energy_distribution, finite_states,
                     partition_polynomial)
from .walks import walk_count, walk_oracle

__version__ = "0.1.0"

__all__ = [
    "DOSTable", "FreeEnergySeries", "LatticeSpec", "QuadSurd", "SpecError", "TrigPoly",
    "XSeries", "build_integrand", "bulk_states", "complete_bell", "energy_distribution",
    "expand_free_energy", "finite_states", "lah", "log_bell", "parse_lattice",
    "partial_bell", "partition_polynomial", "series_exp", "series_log", "walk_count",
    "walk_oracle",
]
