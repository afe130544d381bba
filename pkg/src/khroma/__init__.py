"""Exact chromatic and dichromatic graph homology over the rationals."""

from .arith import BigradedSeries, BiPoly, UniPoly, geom_pow, tq_binom_pow
from .chromatic import build_cube, chromatic_euler_check, chromatic_homology, koszul_chromatic
from .dichromatic import build_D_of_G, dichromatic_euler_check
from .graph import Graph, contract_edge, delete_edge, edge_form, parse_graph, state_components
from .koszul import closed_form_check, state_cohomology
from .polynomials import (
    chromatic_classical,
    chromatic_series,
    count_colorings,
    dichromatic_D_series,
    dichromatic_poly,
)
from .tables import HomologyTable, TriplyGradedTable

__version__ = "0.1.0"
