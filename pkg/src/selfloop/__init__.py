"""Spectra, energy and bounds of graphs with self-loops."""

from .graph import (Bipartition, Graph, GraphError, LoopGraph, complement, components,
                    degrees, enumerate_labeled_graphs, generator, is_bipartite, is_connected,
                    is_semiregular, make_graph, max_degree, with_loops)
from .spectral import Spectrum, SymMatrix, adjacency, eigenvalues, power_traces, spectrum
from .closed_form import CubicCoefficients, solve_bracketed_cubic, spec_complete, spec_complete_bipartite
from .energy import (EnergyReport, energy, energy_ordinary, energy_report, energy_upper_bound,
                     equality_degrees, lambda1_bounds, make_semiregular_equality_instance)

__version__ = "0.1.0"
