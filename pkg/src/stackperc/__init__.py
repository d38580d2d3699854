"""Stacked-contraction bootstrap percolation on random simplicial complexes,
with pedigrees, algebraic shifting and cofactor rigidity checks."""

__version__ = "0.1.0"

from .faces import FaceSet, InvalidFace, betti_top, boundary_matrix, colex_rank, colex_unrank
from .analysis import alpha, critical_p, fuss_catalan, gamma_critical, hat_gamma
from .bootstrap import Instance, close, close_naive, critical_step, incremental_add, run_instance, sample_complex
