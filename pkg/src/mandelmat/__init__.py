"""Mandelbrot matrices: construction, dominant eigenvectors, singular spectra and eigenvalue homotopies."""

from .errors import (
    DomainError,
    InvalidOrderError,
    NonConvergenceError,
    PathCollisionError,
    SizeError,
    StructureViolationError,
)
from .graph import DigraphEdgeList, digraph, is_strongly_connected, period, strongly_connected_components
from .homotopy import (
    BivariatePoly,
    EigenPath,
    chained_figure_data,
    char_poly_T,
    discriminant_positivity,
    sigma_bound_check,
    track_paths,
)
from .io import export_dot, export_matrix_market, read_matrix_market
from .matrices import (
    HomotopyMatrix,
    SparseIntMatrix,
    anti_identity,
    dimension,
    homotopy_matrix,
    jordan_wielandt,
    mandelbrot_inverse,
    mandelbrot_matrix,
    s_matrix,
)
from .perronvec import (
    EigvecResult,
    eigenvector_recursive,
    eigenvector_solve,
    gould_head_check,
    half_scaling_factor,
    leading_entry_pi_check,
    middle_entry_check,
    tail_convergence_check,
)
from .plotdata import export_plot_data
from .polyeval import PerronResult, eval_C, eval_p, perron_root, perron_seed, periodic_orbit_check, spectrum_small
from .spectra import (
    SingularSpectrum,
    SingularTriple,
    all_singular_values,
    dominant_singular_triple,
    jw_pairing_check,
    s_facts_check,
    sign_alternation_check,
)

__version__ = "0.1.0"
