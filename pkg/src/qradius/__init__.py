"""q-numerical radius toolkit.

Computes q-numerical radii and range boundaries of complex matrices, carries
the convex-gauge (Orlicz) inequality machinery, classifies q-sectorial
matrices, and verifies a catalog of radius inequalities on worked examples
and seeded random campaigns.
"""

from .bounds import BoundOutcome, BoundSpec, Estimator, catalog, compare_bounds, evaluate, tightness
from .errors import QradiusError
from .harness import CampaignConfig, FigureData, fig4_crossover, figure_data, paper_examples_regression, run_campaign
from .linalg import (classical_numerical_radius, commutator, hermitian_eigenvalues, hermitian_parts,
                     load_matrix, matrix_from_json, matrix_to_json, random_matrix, save_matrix, spectral_norm)
from .orlicz import (ComplementaryPair, OrliczFn, builtin, complementary, hermite_hadamard_integral,
                     jensen_mean_check, kernel, right_inverse, young_check)
from .qrange import (BoundaryPolygon, EllipseDisc, QParam, boundary_polygon, ellipse_max_modulus,
                     hermitian_qrange_ellipse, q_numerical_radius, q_radius_bruteforce, reduced_objective,
                     support_function)
from .sectorial import (SectorialVerdict, SectorParams, closure_suite, hermitian_q_sectorial_test,
                        random_q_sectorial, sector_membership, sectorial_index_estimate)

__version__ = "0.1.0"

__all__ = [
    "BoundOutcome", "BoundSpec", "BoundaryPolygon", "CampaignConfig", "ComplementaryPair",
    "EllipseDisc", "Estimator", "FigureData", "OrliczFn", "QParam", "QradiusError",
    "SectorialVerdict", "SectorParams", "boundary_polygon", "builtin", "catalog",
    "classical_numerical_radius", "closure_suite", "commutator", "compare_bounds",
    "complementary", "ellipse_max_modulus", "evaluate", "fig4_crossover", "figure_data",
    "hermite_hadamard_integral", "hermitian_eigenvalues", "hermitian_parts",
    "hermitian_q_sectorial_test", "hermitian_qrange_ellipse", "jensen_mean_check", "kernel",
    "load_matrix", "matrix_from_json", "matrix_to_json", "paper_examples_regression",
    "q_numerical_radius", "q_radius_bruteforce", "random_matrix", "random_q_sectorial",
    "reduced_objective", "right_inverse", "run_campaign", "save_matrix", "sector_membership",
    "sectorial_index_estimate", "spectral_norm", "support_function", "tightness", "young_check",
]
