"""Scalar, polynomial and cohomological invariants of ring elements."""

from .characteristics import (
    as_element,
    clique_number,
    euler_characteristic,
    euler_polynomial,
    f_matrix,
    f_polynomial,
    f_vector,
    fermi_characteristic,
    term_clique_number,
    wu_characteristic,
)
from .cohomology import (
    LefschetzReport,
    betti_numbers,
    harmonic_basis,
    hodge_kernel_dims,
    induced_trace,
    interaction_betti,
    lefschetz,
    poincare_polynomial,
)
from .curvature import (
    CurvatureMap,
    IndexMap,
    curvature,
    index_expectation,
    poincare_hopf,
    term_curvature,
    term_indices,
)
from .dimension import complex_dimension, dimension, graph_inductive_dimension
from .energy import GreenFunction, McKeanSingerReport, green_functions, mckean_singer
from .report import FIELDS, InvariantReport, invariant_report

__all__ = [
    "FIELDS",
    "CurvatureMap",
    "GreenFunction",
    "IndexMap",
    "InvariantReport",
    "LefschetzReport",
    "McKeanSingerReport",
    "as_element",
    "betti_numbers",
    "clique_number",
    "complex_dimension",
    "curvature",
    "dimension",
    "euler_characteristic",
    "euler_polynomial",
    "f_matrix",
    "f_polynomial",
    "f_vector",
    "fermi_characteristic",
    "graph_inductive_dimension",
    "green_functions",
    "harmonic_basis",
    "hodge_kernel_dims",
    "index_expectation",
    "induced_trace",
    "interaction_betti",
    "invariant_report",
    "lefschetz",
    "mckean_singer",
    "poincare_hopf",
    "poincare_polynomial",
    "term_clique_number",
    "term_curvature",
    "term_indices",
    "wu_characteristic",
]
