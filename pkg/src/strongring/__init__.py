"""Strong ring of simplicial complexes: arithmetic, operators and invariants."""

from . import dynamics, exact_linalg, graph_ops, invariants, operators, spectral
from .core import *  # noqa: F401,F403
from .core import __all__ as _core_all
from .errors import *  # noqa: F401,F403
from .graph import Graph
from .invariants import euler_characteristic, fermi_characteristic, green_functions, invariant_report
from .operators import connection_laplacian, connection_operator, operator_bundle

__version__ = "0.1.0"
__all__ = [
    *_core_all,
    "Graph",
    "connection_laplacian",
    "connection_operator",
    "dynamics",
    "euler_characteristic",
    "exact_linalg",
    "fermi_characteristic",
    "graph_ops",
    "green_functions",
    "invariant_report",
    "invariants",
    "operator_bundle",
    "operators",
    "spectral",
]
