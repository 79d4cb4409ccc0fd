"""Exact solvers for the (minimum-cost) partially ordered Hamiltonian path problem.

Given a graph and a strict partial order on its vertices, find a
Hamiltonian path whose vertex sequence is a linear extension of the order,
of minimum total edge cost. Solvers:

* :func:`solve_bruteforce`: exhaustive reference search;
* :func:`solve_width_dp`: polynomial for orders of bounded width;
* :func:`solve_dlo_dp`: fixed-parameter in the distance to a linear order;
* :func:`solve_outerplanar`: quadratic on outerplanar graphs.

All costs are exact :class:`fractions.Fraction` values. Among optimal paths
every solver returns the lexicographically smallest vertex sequence.
"""
from .dlo_dp import maximum_chain, solve_dlo_dp
from .errors import (
    BadColoring,
    BadParams,
    BlockTreeNotPath,
    CycleDetected,
    NoFeasibleStrategy,
    NonEdgeStep,
    NotAPermutation,
    NotOriented,
    NotOuterplanar,
    NotOuterplanar2Connected,
    OrderViolation,
    ParseError,
    PohppError,
    SizeGuard,
    SolutionRejected,
    StateBudgetExceeded,
)
from .formats import emit_instance, parse_instance
from .generate import generate
from .model import (
    ChainDecomposition,
    Graph,
    Instance,
    OrderedHamPath,
    PartialOrder,
    build_order,
    chain_decomposition,
    dlo,
    height,
    is_linear_extension,
    total_order,
    trivial_order,
    verify_solution,
    width,
)
from .oracle import count_solutions, enumerate_solutions, solve_bruteforce
from .outerplanar import find_outer_cycle, solve_outerplanar, solve_outerplanar_2conn
from .solve import SolveReport, select_algorithm, solve
from .width_dp import solve_width_dp, tsppc_reduce

__version__ = "0.1.0"

__all__ = [
    "BadColoring", "BadParams", "BlockTreeNotPath", "ChainDecomposition", "CycleDetected", "Graph",
    "Instance", "NoFeasibleStrategy", "NonEdgeStep", "NotAPermutation", "NotOriented", "NotOuterplanar",
    "NotOuterplanar2Connected", "OrderViolation", "OrderedHamPath", "ParseError", "PartialOrder",
    "PohppError", "SizeGuard", "SolutionRejected", "SolveReport", "StateBudgetExceeded", "build_order",
    "chain_decomposition", "count_solutions", "dlo", "emit_instance", "enumerate_solutions",
    "find_outer_cycle", "generate", "height", "is_linear_extension", "maximum_chain", "parse_instance",
    "select_algorithm", "solve", "solve_bruteforce", "solve_dlo_dp", "solve_outerplanar",
    "solve_outerplanar_2conn", "solve_width_dp", "total_order", "trivial_order", "tsppc_reduce",
    "verify_solution", "width",
]
