"""germlab: exact invariants of determinantal singularity germs.

The package computes, in exact rational arithmetic with Nakayama-certified
colengths, the classical invariants attached to a matrix of polynomial
germs A: tangent-space codimensions under the matrix equivalence groups
(tau_gl, tau_sl and the symmetric / skew-symmetric congruence variants),
finite-determinacy bounds and miniversal unfoldings, Milnor and Tjurina
numbers of the associated hypersurfaces and complete intersections,
boundary Milnor numbers, chart-by-chart Tjurina transforms with the third
Betti number of 2 x 3 determinantal 3-folds, and the closed-form topology
of generic determinantal varieties.  A verification harness recomputes
the classical classification tables of simple matrix singularities that
ship with the package as structured datasets.

Every dimension is a certified colength: a number is only reported when a
Nakayama certificate proves the truncation order sufficed, so results are
exact, never floating-point and never silently truncated.
"""

from .ring import (
    QQ,
    ParseError,
    Poly,
    VariableSet,
    format_poly,
    monomials_of_degree,
    parse_poly,
)
from .jetlin import (
    DEFAULT_MAX_ORDER,
    ColengthResult,
    UncertifiedError,
    colength,
    span_equal,
)
from .detideal import (
    MatrixGerm,
    buchsbaum_eisenbud_vector,
    det,
    expected_codim,
    hilbert_burch_vector,
    ideal_generators,
    minors,
    parse_matrix,
    pfaffian,
    pfaffians,
    reduce_units,
)
from .tangent import (
    UnfoldingBasis,
    UnitEntriesError,
    corank_differential,
    determinacy_bound,
    miniversal_unfolding,
    tau,
    tau_icis,
)
from .invariants import (
    BoundaryMilnor,
    MatrixWeights,
    SingularityLabel,
    WeightVector,
    ade_recognize,
    boundary_milnor,
    milnor,
    milnor_icis,
    quasi_homogeneous,
    quasi_homogeneous_matrix,
    singular_milnor_hypersurface,
    tjurina_number,
)
from .tjurina import (
    ChartAnalysis,
    b3_threefold,
    betti_numbers_threefold,
    tjurina_charts,
    tjurina_transform,
)
from .geom import (
    EulerInputs,
    GenericProfile,
    HomotopyDescriptor,
    MilnorFiberTopology,
    bouquet_descriptor,
    euler_characteristic,
    generic_profile,
    link_homotopy_2xn,
    milnor_fiber_topology,
    stable_homotopy_group,
)
from .tables import (
    Outcome,
    TableFormatError,
    TableRow,
    VerificationReport,
    dump_tables,
    dumps,
    load_shipped,
    load_tables,
    loads,
    shipped_names,
    shipped_path,
    verify,
)

__version__ = "0.1.0"

__all__ = [
    "QQ", "ParseError", "Poly", "VariableSet", "format_poly",
    "monomials_of_degree", "parse_poly",
    "DEFAULT_MAX_ORDER", "ColengthResult", "UncertifiedError", "colength",
    "span_equal",
    "MatrixGerm", "buchsbaum_eisenbud_vector", "det", "expected_codim",
    "hilbert_burch_vector", "ideal_generators", "minors", "parse_matrix",
    "pfaffian", "pfaffians", "reduce_units",
    "UnfoldingBasis", "UnitEntriesError", "corank_differential",
    "determinacy_bound", "miniversal_unfolding", "tau", "tau_icis",
    "BoundaryMilnor", "MatrixWeights", "SingularityLabel", "WeightVector",
    "ade_recognize", "boundary_milnor", "milnor", "milnor_icis",
    "quasi_homogeneous", "quasi_homogeneous_matrix",
    "singular_milnor_hypersurface", "tjurina_number",
    "ChartAnalysis", "b3_threefold", "betti_numbers_threefold",
    "tjurina_charts", "tjurina_transform",
    "EulerInputs", "GenericProfile", "HomotopyDescriptor",
    "MilnorFiberTopology", "bouquet_descriptor", "euler_characteristic",
    "generic_profile", "link_homotopy_2xn", "milnor_fiber_topology",
    "stable_homotopy_group",
    "Outcome", "TableFormatError", "TableRow", "VerificationReport",
    "dump_tables", "dumps", "load_shipped", "load_tables", "loads",
    "shipped_names", "shipped_path", "verify",
    "__version__",
]
