"""Exact Orlik-Solomon computations for simple matroids.

Circuit matroids, exterior-algebra Groebner bases per variable order, graded
dimensions of the decomposable OS algebra over exact fields, and integer
Smith-normal-form torsion certificates.
"""

__version__ = "0.1.0"

from .domains import GF, QQ, ZZ, Domain, DomainMismatchError, domain_from_tag
from .errors import InternalInvariantError
from .exterior import (
    EQ,
    GT,
    LT,
    ExtElement,
    ReductionError,
    VariableOrder,
    ZeroElementError,
    boundary,
    compare,
    divides,
    elements_of,
    initial_monomial,
    mask_from,
    normal_form,
    wedge,
)
from .matroid import (
    AntichainViolationError,
    Arrangement,
    IncompleteCircuitsError,
    Matroid,
    MatroidError,
    NonSimpleError,
)
from .osideal import (
    GradedDims,
    GroebnerBasis,
    decomposable_dim_by_counting,
    forge_basis,
    graded_dims,
    nbc_dimension_check,
    os_generators,
    reduced_gb_oracle,
)
from .search import (
    Exhaustive,
    RandomSampling,
    SearchResult,
    minimize_forge_count,
    minimize_total_gb_size,
    verify_proposition,
)
from .torsion import (
    IntMatrix,
    SNFResult,
    TorsionReport,
    presentation_Aplus,
    quotient_group_I_mod_decomposable,
    saturation_check_I,
    smith_normal_form,
    torsion_report,
)
