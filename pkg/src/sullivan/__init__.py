"""Sullivan minimal models of finitely presented CDGAs over the rationals."""

__version__ = "0.1.0"

from .graded_algebra import (
    Element,
    Generator,
    GeneratorTable,
    UnknownGenerator,
    decompose_homogeneous,
    format_element,
    monomial_basis,
    multiply,
)
from .cdga import (
    FreeCDGA,
    Morphism,
    PresentedCDGA,
    ValidationError,
    apply_differential,
    apply_morphism,
    check_minimality,
    make_free,
    validate,
    validate_morphism,
)
from .linalg import RationalMatrix, rref
from .cohomology import NoSolution, betti_numbers, cohomology, induced_map, solve_in_degree
from .minimal_model import (
    KillCapExceeded,
    add_cohomology,
    construct_minimal_model,
    kill_kernel,
    rational_homotopy_dims,
    verify_quasi_isomorphism,
)
from .models_library import (
    LieAlgebraPresentation,
    chevalley_eilenberg,
    heisenberg_model,
    lie_nilpotency_class,
    projective_model,
    sphere_model,
    tensor_product,
    torus_model,
)
from .ks_extension import (
    check_tensor_minimality,
    check_triangularity,
    ks_extension,
    total_space_dims,
)
from .description import ParseError, model_to_description, parse_model
