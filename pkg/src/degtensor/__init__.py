"""Exact tensor algebra over real inner product spaces with degenerate metrics.

The metric may be degenerate: its radical (the directions orthogonal to
everything) obstructs index raising and covariant contraction. This package
computes the canonical structures that survive the degeneracy, exactly over
the rationals: signature and radical, the flat map and its image, the
canonical dual pairing on that image, screen-dependent extensions, and gated
tensor contractions that refuse the cases where no invariant answer exists.
"""

from .errors import (
    AlgebraError,
    BadScreen,
    DimensionMismatch,
    NonSymmetric,
    NotOrthogonal,
    NotRadicalAnnihilator,
    ParseError,
    SingularBasis,
    SlotOutOfRange,
    SpaceMismatch,
)
from .exact_linalg import (
    Matrix,
    Scalar,
    Vector,
    basis_vector,
    congruence_diagonalize,
    dot,
    inverse,
    kernel,
    normalize_diagonal,
    rank,
    rref,
    scalar,
    solve,
    vector,
    zero_vector,
)
from .space import (
    DimensionReport,
    RadicalBasis,
    Space,
    Subspace,
    check_dimension_identity,
    contains,
    inner,
    intersection_dim,
    orth_complement,
    orthogonal_radical_basis,
    radical,
    signature,
    span,
    subspace_sum,
    subspaces_equal,
)
from .dual import (
    AnnihView,
    Covector,
    FactorPair,
    ScreenDecomposition,
    annih_view,
    annihilator_of_subspace,
    choose_screen,
    cometric_in_dual_basis,
    cometric_value,
    dual_basis,
    extend_cometric,
    factor_pair,
    flat,
    flat_star,
    in_flat_image,
)
from .tensor import (
    Tensor,
    change_basis,
    contract_covariant,
    contract_mixed,
    contract_with_metric,
    from_covector,
    from_vector,
    gram_tensor,
    insert_covector,
    insert_vector,
    is_radannih_slot,
    is_radical_slot,
    lower_index,
    raise_index_screen,
    reorder_slots,
    tensor_product,
)

__version__ = "0.1.0"
