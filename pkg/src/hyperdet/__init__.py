"""Exact invariants of multidimensional matrices representing instanton monads."""
from ._backend import BACKEND
from .errors import DimensionError, HyperdetError, InputError, ParseError, UnsupportedFormatError
from .factory import (
    orbit_sample,
    pair_from_symplectic,
    planted_degenerate,
    planted_degenerate_pair,
    random_symplectic,
    random_unimodular,
    special_symplectic,
)
from .invariants import (
    certify_nondegenerate,
    delta_matrix,
    dimension_identity,
    invariant_D,
    invariant_Dtilde,
    r_matrix,
    s_matrix,
    weights,
)
from .linalg import Matrix, Poly, det, det_mod_p, kernel_basis, poly_gcd, rank
from .symmetric import (
    enumerate_monomials,
    monomial_rank,
    monomial_unrank,
    multiply_index,
    sym_power_matrix,
)
from .tensor import (
    DegeneracyWitness,
    PairTensor,
    SymplecticForm,
    Tensor3,
    act,
    check_witness,
    from_json,
    is_complex_pair,
    is_complex_symplectic,
    is_degenerate_exact_dimv2,
    slice_matrix,
    to_json,
)

__version__ = "0.1.0"
