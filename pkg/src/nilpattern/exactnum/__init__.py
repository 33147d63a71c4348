"""Exact scalar and linear-algebra layer."""
from .scalar import (
    ONE, SymScalar, assemble, components, default_assignment, dist_to_int,
    fraction_str, height, parse_assignment, parse_monomial, sym, sym_eval,
    sym_is_rational, to_fraction,
)
from .intmat import hnf, integer_kernel, rational_nullspace, rref, solve
from .subspace import (
    RationalSubspace, full_space, kernel_subspace, map_complexity,
    span_of_elements, span_subspace, subspace_complexity, subspace_contains,
    subspace_equal, subspace_intersect, subspace_sum, zero_space,
)
