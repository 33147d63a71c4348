"""Nilpotent Lie algebras, BCH, polynomial sequences and filtrations."""
from .algebra import (
    AlgebraError, Filtration, FiltrationError, NilLieAlgebra, abelian, direct_sum,
    filiform, free_step3_rank2, h_spaces, heisenberg, is_adapted, is_subalgebra,
    lower_central_filtration, smallest_subalgebra, validate_filtration,
)
from .bch import MAX_WEIGHT, StepTooLarge, bch, bch_inverse, bch_many
from .lattice import (
    Rescaling, is_integer_valued, is_nesting, multiplicative_rescale, nesting_basis, rational_period,
)
from .norms import (
    binomial_to_monomial, cinf_norm_binomial, cinf_norm_monomial, is_rational_vector,
    is_small_seq, monomial_to_binomial, seq_denominator, smallness_constant,
)
from .polyseq import N_SYMBOL, NotAdaptedError, PolySeq, poly_inverse, poly_star, poly_star_many
