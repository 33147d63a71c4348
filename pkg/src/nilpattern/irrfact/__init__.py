"""Irrationality tests and rational/irrational factorisation of polynomial sequences."""
from .qualitative import (
    AdditiveSplit, Factorisation, Verdict, apply_map, irrational_support, is_filtration_irrational,
    is_linearly_irrational, is_linearly_irrational_mod, is_linearly_irrational_seq,
    is_strongly_irrational, qual_additive_decompose, qual_factorise,
)
from .quantitative import (
    ENUM_GUARD, IntegerLinearMap, QuantSplit, QuantVerdict, ThresholdReport,
    check_linear_irrational, check_quant_filtration_irrational, check_quant_linear_irrational,
    dual_box, enumerate_integer_maps, factorisation_report, irrationality_crossing, lift_dual,
    quant_additive_decompose, quant_factorise, unique_subspace_threshold,
)
