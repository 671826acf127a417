"""Verification toolkit for inert-prime inequalities and ternary forms."""

__version__ = "0.1.0"

from .arith import SatProduct, factorize, is_prime, is_square, kronecker, odd_part
from .sequences import (
    Discriminant,
    DiscriminantError,
    InertSequence,
    PreconditionError,
    SequenceCapError,
    find_inert_divisor,
    make_discriminant,
    omega_minus,
    theorem1_setup,
    turning_index,
)
from .inequalities import (
    ScanResult,
    scan_lemma22_case2,
    scan_q1_window,
    scan_q4_large,
    scan_small_pairs,
    verify_lemma22_bound,
    verify_lemma23,
    verify_panaitopol,
    verify_theorem1,
)
from .ternary import (
    TernaryForm,
    binary_represents,
    dickson_witness_search,
    inert_binary_nonrepresentation_check,
    mod8_profile,
    represents,
    theorem5_analyze,
)
