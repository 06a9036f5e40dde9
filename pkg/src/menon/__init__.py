"""Exact Menon-type identities for arithmetic functions of several variables."""

from .errors import BudgetExceeded, MenonError, RangeOverflow, ValidationError
from .groups import (
    cyclic_count_burnside, cyclic_count_enumerate, cyclic_count_formula,
    cyclic_count_prime_power_pair,
)
from .identities import IdentityReport, decompose_n_d, named_identity
from .sums import MenonInstance, sum_R_direct, sum_R_formula, sum_S_direct, sum_S_formula

__version__ = "0.1.0"
