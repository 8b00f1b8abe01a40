"""Exact checks, sampled experiments and the suite runner."""

from .commutator import commutator_coefficients, commutator_vector
from .crosscheck import check_exact_vs_numeric
from .experiments import aop_bound_experiment, check_aop_decay, check_tail_decay, check_telescoping
from .relations import (
    check_chi_recursion,
    check_inner_products,
    check_word_orthonormality,
    check_xi_chi_expansion,
    check_xi_shift_no_lower_terms,
    check_xi_shift_pure_u,
    check_xi_shift_recursion,
)
from .report import FAIL, NOT_APPLICABLE, PASS, VARIANT, CheckResult, Report, validate_report_json
from .suite import REGISTRY, CheckSpec, ConfigError, SuiteConfig, all_lemma_ids, run_suite

__all__ = [
    "CheckResult", "CheckSpec", "ConfigError", "FAIL", "NOT_APPLICABLE", "PASS", "REGISTRY", "Report",
    "SuiteConfig", "VARIANT", "all_lemma_ids", "aop_bound_experiment", "check_aop_decay",
    "check_chi_recursion", "check_exact_vs_numeric", "check_inner_products", "check_tail_decay",
    "check_telescoping", "check_word_orthonormality", "check_xi_chi_expansion",
    "check_xi_shift_no_lower_terms", "check_xi_shift_pure_u", "check_xi_shift_recursion",
    "commutator_coefficients", "commutator_vector", "run_suite", "validate_report_json",
]
