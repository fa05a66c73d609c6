"""Numerical verification of distortion bounds for Möbius maps under the h metric."""
from .checks import (CheckResult, check_ball_automorphism, check_ball_to_halfspace,
                     check_halfspace_invariance, inversion_identity_gap, random_halfspace_map,
                     run_selftest)
from .estimate import BOUND_MARGIN, LipschitzReport, estimate_sup
from .lemmas import OracleResult, lemma_oracles
from .punctured import (PuncturedCase, PuncturedReport, case_bound, punctured_bound_check,
                        punctured_case_classify, subcase_bound)
from .ratio import RatioSample, ratio, ratio_batch
from .report import curve_to_csv, report_to_json, samples_to_csv
from .sharpness import geometric_grid, h2h_invariance_check, sharpness_scan_b2b, sharpness_scan_b2h

__all__ = [
    "BOUND_MARGIN", "CheckResult", "LipschitzReport", "OracleResult", "PuncturedCase", "PuncturedReport",
    "RatioSample", "case_bound", "check_ball_automorphism", "check_ball_to_halfspace",
    "check_halfspace_invariance", "curve_to_csv", "estimate_sup", "geometric_grid",
    "h2h_invariance_check", "inversion_identity_gap", "lemma_oracles", "punctured_bound_check",
    "punctured_case_classify", "random_halfspace_map", "ratio", "ratio_batch", "report_to_json",
    "run_selftest", "samples_to_csv", "sharpness_scan_b2b", "sharpness_scan_b2h", "subcase_bound",
]
