"""Numerical kernels: factorizations, bases, placement, reconstruction and compressed sensing."""

from .basis import fit_pod, hard_threshold, hard_threshold_rank, project_coefficients, synthetic_snapshots, vandermonde_basis
from .csrecover import basic_solution, dct_analyze, dct_synthesize, incoherence, omp_recover, three_tone_demo
from .factor import condition_number, least_squares_pinv, qr_pivot, thin_svd, truncated_svd
from .interpolation import fekete_comparison
from .placement import (
    brute_force_optimal,
    compare_to_optimum,
    evaluate_criterion,
    select_deim_sensors,
    select_qr_sensors,
    select_random_sensors,
)
from .reconstruct import add_measurement_noise, coefficient_covariance_check, covariance_trace_check, gappy_reconstruct
from .sweeps import split_snapshots, sweep_noise, sweep_rank

__all__ = [
    "qr_pivot", "thin_svd", "truncated_svd", "least_squares_pinv", "condition_number",
    "fit_pod", "hard_threshold", "hard_threshold_rank", "project_coefficients",
    "vandermonde_basis", "synthetic_snapshots",
    "select_qr_sensors", "select_deim_sensors", "select_random_sensors",
    "brute_force_optimal", "evaluate_criterion", "compare_to_optimum",
    "gappy_reconstruct", "add_measurement_noise", "coefficient_covariance_check",
    "covariance_trace_check", "split_snapshots", "sweep_rank", "sweep_noise",
    "dct_analyze", "dct_synthesize", "omp_recover", "incoherence", "three_tone_demo",
    "basic_solution", "fekete_comparison",
]
