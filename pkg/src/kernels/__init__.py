"""
Kernels Package
===============
Heat and potential kernels of the Laguerre, Hermite-type and Dunkl settings,
their envelopes, L^p-L^q regions and norm experiments
"""

from .signed_log import SignedLogValue
from .special_functions import Params, laguerre_eigenvalue, dunkl_eigenvalue, psi_alpha, phi_alpha
from .quadrature import QuadratureConfig, QuadratureResult
from .heat_kernels import hermite_heat, laguerre_heat, dunkl_heat, her_lag_envelope, her_dun_envelope
from .aux_integrals import j_integral, e_integral, j_envelope, e_envelope
from .potential_kernels import KernelKind, potential_kernel, potential_kernel_with_error, potential_kernel_grid
from .certificates import EnvelopeConstants, RatioReport
from .envelopes import GridSpec, envelope_conv, envelope_dunkl, envelope_hermite_osc, exp_je_decomposition, calibrate_envelope, check_certificate
from .lp_lq_regions import RegionPoint, Verdict, bounded_conv, bounded_dunkl, bounded_hermite_type, figure_data
from .norm_experiments import (
    Part,
    Measure,
    SplitKernel,
    row_norm,
    counterexample_family,
    apply_operator,
    hardy_operator,
    negativity_scan,
)
from .suites import SUITES, SuiteResult, run_suite

__all__ = [
    'SignedLogValue',
    'Params',
    'laguerre_eigenvalue',
    'dunkl_eigenvalue',
    'psi_alpha',
    'phi_alpha',
    'QuadratureConfig',
    'QuadratureResult',
    'hermite_heat',
    'laguerre_heat',
    'dunkl_heat',
    'her_lag_envelope',
    'her_dun_envelope',
    'j_integral',
    'e_integral',
    'j_envelope',
    'e_envelope',
    'KernelKind',
    'potential_kernel',
    'potential_kernel_with_error',
    'potential_kernel_grid',
    'EnvelopeConstants',
    'RatioReport',
    'GridSpec',
    'envelope_conv',
    'envelope_dunkl',
    'envelope_hermite_osc',
    'exp_je_decomposition',
    'calibrate_envelope',
    'check_certificate',
    'RegionPoint',
    'Verdict',
    'bounded_conv',
    'bounded_dunkl',
    'bounded_hermite_type',
    'figure_data',
    'Part',
    'Measure',
    'SplitKernel',
    'row_norm',
    'counterexample_family',
    'apply_operator',
    'hardy_operator',
    'negativity_scan',
    'SUITES',
    'SuiteResult',
    'run_suite',
]
