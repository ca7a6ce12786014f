"""
Behave Step Definitions Package

This package contains all step definitions for the kernel check scenarios.

Step Files:
- special_functions_steps.py: Signed log values, Bessel functions, Laguerre and Hermite functions
- quadrature_steps.py: Double-exponential quadrature in the log domain
- heat_kernels_steps.py: Hermite, Laguerre and Dunkl heat kernels and their envelopes
- aux_integrals_steps.py: The J and E integrals and their envelopes
- potential_kernels_steps.py: Potential kernels, envelopes, grids and calibration
- lp_lq_regions_steps.py: Exact L^p-L^q boundedness verdicts and figure data
- norm_experiments_steps.py: Row norms, counterexample families, Hardy-type and negativity checks
- suites_steps.py: Named experiment suites
- cli_steps.py: The lpl command-line front-end
- common_steps.py: Shared/reusable steps across features

Usage:
    Behave automatically discovers all step definitions in this package.
    No manual imports are required.
"""

# This file makes the 'steps' directory a Python package
# Behave will automatically discover all @given, @when, @then decorators
# in any .py files within this directory
