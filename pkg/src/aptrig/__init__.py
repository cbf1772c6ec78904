"""Orlicz-norm approximation toolkit for almost periodic trigonometric polynomials.

Signals are finite sums sum_k A_k exp(i lambda_k x) on a symmetric spectrum.
The package computes their Musielak-Orlicz coefficient norms, generalized
moduli of smoothness, best approximations by spectral truncation, and
certifies the direct and inverse inequalities connecting them, including the
sharp-constant covering LP and the sharpness equalities.
"""

from .approximation import (BestApproxProfile, best_approx_profile,
                            best_approximation, best_approximation_at_cutoff,
                            extremal_function, partial_sum, sharpness_probe)
from .certificates import Certificate
from .errors import (AptrigError, ConfigError, DegeneratePhiError,
                     InvalidFamilyError, InvalidPhiError, OrliczRangeError,
                     PreconditionError, SpectrumGapError, UnsupportedSizeError)
from .inverse import (BariCheck, ClassMembershipReport, GapFormBounds, Majorant,
                      PowerLaw, TabulatedMajorant, bari_condition_check,
                      class_membership_report, inverse_bound_gap,
                      inverse_bound_phi, inverse_bound_power, parse_majorant,
                      sharpness_ratio_scan, verify_inverse)
from .jackson import (SharpConstant, WeightFunction, in_lower_bound,
                      jackson_integral, km_constant, km_constant_closed,
                      km_constant_series, sharp_constant_lp, sine_power_mean,
                      uniform_direct_constant, uniform_direct_constant_integer,
                      verify_mean_direct, verify_steklov_direct,
                      verify_uniform_direct, verify_weighted_direct,
                      weighted_modulus_integral)
from .orlicz import (ConjugateFunction, CustomTabulated, DualWeights, Linear,
                     OrliczFamily, OrliczFunction, PowerScaled, StepanetsPower,
                     centered_norm, conjugate, conjugate_numeric,
                     dual_sup_oracle, orlicz_norm, sequence_norm,
                     sequence_norm_batch, young_violation)
from .report import (RunConfig, Series, VerificationReport, emit_csv,
                     emit_plots, run_suite)
from .signal import (APPolynomial, HarmonicMagnitudes, Spectrum,
                     ThetaCollection, difference_theta, empirical_mean,
                     empirical_mean_abs2, evaluate, fourier_coefficient,
                     harmonic_magnitudes, load_signal, save_signal, sinc,
                     steklov, steklov_difference)
from .smoothness import (CustomPhi, FromTheta, ModulusCurve, ModulusRequest,
                         PhiFunction, SincPower, SinePower, classical_modulus,
                         modulus, modulus_bracket, parse_phi,
                         phi_difference_norm, phi_value, steklov_modulus)

__version__ = "0.1.0"
