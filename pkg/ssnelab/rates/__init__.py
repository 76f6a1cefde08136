from .extended import INF, OVERFLOW_TEXT, ExtReal, is_overflow, finite_or_inf, ext_ceil, ext_mul, format_ext
from .bounds import PhiBound, SigmaInputs, theta_bound, phi_bound, psi_bound, psi_modulus, gamma_rate, sigma_rate, rate_grid
