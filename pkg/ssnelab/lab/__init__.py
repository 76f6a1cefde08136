from .sampling import SamplingBox, SamplingPlan, SWEEP_GRID, log_grid, run_chunks
from .falsify import (CHECKS, Check, run_check, replay, falsify_ssne, falsify_sne, falsify_cld, falsify_supercoercivity,
                      falsify_firm_nonexpansiveness, falsify_uniform_monotonicity, falsify_quadratic_growth,
                      falsify_averaged, falsify_lipschitz, falsify_afp, falsify_inverse_uniform_monotonicity,
                      falsify_uniform_continuity, falsify_displacement_gap, falsify_inverse_supercoercivity,
                      falsify_rectangularity, falsify_certificates)
from .iteration import (iterate_displacement, check_rates, sigma_report, rate_vs_reality, locate_afp_point,
                        asymptotic_regularity_check)
from .witness import AfpWitness, solve_regularized_inclusion, construct_afp_witness
