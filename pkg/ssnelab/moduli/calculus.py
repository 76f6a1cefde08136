"""
-------------------------------------------------
SSNELab - Modulus calculus
-------------------------------------------------

Every conversion between the quantitative notions (strong nonexpansiveness,
averagedness, contraction for large distances, inverse uniform monotonicity of
the underlying monotone map, supercoercivity) is a pure function from moduli to
a new modulus whose provenance records the rule and its inputs.

Conventions: ε > 0 throughout; the ssne modulus χ bounds the gap
‖x−y‖² − ‖Tx−Ty‖² from below whenever ‖(x−y)−(Tx−Ty)‖ ≥ ε.
"""

from typing import List, Sequence, Tuple
from .Modulus import Modulus, SneModulus, CldGauge, EmpiricalStepModulus, Real
from ssnelab.core.Provenance import Provenance
from ssnelab.core.Error import PreconditionError
import numpy as np

__all__ = [
    "sne_from_ssne", "ssne_from_sne_real_line", "ssne_of_averaged", "ssne_of_cld", "cld_from_two_sided_sne",
    "ssne_of_composition", "ssne_from_inverse_uniform_monotonicity", "inverse_uniform_monotonicity_from_ssne",
    "resolvent_uniform_monotonicity", "quadratic_gauge", "resolvent_quadratic_growth", "displacement_gap_bound",
    "uniform_continuity_modulus", "inverse_uniform_monotonicity_of_cocoercive", "supercoercivity_of_averaged",
    "supercoercivity_of_cld", "supercoercivity_of_reflected_resolvent", "supercoercivity_of_inverse",
    "inverse_supercoercivity_of_cocoercive", "pointwise_max", "joint_afp_bound", "empirical_adequate_modulus",
]


def _check_alpha(alpha: float) -> float:
    if not 0 < alpha < 1:
        raise PreconditionError(f"Averagedness constant must lie in (0, 1), got {alpha}.")
    return float(alpha)

def _check_nonempty(items: Sequence, what: str) -> list:
    items = list(items)
    if not items:
        raise PreconditionError(f"{what} must not be empty.")
    return items


# --- strong nonexpansiveness ------------------------------------------------

def sne_from_ssne(chi: Modulus) -> SneModulus:
    """ω(b, ε) = χ(ε) / (2b)."""
    return SneModulus(lambda b, e: chi(e) / (2 * b), Provenance('sne_from_ssne', [chi.provenance]))


def ssne_from_sne_real_line(omega: SneModulus) -> Modulus:
    """
    On the real line a strongly nonexpansive map is strongly nonexpansive in the
    uniform sense with χ(ε) = min(ω(1,ε)², ε², ω(1,1/2)², 1).
    """
    def chi(e: np.ndarray) -> np.ndarray:
        w = omega(1.0, e)
        w_half = omega(1.0, 0.5)
        return np.minimum(np.minimum(w * w, e * e), np.minimum(w_half * w_half, 1.0))
    return Modulus(chi, Provenance('ssne_from_sne_real_line', [omega.provenance], dimension=1))


def ssne_of_averaged(alpha: float) -> Modulus:
    """χ(ε) = ε²(1−α)/α for an α-averaged map."""
    a = _check_alpha(alpha)
    c = (1 - a) / a
    return Modulus(lambda e: c * e * e, Provenance('ssne_of_averaged', alpha=a))


def ssne_of_cld(k: CldGauge) -> Modulus:
    """χ(ε) = (1 − K(ε/2)²)(ε/2)²."""
    def chi(e: np.ndarray) -> np.ndarray:
        h = e / 2
        kh = k(h)
        return (1 - kh * kh) * h * h
    return Modulus(chi, Provenance('ssne_of_cld', [k.provenance]))


def cld_from_two_sided_sne(omega_plus: SneModulus, omega_minus: SneModulus) -> CldGauge:
    """
    For T with both T and −T strongly nonexpansive:
    K(ε) = max(0, 1 − ψ(2ε, ε)/(2ε)), ψ = min(ω₊, ω₋).
    """
    def gauge(e: np.ndarray) -> np.ndarray:
        psi = np.minimum(omega_plus(2 * e, e), omega_minus(2 * e, e))
        return np.maximum(0.0, 1 - psi / (2 * e))
    return CldGauge(gauge, Provenance('cld_from_two_sided_sne', [omega_plus.provenance, omega_minus.provenance]))


def ssne_of_composition(chis: Sequence[Modulus]) -> Modulus:
    """χ(ε) = minᵢ χᵢ(ε/n) for the composition of n maps."""
    chis = _check_nonempty(chis, "List of ssne moduli")
    n = len(chis)

    def chi(e: np.ndarray) -> np.ndarray:
        out = np.asarray(chis[0](e / n))
        for c in chis[1:]:
            out = np.minimum(out, c(e / n))
        return out
    return Modulus(chi, Provenance('ssne_of_composition', [c.provenance for c in chis], n=n))


# --- monotone operators and their resolvents ---------------------------------

def ssne_from_inverse_uniform_monotonicity(psi: Modulus) -> Modulus:
    """χ(ε) = 4ψ(ε/2): modulus of the reflected resolvent R_A."""
    return Modulus(lambda e: 4 * psi(e / 2), Provenance('ssne_from_inverse_uniform_monotonicity', [psi.provenance]))


def inverse_uniform_monotonicity_from_ssne(chi: Modulus) -> Modulus:
    """ψ(ε) = χ(2ε)/4: inverse of `ssne_from_inverse_uniform_monotonicity`."""
    return Modulus(lambda e: chi(2 * e) / 4, Provenance('inverse_uniform_monotonicity_from_ssne', [chi.provenance]))


def resolvent_uniform_monotonicity(psi: Modulus) -> Modulus:
    """α_ψ(ε) = min(ψ(ε/2), ε²/4): J_A is uniformly monotone with this modulus."""
    return Modulus(lambda e: np.minimum(psi(e / 2), e * e / 4), Provenance('resolvent_uniform_monotonicity', [psi.provenance]))


def quadratic_gauge(alpha: Modulus) -> Modulus:
    """β_α(ε) = min(α(1)/4, α(ε)) for ε < 1 and α(1)/4 otherwise."""
    def beta(e: np.ndarray) -> np.ndarray:
        a1 = alpha(1.0) / 4
        return np.where(e < 1, np.minimum(a1, alpha(e)), a1)
    return Modulus(beta, Provenance('quadratic_gauge', [alpha.provenance]))


def resolvent_quadratic_growth(psi: Modulus) -> Modulus:
    """β for J_A: ⟨x−y, J_A x − J_A y⟩ ≥ β(ε)‖x−y‖² once ‖x−y‖ ≥ ε."""
    return quadratic_gauge(resolvent_uniform_monotonicity(psi))


def displacement_gap_bound(psi: Modulus) -> Modulus:
    """
    L_ψ(ε) = max(4ε / (√(1+4β(ε)) − 1), 2ε), β = β_{α_ψ}: ‖Ax − Ay‖ ≥ L_ψ(ε) forces ‖x − y‖ > ε.
    """
    beta = resolvent_quadratic_growth(psi)

    def gap(e: np.ndarray) -> np.ndarray:
        b = beta(e)
        # 4ε/(√(1+4β)−1) rewritten without the cancellation for small β
        return np.maximum(e * (np.sqrt(1 + 4 * b) + 1) / b, 2 * e)
    return Modulus(gap, Provenance('displacement_gap_bound', [psi.provenance]))


def uniform_continuity_modulus(psi: Modulus) -> Modulus:
    """γ_ψ(ε) = min(ψ(ε)/L_ψ(ε), ε): ‖x−y‖ < γ(ε) implies ‖Ax−Ay‖ < ε."""
    l = displacement_gap_bound(psi)
    return Modulus(lambda e: np.minimum(psi(e) / l(e), e), Provenance('uniform_continuity_modulus', [psi.provenance]))


def inverse_uniform_monotonicity_of_cocoercive(c: float) -> Modulus:
    """ψ(ε) = cε² for a c-cocoercive map."""
    if not c > 0:
        raise PreconditionError(f"Cocoercivity constant must be positive, got {c}.")
    return Modulus(lambda e: c * e * e, Provenance('inverse_uniform_monotonicity_of_cocoercive', c=c))


# --- supercoercivity -----------------------------------------------------------

def supercoercivity_of_averaged(alpha: float) -> Modulus:
    """ν(M) = Mα/(1−α)."""
    a = _check_alpha(alpha)
    c = a / (1 - a)
    return Modulus(lambda m: c * m, Provenance('supercoercivity_of_averaged', alpha=a))


def supercoercivity_of_cld(k: CldGauge) -> Modulus:
    """ν(M) = max(2, 4M/(1 − K(1)²))."""
    k1 = float(k(1.0))
    if not 0 <= k1 < 1:
        raise PreconditionError(f"Gauge must satisfy K(1) < 1, got K(1) = {k1}.")
    c = 4 / (1 - k1 * k1)
    return Modulus(lambda m: np.maximum(2.0, c * m), Provenance('supercoercivity_of_cld', [k.provenance], k1=k1))


def supercoercivity_of_reflected_resolvent(eta: Modulus) -> Modulus:
    """ν(M) = 2η(M/2) for R_A when A⁻¹ is supercoercive with η."""
    return Modulus(lambda m: 2 * eta(m / 2), Provenance('supercoercivity_of_reflected_resolvent', [eta.provenance]))


def supercoercivity_of_inverse(nu: Modulus) -> Modulus:
    """η(N) = ν(2N)/2: inverse of `supercoercivity_of_reflected_resolvent`."""
    return Modulus(lambda n: nu(2 * n) / 2, Provenance('supercoercivity_of_inverse', [nu.provenance]))


def inverse_supercoercivity_of_cocoercive(c: float) -> Modulus:
    """η(N) = N/c for a c-cocoercive map."""
    if not c > 0:
        raise PreconditionError(f"Cocoercivity constant must be positive, got {c}.")
    return Modulus(lambda n: n / c, Provenance('inverse_supercoercivity_of_cocoercive', c=c))


# --- combinators -----------------------------------------------------------------

def pointwise_max(first: Modulus, second: Modulus) -> Modulus:
    return Modulus(lambda e: np.maximum(first(e), second(e)),
                   Provenance('pointwise_max', [first.provenance, second.provenance]),
                   nonnegative=first.nonnegative or second.nonnegative)


def joint_afp_bound(bounds: Sequence[Modulus]) -> Modulus:
    """A single K bounding ε-fixed points of every map: the pointwise maximum."""
    bounds = _check_nonempty(bounds, "List of fixed-point bounds")

    def k(e: np.ndarray) -> np.ndarray:
        out = np.asarray(bounds[0](e))
        for b in bounds[1:]:
            out = np.maximum(out, b(e))
        return out
    return Modulus(k, Provenance('joint_afp_bound', [b.provenance for b in bounds]), nonnegative=True)


def empirical_adequate_modulus(samples: Sequence[Tuple[float, float]]) -> EmpiricalStepModulus:
    return EmpiricalStepModulus(samples)
