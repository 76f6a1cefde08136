"""
-------------------------------------------------
SSNELab - Rectangularity, fixed-point and regularity bounds
-------------------------------------------------

Θ bounds ⟨a−c, Ab−Aa⟩ over norm-bounded arguments, Φ and Ψ bound the norm of
a δ-fixed point of a composition of two resp. m reflected resolvents, Γ and Σ
are rates of asymptotic regularity for the iterates of such compositions.

All functions are pure. Intermediate doubles that overflow propagate as the
+∞ marker (`extended.INF`), never as an exception.
"""

from typing import Any, Dict, List, Sequence, Tuple
from dataclasses import dataclass
from ssnelab.moduli.Modulus import Modulus, SneModulus
from ssnelab.moduli.calculus import (supercoercivity_of_inverse, inverse_uniform_monotonicity_from_ssne,
                                     displacement_gap_bound, ssne_of_composition, sne_from_ssne)
from ssnelab.core.Provenance import Provenance
from ssnelab.core.Error import PreconditionError
from .extended import INF, ExtReal, ext_ceil, ext_mul, finite_or_inf, is_overflow
import math
import numpy as np


@dataclass(frozen=True)
class PhiBound:
    b: float
    g: float
    h: float
    phi: float

    @property
    def overflow(self) -> bool:
        return any(is_overflow(v) for v in (self.b, self.g, self.h, self.phi))

    def __iter__(self):
        return iter((self.b, self.g, self.h, self.phi))


def theta_bound(eta: Modulus, l1: float, l2: float, l3: float) -> Tuple[float, float]:
    """(ρ, Θ) with ρ = 2L3 + L1·L3 + η(2L1+2L2+2) and Θ = (L1+L2)(L3+ρ)."""
    if not (l1 > 0 and l2 > 0 and l3 > 0):
        raise PreconditionError(f"Norm bounds must be positive, got L1={l1}, L2={l2}, L3={l3}.")
    rho = finite_or_inf(2 * l3 + l1 * l3 + eta(2 * l1 + 2 * l2 + 2))
    theta = finite_or_inf((l1 + l2) * (l3 + rho))
    return rho, theta


def phi_bound(chi: Modulus, nu: Modulus, k: Modulus, delta: float) -> PhiBound:
    """
    Norm bound Φ of a δ-fixed point of R₂∘R₁, where R₁ is ssne with χ, R₂ is supercoercive
    with ν and both have ε-fixed points of norm ≤ K(ε).
    """
    if not delta > 0:
        raise PreconditionError(f"δ must be positive, got {delta}.")
    delta = float(delta)

    kq = finite_or_inf(k(delta / 4) + delta / 8)
    _, theta = theta_bound(supercoercivity_of_inverse(nu), kq, kq, delta / 8)

    b = finite_or_inf(math.sqrt(kq * kq + 2 * theta))
    g = finite_or_inf(b * max(math.sqrt(2), 4 * b / delta))
    h = finite_or_inf(displacement_gap_bound(inverse_uniform_monotonicity_from_ssne(chi))(g + kq))
    phi = finite_or_inf(g + h + delta / 8)
    return PhiBound(b=b, g=g, h=h, phi=phi)


def _check_lengths(m: int, chis: Sequence[Modulus], nus: Sequence[Modulus], n_chis: int) -> None:
    if not (isinstance(m, (int, np.integer)) and m >= 2):
        raise PreconditionError(f"Number of maps must be an integer ≥ 2, got {m}.")
    if len(chis) != n_chis or len(nus) != m - 1:
        raise PreconditionError(f"For m={m} expected {n_chis} ssne and {m - 1} supercoercivity moduli, "
                                f"got {len(chis)} and {len(nus)}.")


def psi_bound(m: int, chis: Sequence[Modulus], nus: Sequence[Modulus], k: Modulus, delta: float) -> float:
    """
    Norm bound Ψ of a δ-fixed point of R_m∘…∘R₁; `chis` are the moduli of R₁..R_{m−1},
    `nus` the supercoercivity moduli of R₂..R_m.
    """
    _check_lengths(m, chis, nus, m - 1)
    if m == 2:
        return phi_bound(chis[0], nus[0], k, delta).phi

    inner = psi_modulus(m - 1, chis[:m - 2], nus[:m - 2], k)
    k_next = Modulus(lambda rho: np.maximum(inner(rho), k(rho)),
                     Provenance('pointwise_max', [inner.provenance, k.provenance]))
    return phi_bound(ssne_of_composition(chis), nus[m - 2], k_next, delta).phi


def psi_modulus(m: int, chis: Sequence[Modulus], nus: Sequence[Modulus], k: Modulus) -> Modulus:
    """δ ↦ Ψ(m, chis, nus, K, δ) as a first-class modulus."""
    _check_lengths(m, chis, nus, m - 1)
    chis, nus = list(chis), list(nus)
    fn = np.vectorize(lambda d: psi_bound(m, chis, nus, k, float(d)), otypes=[float])
    return Modulus(fn, Provenance('psi_bound', [c.provenance for c in chis] + [n.provenance for n in nus] + [k.provenance], m=m))


def gamma_rate(epsilon: float, b: float, d: float, alpha: Modulus, omega: SneModulus) -> ExtReal:
    """
    Γ = ⌈(18b + 12α(ε/6))/ε − 1⌉ · ⌈d / ω(d, ε²/(27b + 18α(ε/6)))⌉, ceilings taken on doubles.

    A one-unit overestimate from rounding is harmless: the rate holds for all larger n.
    """
    if not (epsilon > 0 and b > 0 and d > 0):
        raise PreconditionError(f"ε, b and d must be positive, got ε={epsilon}, b={b}, d={d}.")
    eps, b, d = float(epsilon), float(b), float(d)

    a6 = finite_or_inf(alpha(eps / 6))
    if math.isinf(a6):
        return INF

    first = ext_ceil((18 * b + 12 * a6) / eps - 1)

    inner = eps * eps / (27 * b + 18 * a6)
    if not (inner > 0 and math.isfinite(inner)):
        return INF
    w = finite_or_inf(omega(d, inner))
    second = ext_ceil(d / w) if w > 0 and math.isfinite(w) else INF

    return ext_mul(first, second)


@dataclass(frozen=True)
class SigmaInputs:
    """Everything Σ needs: m ssne moduli, the supercoercivity moduli of maps 2..m, K, b and d."""
    m: int
    chis: Tuple[Modulus, ...]
    nus: Tuple[Modulus, ...]
    k: Modulus
    b: float
    d: float

    def __post_init__(self) -> None:
        _check_lengths(self.m, self.chis, self.nus, self.m)
        if not (self.b > 0 and self.d > 0):
            raise PreconditionError(f"b and d must be positive, got b={self.b}, d={self.d}.")

    def rate(self, epsilon: float) -> ExtReal:
        return sigma_rate(self.m, self.chis, self.nus, self.k, self.b, self.d, epsilon)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'm': self.m,
            'chis': [str(c) for c in self.chis],
            'nus': [str(n) for n in self.nus],
            'k': str(self.k),
            'b': self.b,
            'd': self.d
        }


def sigma_rate(m: int, chis: Sequence[Modulus], nus: Sequence[Modulus], k: Modulus, b: float, d: float, epsilon: float) -> ExtReal:
    """Σ(ε) = Γ(ε, b, d, δ ↦ Ψ(m, χ₁..χ_{m−1}, ν₂..ν_m, K, δ), ω of the composite ssne modulus)."""
    _check_lengths(m, chis, nus, m)
    alpha = psi_modulus(m, list(chis)[:m - 1], nus, k)
    omega = sne_from_ssne(ssne_of_composition(chis))
    return gamma_rate(epsilon, b, d, alpha, omega)


def rate_grid(rate: Any, epsilon_grid: Sequence[float]) -> List[ExtReal]:
    """Evaluate a one-argument rate on every grid point, in order."""
    return [rate(float(e)) for e in epsilon_grid]
