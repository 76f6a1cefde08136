"""
-------------------------------------------------
SSNELab - Constructive approximate fixed points of R_B∘R_A
-------------------------------------------------

Given ε-fixed points p₁, p₂ of R_A and R_B (ε = δ/4), the regularised inclusion
f = ηu + Au + Bu with f = (p₁ − J_A p₁) + (p₂ − J_B p₂) is solved and
p = u + Au is a δ-fixed point of R_B∘R_A whose norm stays below Φ.
"""

from typing import Any, Dict, Optional, Sequence
from dataclasses import dataclass
from ssnelab.core.Error import PreconditionError
from ssnelab.hilbert.MonotoneMap import MonotoneMap
from ssnelab.hilbert.Vector import as_vector, norm
from ssnelab.hilbert.resolvents import DEFAULT_TOL, DEFAULT_MAX_ITER, damped_solve, resolvent, reflected_resolvent
from ssnelab.moduli.Modulus import Modulus
from ssnelab.rates.bounds import theta_bound
from .iteration import locate_afp_point
import numpy as np


def solve_regularized_inclusion(a: MonotoneMap, b: MonotoneMap, f: Sequence[float], eta: float, tol: float = DEFAULT_TOL,
                                max_iter: int = DEFAULT_MAX_ITER, adaptive: bool = True) -> np.ndarray:
    """u with ‖ηu + Au + Bu − f‖ ≤ tol; the residual is η-strongly monotone and (η+L_A+L_B)-Lipschitz."""
    if not eta > 0:
        raise PreconditionError(f"Regularisation η must be positive, got {eta}.")
    if a.dimension != b.dimension:
        raise PreconditionError(f"Maps act on R^{a.dimension} and R^{b.dimension}.")
    f = as_vector(f, a.dimension)
    step = eta / (eta + a.lipschitz + b.lipschitz)**2
    return damped_solve(lambda u: eta * u + a(u) + b(u) - f, np.zeros(a.dimension), step, tol, max_iter, adaptive)


@dataclass(frozen=True)
class AfpWitness:
    p: np.ndarray
    residual: float
    u: np.ndarray
    regularization: float
    theta: float
    delta: float

    @property
    def norm(self) -> float:
        return norm(self.p)

    def holds(self, bound: float, slack: float = 0.0) -> bool:
        """‖p‖ ≤ bound and ‖p − Rp‖ ≤ δ."""
        return self.norm <= bound + slack and self.residual <= self.delta + slack

    def to_dict(self) -> Dict[str, Any]:
        return {
            'p': self.p.tolist(),
            'norm': self.norm,
            'residual': self.residual,
            'delta': self.delta,
            'regularization': self.regularization,
            'theta': self.theta
        }


def _fixed_point(m: MonotoneMap, r, given: Optional[Sequence[float]], eps: float) -> np.ndarray:
    if given is not None:
        return as_vector(given, m.dimension)
    if m.zero is not None:
        return m.zero
    return locate_afp_point(r, eps)


def construct_afp_witness(a: MonotoneMap, b: MonotoneMap, k: Modulus, delta: float, tol: float = DEFAULT_TOL,
                          p1: Optional[Sequence[float]] = None, p2: Optional[Sequence[float]] = None,
                          eta: Optional[Modulus] = None, max_iter: int = DEFAULT_MAX_ITER) -> AfpWitness:
    """
    Follow the construction for R_A, R_B: `eta` is the supercoercivity modulus of B⁻¹
    (from B's cocoercivity by default), p₁/p₂ default to the zeros of A/B and are otherwise
    located by iterating R_A/R_B.
    """
    if not delta > 0:
        raise PreconditionError(f"δ must be positive, got {delta}.")
    eps = float(delta) / 4
    eta = eta if eta is not None else b.eta()
    if eta is None:
        raise PreconditionError(f"Map '{b.name}' is not cocoercive; pass a supercoercivity modulus.")

    ja, jb = resolvent(a, tol, max_iter), resolvent(b, tol, max_iter)
    ra, rb = reflected_resolvent(a, tol, max_iter), reflected_resolvent(b, tol, max_iter)

    bound = float(k(eps))
    points = []
    for m, r, given in ((a, ra, p1), (b, rb, p2)):
        p = _fixed_point(m, r, given, eps)
        if norm(p) > bound + 1e-12:
            raise PreconditionError(f"ε-fixed point of R[{m.name}] has norm {norm(p):g} > K(ε) = {bound:g}.")
        if norm(p - r(p)) > eps + 4 * tol:
            raise PreconditionError(f"Point {p.tolist()} is not a {eps:g}-fixed point of R[{m.name}].")
        points.append(p)

    f = points[0] - ja(points[0]) + points[1] - jb(points[1])
    l = bound + eps / 2
    _, c = theta_bound(eta, l, l, eps / 2)
    reg = min(0.5, eps * eps / (l * l + 2 * c))

    u = solve_regularized_inclusion(a, b, f, reg, tol, max_iter)
    p = u + a(u)
    residual = norm(p - rb(ra(p)))
    return AfpWitness(p=p, residual=residual, u=u, regularization=reg, theta=c, delta=float(delta))
