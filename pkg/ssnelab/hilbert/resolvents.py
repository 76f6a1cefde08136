"""
-------------------------------------------------
SSNELab - Resolvents and reflected resolvents
-------------------------------------------------

J_A = (id + A)^{-1} is evaluated by damped iteration on the residual
F(y) = y + A(y) − x, which is 1-strongly monotone and (1+L)-Lipschitz, so the
step τ₀ = 1/(1+L)² contracts. R_A = 2J_A − id.
"""

from typing import Callable
from ssnelab.moduli.Modulus import Modulus
from ssnelab.moduli.calculus import (ssne_of_averaged, sne_from_ssne, supercoercivity_of_averaged,
                                     ssne_from_inverse_uniform_monotonicity, supercoercivity_of_reflected_resolvent)
from ssnelab.core.Error import ConvergenceError, PreconditionError
from .CertifiedOperator import CertifiedOperator, Certificates
from .MonotoneMap import MonotoneMap
from .Vector import batch_norm
import numpy as np

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 10**6


def damped_solve(residual: Callable[[np.ndarray], np.ndarray], y0: np.ndarray, step: float,
                 tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER, adaptive: bool = True) -> np.ndarray:
    """
    Find y with ‖residual(y)‖ ≤ tol (row-wise for batches) by y ← y − τ·residual(y).

    With `adaptive`, τ doubles while the residual norm decreases and falls back to the
    guaranteed step otherwise; without it τ stays at `step`.
    """
    if not (step > 0 and tol > 0 and max_iter >= 1):
        raise PreconditionError("Damped solver needs step > 0, tol > 0 and max_iter ≥ 1.")

    y = np.array(y0, dtype=float)
    r = residual(y)
    rn = batch_norm(r)
    tau = np.full(np.shape(rn), float(step))

    for _ in range(max_iter):
        active = np.asarray(rn > tol)
        if not np.any(active):
            return y

        if adaptive:
            grown = 2 * tau
            y_new = y - grown[..., None] * r
            r_new = residual(y_new)
            rn_new = batch_norm(r_new)
            accepted = np.asarray(rn_new < rn)
            tau_new = np.where(accepted, grown, step)

            if not np.all(accepted):
                y_safe = y - step * r
                r_safe = residual(y_safe)
                y_new = np.where(accepted[..., None], y_new, y_safe)
                r_new = np.where(accepted[..., None], r_new, r_safe)
                rn_new = np.where(accepted, rn_new, batch_norm(r_safe))
        else:
            y_new = y - step * r
            r_new = residual(y_new)
            rn_new = batch_norm(r_new)
            tau_new = tau

        # converged rows stay put
        y = np.where(active[..., None], y_new, y)
        r = np.where(active[..., None], r_new, r)
        rn = np.where(active, rn_new, rn)
        tau = np.where(active, tau_new, tau)

    if np.any(rn > tol):
        raise ConvergenceError(f"Damped solver did not reach tol={tol:g} within {max_iter} iterations (residual {float(np.max(rn)):g}).")
    return y


def _fixed_point_certificates(a: MonotoneMap) -> dict:
    if a.zero is None:
        return {}
    return {
        'afp_bound': Modulus.constant(float(np.linalg.norm(a.zero)), nonnegative=True),
        'afp_witness': a.zero
    }


def resolvent(a: MonotoneMap, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER, adaptive: bool = True) -> CertifiedOperator:
    if a.lipschitz is None:
        raise PreconditionError(f"Map '{a.name}' carries no Lipschitz bound; its resolvent cannot be computed.")
    step = 1 / (1 + a.lipschitz)**2

    def j(x: np.ndarray) -> np.ndarray:
        return damped_solve(lambda y: y + a(y) - x, x, step, tol, max_iter, adaptive)

    chi = ssne_of_averaged(0.5)
    certificates = Certificates(
        averaged_alpha=0.5,
        ssne=chi,
        sne=sne_from_ssne(chi),
        supercoercivity=supercoercivity_of_averaged(0.5),
        lipschitz=1.0,
        **_fixed_point_certificates(a)
    )
    return CertifiedOperator(f"J[{a.name}]", a.dimension, j, certificates, tolerance=tol)


def reflected_resolvent(a: MonotoneMap, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER, adaptive: bool = True) -> CertifiedOperator:
    j = resolvent(a, tol, max_iter, adaptive)

    certificates = Certificates(lipschitz=1.0, **_fixed_point_certificates(a))
    psi, eta = a.psi(), a.eta()
    if psi is not None and eta is not None:
        chi = ssne_from_inverse_uniform_monotonicity(psi)
        certificates = certificates.replace(
            ssne=chi,
            sne=sne_from_ssne(chi),
            supercoercivity=supercoercivity_of_reflected_resolvent(eta)
        )

    return CertifiedOperator(f"R[{a.name}]", a.dimension, lambda x: 2 * j(x) - x, certificates, tolerance=2 * tol)
