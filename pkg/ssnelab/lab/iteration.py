"""
-------------------------------------------------
SSNELab - Iteration driving and rate-vs-reality
-------------------------------------------------
"""

from typing import List, Optional, Sequence, Tuple
from ssnelab.core.Report import DisplacementCurve, RateReport, RateStatus
from ssnelab.core.Error import ConvergenceError, PreconditionError
from ssnelab.hilbert.CertifiedOperator import CertifiedOperator
from ssnelab.hilbert.operators import compose
from ssnelab.hilbert.Vector import as_vector, norm
from ssnelab.rates.bounds import SigmaInputs, rate_grid
from ssnelab.rates.extended import ExtReal, is_overflow
import numpy as np

DEFAULT_N_MAX = 10_000
DEFAULT_AFP_MAX_ITER = 100_000
MONOTONE_SLACK = 1e-12


def iterate_displacement(r: CertifiedOperator, x0: Sequence[float], n_max: int = DEFAULT_N_MAX) -> DisplacementCurve:
    """values[n] = ‖Rⁿx₀ − Rⁿ⁺¹x₀‖, n = 0..n_max."""
    if not n_max >= 1:
        raise PreconditionError(f"n_max must be at least 1, got {n_max}.")
    x = np.array(as_vector(x0, r.dimension))
    start = tuple(float(c) for c in x)

    values: List[float] = []
    for _ in range(n_max + 1):
        y = r(x)
        values.append(norm(x - y))
        x = y
    return DisplacementCurve(x0=start, values=tuple(values))


def check_rates(curve: DisplacementCurve, epsilon_grid: Sequence[float], certified: Sequence[ExtReal],
                inputs: Optional[dict] = None, slack: float = MONOTONE_SLACK) -> RateReport:
    """
    Compare certified rates with a curve. A row fails if some n ≥ rate (within the curve)
    still has displacement > ε; rates beyond the curve are certified only.
    """
    grid = [float(e) for e in epsilon_grid]
    if len(grid) != len(certified):
        raise PreconditionError(f"Got {len(certified)} rate values for {len(grid)} grid points.")
    values = np.asarray(curve.values)

    status: List[RateStatus] = []
    for eps, rate in zip(grid, certified):
        if is_overflow(rate):
            status.append(RateStatus.OVERFLOW)
        elif rate > curve.n_max:
            status.append(RateStatus.CERTIFIED_ONLY)
        elif np.any(values[int(rate):] > eps + slack):
            status.append(RateStatus.FAILURE)
        else:
            status.append(RateStatus.OK)

    return RateReport(
        epsilon_grid=grid,
        certified=list(certified),
        inputs=inputs or {},
        empirical=curve.first_indices(grid),
        status=status,
        n_max=curve.n_max
    )


def sigma_report(inputs: SigmaInputs, epsilon_grid: Sequence[float]) -> RateReport:
    """Certified Σ on a grid, no iteration."""
    grid = [float(e) for e in epsilon_grid]
    return RateReport(epsilon_grid=grid, certified=rate_grid(inputs.rate, grid), inputs=inputs.to_dict())


def rate_vs_reality(r: CertifiedOperator, x0: Sequence[float], sigma_inputs: SigmaInputs, epsilon_grid: Sequence[float],
                    n_max: int = DEFAULT_N_MAX, curve: Optional[DisplacementCurve] = None) -> RateReport:
    x0 = as_vector(x0, r.dimension)
    size, step = norm(x0), norm(x0 - r(x0))
    if sigma_inputs.b < size:
        raise PreconditionError(f"b = {sigma_inputs.b:g} is smaller than ‖x₀‖ = {size:g}.")
    if sigma_inputs.d < step:
        raise PreconditionError(f"d = {sigma_inputs.d:g} is smaller than ‖x₀ − Rx₀‖ = {step:g}.")

    if curve is None:
        curve = iterate_displacement(r, x0, n_max)
    report = sigma_report(sigma_inputs, epsilon_grid)
    return check_rates(curve, report.epsilon_grid, report.certified, inputs=report.inputs)


def locate_afp_point(r: CertifiedOperator, epsilon: float, x0: Optional[Sequence[float]] = None,
                     max_iter: int = DEFAULT_AFP_MAX_ITER) -> np.ndarray:
    """Picard iteration from x₀ (origin by default) until ‖x − Rx‖ ≤ ε."""
    if not epsilon > 0:
        raise PreconditionError(f"ε must be positive, got {epsilon}.")
    x = np.zeros(r.dimension) if x0 is None else np.array(as_vector(x0, r.dimension))
    for _ in range(max_iter):
        y = r(x)
        if norm(x - y) <= epsilon:
            return as_vector(x)
        x = y
    raise ConvergenceError(f"No {epsilon:g}-fixed point of '{r.name}' within {max_iter} iterations.")


def asymptotic_regularity_check(ops: Sequence[CertifiedOperator], x0: Sequence[float], n_max: int = DEFAULT_N_MAX,
                                tol: float = 1e-8) -> Tuple[bool, DisplacementCurve]:
    """Whether the displacement of ops[-1]∘…∘ops[0] falls to ≤ tol within n_max steps."""
    curve = iterate_displacement(compose(ops), x0, n_max)
    return curve.first_index(tol) is not None, curve
