"""
-------------------------------------------------
SSNELab - Falsification of modulus claims
-------------------------------------------------

Every claim is a ∀-statement over pairs (x, y), sometimes with a third point z,
and a sweep parameter (ε, M or N) on a log grid. A check samples rows, evaluates
the claim on the whole grid at once and reports the first violating row, at the
largest violating grid value.

Counterexample fields:
    gap     the quantity the claim bounds (e.g. ‖x−y‖² − ‖Tx−Ty‖²)
    defect  the quantity the premise is about (e.g. ‖(x−y) − (Tx−Ty)‖)

Strict inequalities are checked with an absolute slack of 1e-12·(1 + scale),
widened by the evaluation tolerance of numerically resolved operators. Claims
without a sweep parameter report ε = 0.
"""

from typing import Any, Callable, Dict, List, Optional, Tuple, Type, Union
from ssnelab.core.Report import Counterexample, SampleReport
from ssnelab.core.Error import PreconditionError
from ssnelab.hilbert.CertifiedOperator import CertifiedOperator
from ssnelab.hilbert.MonotoneMap import MonotoneMap
from ssnelab.hilbert.Vector import as_vector, batch_inner, batch_norm
from ssnelab.moduli.Modulus import Modulus, SneModulus, CldGauge
from ssnelab.rates.bounds import theta_bound
from .sampling import (SamplingBox, SamplingPlan, SWEEP_GRID, DEFAULT_TRIALS, DEFAULT_SEED, CHUNK_SIZE,
                       run_chunks, unit_directions)
import numpy as np

Target = Union[CertifiedOperator, MonotoneMap]
Evaluation = Tuple[np.ndarray, np.ndarray, np.ndarray]

SLACK = 1e-12
NO_SWEEP = np.array([0.0])


def _slack(*scales: np.ndarray) -> np.ndarray:
    return SLACK * (1 + sum(np.abs(s) for s in scales))

def _col(v: np.ndarray) -> np.ndarray:
    return np.asarray(v)[:, None]

def _tolerance(target: Target) -> float:
    return getattr(target, 'tolerance', 0.0)


class Check:
    """A sampled claim: subclasses set `kind` and implement `evaluate`."""

    kind: str = ''

    def __init__(self, target: Target) -> None:
        self.target = target
        self.grid: np.ndarray = SWEEP_GRID

    @property
    def dimension(self) -> int:
        return self.target.dimension

    def sample(self, rng: np.random.Generator, k: int, box: SamplingBox) -> Tuple[np.ndarray, np.ndarray, Optional[np.ndarray]]:
        x, y = box.pairs(rng, k, self.dimension)
        return x, y, None

    def evaluate(self, x: np.ndarray, y: np.ndarray, z: Optional[np.ndarray], grid: np.ndarray) -> Evaluation:
        """(violation mask, gap, defect), each broadcastable to (rows, len(grid))."""
        raise NotImplementedError()

    def differences(self, x: np.ndarray, y: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        return x - y, self.target(x) - self.target(y)


# +++++++++++++++++++++++++++++++++++++++++++++++++++++
# ++ Operator claims

class SsneCheck(Check):
    kind = 'ssne'

    def __init__(self, target: CertifiedOperator, chi: Modulus) -> None:
        super().__init__(target)
        self.chi = chi

    def evaluate(self, x, y, z, grid):
        u, v = self.differences(x, y)
        # ‖u‖² − ‖v‖² without cancellation
        gap = batch_inner(u - v, u + v)
        defect = batch_norm(u - v)
        dist, img = batch_norm(u), batch_norm(v)
        tol = _tolerance(self.target)
        s_gap = _slack(dist * dist, img * img) + 4 * tol * (1 + dist + img)
        s_def = _slack(dist) + 2 * tol
        bad = (_col(gap) < self.chi(grid)[None, :] - _col(s_gap)) & (_col(defect) >= grid[None, :] + _col(s_def))
        return bad, _col(gap), _col(defect)


class SneCheck(Check):
    """b is the smallest grid value ≥ ‖x−y‖ (‖x−y‖ itself beyond the grid)."""

    kind = 'sne'

    def __init__(self, target: CertifiedOperator, omega: SneModulus) -> None:
        super().__init__(target)
        self.omega = omega

    def evaluate(self, x, y, z, grid):
        u, v = self.differences(x, y)
        dist, img = batch_norm(u), batch_norm(v)
        total = dist + img
        gap = np.divide(batch_inner(u - v, u + v), total, out=np.zeros_like(total), where=total > 0)
        defect = batch_norm(u - v)

        idx = np.searchsorted(SWEEP_GRID, dist, side='left')
        b = np.where(idx < len(SWEEP_GRID), SWEEP_GRID[np.minimum(idx, len(SWEEP_GRID) - 1)], dist)
        b = np.maximum(b, np.finfo(float).tiny)

        tol = _tolerance(self.target)
        s_gap = _slack(dist) + 4 * tol
        s_def = _slack(dist) + 2 * tol
        bound = self.omega(_col(b), grid[None, :])
        bad = (_col(gap) < bound - _col(s_gap)) & (_col(defect) >= grid[None, :] + _col(s_def))
        return bad, _col(gap), _col(defect)


class CldCheck(Check):
    kind = 'cld'

    def __init__(self, target: CertifiedOperator, k: CldGauge) -> None:
        super().__init__(target)
        self.k = k

    def evaluate(self, x, y, z, grid):
        u, v = self.differences(x, y)
        dist, img = batch_norm(u), batch_norm(v)
        s = _slack(dist) + 2 * _tolerance(self.target)
        bad = (grid[None, :] <= _col(dist)) & (_col(img) > self.k(grid)[None, :] * _col(dist) + _col(s))
        return bad, _col(img), _col(dist)


class SupercoercivityCheck(Check):
    """Sweep over M: ‖x−y‖² − ‖Tx−Ty‖² < M·d implies d < ν(M), d = ‖(x−y) − (Tx−Ty)‖."""

    kind = 'supercoercivity'

    def __init__(self, target: CertifiedOperator, nu: Modulus) -> None:
        super().__init__(target)
        self.nu = nu

    def evaluate(self, x, y, z, grid):
        u, v = self.differences(x, y)
        gap = batch_inner(u - v, u + v)
        defect = batch_norm(u - v)
        dist, img = batch_norm(u), batch_norm(v)
        tol = _tolerance(self.target)
        s_gap = _slack(dist * dist, img * img) + 4 * tol * (1 + dist + img)
        s_def = _slack(dist) + 2 * tol
        bad = ((_col(gap) < grid[None, :] * _col(defect) - _col(s_gap)) &
               (_col(defect) >= self.nu(grid)[None, :] + _col(s_def)))
        return bad, _col(gap), _col(defect)


class FirmNonexpansivenessCheck(Check):
    kind = 'firm_nonexpansiveness'

    def __init__(self, target: CertifiedOperator) -> None:
        super().__init__(target)
        self.grid = NO_SWEEP

    def evaluate(self, x, y, z, grid):
        u, v = self.differences(x, y)
        img = batch_norm(v)
        lhs, rhs = img * img, batch_inner(u, v)
        s = _slack(lhs, batch_norm(u) * img) + 4 * _tolerance(self.target) * (1 + batch_norm(u) + img)
        bad = _col(lhs > rhs + s) & np.ones((1, len(grid)), dtype=bool)
        return bad, _col(lhs), _col(rhs)


class UniformMonotonicityCheck(Check):
    kind = 'uniform_monotonicity'

    def __init__(self, target: Target, alpha: Modulus) -> None:
        super().__init__(target)
        self.alpha = alpha

    def evaluate(self, x, y, z, grid):
        u, v = self.differences(x, y)
        dist = batch_norm(u)
        ip = batch_inner(u, v)
        s = _slack(dist * batch_norm(v)) + 2 * _tolerance(self.target) * (1 + dist)
        bad = (_col(dist) >= grid[None, :] + SLACK) & (_col(ip) < self.alpha(grid)[None, :] - _col(s))
        return bad, _col(ip), _col(dist)


class QuadraticGrowthCheck(Check):
    kind = 'quadratic_growth'

    def __init__(self, target: Target, beta: Modulus) -> None:
        super().__init__(target)
        self.beta = beta

    def evaluate(self, x, y, z, grid):
        u, v = self.differences(x, y)
        dist = batch_norm(u)
        ip = batch_inner(u, v)
        s = _slack(dist * batch_norm(v), dist * dist) + 2 * _tolerance(self.target) * (1 + dist)
        bound = self.beta(grid)[None, :] * _col(dist * dist)
        bad = (_col(dist) >= grid[None, :] + SLACK) & (_col(ip) < bound - _col(s))
        return bad, _col(ip), _col(dist)


class AveragedCheck(Check):
    """N = (T − (1−α)·id)/α must be nonexpansive."""

    kind = 'averaged'

    def __init__(self, target: CertifiedOperator, alpha: float) -> None:
        super().__init__(target)
        if not 0 < alpha < 1:
            raise PreconditionError(f"Averagedness constant must lie in (0, 1), got {alpha}.")
        self.alpha = float(alpha)
        self.grid = NO_SWEEP

    def evaluate(self, x, y, z, grid):
        u, v = self.differences(x, y)
        w = (v - (1 - self.alpha) * u) / self.alpha
        dist, img = batch_norm(u), batch_norm(w)
        s = _slack(dist) / self.alpha + 4 * _tolerance(self.target) / self.alpha
        bad = _col(img > dist + s) & np.ones((1, len(grid)), dtype=bool)
        return bad, _col(img), _col(dist)


class LipschitzCheck(Check):
    kind = 'lipschitz'

    def __init__(self, target: Target, lipschitz: float) -> None:
        super().__init__(target)
        if not lipschitz >= 0:
            raise PreconditionError(f"Lipschitz bound must be nonnegative, got {lipschitz}.")
        self.lipschitz = float(lipschitz)
        self.grid = NO_SWEEP

    def evaluate(self, x, y, z, grid):
        u, v = self.differences(x, y)
        dist, img = batch_norm(u), batch_norm(v)
        s = _slack(self.lipschitz * dist) + 2 * _tolerance(self.target)
        bad = _col(img > self.lipschitz * dist + s) & np.ones((1, len(grid)), dtype=bool)
        return bad, _col(img), _col(dist)


class AfpCheck(Check):
    """The witness p satisfies ‖p‖ ≤ K(ε) and ‖p − Tp‖ ≤ ε on the whole grid."""

    kind = 'afp'

    def __init__(self, target: CertifiedOperator, k: Modulus, witness: Any) -> None:
        super().__init__(target)
        self.k = k
        self.witness = as_vector(witness, target.dimension)

    def sample(self, rng, k, box):
        p = np.tile(self.witness, (k, 1))
        return p, self.target(p), None

    def evaluate(self, x, y, z, grid):
        size = batch_norm(x)
        disp = batch_norm(x - self.target(x))
        s = _slack(size) + 2 * _tolerance(self.target)
        bad = (_col(size) > self.k(grid)[None, :] + _col(s)) | (_col(disp) > grid[None, :] + _col(s))
        return bad, _col(size), _col(disp)


# +++++++++++++++++++++++++++++++++++++++++++++++++++++
# ++ Monotone map claims

class InverseUniformMonotonicityCheck(Check):
    kind = 'inverse_uniform_monotonicity'

    def __init__(self, target: MonotoneMap, psi: Modulus) -> None:
        super().__init__(target)
        self.psi = psi

    def evaluate(self, x, y, z, grid):
        u, v = self.differences(x, y)
        img = batch_norm(v)
        ip = batch_inner(u, v)
        s = _slack(batch_norm(u) * img)
        bad = (_col(img) >= grid[None, :] + SLACK) & (_col(ip) < self.psi(grid)[None, :] - _col(s))
        return bad, _col(ip), _col(img)


class UniformContinuityCheck(Check):
    """Half of the rows are drawn at distance s·γ(ε_j), s ~ U(0, 1), for a random grid index j."""

    kind = 'uniform_continuity'

    def __init__(self, target: MonotoneMap, gamma: Modulus) -> None:
        super().__init__(target)
        self.gamma = gamma

    def sample(self, rng, k, box):
        x, y = box.pairs(rng, k, self.dimension)
        near = rng.random(k) < 0.5
        j = rng.integers(0, len(self.grid), size=k)
        scale = rng.random(k) * np.asarray(self.gamma(self.grid))[j]
        u = unit_directions(rng, k, self.dimension)
        near &= np.isfinite(scale)
        y = np.where(near[:, None], x + np.where(near, scale, 0.0)[:, None] * u, y)
        return x, y, None

    def evaluate(self, x, y, z, grid):
        u, v = self.differences(x, y)
        dist, img = batch_norm(u), batch_norm(v)
        bad = (_col(dist) < self.gamma(grid)[None, :] - SLACK) & (_col(img) >= grid[None, :] + _col(_slack(img)))
        return bad, _col(img), _col(dist)


class DisplacementGapCheck(Check):
    kind = 'displacement_gap'

    def __init__(self, target: MonotoneMap, l: Modulus) -> None:
        super().__init__(target)
        self.l = l

    def evaluate(self, x, y, z, grid):
        u, v = self.differences(x, y)
        dist, img = batch_norm(u), batch_norm(v)
        bad = (_col(img) >= self.l(grid)[None, :] + _col(_slack(img))) & (_col(dist) <= grid[None, :] - SLACK)
        return bad, _col(img), _col(dist)


class InverseSupercoercivityCheck(Check):
    """Sweep over N: ‖Ax−Ay‖ ≥ η(N) implies ⟨x−y, Ax−Ay⟩ ≥ N·‖Ax−Ay‖."""

    kind = 'inverse_supercoercivity'

    def __init__(self, target: MonotoneMap, eta: Modulus) -> None:
        super().__init__(target)
        self.eta = eta

    def evaluate(self, x, y, z, grid):
        u, v = self.differences(x, y)
        img = batch_norm(v)
        ip = batch_inner(u, v)
        s = _slack(batch_norm(u) * img, img)
        bad = ((_col(img) >= self.eta(grid)[None, :] + _col(_slack(img))) &
               (_col(ip) < grid[None, :] * _col(img) - _col(s)))
        return bad, _col(ip), _col(img)


class RectangularityCheck(Check):
    """
    x plays a (arbitrary), y plays b (‖b‖ ≤ L1, ‖Ab‖ ≤ L3), z plays c (‖c‖ ≤ L2);
    rows with ‖Ab‖ > L3 are outside the claim and never violate.
    """

    kind = 'rectangularity'

    def __init__(self, target: MonotoneMap, eta: Modulus, l1: float, l2: float, l3: float) -> None:
        super().__init__(target)
        self.eta = eta
        self.l1, self.l2, self.l3 = float(l1), float(l2), float(l3)
        _, self.theta = theta_bound(eta, self.l1, self.l2, self.l3)
        self.grid = NO_SWEEP

    def _ball(self, rng: np.random.Generator, k: int, radius: float) -> np.ndarray:
        n = self.dimension
        return unit_directions(rng, k, n) * (radius * rng.random(k) ** (1 / n))[:, None]

    def sample(self, rng, k, box):
        a, _ = box.pairs(rng, k, self.dimension)
        return a, self._ball(rng, k, self.l1), self._ball(rng, k, self.l2)

    def evaluate(self, x, y, z, grid):
        ax, ay = self.target(x), self.target(y)
        inside = ((batch_norm(y) <= self.l1 * (1 + SLACK)) & (batch_norm(z) <= self.l2 * (1 + SLACK)) &
                  (batch_norm(ay) <= self.l3))
        value = batch_inner(x - z, ay - ax)
        s = _slack(batch_norm(x - z) * (batch_norm(ax) + batch_norm(ay)))
        bad = _col(inside & (value > self.theta + s)) & np.ones((1, len(grid)), dtype=bool)
        return bad, _col(value), np.full((len(x), 1), self.theta)


CHECKS: Dict[str, Type[Check]] = {c.kind: c for c in (
    SsneCheck, SneCheck, CldCheck, SupercoercivityCheck, FirmNonexpansivenessCheck, UniformMonotonicityCheck,
    QuadraticGrowthCheck, AveragedCheck, LipschitzCheck, AfpCheck, InverseUniformMonotonicityCheck,
    UniformContinuityCheck, DisplacementGapCheck, InverseSupercoercivityCheck, RectangularityCheck
)}


# +++++++++++++++++++++++++++++++++++++++++++++++++++++
# ++ Engine

def _first_violation(check: Check, x: np.ndarray, y: np.ndarray, z: Optional[np.ndarray]) -> Optional[Counterexample]:
    bad, gap, defect = check.evaluate(x, y, z, check.grid)
    shape = (len(x), len(check.grid))
    bad = np.broadcast_to(bad, shape)
    rows = np.flatnonzero(bad.any(axis=1))
    if not len(rows):
        return None

    i = int(rows[0])
    j = int(np.flatnonzero(bad[i])[-1])
    gap, defect = np.broadcast_to(gap, shape), np.broadcast_to(defect, shape)
    return Counterexample(
        x=tuple(float(c) for c in x[i]),
        y=tuple(float(c) for c in y[i]),
        epsilon=float(check.grid[j]),
        gap=float(gap[i, j]),
        defect=float(defect[i, j]),
        z=tuple(float(c) for c in z[i]) if z is not None else None
    )


def run_check(check: Check, claim: Optional[str] = None, trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED,
              box: Optional[SamplingBox] = None, workers: int = 1, chunk_size: int = CHUNK_SIZE) -> SampleReport:
    box = box if box is not None else SamplingBox()
    plan = SamplingPlan(trials=trials, seed=seed, chunk_size=chunk_size, workers=workers)

    def work(rng: np.random.Generator, size: int) -> Optional[Counterexample]:
        x, y, z = check.sample(rng, size, box)
        return _first_violation(check, x, y, z)

    return SampleReport(
        claim=claim or f"{check.kind}[{check.target.name}]",
        kind=check.kind,
        trials=trials,
        seed=seed,
        box=box.bounds,
        heavy_tail=box.heavy_tail,
        counterexample=run_chunks(plan, work)
    )


def replay(report: SampleReport, target: Target, *args: Any, **kwargs: Any) -> bool:
    """Re-evaluate a stored counterexample from its vectors only; True if it still violates."""
    cx = report.counterexample
    if cx is None:
        return False
    check = CHECKS[report.kind](target, *args, **kwargs)
    x, y = np.array([cx.x]), np.array([cx.y])
    z = np.array([cx.z]) if cx.z is not None else None
    bad, _, _ = check.evaluate(x, y, z, np.array([cx.epsilon]))
    return bool(np.asarray(bad).any())


# +++++++++++++++++++++++++++++++++++++++++++++++++++++
# ++ Public falsifiers

def falsify_ssne(t: CertifiedOperator, chi: Modulus, **kwargs: Any) -> SampleReport:
    return run_check(SsneCheck(t, chi), **kwargs)

def falsify_sne(t: CertifiedOperator, omega: SneModulus, **kwargs: Any) -> SampleReport:
    return run_check(SneCheck(t, omega), **kwargs)

def falsify_cld(t: CertifiedOperator, k: CldGauge, **kwargs: Any) -> SampleReport:
    return run_check(CldCheck(t, k), **kwargs)

def falsify_supercoercivity(t: CertifiedOperator, nu: Modulus, **kwargs: Any) -> SampleReport:
    return run_check(SupercoercivityCheck(t, nu), **kwargs)

def falsify_firm_nonexpansiveness(t: CertifiedOperator, **kwargs: Any) -> SampleReport:
    return run_check(FirmNonexpansivenessCheck(t), **kwargs)

def falsify_uniform_monotonicity(t: Target, alpha: Modulus, **kwargs: Any) -> SampleReport:
    return run_check(UniformMonotonicityCheck(t, alpha), **kwargs)

def falsify_quadratic_growth(t: Target, beta: Modulus, **kwargs: Any) -> SampleReport:
    return run_check(QuadraticGrowthCheck(t, beta), **kwargs)

def falsify_averaged(t: CertifiedOperator, alpha: float, **kwargs: Any) -> SampleReport:
    return run_check(AveragedCheck(t, alpha), **kwargs)

def falsify_lipschitz(t: Target, lipschitz: float, **kwargs: Any) -> SampleReport:
    return run_check(LipschitzCheck(t, lipschitz), **kwargs)

def falsify_afp(t: CertifiedOperator, k: Modulus, witness: Any, claim: Optional[str] = None, **kwargs: Any) -> SampleReport:
    """Deterministic: a single trial evaluates the witness on the whole grid."""
    kwargs['trials'] = 1
    return run_check(AfpCheck(t, k, witness), claim=claim, **kwargs)

def falsify_inverse_uniform_monotonicity(a: MonotoneMap, psi: Modulus, **kwargs: Any) -> SampleReport:
    return run_check(InverseUniformMonotonicityCheck(a, psi), **kwargs)

def falsify_uniform_continuity(a: MonotoneMap, gamma: Modulus, **kwargs: Any) -> SampleReport:
    return run_check(UniformContinuityCheck(a, gamma), **kwargs)

def falsify_displacement_gap(a: MonotoneMap, l: Modulus, **kwargs: Any) -> SampleReport:
    return run_check(DisplacementGapCheck(a, l), **kwargs)

def falsify_inverse_supercoercivity(a: MonotoneMap, eta: Modulus, **kwargs: Any) -> SampleReport:
    return run_check(InverseSupercoercivityCheck(a, eta), **kwargs)

def falsify_rectangularity(a: MonotoneMap, eta: Modulus, l1: float, l2: float, l3: float, **kwargs: Any) -> SampleReport:
    return run_check(RectangularityCheck(a, eta, l1, l2, l3), **kwargs)


def falsify_certificates(t: CertifiedOperator, **kwargs: Any) -> List[SampleReport]:
    """One report per certificate attached to `t`, in certificate order."""
    c = t.certificates
    kwargs.pop('claim', None)
    reports: List[SampleReport] = []

    def claim(name: str) -> str:
        return f"{t.name}:{name}"

    if c.averaged_alpha is not None:
        reports.append(falsify_averaged(t, c.averaged_alpha, claim=claim('averaged_alpha'), **kwargs))
    if c.cld_gauge is not None:
        reports.append(falsify_cld(t, c.cld_gauge, claim=claim('cld_gauge'), **kwargs))
    if c.ssne is not None:
        reports.append(falsify_ssne(t, c.ssne, claim=claim('ssne'), **kwargs))
    if c.sne is not None:
        reports.append(falsify_sne(t, c.sne, claim=claim('sne'), **kwargs))
    if c.supercoercivity is not None:
        reports.append(falsify_supercoercivity(t, c.supercoercivity, claim=claim('supercoercivity'), **kwargs))
    if c.afp_bound is not None and c.afp_witness is not None:
        reports.append(falsify_afp(t, c.afp_bound, c.afp_witness, claim=claim('afp_bound'), **kwargs))
    if c.lipschitz is not None:
        reports.append(falsify_lipschitz(t, c.lipschitz, claim=claim('lipschitz'), **kwargs))
    return reports
