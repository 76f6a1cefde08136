"""
-------------------------------------------------
SSNELab - Modulus value types
-------------------------------------------------

All moduli are vectorised: they accept a python float or a numpy array and
return a float (scalar input) or an array of the broadcast shape.
"""

from typing import Any, Callable, Dict, List, Sequence, Tuple, Union
from ssnelab.core.Provenance import Provenance
from ssnelab.core.Error import PreconditionError
import numpy as np

Real = Union[float, np.ndarray]

# 50 log-spaced points in [1e-3, 1e2], the grid moduli are validated on
TEST_GRID = np.logspace(-3, 2, 50)


def evaluate(fn: Callable[..., Any], *args: Real) -> Real:
    """Evaluate `fn` on float64 arrays; overflow yields inf, never a warning or exception."""
    arrs = [np.asarray(a, dtype=float) for a in args]
    with np.errstate(over='ignore', divide='ignore', invalid='ignore', under='ignore'):
        out = np.asarray(fn(*arrs), dtype=float)
    shape = np.broadcast_shapes(out.shape, *(a.shape for a in arrs))
    out = np.broadcast_to(out, shape)
    return float(out) if out.ndim == 0 else np.array(out)


class Modulus:
    """
    A monotone function ε ↦ value on (0, ∞) together with the derivation that produced it.
    """

    kind: str = 'modulus'

    def __init__(self, fn: Callable[[np.ndarray], Any], provenance: Provenance, nonnegative: bool = False) -> None:
        self._fn = fn
        self.provenance: Provenance = provenance
        self.nonnegative: bool = nonnegative

    def __call__(self, eps: Real) -> Real:
        return evaluate(self._fn, eps)

    def validate(self, grid: np.ndarray = TEST_GRID) -> 'Modulus':
        v = np.atleast_1d(self(grid))
        bad = (np.isnan(v) | (v < 0)) if self.nonnegative else ~(v > 0)
        if bad.any():
            raise PreconditionError(f"Modulus {self.provenance} is not {'nonnegative' if self.nonnegative else 'positive'} at eps={np.atleast_1d(grid)[bad][0]:g}.")
        return self

    def to_dict(self) -> Dict[str, Any]:
        return {'kind': self.kind, 'provenance': self.provenance.to_dict()}

    def __str__(self) -> str:
        return str(self.provenance)

    def __repr__(self) -> str:
        return "%s<%s>"%(self.__class__.__name__, str(self.provenance))

    @staticmethod
    def constant(value: float, nonnegative: bool = False) -> 'Modulus':
        if not (value >= 0 if nonnegative else value > 0):
            raise PreconditionError(f"Constant modulus must be {'nonnegative' if nonnegative else 'positive'}, got {value}.")
        c = float(value)
        return Modulus(lambda e: np.full_like(e, c), Provenance('constant', value=c), nonnegative=nonnegative)

    @staticmethod
    def power(exponent: float, coef: float = 1.0) -> 'Modulus':
        if not coef > 0:
            raise PreconditionError(f"Power modulus needs a positive coefficient, got {coef}.")
        p, a = float(exponent), float(coef)
        return Modulus(lambda e: a * np.power(e, p), Provenance('power', coef=a, exponent=p))

    @staticmethod
    def linear(coef: float) -> 'Modulus':
        if not coef > 0:
            raise PreconditionError(f"Linear modulus needs a positive coefficient, got {coef}.")
        a = float(coef)
        return Modulus(lambda e: a * e, Provenance('linear', coef=a))


class SneModulus:
    """
    A strong-nonexpansiveness modulus (b, ε) ↦ value, nonincreasing in b and nondecreasing in ε.
    """

    kind: str = 'sne'

    def __init__(self, fn: Callable[[np.ndarray, np.ndarray], Any], provenance: Provenance) -> None:
        self._fn = fn
        self.provenance: Provenance = provenance

    def __call__(self, b: Real, eps: Real) -> Real:
        return evaluate(self._fn, b, eps)

    def validate(self, b_grid: np.ndarray = TEST_GRID, eps_grid: np.ndarray = TEST_GRID) -> 'SneModulus':
        v = np.asarray(self(np.asarray(b_grid)[:, None], np.asarray(eps_grid)[None, :]))
        if not (v > 0).all():
            raise PreconditionError(f"SNE modulus {self.provenance} is not positive on the test grid.")
        return self

    def to_dict(self) -> Dict[str, Any]:
        return {'kind': self.kind, 'provenance': self.provenance.to_dict()}

    def __str__(self) -> str:
        return str(self.provenance)

    @staticmethod
    def constant(value: float) -> 'SneModulus':
        if not value > 0:
            raise PreconditionError(f"Constant SNE modulus must be positive, got {value}.")
        c = float(value)
        return SneModulus(lambda b, e: c, Provenance('constant', value=c))

    @staticmethod
    def linear(coef: float) -> 'SneModulus':
        if not coef > 0:
            raise PreconditionError(f"Linear SNE modulus needs a positive coefficient, got {coef}.")
        a = float(coef)
        return SneModulus(lambda b, e: a * e, Provenance('linear', coef=a))


class CldGauge:
    """
    Gauge ε ↦ K(ε) ∈ [0, 1) of a map that contracts for large distances.
    """

    kind: str = 'cld'

    def __init__(self, fn: Callable[[np.ndarray], Any], provenance: Provenance) -> None:
        self._fn = fn
        self.provenance: Provenance = provenance

    def __call__(self, eps: Real) -> Real:
        return evaluate(self._fn, eps)

    def validate(self, grid: np.ndarray = TEST_GRID) -> 'CldGauge':
        v = np.atleast_1d(self(grid))
        if not ((v >= 0) & (v < 1)).all():
            raise PreconditionError(f"Gauge {self.provenance} leaves [0, 1) on the test grid.")
        return self

    def to_dict(self) -> Dict[str, Any]:
        return {'kind': self.kind, 'provenance': self.provenance.to_dict()}

    def __str__(self) -> str:
        return str(self.provenance)

    @staticmethod
    def constant(value: float) -> 'CldGauge':
        if not 0 <= value < 1:
            raise PreconditionError(f"Constant gauge must lie in [0, 1), got {value}.")
        k = float(value)
        return CldGauge(lambda e: np.full_like(e, k), Provenance('constant', value=k))


class EmpiricalStepModulus(Modulus):
    """
    Step function built from sampled (a, b) pairs: ε ↦ min{ b : (a, b) sampled, a ≥ ε }.
    Nondecreasing; +∞ beyond the largest sampled a; min(0, smallest b) at ε = 0.
    """

    kind: str = 'empirical'

    def __init__(self, samples: Sequence[Tuple[float, float]]) -> None:
        pairs = np.asarray(list(samples), dtype=float).reshape(-1, 2)
        if len(pairs) == 0:
            raise PreconditionError("Empirical modulus needs at least one sample.")
        if not (np.isfinite(pairs).all() and (pairs[:, 0] >= 0).all()):
            raise PreconditionError("Empirical modulus samples must be finite with nonnegative a.")

        order = np.argsort(pairs[:, 0], kind='stable')
        self._a: np.ndarray = pairs[order, 0]
        self._suffix_min: np.ndarray = np.minimum.accumulate(pairs[order, 1][::-1])[::-1]
        self._at_zero: float = min(0.0, float(self._suffix_min[0]))

        super().__init__(self._step, Provenance('empirical_adequate_modulus', samples=len(pairs)), nonnegative=True)

    def _step(self, eps: np.ndarray) -> np.ndarray:
        idx = np.searchsorted(self._a, eps, side='left')
        padded = np.append(self._suffix_min, np.inf)
        return np.where(eps <= 0, self._at_zero, padded[idx])

    @property
    def breakpoints(self) -> List[Tuple[float, float]]:
        return [(float(a), float(b)) for a, b in zip(self._a, self._suffix_min)]
