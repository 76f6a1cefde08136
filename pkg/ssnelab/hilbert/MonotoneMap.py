"""
-------------------------------------------------
SSNELab - Single-valued Lipschitz monotone maps
-------------------------------------------------
"""

from typing import Callable, Optional
from ssnelab.moduli.Modulus import Modulus
from ssnelab.moduli.calculus import inverse_uniform_monotonicity_of_cocoercive, inverse_supercoercivity_of_cocoercive
from ssnelab.core.Error import CertificateError, DimensionMismatchError, PreconditionError
from .Vector import as_vector, batch_inner, batch_norm
import numpy as np

# construction-time sampling check
CHECK_TRIALS = 1000
CHECK_SEED = 0
CHECK_BOX = (-10.0, 10.0)


class MonotoneMap:
    """
    A monotone, L-Lipschitz map A: R^n → R^n (vectorised like CertifiedOperator).

    Optional metadata:
      cocoercivity c  ⟨x−y, Ax−Ay⟩ ≥ c‖Ax−Ay‖², which yields ψ(ε) = cε² and η(N) = N/c
      zero            a point z with A(z) = 0, i.e. a fixed point of J_A and R_A
      inverse         factory of the explicit inverse map, when one exists
    """

    def __init__(self, name: str, dimension: int, fn: Callable[[np.ndarray], np.ndarray], lipschitz: float,
                 cocoercivity: Optional[float] = None, zero: Optional[np.ndarray] = None,
                 inverse: Optional[Callable[[], 'MonotoneMap']] = None, check: bool = True) -> None:
        if not lipschitz >= 0:
            raise PreconditionError(f"Monotone map '{name}' needs a nonnegative Lipschitz bound, got {lipschitz}.")
        if cocoercivity is not None and not cocoercivity > 0:
            raise PreconditionError(f"Cocoercivity constant must be positive, got {cocoercivity}.")

        self.name: str = name
        self.dimension: int = int(dimension)
        self._fn = fn
        self.lipschitz: float = float(lipschitz)
        self.cocoercivity: Optional[float] = float(cocoercivity) if cocoercivity is not None else None
        self.zero: Optional[np.ndarray] = as_vector(zero, self.dimension) if zero is not None else None
        self._inverse = inverse

        if check:
            self.check()

    def __call__(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.ndim == 0 or x.shape[-1] != self.dimension:
            raise DimensionMismatchError(f"Map '{self.name}' acts on R^{self.dimension}, got input of shape {x.shape}.")
        return self._fn(x)

    @property
    def inverse(self) -> 'MonotoneMap':
        if self._inverse is None:
            raise PreconditionError(f"Map '{self.name}' has no explicit inverse.")
        return self._inverse()

    def psi(self) -> Optional[Modulus]:
        """Modulus of inverse uniform monotonicity, if the map is cocoercive."""
        return inverse_uniform_monotonicity_of_cocoercive(self.cocoercivity) if self.cocoercivity else None

    def eta(self) -> Optional[Modulus]:
        """Supercoercivity modulus of the inverse, if the map is cocoercive."""
        return inverse_supercoercivity_of_cocoercive(self.cocoercivity) if self.cocoercivity else None

    def check(self, trials: int = CHECK_TRIALS, seed: int = CHECK_SEED) -> None:
        """Sampled check of monotonicity, the Lipschitz bound, cocoercivity and the zero."""
        rng = np.random.default_rng(seed)
        x = rng.uniform(*CHECK_BOX, size=(trials, self.dimension))
        y = rng.uniform(*CHECK_BOX, size=(trials, self.dimension))
        ax, ay = self(x), self(y)
        dist, img = batch_norm(x - y), batch_norm(ax - ay)
        ip = batch_inner(x - y, ax - ay)
        slack = 1e-9 * (1 + dist * (dist + img))

        if (ip < -slack).any():
            raise CertificateError(f"Map '{self.name}' is not monotone on sampled pairs.")
        if (img > self.lipschitz * dist + slack).any():
            raise CertificateError(f"Map '{self.name}' violates its Lipschitz bound {self.lipschitz}.")
        if self.cocoercivity is not None and (ip < self.cocoercivity * img * img - slack).any():
            raise CertificateError(f"Map '{self.name}' is not {self.cocoercivity}-cocoercive on sampled pairs.")
        if self.zero is not None and np.linalg.norm(self(self.zero)) > 1e-9:
            raise CertificateError(f"Declared zero of map '{self.name}' is not a zero.")

    def __repr__(self) -> str:
        return "MonotoneMap<%s, n=%d, L=%g>"%(self.name, self.dimension, self.lipschitz)


def zero_map(n: int) -> MonotoneMap:
    return MonotoneMap("0", n, lambda x: np.zeros_like(x), 0.0, zero=np.zeros(n), inverse=None)


def monotone_scaled_identity(n: int, lam: float) -> MonotoneMap:
    """A = λ·id, λ > 0: (1/λ)-cocoercive with inverse (1/λ)·id."""
    if not lam > 0:
        raise PreconditionError(f"Scaled identity needs λ > 0, got {lam}.")
    lam = float(lam)
    return MonotoneMap(f"{lam:g}*id", n, lambda x: lam * x, lam, cocoercivity=1 / lam, zero=np.zeros(n),
                       inverse=lambda: monotone_scaled_identity(n, 1 / lam))


def monotone_linear(matrix: np.ndarray, name: Optional[str] = None) -> MonotoneMap:
    """x ↦ Mx for M with positive semidefinite symmetric part."""
    m = np.array(matrix, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise PreconditionError(f"Linear map needs a square matrix, got shape {m.shape}.")
    sym = (m + m.T) / 2
    if np.linalg.eigvalsh(sym).min() < -1e-12:
        raise CertificateError("Linear map is not monotone: its symmetric part has a negative eigenvalue.")
    m.setflags(write=False)
    n = m.shape[0]
    lipschitz = float(np.linalg.norm(m, 2))

    # symmetric PSD maps are (1/λ_max)-cocoercive
    cocoercivity = None
    if np.allclose(m, m.T) and lipschitz > 0:
        cocoercivity = 1 / lipschitz

    inverse = None
    if abs(np.linalg.det(m)) > 1e-12:
        inverse = lambda: monotone_linear(np.linalg.inv(m), name=f"inv({name or 'M'})")

    return MonotoneMap(name or "M", n, lambda x: x @ m.T, lipschitz, cocoercivity=cocoercivity,
                       zero=np.zeros(n), inverse=inverse)


def halfspace_penalty(a: np.ndarray, b: float, lam: float = 1.0) -> MonotoneMap:
    """A = λ(id − P_H), H = {x : ⟨a,x⟩ ≤ b}: the gradient of (λ/2)·dist(·,H)², (1/λ)-cocoercive, zero at P_H(0)."""
    a = as_vector(a)
    aa = float(a @ a)
    if aa == 0:
        raise PreconditionError("Halfspace normal must be nonzero.")
    if not lam > 0:
        raise PreconditionError(f"Penalty weight must be positive, got {lam}.")
    lam, b = float(lam), float(b)

    def excess(x: np.ndarray) -> np.ndarray:
        t = np.maximum(0.0, (x @ a - b) / aa)
        return t[..., None] * a

    zero = -excess(np.zeros(len(a)))
    return MonotoneMap(f"{lam:g}*dH[{b:g}]", len(a), lambda x: lam * excess(x), lam, cocoercivity=1 / lam, zero=zero)


def inverse_map(a: MonotoneMap) -> MonotoneMap:
    return a.inverse
