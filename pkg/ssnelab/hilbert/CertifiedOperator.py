"""
-------------------------------------------------
SSNELab - Certified operators on R^n
-------------------------------------------------
"""

from typing import Any, Callable, Dict, List, Optional
from dataclasses import dataclass, fields, replace
from ssnelab.moduli.Modulus import Modulus, SneModulus, CldGauge
from ssnelab.core.Error import DimensionMismatchError, PreconditionError
from .Vector import as_vector
import numpy as np


@dataclass(frozen=True, eq=False)
class Certificates:
    """
    Quantitative properties an operator is declared to have. Every field is optional;
    the falsification sweep in `ssnelab.lab.falsify` checks each attached field.
    """
    averaged_alpha:  Optional[float] = None
    cld_gauge:       Optional[CldGauge] = None
    ssne:            Optional[Modulus] = None
    sne:             Optional[SneModulus] = None
    supercoercivity: Optional[Modulus] = None
    afp_bound:       Optional[Modulus] = None
    afp_witness:     Optional[np.ndarray] = None
    lipschitz:       Optional[float] = None

    def __post_init__(self) -> None:
        if self.averaged_alpha is not None and not 0 < self.averaged_alpha < 1:
            raise PreconditionError(f"Averagedness constant must lie in (0, 1), got {self.averaged_alpha}.")
        if self.lipschitz is not None and not self.lipschitz >= 0:
            raise PreconditionError(f"Lipschitz bound must be nonnegative, got {self.lipschitz}.")
        if self.afp_witness is not None:
            object.__setattr__(self, 'afp_witness', as_vector(self.afp_witness))

    def names(self) -> List[str]:
        return [f.name for f in fields(self) if getattr(self, f.name) is not None]

    def replace(self, **changes: Any) -> 'Certificates':
        return replace(self, **changes)

    def to_dict(self) -> Dict[str, Any]:
        d: Dict[str, Any] = {}
        for name in self.names():
            value = getattr(self, name)
            if hasattr(value, 'provenance'):
                d[name] = str(value.provenance)
            elif isinstance(value, np.ndarray):
                d[name] = value.tolist()
            else:
                d[name] = float(value)
        return d


class CertifiedOperator:
    """
    A map R^n → R^n bundled with its certificates.

    The map is vectorised: it accepts a point of shape (n,) or a batch of shape (k, n).
    `tolerance` bounds the evaluation error ‖computed Tx − Tx‖ (0 for closed forms,
    the solver tolerance for numerically resolved operators).
    """

    def __init__(self, name: str, dimension: int, fn: Callable[[np.ndarray], np.ndarray],
                 certificates: Optional[Certificates] = None, tolerance: float = 0.0) -> None:
        if not (isinstance(dimension, (int, np.integer)) and dimension > 0):
            raise PreconditionError(f"Operator dimension must be a positive integer, got {dimension}.")
        self.name: str = name
        self.dimension: int = int(dimension)
        self._fn = fn
        self.certificates: Certificates = certificates if certificates is not None else Certificates()
        self.tolerance: float = float(tolerance)

    def __call__(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.ndim == 0 or x.shape[-1] != self.dimension:
            raise DimensionMismatchError(f"Operator '{self.name}' acts on R^{self.dimension}, got input of shape {x.shape}.")
        return self._fn(x)

    def renamed(self, name: str) -> 'CertifiedOperator':
        return CertifiedOperator(name, self.dimension, self._fn, self.certificates, self.tolerance)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'name': self.name,
            'dimension': self.dimension,
            'tolerance': self.tolerance,
            'certificates': self.certificates.to_dict()
        }

    def __repr__(self) -> str:
        return "CertifiedOperator<%s, n=%d, %s>"%(self.name, self.dimension, ",".join(self.certificates.names()) or "-")
