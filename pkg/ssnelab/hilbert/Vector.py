"""
-------------------------------------------------
SSNELab - Vectors of the ambient space R^n
-------------------------------------------------

Vectors are float64 numpy arrays. Batched functions accept a leading batch
axis, i.e. arrays of shape (k, n), and reduce over the last axis only.
"""

from typing import Iterable, Optional, Union
from ssnelab.core.Error import DimensionMismatchError, PreconditionError
import numpy as np

Vector = np.ndarray


def as_vector(components: Union[Iterable[float], np.ndarray], dimension: Optional[int] = None) -> Vector:
    """Validate and freeze a single point of R^n."""
    v = np.array(components, dtype=float)
    if v.ndim != 1 or v.size == 0:
        raise PreconditionError(f"A vector needs a nonempty flat list of components, got shape {v.shape}.")
    if not np.isfinite(v).all():
        raise PreconditionError("Vector components must be finite.")
    if dimension is not None and v.shape[0] != dimension:
        raise DimensionMismatchError(f"Expected a vector of dimension {dimension}, got {v.shape[0]}.")
    v.setflags(write=False)
    return v


def check_dimensions(*vs: np.ndarray) -> int:
    dims = {np.shape(v)[-1] for v in vs}
    if len(dims) != 1:
        raise DimensionMismatchError(f"Dimension mismatch: {sorted(dims)}.")
    return dims.pop()


def inner(x: Vector, y: Vector) -> float:
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise DimensionMismatchError(f"Cannot take the inner product of shapes {x.shape} and {y.shape}.")
    return float(np.dot(x, y))


def norm(x: Vector) -> float:
    return float(np.linalg.norm(np.asarray(x, dtype=float)))


def batch_inner(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return np.einsum('...i,...i->...', x, y)


def batch_norm(x: np.ndarray) -> np.ndarray:
    return np.asarray(np.linalg.norm(x, axis=-1))
