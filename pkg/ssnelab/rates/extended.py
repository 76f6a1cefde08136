"""
-------------------------------------------------
SSNELab - Extended-real helpers for rate arithmetic
-------------------------------------------------

Rates are python ints (exact, unbounded) or the marker `INF` when an
intermediate double overflowed, underflowed to zero where a positive value is
required, or became NaN. Reports print the marker as "inf" and describe it as
"exceeds double range".
"""

from typing import Union
import math

INF = math.inf
OVERFLOW_TEXT = "exceeds double range"

ExtReal = Union[int, float]


def is_overflow(value: ExtReal) -> bool:
    return isinstance(value, float) and not math.isfinite(value)


def finite_or_inf(value: float) -> float:
    """Map NaN to the +∞ marker; keep everything else."""
    value = float(value)
    return INF if math.isnan(value) else value


def ext_ceil(value: float) -> ExtReal:
    """Ceiling as an exact python int, or INF when the double is not finite."""
    value = finite_or_inf(value)
    if math.isinf(value):
        return INF
    return math.ceil(value)


def ext_mul(a: ExtReal, b: ExtReal) -> ExtReal:
    """Product of nonnegative extended reals; an exact 0 annihilates the marker."""
    if a == 0 or b == 0:
        return 0
    if is_overflow(a) or is_overflow(b):
        return INF
    return a * b


def format_ext(value: ExtReal) -> str:
    if is_overflow(value):
        return "inf"
    if isinstance(value, float):
        return repr(value)
    return str(value)
