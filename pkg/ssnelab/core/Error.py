"""
-------------------------------------------------
SSNELab - Error Classes
-------------------------------------------------
"""

class SsneLabError(Exception):
    """Base class for exceptions in this package."""
    pass

class DimensionMismatchError(SsneLabError, ValueError):
    """Vectors or operators of different dimensions were combined."""
    pass

class PreconditionError(SsneLabError, ValueError):
    """An argument violates the precondition of an operation (e.g. alpha outside (0,1), an empty list, a nonpositive bound)."""
    pass

class CertificateError(SsneLabError):
    """A declared certificate was contradicted by the sampled construction-time check."""
    pass

class ConvergenceError(SsneLabError, ArithmeticError):
    """An iterative solver exceeded its iteration budget."""
    pass

class ConfigError(SsneLabError):
    """The experiment configuration is invalid or references unknown objects."""
    pass
