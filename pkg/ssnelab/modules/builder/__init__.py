from .OperatorBuilder import OperatorBuilder
