from .RateCalculator import RateCalculator, sigma_inputs
from .RegularityChecker import RegularityChecker
