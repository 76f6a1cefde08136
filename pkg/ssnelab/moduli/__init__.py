from .Modulus import Modulus, SneModulus, CldGauge, EmpiricalStepModulus, TEST_GRID
from .calculus import *
from .factory import modulus_from_spec
