from .Vector import Vector, as_vector, inner, norm, check_dimensions
from .CertifiedOperator import CertifiedOperator, Certificates
from .MonotoneMap import MonotoneMap, zero_map, monotone_scaled_identity, monotone_linear, halfspace_penalty, inverse_map
from .operators import (project_ball, project_halfspace, project_box, identity, negation, scaled_identity,
                        linear_operator, rotation, check_nonexpansive, make_averaged, compose)
from .resolvents import damped_solve, resolvent, reflected_resolvent
