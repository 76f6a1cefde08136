"""
-------------------------------------------------
SSNELab - Moduli from configuration dictionaries
-------------------------------------------------

Accepted forms (all JSON):

    2.5                                             constant
    {"kind": "constant", "value": 2.5}
    {"kind": "power", "exponent": 2, "coef": 1}     coef·ε^exponent
    {"kind": "linear", "coef": 0.5}                 coef·ε  (SNE: coef·ε, independent of b)
    {"kind": "empirical", "samples": [[a, b], ...]}
    {"rule": "ssne_of_averaged", "alpha": 0.5}      any rule of `ssnelab.moduli.calculus`
    {"certificate": "ssne", "operator": "P1"}       certificate attached to a built operator
    {"certificate": "psi", "map": "A"}              cocoercivity-derived modulus of a built map
"""

from typing import Any, Callable, Dict, Optional, Tuple, Union
from .Modulus import Modulus, SneModulus, CldGauge, EmpiricalStepModulus
from . import calculus
from ssnelab.core.Error import ConfigError, PreconditionError
import numbers

AnyModulus = Union[Modulus, SneModulus, CldGauge]

# lookup(section, name) -> built operator / map, provided by the workspace
Lookup = Callable[[str, str], Any]

EXPECTED_TYPES = {
    'modulus': Modulus,
    'sne': SneModulus,
    'gauge': CldGauge,
}

# rule name -> (function, {argument: argument type})
RULES: Dict[str, Tuple[Callable[..., AnyModulus], Dict[str, str]]] = {
    'sne_from_ssne':                               (calculus.sne_from_ssne, {'chi': 'modulus'}),
    'ssne_from_sne_real_line':                     (calculus.ssne_from_sne_real_line, {'omega': 'sne'}),
    'ssne_of_averaged':                            (calculus.ssne_of_averaged, {'alpha': 'real'}),
    'ssne_of_cld':                                 (calculus.ssne_of_cld, {'k': 'gauge'}),
    'cld_from_two_sided_sne':                      (calculus.cld_from_two_sided_sne, {'omega_plus': 'sne', 'omega_minus': 'sne'}),
    'ssne_of_composition':                         (calculus.ssne_of_composition, {'chis': 'modulus_list'}),
    'ssne_from_inverse_uniform_monotonicity':      (calculus.ssne_from_inverse_uniform_monotonicity, {'psi': 'modulus'}),
    'inverse_uniform_monotonicity_from_ssne':      (calculus.inverse_uniform_monotonicity_from_ssne, {'chi': 'modulus'}),
    'resolvent_uniform_monotonicity':              (calculus.resolvent_uniform_monotonicity, {'psi': 'modulus'}),
    'quadratic_gauge':                             (calculus.quadratic_gauge, {'alpha': 'modulus'}),
    'resolvent_quadratic_growth':                  (calculus.resolvent_quadratic_growth, {'psi': 'modulus'}),
    'displacement_gap_bound':                      (calculus.displacement_gap_bound, {'psi': 'modulus'}),
    'uniform_continuity_modulus':                  (calculus.uniform_continuity_modulus, {'psi': 'modulus'}),
    'inverse_uniform_monotonicity_of_cocoercive':  (calculus.inverse_uniform_monotonicity_of_cocoercive, {'c': 'real'}),
    'supercoercivity_of_averaged':                 (calculus.supercoercivity_of_averaged, {'alpha': 'real'}),
    'supercoercivity_of_cld':                      (calculus.supercoercivity_of_cld, {'k': 'gauge'}),
    'supercoercivity_of_reflected_resolvent':      (calculus.supercoercivity_of_reflected_resolvent, {'eta': 'modulus'}),
    'supercoercivity_of_inverse':                  (calculus.supercoercivity_of_inverse, {'nu': 'modulus'}),
    'inverse_supercoercivity_of_cocoercive':       (calculus.inverse_supercoercivity_of_cocoercive, {'c': 'real'}),
    'pointwise_max':                               (calculus.pointwise_max, {'first': 'modulus', 'second': 'modulus'}),
    'joint_afp_bound':                             (calculus.joint_afp_bound, {'bounds': 'modulus_list'}),
}

OPERATOR_CERTIFICATES = ('ssne', 'sne', 'cld_gauge', 'supercoercivity', 'afp_bound')
MAP_CERTIFICATES = ('psi', 'eta')


def _primitive(spec: Dict[str, Any], expect: str) -> AnyModulus:
    kind = spec['kind']
    if kind == 'constant':
        value = spec.get('value')
        if expect == 'gauge':
            return CldGauge.constant(value)
        if expect == 'sne':
            return SneModulus.constant(value)
        return Modulus.constant(value, nonnegative=spec.get('nonnegative', False))
    if kind == 'linear':
        return SneModulus.linear(spec['coef']) if expect == 'sne' else Modulus.linear(spec['coef'])
    if kind == 'power':
        return Modulus.power(spec['exponent'], coef=spec.get('coef', 1.0))
    if kind == 'empirical':
        return EmpiricalStepModulus([tuple(s) for s in spec['samples']])
    raise ConfigError(f"Unknown modulus kind '{kind}'.")


def _certificate(spec: Dict[str, Any], lookup: Optional[Lookup]) -> AnyModulus:
    if lookup is None:
        raise ConfigError("Certificate references need built operators; none are available here.")
    name = spec['certificate']

    if 'operator' in spec:
        if name not in OPERATOR_CERTIFICATES:
            raise ConfigError(f"Unknown operator certificate '{name}'; use one of {', '.join(OPERATOR_CERTIFICATES)}.")
        value = getattr(lookup('operators', spec['operator']).certificates, name)
        owner = spec['operator']
    elif 'map' in spec:
        if name not in MAP_CERTIFICATES:
            raise ConfigError(f"Unknown map certificate '{name}'; use one of {', '.join(MAP_CERTIFICATES)}.")
        value = getattr(lookup('maps', spec['map']), name)()
        owner = spec['map']
    else:
        raise ConfigError("A certificate reference needs an 'operator' or a 'map'.")

    if value is None:
        raise ConfigError(f"'{owner}' carries no '{name}' certificate.")
    return value


def _argument(value: Any, argtype: str, lookup: Optional[Lookup]) -> Any:
    if argtype == 'real':
        if not isinstance(value, numbers.Real):
            raise ConfigError(f"Expected a number, got {value!r}.")
        return float(value)
    if argtype == 'modulus_list':
        if not isinstance(value, list):
            raise ConfigError(f"Expected a list of moduli, got {value!r}.")
        return [modulus_from_spec(v, 'modulus', lookup) for v in value]
    return modulus_from_spec(value, argtype, lookup)


def modulus_from_spec(spec: Any, expect: str = 'modulus', lookup: Optional[Lookup] = None, validate: bool = True) -> AnyModulus:
    """
    Build a modulus (`expect` = 'modulus'), an SNE modulus ('sne') or a gauge ('gauge') from a
    configuration value; see the module docstring for the accepted forms.
    """
    if expect not in EXPECTED_TYPES:
        raise ConfigError(f"Unknown modulus type '{expect}'.")

    try:
        if isinstance(spec, numbers.Real) and not isinstance(spec, bool):
            result = _primitive({'kind': 'constant', 'value': spec}, expect)
        elif not isinstance(spec, dict):
            raise ConfigError(f"Cannot read a modulus from {spec!r}.")
        elif 'kind' in spec:
            result = _primitive(spec, expect)
        elif 'rule' in spec:
            if spec['rule'] not in RULES:
                raise ConfigError(f"Unknown modulus rule '{spec['rule']}'.")
            fn, signature = RULES[spec['rule']]
            missing = [a for a in signature if a not in spec]
            if missing:
                raise ConfigError(f"Rule '{spec['rule']}' is missing arguments: {', '.join(missing)}.")
            result = fn(**{a: _argument(spec[a], t, lookup) for a, t in signature.items()})
        elif 'certificate' in spec:
            result = _certificate(spec, lookup)
        else:
            raise ConfigError(f"Cannot read a modulus from {spec!r}: expected 'kind', 'rule' or 'certificate'.")

        if not isinstance(result, EXPECTED_TYPES[expect]):
            raise ConfigError(f"Expected a {expect} modulus but {spec!r} describes a {result.kind} modulus.")
        if validate and not getattr(result, 'nonnegative', False):
            result.validate()

    except (PreconditionError, KeyError, TypeError) as e:
        raise ConfigError(f"Invalid modulus {spec!r}: {e}") from e

    return result
