"""
-------------------------------------------------
SSNELab - Operator Builder Module
-------------------------------------------------
"""

from typing import Any, Callable, Dict, Optional
from ssnelab.core import Module, IO, ConfigError, SsneLabError
from ssnelab.hilbert import (CertifiedOperator, MonotoneMap, zero_map, monotone_scaled_identity, monotone_linear,
                             halfspace_penalty, inverse_map, project_ball, project_halfspace, project_box, identity,
                             negation, scaled_identity, linear_operator, rotation, make_averaged, compose,
                             resolvent, reflected_resolvent)
from ssnelab.hilbert.resolvents import DEFAULT_TOL, DEFAULT_MAX_ITER
import numpy as np


@IO.Config('tol', float, DEFAULT_TOL, factory=float, the='default evaluation tolerance of resolvents and reflected resolvents')
@IO.Config('max_iter', int, DEFAULT_MAX_ITER, the='default iteration limit of resolvent evaluations')
class OperatorBuilder(Module):
    """
    Builds the `maps` and `operators` sections into the workspace, in file order.
    Operators may refer to maps and to operators defined before them.
    """

    tol: float
    max_iter: int

    def task(self) -> None:
        for name, spec in self.config.section('maps').items():
            m = self._guard(name, lambda: self.buildMap(name, spec))
            self.config.data.addMap(name, m)
            self.log.notice(f"map {name}: {spec['kind']} on R^{m.dimension}")

        for name, spec in self.config.section('operators').items():
            op = self._guard(name, lambda: self.buildOperator(name, spec))
            self.config.data.addOperator(name, op)
            self.log.notice(f"operator {name}: {spec['kind']} on R^{op.dimension}, certificates: {', '.join(op.certificates.names()) or '-'}")

        self.log.result(f"built {len(self.config.data.maps)} maps and {len(self.config.data.operators)} operators")

    def _guard(self, name: str, build: Callable[[], Any]) -> Any:
        # every construction error is a configuration error of `name`
        try:
            obj = build()
        except ConfigError:
            raise
        except (SsneLabError, TypeError, ValueError, np.linalg.LinAlgError) as e:
            raise ConfigError(f"Cannot build '{name}': {e}") from e

        dimension = self._dimension(None)
        if dimension is not None and obj.dimension != dimension:
            raise ConfigError(f"'{name}' acts on R^{obj.dimension} but general.dimension is {dimension}.")
        return obj

    def _dimension(self, spec: Optional[Dict[str, Any]]) -> Optional[int]:
        if spec is not None and 'dimension' in spec:
            return spec['dimension']
        try:
            return self.config['dimension']
        except KeyError:
            return None

    def _required_dimension(self, name: str, spec: Dict[str, Any]) -> int:
        n = self._dimension(spec)
        if n is None:
            raise ConfigError(f"'{name}' ({spec['kind']}) needs a dimension; set it on the entry or in general.dimension.")
        return n

    def _require(self, name: str, spec: Dict[str, Any], *keys: str) -> None:
        missing = [k for k in keys if k not in spec]
        if missing:
            raise ConfigError(f"'{name}' ({spec['kind']}) is missing: {', '.join(missing)}.")

    # +++++++++++++++++++++++++++++++++++++++++++++++++++++
    # ++ Monotone maps

    def buildMap(self, name: str, spec: Dict[str, Any]) -> MonotoneMap:
        kind = spec['kind']

        if kind == 'zero':
            m = zero_map(self._required_dimension(name, spec))
        elif kind == 'scaled_identity':
            self._require(name, spec, 'lam')
            m = monotone_scaled_identity(self._required_dimension(name, spec), spec['lam'])
        elif kind == 'linear':
            self._require(name, spec, 'matrix')
            m = monotone_linear(np.array(spec['matrix'], dtype=float), name=name)
        elif kind == 'halfspace_penalty':
            self._require(name, spec, 'a', 'b')
            m = halfspace_penalty(np.array(spec['a'], dtype=float), spec['b'], lam=spec.get('lam', 1.0))
        elif kind == 'inverse':
            self._require(name, spec, 'of')
            m = inverse_map(self.config.data.getMap(spec['of']))
        else:
            raise ConfigError(f"Unknown map kind '{kind}'.")

        m.name = name
        return m

    # +++++++++++++++++++++++++++++++++++++++++++++++++++++
    # ++ Operators

    def buildOperator(self, name: str, spec: Dict[str, Any]) -> CertifiedOperator:
        kind = spec['kind']

        if kind == 'project_ball':
            self._require(name, spec, 'center', 'radius')
            op = project_ball(spec['center'], spec['radius'])
        elif kind == 'project_halfspace':
            self._require(name, spec, 'a', 'b')
            op = project_halfspace(spec['a'], spec['b'])
        elif kind == 'project_box':
            self._require(name, spec, 'lower', 'upper')
            op = project_box(spec['lower'], spec['upper'])
        elif kind == 'identity':
            op = identity(self._required_dimension(name, spec))
        elif kind == 'negation':
            op = negation(self._required_dimension(name, spec))
        elif kind == 'scaled_identity':
            self._require(name, spec, 'beta')
            op = scaled_identity(self._required_dimension(name, spec), spec['beta'])
        elif kind == 'rotation':
            self._require(name, spec, 'theta')
            op = rotation(spec['theta'])
        elif kind == 'linear':
            self._require(name, spec, 'matrix')
            op = linear_operator(spec['matrix'], name=name)
        elif kind == 'averaged':
            self._require(name, spec, 'alpha', 'of')
            op = make_averaged(spec['alpha'], self._operand(name, spec['of']))
        elif kind == 'compose':
            self._require(name, spec, 'of')
            of = spec['of'] if isinstance(spec['of'], list) else [spec['of']]
            op = compose([self.config.data.getOperator(o) for o in of])
        elif kind in ('resolvent', 'reflected_resolvent'):
            self._require(name, spec, 'map')
            build = resolvent if kind == 'resolvent' else reflected_resolvent
            op = build(self.config.data.getMap(spec['map']), tol=spec.get('tol', self.tol),
                       max_iter=spec.get('max_iter', self.max_iter))
        else:
            raise ConfigError(f"Unknown operator kind '{kind}'.")

        return op.renamed(name)

    def _operand(self, name: str, of: Any) -> CertifiedOperator:
        if not isinstance(of, str):
            raise ConfigError(f"'{name}' averages a single operator; 'of' must be a name.")
        return self.config.data.getOperator(of)
