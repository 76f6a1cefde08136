"""
-------------------------------------------------
SSNELab - Witness Builder Module
-------------------------------------------------
"""

from typing import Any, Dict, List
from ssnelab.core import Module, IO, ConfigError, SsneLabError
from ssnelab.hilbert import MonotoneMap, reflected_resolvent
from ssnelab.hilbert.resolvents import DEFAULT_TOL, DEFAULT_MAX_ITER
from ssnelab.moduli import (Modulus, joint_afp_bound, ssne_from_inverse_uniform_monotonicity,
                            supercoercivity_of_reflected_resolvent)
from ssnelab.rates import phi_bound, format_ext
from ssnelab.lab import construct_afp_witness


@IO.Config('tol', float, DEFAULT_TOL, factory=float, the='solver tolerance of the resolvents and the regularised inclusion')
@IO.Config('max_iter', int, DEFAULT_MAX_ITER, the='iteration limit of the solvers')
class WitnessBuilder(Module):
    """
    Constructs δ-fixed points of R_B∘R_A for every entry of `witnesses` and checks them
    against the norm bound Φ of the same inputs.
    """

    tol: float
    max_iter: int

    def task(self) -> None:
        entries = self.config.section('witnesses')
        if not entries:
            self.log.notice("no witnesses configured")
            return

        for entry in entries:
            try:
                rows = self.build(entry)
            except ConfigError:
                raise
            except SsneLabError as e:
                raise ConfigError(f"Witness '{entry['id']}' cannot be constructed: {e}") from e
            self.config.data.witnesses[entry['id']] = rows

    def _moduli(self, entry: Dict[str, Any], a: MonotoneMap, b: MonotoneMap) -> Dict[str, Modulus]:
        data = self.config.data

        if 'chi' in entry:
            chi = data.modulus(entry['chi'])
        elif a.psi() is not None:
            chi = ssne_from_inverse_uniform_monotonicity(a.psi())
        else:
            raise ConfigError(f"Witness '{entry['id']}': map '{a.name}' is not cocoercive; give 'chi'.")

        eta = data.modulus(entry['eta']) if 'eta' in entry else b.eta()
        if eta is None:
            raise ConfigError(f"Witness '{entry['id']}': map '{b.name}' is not cocoercive; give 'eta'.")
        nu = data.modulus(entry['nu']) if 'nu' in entry else supercoercivity_of_reflected_resolvent(eta)

        if 'k' in entry:
            k = data.modulus(entry['k'])
        else:
            bounds = [reflected_resolvent(m, self.tol, self.max_iter).certificates.afp_bound for m in (a, b)]
            if any(bd is None for bd in bounds):
                raise ConfigError(f"Witness '{entry['id']}': both maps need a known zero, or give 'k'.")
            k = joint_afp_bound(bounds)

        return {'chi': chi, 'nu': nu, 'eta': eta, 'k': k}

    def build(self, entry: Dict[str, Any]) -> List[Dict[str, Any]]:
        id = entry['id']
        a, b = self.config.data.getMap(entry['a']), self.config.data.getMap(entry['b'])
        moduli = self._moduli(entry, a, b)
        tol = entry.get('tol', self.tol)
        max_iter = entry.get('max_iter', self.max_iter)

        rows: List[Dict[str, Any]] = []
        for delta in entry['delta']:
            witness = construct_afp_witness(a, b, moduli['k'], delta, tol=tol, p1=entry.get('p1'), p2=entry.get('p2'),
                                            eta=moduli['eta'], max_iter=max_iter)
            bound = phi_bound(moduli['chi'], moduli['nu'], moduli['k'], delta)

            # residual and norm are computed through solvers of accuracy tol
            holds = witness.holds(bound.phi, slack=4 * tol)
            rows.append({**witness.to_dict(), 'phi': format_ext(bound.phi) if bound.overflow else bound.phi, 'holds': holds})

            self.log.result(f"{id}: delta = {delta:g}, ‖p‖ = {witness.norm:.6g} <= Phi = {format_ext(bound.phi)}, "
                            f"residual {witness.residual:.3g} ({'holds' if holds else 'FAILS'})")
        return rows
