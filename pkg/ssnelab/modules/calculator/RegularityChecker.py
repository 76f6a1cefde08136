"""
-------------------------------------------------
SSNELab - Regularity Checker Module
-------------------------------------------------
"""

from typing import Any, Dict, List
from ssnelab.core import Module, IO, ConfigError, SsneLabError
from ssnelab.core.Report import DisplacementCurve, RateReport
from ssnelab.hilbert import CertifiedOperator, compose, norm, as_vector
from ssnelab.lab import asymptotic_regularity_check, rate_vs_reality, check_rates
from .RateCalculator import sigma_inputs


@IO.Config('tol', float, 1e-8, factory=float, the='displacement the iteration has to reach within n_max steps')
@IO.Config('required', bool, True, the='flag to count an unreached tolerance or a non-monotone curve as a failed run')
class RegularityChecker(Module):
    """
    Iterates the operator of every Γ / Σ rate entry that has a start point `x0`, records the
    displacement curve and compares the empirical first indices with the certified rates.
    """

    tol: float
    required: bool

    def task(self) -> None:
        entries = [e for e in self.config.section('rates') if e['kind'] in ('gamma', 'sigma') and 'x0' in e]
        if not entries:
            self.log.notice("no rate entries with a start point x0")
            return

        for entry in entries:
            try:
                self.check(entry)
            except ConfigError:
                raise
            except SsneLabError as e:
                raise ConfigError(f"Rate '{entry['id']}' cannot be iterated: {e}") from e

    def operators(self, entry: Dict[str, Any]) -> List[CertifiedOperator]:
        if 'operators' in entry:
            return [self.config.data.getOperator(n) for n in entry['operators']]
        if 'operator' in entry:
            return [self.config.data.getOperator(entry['operator'])]
        raise ConfigError(f"Rate '{entry['id']}' has a start point but neither 'operator' nor 'operators'.")

    def check(self, entry: Dict[str, Any]) -> None:
        id, data = entry['id'], self.config.data
        ops = self.operators(entry)
        n_max = entry.get('n_max', self.config['n_max'])

        reached, curve = asymptotic_regularity_check(ops, entry['x0'], n_max=n_max, tol=self.tol)
        data.curves[id] = curve

        if entry['kind'] == 'sigma':
            report = rate_vs_reality(compose(ops), entry['x0'], sigma_inputs(data, entry), entry['epsilon'],
                                     n_max=n_max, curve=curve)
        else:
            report = self._gamma(entry, curve)
        data.rates[id] = report

        data.regularity[id] = {
            'reached': reached,
            'tol': self.tol,
            'first_index': curve.first_index(self.tol),
            'monotone': curve.is_monotone(),
            'n_max': curve.n_max,
            'required': self.required,
        }

        if not reached:
            self.log.warning(f"{id}: displacement stayed above {self.tol:g} for {n_max} steps (final {curve.values[-1]:.3g})")
        if not curve.is_monotone():
            self.log.warning(f"{id}: displacement curve is not nonincreasing; the operator is not nonexpansive")
        for eps, rate, idx, status in zip(report.epsilon_grid, report.certified, report.empirical or [], report.status or []):
            self.log.result(f"{id}: eps = {eps:g}, certified {rate}, empirical {idx}, {status}")

    def _gamma(self, entry: Dict[str, Any], curve: DisplacementCurve) -> RateReport:
        report = self.config.data.rates.get(entry['id'])
        if report is None:
            raise ConfigError(f"Rate '{entry['id']}' must be evaluated by RateCalculator before it is iterated.")

        start = as_vector(entry['x0'])
        if entry['b'] < norm(start):
            raise ConfigError(f"Rate '{entry['id']}': b = {entry['b']:g} is smaller than ‖x0‖ = {norm(start):g}.")
        if curve.values[0] > entry['d']:
            raise ConfigError(f"Rate '{entry['id']}': d = {entry['d']:g} is smaller than ‖x0 − Rx0‖ = {curve.values[0]:g}.")

        return check_rates(curve, report.epsilon_grid, report.certified, inputs=report.inputs)
