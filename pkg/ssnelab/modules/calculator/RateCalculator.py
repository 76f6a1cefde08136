"""
-------------------------------------------------
SSNELab - Rate Calculator Module
-------------------------------------------------
"""

from typing import Any, Dict, List
from ssnelab.core import Module, IO, Workspace, ConfigError, SsneLabError
from ssnelab.core.Report import RateReport, RateTable
from ssnelab.moduli import joint_afp_bound
from ssnelab.rates import SigmaInputs, theta_bound, phi_bound, psi_bound, gamma_rate, rate_grid, format_ext
from ssnelab.lab import sigma_report


def _required(entry: Dict[str, Any], *keys: str) -> None:
    missing = [k for k in keys if k not in entry]
    if missing:
        raise ConfigError(f"Rate '{entry['id']}' ({entry['kind']}) is missing: {', '.join(missing)}.")

def _grid(entry: Dict[str, Any], key: str) -> List[float]:
    _required(entry, key)
    return [float(v) for v in entry[key]]


def sigma_inputs(data: Workspace, entry: Dict[str, Any]) -> SigmaInputs:
    """
    Σ inputs of a `sigma` rate entry. With `operators`, missing moduli are taken from their
    certificates: ssne of every operator, supercoercivity of all but the first, and the joint
    bound of their afp bounds.
    """
    _required(entry, 'b', 'd')

    if 'operators' in entry:
        ops = [data.getOperator(n) for n in entry['operators']]

        def certificate(op: Any, name: str) -> Any:
            value = getattr(op.certificates, name)
            if value is None:
                raise ConfigError(f"Rate '{entry['id']}': operator '{op.name}' carries no '{name}' certificate.")
            return value

        chis = [data.modulus(c) for c in entry['chis']] if 'chis' in entry else [certificate(op, 'ssne') for op in ops]
        nus = [data.modulus(n) for n in entry['nus']] if 'nus' in entry else [certificate(op, 'supercoercivity') for op in ops[1:]]
        k = data.modulus(entry['k']) if 'k' in entry else joint_afp_bound([certificate(op, 'afp_bound') for op in ops])
        m = len(ops)
    else:
        _required(entry, 'chis', 'nus', 'k')
        chis = [data.modulus(c) for c in entry['chis']]
        nus = [data.modulus(n) for n in entry['nus']]
        k = data.modulus(entry['k'])
        m = entry.get('m', len(chis))

    try:
        return SigmaInputs(m=m, chis=tuple(chis), nus=tuple(nus), k=k, b=float(entry['b']), d=float(entry['d']))
    except SsneLabError as e:
        raise ConfigError(f"Rate '{entry['id']}': {e}") from e


@IO.Config('skip_sigma', bool, False, the='flag to leave out sigma entries, whose nested bounds are the slowest to evaluate')
class RateCalculator(Module):
    """
    Evaluates every entry of `rates` into the rate table. Γ and Σ entries additionally get a
    certified-only rate report which the regularity check completes with empirical indices.
    """

    skip_sigma: bool

    def task(self) -> None:
        table = self.config.data.table if self.config.data.table is not None else RateTable()

        for entry in self.config.section('rates'):
            if entry['kind'] == 'sigma' and self.skip_sigma:
                self.log.notice(f"skipping sigma rate '{entry['id']}'")
                continue
            try:
                self.compute(entry, table)
            except ConfigError:
                raise
            except SsneLabError as e:
                raise ConfigError(f"Rate '{entry['id']}' cannot be evaluated: {e}") from e

        self.config.data.table = table
        overflow = sum(1 for r in table.rows if r.overflow)
        self.log.result(f"{len(table.rows)} rate values, {overflow} beyond double range")

    def compute(self, entry: Dict[str, Any], table: RateTable) -> None:
        data, kind, id = self.config.data, entry['kind'], entry['id']

        if kind == 'theta':
            _required(entry, 'eta', 'l1', 'l2', 'l3')
            rho, theta = theta_bound(data.modulus(entry['eta']), entry['l1'], entry['l2'], entry['l3'])
            table.add(id, 'rho', None, rho)
            table.add(id, 'theta', None, theta)
            self.log.result(f"{id}: rho = {format_ext(rho)}, Theta = {format_ext(theta)}")

        elif kind == 'phi':
            _required(entry, 'chi', 'nu', 'k')
            chi, nu, k = data.modulus(entry['chi']), data.modulus(entry['nu']), data.modulus(entry['k'])
            for delta in _grid(entry, 'delta'):
                bound = phi_bound(chi, nu, k, delta)
                self.log.debug(f"{id}: delta = {delta}: B = {bound.b}, G = {bound.g}, H = {bound.h}")
                table.add(id, 'phi', delta, bound.phi)

        elif kind == 'psi':
            _required(entry, 'chis', 'nus', 'k')
            chis = [data.modulus(c) for c in entry['chis']]
            nus = [data.modulus(n) for n in entry['nus']]
            k, m = data.modulus(entry['k']), entry.get('m', len(nus) + 1)
            for delta in _grid(entry, 'delta'):
                table.add(id, 'psi', delta, psi_bound(m, chis, nus, k, delta))

        elif kind == 'gamma':
            _required(entry, 'b', 'd', 'alpha', 'omega')
            alpha, omega = data.modulus(entry['alpha']), data.modulus(entry['omega'], 'sne')
            grid = _grid(entry, 'epsilon')
            certified = rate_grid(lambda e: gamma_rate(e, entry['b'], entry['d'], alpha, omega), grid)
            data.rates[id] = RateReport(epsilon_grid=grid, certified=certified,
                                        inputs={'b': entry['b'], 'd': entry['d'], 'alpha': str(alpha), 'omega': str(omega)})
            for eps, value in zip(grid, certified):
                table.add(id, 'gamma', eps, value)

        elif kind == 'sigma':
            report = sigma_report(sigma_inputs(data, entry), _grid(entry, 'epsilon'))
            data.rates[id] = report
            for eps, value in zip(report.epsilon_grid, report.certified):
                table.add(id, 'sigma', eps, value)

        else:
            raise ConfigError(f"Unknown rate kind '{kind}'.")
