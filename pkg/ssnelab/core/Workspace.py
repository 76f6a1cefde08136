"""
-------------------------------------------------
SSNELab - Workspace shared by the workflow steps
-------------------------------------------------
"""

from typing import TYPE_CHECKING, Any, Dict, List, Optional
from .Error import ConfigError

if TYPE_CHECKING:
    from ssnelab.core.Config import Config
    from ssnelab.core.Report import ClaimResult, DisplacementCurve, RateReport, RateTable
    from ssnelab.hilbert import CertifiedOperator, MonotoneMap


class Workspace:
    """
    Named operators and maps built from the configuration, plus everything the steps produce:
    claim results, rate reports, a rate table, displacement curves, witnesses and failed steps.
    """

    def __init__(self, config: 'Config') -> None:
        self.config = config
        self.operators: Dict[str, 'CertifiedOperator'] = {}
        self.maps: Dict[str, 'MonotoneMap'] = {}
        self.claims: List['ClaimResult'] = []
        self.rates: Dict[str, 'RateReport'] = {}
        self.table: Optional['RateTable'] = None
        self.curves: Dict[str, 'DisplacementCurve'] = {}
        self.regularity: Dict[str, Dict[str, Any]] = {}
        self.witnesses: Dict[str, List[Dict[str, Any]]] = {}
        self.failures: List[Dict[str, str]] = []

    # --- built objects ------------------------------------------------------------

    def addOperator(self, name: str, op: 'CertifiedOperator') -> None:
        if name in self.operators or name in self.maps:
            raise ConfigError(f"Name '{name}' is defined twice.")
        self.operators[name] = op

    def addMap(self, name: str, m: 'MonotoneMap') -> None:
        if name in self.operators or name in self.maps:
            raise ConfigError(f"Name '{name}' is defined twice.")
        self.maps[name] = m

    def getOperator(self, name: str) -> 'CertifiedOperator':
        if name not in self.operators:
            raise ConfigError(f"Unknown operator '{name}'.")
        return self.operators[name]

    def getMap(self, name: str) -> 'MonotoneMap':
        if name not in self.maps:
            raise ConfigError(f"Unknown monotone map '{name}'.")
        return self.maps[name]

    def lookup(self, section: str, name: str) -> Any:
        return self.getOperator(name) if section == 'operators' else self.getMap(name)

    def modulus(self, spec: Any, expect: str = 'modulus') -> Any:
        """Modulus from a config value; certificate references resolve against this workspace."""
        from ssnelab.moduli.factory import modulus_from_spec
        return modulus_from_spec(spec, expect, self.lookup)

    # --- outcome ------------------------------------------------------------------

    def addFailure(self, step: str, message: str) -> None:
        self.failures.append({'step': step, 'error': message})

    @property
    def failedClaims(self) -> List['ClaimResult']:
        return [c for c in self.claims if not c.passed]

    @property
    def failedRates(self) -> List[str]:
        return [i for i, r in self.rates.items() if r.failed]

    @property
    def failedWitnesses(self) -> List[str]:
        return [i for i, rows in self.witnesses.items() if not all(r['holds'] for r in rows)]

    @property
    def failedRegularity(self) -> List[str]:
        return [i for i, r in self.regularity.items() if r.get('required', True) and not (r['reached'] and r['monotone'])]

    @property
    def passed(self) -> bool:
        return not (self.failedClaims or self.failedRates or self.failedWitnesses or self.failedRegularity or self.failures)

    def summary(self) -> Dict[str, Any]:
        return {
            'passed': self.passed,
            'claims': len(self.claims),
            'failed_claims': [c.report.claim for c in self.failedClaims],
            'failed_rates': self.failedRates,
            'failed_witnesses': self.failedWitnesses,
            'failed_regularity': self.failedRegularity,
            'failed_steps': [f['step'] for f in self.failures]
        }
