"""
-------------------------------------------------
SSNELab - Structured results of sweeps, rates and iterations
-------------------------------------------------
"""

from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple
from dataclasses import dataclass, field
from ssnelab.rates.extended import ExtReal, is_overflow, format_ext, OVERFLOW_TEXT
import numpy as np
import pandas as pd

# 17 significant digits round-trip every double
FLOAT_FORMAT = '%.17g'
NOT_A_PROOF = "absence of a counterexample is not a proof"

def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float) and not is_overflow(value):
        return FLOAT_FORMAT % value
    return format_ext(value)

def _json_ext(value: ExtReal) -> Any:
    return "inf" if is_overflow(value) else value


class RateStatus(str, Enum):
    OK = 'ok'
    FAILURE = 'FAILURE'
    CERTIFIED_ONLY = 'certified only'
    OVERFLOW = OVERFLOW_TEXT

    def __str__(self):
        return self.value


# +++++++++++++++++++++++++++++++++++++++++++++++++++++
# ++ Falsification

@dataclass(frozen=True)
class Counterexample:
    x: Tuple[float, ...]
    y: Tuple[float, ...]
    epsilon: float
    gap: float
    defect: float
    z: Optional[Tuple[float, ...]] = None

    def to_dict(self) -> Dict[str, Any]:
        d: Dict[str, Any] = {
            'x': list(self.x),
            'y': list(self.y),
            'epsilon': self.epsilon,
            'gap': self.gap,
            'defect': self.defect
        }
        if self.z is not None:
            d['z'] = list(self.z)
        return d


@dataclass(frozen=True)
class SampleReport:
    claim: str
    kind: str
    trials: int
    seed: int
    box: Tuple[float, float]
    heavy_tail: bool
    counterexample: Optional[Counterexample] = None
    note: str = NOT_A_PROOF

    @property
    def falsified(self) -> bool:
        return self.counterexample is not None

    def to_dict(self) -> Dict[str, Any]:
        return {
            'claim': self.claim,
            'kind': self.kind,
            'trials': self.trials,
            'seed': self.seed,
            'box': {'low': self.box[0], 'high': self.box[1], 'heavy_tail': self.heavy_tail},
            'falsified': self.falsified,
            'counterexample': self.counterexample.to_dict() if self.counterexample else None,
            'note': self.note if not self.falsified else "counterexample replays from the stored vectors"
        }


# +++++++++++++++++++++++++++++++++++++++++++++++++++++
# ++ Rates

@dataclass
class RateReport:
    """
    Certified rate values on an ε grid, optionally with the empirical first index at which
    the displacement fell below ε and a per-row status.
    """
    epsilon_grid: List[float]
    certified: List[ExtReal]
    inputs: Dict[str, Any] = field(default_factory=dict)
    empirical: Optional[List[Optional[int]]] = None
    status: Optional[List[RateStatus]] = None
    n_max: Optional[int] = None

    @property
    def overflow(self) -> List[bool]:
        return [is_overflow(v) for v in self.certified]

    @property
    def failed(self) -> bool:
        return self.status is not None and any(s == RateStatus.FAILURE for s in self.status)

    def to_dict(self) -> Dict[str, Any]:
        rows = []
        for i, eps in enumerate(self.epsilon_grid):
            row: Dict[str, Any] = {
                'epsilon': eps,
                'certified_rate': _json_ext(self.certified[i]),
                'empirical_index': self.empirical[i] if self.empirical is not None else None,
                'overflow_flag': self.overflow[i]
            }
            if self.status is not None:
                row['status'] = str(self.status[i])
            rows.append(row)
        return {'inputs': self.inputs, 'n_max': self.n_max, 'failed': self.failed, 'rows': rows}

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({
            'epsilon': [_cell(float(e)) for e in self.epsilon_grid],
            'certified_rate': [_cell(v) for v in self.certified],
            'empirical_index': [_cell(self.empirical[i] if self.empirical is not None else None) for i in range(len(self.epsilon_grid))],
            'overflow_flag': [_cell(o) for o in self.overflow]
        }, columns=['epsilon', 'certified_rate', 'empirical_index', 'overflow_flag'])


# +++++++++++++++++++++++++++++++++++++++++++++++++++++
# ++ Iteration

@dataclass(frozen=True)
class DisplacementCurve:
    """values[n] = ‖Rⁿx₀ − Rⁿ⁺¹x₀‖ for n = 0..n_max."""
    x0: Tuple[float, ...]
    values: Tuple[float, ...]

    @property
    def n_max(self) -> int:
        return len(self.values) - 1

    def first_index(self, epsilon: float) -> Optional[int]:
        hits = np.flatnonzero(np.asarray(self.values) <= epsilon)
        return int(hits[0]) if len(hits) else None

    def first_indices(self, epsilons: Sequence[float]) -> List[Optional[int]]:
        return [self.first_index(e) for e in epsilons]

    def is_monotone(self, slack: float = 1e-12) -> bool:
        v = np.asarray(self.values)
        return bool(np.all(v[1:] <= v[:-1] + slack))

    def to_dict(self) -> Dict[str, Any]:
        return {'x0': list(self.x0), 'n_max': self.n_max, 'final': self.values[-1], 'monotone': self.is_monotone()}

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({
            'n': list(range(len(self.values))),
            'displacement': [_cell(float(v)) for v in self.values]
        }, columns=['n', 'displacement'])


# +++++++++++++++++++++++++++++++++++++++++++++++++++++
# ++ Run results

class Expectation(str, Enum):
    HOLD = 'hold'
    FALSIFIED = 'falsified'

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class ClaimResult:
    """A sample report together with what the experiment expected of it."""
    report: SampleReport
    expect: Expectation = Expectation.HOLD

    @property
    def passed(self) -> bool:
        return self.report.falsified == (self.expect == Expectation.FALSIFIED)

    def to_dict(self) -> Dict[str, Any]:
        return {**self.report.to_dict(), 'expect': str(self.expect), 'passed': self.passed}


@dataclass(frozen=True)
class RateRow:
    id: str
    kind: str
    parameter: Optional[float]
    value: ExtReal

    @property
    def overflow(self) -> bool:
        return is_overflow(self.value)


@dataclass
class RateTable:
    """Flat table of Θ/Φ/Ψ/Γ/Σ values; `parameter` is ε or δ (empty for Θ)."""
    rows: List[RateRow] = field(default_factory=list)

    COLUMNS = ['id', 'kind', 'parameter', 'value', 'overflow_flag']

    def add(self, id: str, kind: str, parameter: Optional[float], value: ExtReal) -> None:
        self.rows.append(RateRow(id, kind, parameter, value))

    def to_dict(self) -> List[Dict[str, Any]]:
        return [{'id': r.id, 'kind': r.kind, 'parameter': r.parameter, 'value': _json_ext(r.value), 'overflow_flag': r.overflow}
                for r in self.rows]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({
            'id': [r.id for r in self.rows],
            'kind': [r.kind for r in self.rows],
            'parameter': [_cell(None if r.parameter is None else float(r.parameter)) for r in self.rows],
            'value': [_cell(r.value) for r in self.rows],
            'overflow_flag': [_cell(r.overflow) for r in self.rows]
        }, columns=self.COLUMNS)
