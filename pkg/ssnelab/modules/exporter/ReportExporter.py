"""
-------------------------------------------------
SSNELab - Report Exporter Module
-------------------------------------------------
"""

from typing import Any, Callable, Dict
from ssnelab.core import Module, IO
from ssnelab.rates import is_overflow
import json, math, os
import numpy as np
import pandas as pd

REPORT_SCHEMA = 'ssnelab/report/v1'
REPORT_FILE = 'report.json'
RATE_TABLE_FILE = 'rate_table.csv'


def json_safe(value: Any) -> Any:
    """Plain JSON values; non-finite floats become the strings "inf", "-inf" and "nan"."""
    if isinstance(value, dict):
        return {str(k): json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [json_safe(v) for v in value]
    if isinstance(value, np.ndarray):
        return [json_safe(v) for v in value.tolist()]
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return "nan" if math.isnan(value) else ("inf" if value > 0 else "-inf")
    return value


def write_atomic(path: str, write: Callable[[str], None]) -> None:
    """Write through `<path>.tmp` and move it into place."""
    tmp = path + '.tmp'
    try:
        write(tmp)
        os.replace(tmp, path)
    finally:
        if os.path.exists(tmp):
            os.remove(tmp)


def write_frame(df: pd.DataFrame, path: str) -> None:
    write_atomic(path, lambda tmp: df.to_csv(tmp, index=False, lineterminator='\n'))


def write_json(data: Dict[str, Any], path: str) -> None:
    def write(tmp: str) -> None:
        with open(tmp, 'w') as f:
            json.dump(json_safe(data), f, indent=4, allow_nan=False)
            f.write('\n')
    write_atomic(path, write)


@IO.Config('rates_only', bool, False, the='flag to export the rate table and rate CSVs only (print-rates)')
@IO.Config('curves', bool, True, the='flag to export a CSV per displacement curve')
class ReportExporter(Module):
    """
    Writes `report.json`, `rate_table.csv`, `rates_<id>.csv` per rate report and
    `curve_<id>.csv` per displacement curve into the output directory.
    The report carries no timestamps; identical runs give identical files.
    """

    rates_only: bool
    curves: bool

    def task(self) -> None:
        out = self.config.out_dir
        os.makedirs(out, exist_ok=True)
        data = self.config.data

        if data.table is not None:
            write_frame(data.table.to_frame(), os.path.join(out, RATE_TABLE_FILE))
            self.log.notice(f"rate table: {len(data.table.rows)} rows")

        for id, report in data.rates.items():
            write_frame(report.to_frame(), os.path.join(out, f"rates_{id}.csv"))

        if self.rates_only:
            return

        if self.curves:
            for id, curve in data.curves.items():
                write_frame(curve.to_frame(), os.path.join(out, f"curve_{id}.csv"))

        path = os.path.join(out, REPORT_FILE)
        write_json(self.generateReport(), path)
        self.log.notice(f"report written to {path}")

    def generateReport(self) -> Dict[str, Any]:
        data = self.config.data

        return {
            'schema': REPORT_SCHEMA,
            'name': self.config['name'],
            'sampling': {
                'seed': self.config['seed'],
                'trials': self.config['trials'],
                'box': self.config['box'],
                'heavy_tail': self.config['heavy_tail'],
                'chunk_size': self.config['chunk_size']
            },
            'summary': data.summary(),
            'maps': {name: {'dimension': m.dimension, 'lipschitz': m.lipschitz, 'cocoercivity': m.cocoercivity,
                            'zero': m.zero.tolist() if m.zero is not None else None}
                     for name, m in data.maps.items()},
            'operators': {name: op.to_dict() for name, op in data.operators.items()},
            'claims': [c.to_dict() for c in data.claims],
            'rates': {id: r.to_dict() for id, r in data.rates.items()},
            'rate_table': data.table.to_dict() if data.table is not None else [],
            'curves': {id: c.to_dict() for id, c in data.curves.items()},
            'regularity': data.regularity,
            'witnesses': data.witnesses,
            'failures': data.failures,
            'overflow': any(is_overflow(r.value) for r in data.table.rows) if data.table is not None else False
        }
