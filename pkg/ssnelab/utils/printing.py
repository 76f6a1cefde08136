"""
-------------------------------------------------
SSNELab - printing utilities
-------------------------------------------------
"""

from enum import Enum
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from ssnelab.core.Workspace import Workspace

class f(str, Enum):
    chead       = '\033[95m'
    cyan        = '\033[96m'
    cgray       = '\033[90m'
    cyellow     = '\033[93m'
    cred        = '\033[91m'
    cgreen      = '\033[92m'
    cend        = '\033[0m'
    fitalics    = '\x1B[3m'
    fnormal     = '\x1B[0m'
    fbold       = '\x1B[1m'

    def __str__(self):
        return self.value


def print_summary(data: 'Workspace') -> None:
    """One line per claim, rate, regularity check and witness, then the verdict."""

    if data.claims:
        print(f'\n{f.chead}Claims:{f.cend}')
        for c in data.claims:
            mark = f'{f.cgreen}pass{f.cend}' if c.passed else f'{f.cred+f.fbold}FAIL{f.cend+f.fnormal}'
            verdict = 'falsified' if c.report.falsified else 'no counterexample'
            print(f'  {mark}  {c.report.claim} {f.cgray}({verdict}, expected {c.expect}, {c.report.trials} trials){f.cend}')

    if data.rates:
        print(f'\n{f.chead}Rates:{f.cend}')
        for id, r in data.rates.items():
            state = 'certified only' if r.status is None else ('FAILURE' if r.failed else 'ok')
            print(f'  {id}: {len(r.epsilon_grid)} values, {state}')

    if data.regularity:
        print(f'\n{f.chead}Regularity:{f.cend}')
        for id, r in data.regularity.items():
            print(f"  {id}: tol {r['tol']:g} reached at {r['first_index']}, monotone {r['monotone']}")

    if data.witnesses:
        print(f'\n{f.chead}Witnesses:{f.cend}')
        for id, rows in data.witnesses.items():
            held = sum(1 for r in rows if r['holds'])
            print(f'  {id}: {held}/{len(rows)} within the bound')

    for failure in data.failures:
        print(f"{f.cyellow+f.fbold}Error{f.cend+f.fnormal} in {failure['step']}: {failure['error']}")

    if data.passed:
        print(f'\n{f.cgreen+f.fbold}passed{f.cend+f.fnormal}')
    else:
        print(f'\n{f.cred+f.fbold}failed{f.cend+f.fnormal}')
