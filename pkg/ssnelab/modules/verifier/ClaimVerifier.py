"""
-------------------------------------------------
SSNELab - Claim Verifier Module
-------------------------------------------------
"""

from typing import Any, Callable, Dict, Iterable, List, Tuple
from concurrent.futures import ThreadPoolExecutor
from ssnelab.core import Module, IO, ConfigError, SsneLabError
from ssnelab.core.Report import ClaimResult, Expectation, SampleReport
from ssnelab.lab import (SamplingBox, falsify_ssne, falsify_sne, falsify_cld, falsify_supercoercivity,
                         falsify_firm_nonexpansiveness, falsify_uniform_monotonicity, falsify_quadratic_growth,
                         falsify_averaged, falsify_lipschitz, falsify_afp, falsify_inverse_uniform_monotonicity,
                         falsify_uniform_continuity, falsify_displacement_gap, falsify_inverse_supercoercivity,
                         falsify_rectangularity, falsify_certificates)

# kind -> (falsifier, expected modulus type); the modulus is passed positionally after the target
MODULUS_CLAIMS: Dict[str, Tuple[Callable[..., SampleReport], str]] = {
    'ssne':                          (falsify_ssne, 'modulus'),
    'sne':                           (falsify_sne, 'sne'),
    'cld':                           (falsify_cld, 'gauge'),
    'supercoercivity':               (falsify_supercoercivity, 'modulus'),
    'uniform_monotonicity':          (falsify_uniform_monotonicity, 'modulus'),
    'quadratic_growth':              (falsify_quadratic_growth, 'modulus'),
    'inverse_uniform_monotonicity':  (falsify_inverse_uniform_monotonicity, 'modulus'),
    'uniform_continuity':            (falsify_uniform_continuity, 'modulus'),
    'displacement_gap':              (falsify_displacement_gap, 'modulus'),
    'inverse_supercoercivity':       (falsify_inverse_supercoercivity, 'modulus'),
}


@IO.Config('parallel_claims', int, 1, the='number of claim entries swept at the same time; results keep the configured order')
@IO.Config('stop_at_first', bool, False, the='flag to skip the remaining claims once a claim does not meet its expectation')
class ClaimVerifier(Module):
    """
    Runs the falsification sweep of every entry in `claims` and records it with its expectation.
    Sampling settings of an entry (trials, seed, box, heavy_tail) take precedence over `general`.
    With `stop_at_first` the entries are always swept one after another.
    """

    parallel_claims: int
    stop_at_first: bool

    def task(self) -> None:
        claims = self.config.section('claims')
        if not claims:
            self.log.notice("no claims configured")
            return

        for results in self.sweep(claims):
            self.config.data.claims.extend(results)

            for r in results:
                verdict = "falsified" if r.report.falsified else "no counterexample"
                self.log.result(f"{r.report.claim}: {verdict} in {r.report.trials} trials (expected {r.expect}, {'pass' if r.passed else 'FAIL'})")

            if self.stop_at_first and not all(r.passed for r in results):
                self.log.warning(f"stopping after claim '{results[-1].report.claim}'")
                break

    def sweep(self, claims: List[Dict[str, Any]]) -> Iterable[List[ClaimResult]]:
        if self.parallel_claims < 1:
            raise ConfigError(f"parallel_claims must be at least 1, got {self.parallel_claims}.")
        if self.parallel_claims == 1 or self.stop_at_first:
            return map(self.verify, claims)

        self.log.notice(f"sweeping {len(claims)} claims on {self.parallel_claims} threads")
        with ThreadPoolExecutor(max_workers=self.parallel_claims) as pool:
            return list(pool.map(self.verify, claims))

    def sampling(self, entry: Dict[str, Any]) -> Dict[str, Any]:
        box = entry.get('box', self.config['box'])
        try:
            sbox = SamplingBox(box['low'], box['high'], heavy_tail=entry.get('heavy_tail', self.config['heavy_tail']))
        except SsneLabError as e:
            raise ConfigError(str(e)) from e
        return {
            'trials': entry.get('trials', self.config['trials']),
            'seed': entry.get('seed', self.config['seed']),
            'box': sbox,
            'workers': self.config['workers'],
            'chunk_size': self.config['chunk_size'],
        }

    def verify(self, entry: Dict[str, Any]) -> List[ClaimResult]:
        kind = entry['kind']
        section, name = ('operators', entry['operator']) if 'operator' in entry else ('maps', entry['map'])
        target = self.config.data.lookup(section, name)
        expect = Expectation(entry.get('expect', 'hold'))
        kwargs = self.sampling(entry)

        if kind == 'certificates':
            if section != 'operators':
                raise ConfigError(f"Certificate sweeps need an operator, got map '{name}'.")
            reports = falsify_certificates(target, **kwargs)
            if not reports:
                self.log.warning(f"operator '{name}' carries no certificates to check")
            return [ClaimResult(r, expect) for r in reports]

        kwargs['claim'] = entry.get('id', f"{kind}:{name}")

        try:
            report = self._run(kind, target, entry, kwargs)
        except ConfigError:
            raise
        except SsneLabError as e:
            raise ConfigError(f"Claim '{kwargs['claim']}' cannot be checked: {e}") from e

        return [ClaimResult(report, expect)]

    def _modulus(self, entry: Dict[str, Any], expect: str) -> Any:
        if 'modulus' not in entry:
            raise ConfigError(f"Claim of kind '{entry['kind']}' needs a 'modulus'.")
        return self.config.data.modulus(entry['modulus'], expect)

    def _value(self, entry: Dict[str, Any], key: str) -> Any:
        if key not in entry:
            raise ConfigError(f"Claim of kind '{entry['kind']}' needs '{key}'.")
        return entry[key]

    def _run(self, kind: str, target: Any, entry: Dict[str, Any], kwargs: Dict[str, Any]) -> SampleReport:
        if kind in MODULUS_CLAIMS:
            falsifier, expect = MODULUS_CLAIMS[kind]
            return falsifier(target, self._modulus(entry, expect), **kwargs)
        if kind == 'firm_nonexpansiveness':
            return falsify_firm_nonexpansiveness(target, **kwargs)
        if kind == 'averaged':
            return falsify_averaged(target, self._value(entry, 'alpha'), **kwargs)
        if kind == 'lipschitz':
            return falsify_lipschitz(target, self._value(entry, 'lipschitz'), **kwargs)
        if kind == 'afp':
            return falsify_afp(target, self._modulus(entry, 'modulus'), self._value(entry, 'witness'), **kwargs)
        if kind == 'rectangularity':
            return falsify_rectangularity(target, self._modulus(entry, 'modulus'), self._value(entry, 'l1'),
                                          self._value(entry, 'l2'), self._value(entry, 'l3'), **kwargs)
        raise ConfigError(f"Unknown claim kind '{kind}'.")
