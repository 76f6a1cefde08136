import pytest

from ssnelab.core import Config, ConfigError
from ssnelab.modules.builder.OperatorBuilder import OperatorBuilder
from ssnelab.modules.verifier.ClaimVerifier import ClaimVerifier


def verify(config_file: str, **local_config) -> Config:
    config = Config(config_file=config_file, samples=500, seed=5)
    OperatorBuilder(config=config).execute()
    ClaimVerifier(config=config, local_config=local_config).execute()
    return config


def test_parallel_claims_keep_the_configured_order(shipped) -> None:
    serial = verify(shipped('mutants.json'))
    parallel = verify(shipped('mutants.json'), parallel_claims=3)

    assert [c.report.claim for c in parallel.data.claims] == ['N.ssne', 'N.sne', 'N.supercoercivity', 'I.cld',
                                                               'A.psi_doubled']
    assert [c.to_dict() for c in parallel.data.claims] == [c.to_dict() for c in serial.data.claims]
    assert all(c.passed for c in parallel.data.claims)


def test_stop_at_first_sweeps_in_order(write_config) -> None:
    claims = [
        {'id': 'N.ssne', 'kind': 'ssne', 'operator': 'N', 'modulus': {'kind': 'power', 'exponent': 2}},
        {'id': 'P.ssne', 'kind': 'ssne', 'operator': 'P', 'modulus': {'kind': 'power', 'exponent': 2}},
    ]
    path = write_config({
        'general': {'dimension': 2},
        'operators': {'N': {'kind': 'negation'}, 'P': {'kind': 'project_ball', 'center': [0, 0], 'radius': 1}},
        'claims': claims
    })
    config = verify(path, parallel_claims=2, stop_at_first=True)
    assert [c.report.claim for c in config.data.claims] == ['N.ssne']


def test_parallel_claims_must_be_positive(shipped) -> None:
    with pytest.raises(ConfigError):
        verify(shipped('negation_mutant.json'), parallel_claims=0)
