import json
import os

import pytest

from ssnelab.core.Report import RateTable
from ssnelab.run import EXIT_CONFIG, EXIT_FAILED, EXIT_OK, get_workflow, main


def run(config: str, out, *extra: str, command: str = 'run') -> int:
    return main([command, '--config', config, '--out', str(out), '--quiet', *extra])


def load_report(out) -> dict:
    with open(os.path.join(str(out), 'report.json')) as f:
        return json.load(f)


def test_negation_mutant_fails_the_run(shipped, tmp_path) -> None:
    assert run(shipped('negation_mutant.json'), tmp_path, '--samples', '2000') == EXIT_FAILED

    report = load_report(tmp_path)
    assert report['summary']['failed_claims'] == ['N.ssne']
    claim = report['claims'][0]
    assert claim['falsified'] is True
    assert claim['passed'] is False
    assert claim['counterexample']['defect'] >= claim['counterexample']['epsilon']


def test_expected_counterexamples_pass(shipped, tmp_path) -> None:
    assert run(shipped('mutants.json'), tmp_path, '--samples', '2000') == EXIT_OK
    report = load_report(tmp_path)
    assert all(c['falsified'] and c['passed'] for c in report['claims'])


def test_disjoint_balls(shipped, tmp_path) -> None:
    assert run(shipped('disjoint_balls.json'), tmp_path, '--samples', '2000') == EXIT_OK

    report = load_report(tmp_path)
    assert report['schema'] == 'ssnelab/report/v1'
    assert report['summary']['passed'] is True
    assert report['sampling']['trials'] == 2000
    assert report['regularity']['sigma']['reached'] is True
    for row in report['rates']['sigma']['rows']:
        assert row['status'] in ('certified only', 'exceeds double range')
        assert row['empirical_index'] is not None

    assert os.path.isfile(os.path.join(str(tmp_path), 'rate_table.csv'))
    assert os.path.isfile(os.path.join(str(tmp_path), 'curve_sigma.csv'))

    with open(os.path.join(str(tmp_path), 'ssnelab.log')) as f:
        log = f.read()
    assert '(RegularityChecker)' in log


def test_print_rates(shipped, tmp_path) -> None:
    assert run(shipped('rate_table.json'), tmp_path, command='print-rates') == EXIT_OK

    with open(os.path.join(str(tmp_path), 'rate_table.csv')) as f:
        lines = f.read().splitlines()
    assert lines[0] == 'id,kind,parameter,value,overflow_flag'
    assert 'gamma,gamma,1,2610,false' in lines
    assert 'theta,rho,,9,false' in lines
    assert 'theta,theta,,20,false' in lines
    assert not os.path.exists(os.path.join(str(tmp_path), 'report.json'))


def test_empty_grid_gives_a_header_only_table(write_config, tmp_path) -> None:
    config = write_config({'rates': [{'id': 'g', 'kind': 'gamma', 'b': 1, 'd': 1, 'alpha': 1,
                                      'omega': {'kind': 'linear', 'coef': 0.5}, 'epsilon': []}]})
    out = tmp_path / 'out'
    assert run(config, out, command='print-rates') == EXIT_OK
    with open(os.path.join(str(out), 'rate_table.csv')) as f:
        assert f.read() == ','.join(RateTable.COLUMNS) + '\n'


@pytest.mark.parametrize('content', [
    {'general': {'trials': 0}},
    {'operators': {'T': {'kind': 'compose', 'of': ['P']}}},
    {'general': {'dimension': 2}, 'operators': {'N': {'kind': 'negation'}},
     'claims': [{'kind': 'ssne', 'operator': 'M', 'modulus': 1}]},
    {'execute': ['OperatorBuilder', 'NoSuchStep']},
])
def test_configuration_errors_exit_with_two(write_config, tmp_path, content) -> None:
    assert run(write_config(content), tmp_path / 'out') == EXIT_CONFIG


def test_unreadable_config_exits_with_two(tmp_path) -> None:
    assert run(str(tmp_path / 'missing.json'), tmp_path / 'out') == EXIT_CONFIG

    broken = tmp_path / 'broken.json'
    broken.write_text('{"schema": ')
    assert run(str(broken), tmp_path / 'out') == EXIT_CONFIG


def test_missing_arguments_exit_with_two() -> None:
    with pytest.raises(SystemExit) as e:
        main(['run'])
    assert e.value.code == 2


def test_reports_are_deterministic(shipped, tmp_path) -> None:
    first, second = tmp_path / 'first', tmp_path / 'second'
    for out in (first, second):
        assert run(shipped('negation_mutant.json'), out, '--samples', '500', '--seed', '11') == EXIT_FAILED

    with open(os.path.join(str(first), 'report.json'), 'rb') as a, open(os.path.join(str(second), 'report.json'), 'rb') as b:
        assert a.read() == b.read()


def test_overrides_reach_the_report(shipped, tmp_path) -> None:
    run(shipped('negation_mutant.json'), tmp_path, '--set', 'general.seed=42', '--samples', '100')
    report = load_report(tmp_path)
    assert report['sampling']['seed'] == 42
    assert report['sampling']['trials'] == 100


def test_workflow_parsing() -> None:
    assert get_workflow(['OperatorBuilder', {'module': 'ReportExporter', 'rates_only': True}]) == [
        ('OperatorBuilder', {}),
        ('ReportExporter', {'rates_only': True})
    ]


@pytest.mark.slow
def test_two_halfspaces(shipped, tmp_path) -> None:
    assert run(shipped('two_halfspaces.json'), tmp_path) == EXIT_OK
    report = load_report(tmp_path)
    rows = report['witnesses']['AB']
    assert [r['delta'] for r in rows] == [1, 0.1]
    assert all(r['holds'] for r in rows)
