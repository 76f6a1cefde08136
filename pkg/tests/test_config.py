import numpy as np
import pytest

from ssnelab.core import Config, ConfigError
from ssnelab.core.Config import DEFAULT_GENERAL, OUT_DIR_ENV, config_argument_parser
from ssnelab.modules.builder.OperatorBuilder import OperatorBuilder


def test_shipped_configs_validate(shipped) -> None:
    for name in ('disjoint_balls.json', 'two_halfspaces.json', 'negation_mutant.json', 'mutants.json', 'rate_table.json'):
        config = Config(config_file=shipped(name))
        assert config['name'] == name[:-len('.json')]


def test_defaults_fill_the_general_section(write_config) -> None:
    config = Config(config_file=write_config({}))
    for key, value in DEFAULT_GENERAL.items():
        assert config[key] == value
    with pytest.raises(KeyError):
        config['dimension']
    assert config.section('operators') == {}
    assert config.section('claims') == []


@pytest.mark.parametrize('content', [
    {'unknown_section': {}},
    {'general': {'trials': 0}},
    {'general': {'seed': -1}},
    {'general': {'colour': 'blue'}},
    {'operators': {'P': {'kind': 'project_sphere'}}},
    {'claims': [{'kind': 'ssne'}]},
    {'claims': [{'kind': 'ssne', 'operator': 'P', 'map': 'A'}]},
    {'rates': [{'kind': 'gamma'}]},
    {'witnesses': [{'id': 'w', 'a': 'A', 'b': 'B'}]},
])
def test_schema_rejections(write_config, content) -> None:
    with pytest.raises(ConfigError):
        Config(config_file=write_config(content))


def test_schema_version_is_required(tmp_path) -> None:
    path = tmp_path / 'experiment.json'
    path.write_text('{"general": {}}')
    with pytest.raises(ConfigError):
        Config(config_file=str(path))
    path.write_text('{"schema": "ssnelab/experiment/v0"}')
    with pytest.raises(ConfigError):
        Config(config_file=str(path))


def test_unreadable_files(tmp_path) -> None:
    with pytest.raises(ConfigError):
        Config(config_file=str(tmp_path / 'missing.json'))

    broken = tmp_path / 'broken.json'
    broken.write_text('{"schema": "ssnelab/experiment/v1",')
    with pytest.raises(ConfigError):
        Config(config_file=str(broken))

    listing = tmp_path / 'list.yml'
    listing.write_text('- a\n- b\n')
    with pytest.raises(ConfigError):
        Config(config_file=str(listing))


def test_yaml_configs(tmp_path) -> None:
    path = tmp_path / 'experiment.yml'
    path.write_text('schema: ssnelab/experiment/v1\ngeneral:\n  seed: 3\n  trials: 50\n')
    config = Config(config_file=str(path))
    assert config['seed'] == 3
    assert config['trials'] == 50


def test_precedence(write_config) -> None:
    path = write_config({'general': {'seed': 5, 'trials': 100}})
    assert Config(config_file=path)['seed'] == 5

    config = Config(config_file=path, overrides=['general.seed=6', 'general.trials=200'])
    assert config['seed'] == 6
    assert config['trials'] == 200

    config = Config(config_file=path, overrides=['general.seed=6'], seed=7, samples=300)
    assert config['seed'] == 7
    assert config['trials'] == 300

    with pytest.raises(ConfigError):
        Config(config_file=path, samples=0)


def test_override_parsing() -> None:
    parsed = config_argument_parser(['a.b=1', 'a.c=0.5', 'a.d=-2', 'flag=True', 'grid=[1, 0.5]', 'nothing=None', 'word=hello'])
    assert parsed == {
        'a': {'b': 1, 'c': 0.5, 'd': -2},
        'flag': True,
        'grid': [1, 0.5],
        'nothing': None,
        'word': 'hello'
    }
    assert config_argument_parser(['x=[1]'], allow_json_type_parsing=False) == {'x': '[1]'}

    with pytest.raises(ConfigError):
        config_argument_parser(['general.seed'])


def test_overrides_are_validated(write_config) -> None:
    with pytest.raises(ConfigError):
        Config(config_file=write_config({}), overrides=['general.trials=many'])


def test_output_directory(write_config, monkeypatch, tmp_path) -> None:
    path = write_config({})
    monkeypatch.setenv(OUT_DIR_ENV, str(tmp_path / 'from_env'))
    assert Config(config_file=path).out_dir == str(tmp_path / 'from_env')
    assert Config(config_file=path, out=str(tmp_path / 'flag')).out_dir == str(tmp_path / 'flag')

    in_file = write_config({'general': {'out': str(tmp_path / 'file')}}, name='with_out.json')
    assert Config(config_file=in_file).out_dir == str(tmp_path / 'file')


def test_module_configuration() -> None:
    config = Config(config={
        'general': {'dimension': 2},
        'maps': {'A': {'kind': 'scaled_identity', 'lam': 1}},
        'operators': {'J': {'kind': 'resolvent', 'map': 'A'}},
        'modules': {'OperatorBuilder': {'tol': 1e-6}}
    })
    assert config[OperatorBuilder] == {'tol': 1e-6}

    builder = OperatorBuilder(config=config)
    assert builder.tol == 1e-6
    assert OperatorBuilder(config=config, local_config={'tol': 1e-8}).tol == 1e-8

    builder.execute()
    j = config.data.getOperator('J')
    np.testing.assert_allclose(j(np.array([2.0, 4.0])), [1.0, 2.0], atol=1e-5)


def test_builder_rejects_bad_references() -> None:
    config = Config(config={
        'general': {'dimension': 2},
        'operators': {'T': {'kind': 'compose', 'of': ['P', 'Q']}}
    })
    with pytest.raises(ConfigError):
        OperatorBuilder(config=config).execute()


def test_builder_checks_the_dimension() -> None:
    config = Config(config={
        'general': {'dimension': 3},
        'operators': {'P': {'kind': 'project_ball', 'center': [0, 0], 'radius': 1}}
    })
    with pytest.raises(ConfigError):
        OperatorBuilder(config=config).execute()


def test_builder_inverts_maps() -> None:
    config = Config(config={
        'general': {'dimension': 2},
        'maps': {'A': {'kind': 'scaled_identity', 'lam': 2}, 'Ainv': {'kind': 'inverse', 'of': 'A'}},
        'operators': {'J': {'kind': 'resolvent', 'map': 'Ainv'}}
    })
    OperatorBuilder(config=config).execute()

    np.testing.assert_allclose(config.data.getMap('Ainv')(np.array([2.0, 4.0])), [1.0, 2.0])
    # J of (1/2)·id is (2/3)·id
    np.testing.assert_allclose(config.data.getOperator('J')(np.array([3.0, 6.0])), [2.0, 4.0], atol=1e-9)


def test_builder_rejects_maps_without_inverse() -> None:
    config = Config(config={
        'general': {'dimension': 2},
        'maps': {'Z': {'kind': 'zero'}, 'Zinv': {'kind': 'inverse', 'of': 'Z'}}
    })
    with pytest.raises(ConfigError):
        OperatorBuilder(config=config).execute()
