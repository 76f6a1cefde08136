"""
-------------------------------------------------
SSNELab - Experiment configuration
-------------------------------------------------
"""

from typing import Any, Dict, List, Optional, Type, Union
from .Error import ConfigError
import os, json, yaml
import jsonschema

SCHEMA_VERSION = 'ssnelab/experiment/v1'
SCHEMA_PATH = os.path.join(os.path.dirname(os.path.dirname(__file__)), 'schema', 'experiment.v1.json')

# environment variable for the default output directory (flags and config take precedence)
OUT_DIR_ENV = 'SSNELAB_OUT_DIR'
DEFAULT_OUT_DIR = 'ssnelab_out'

DEFAULT_GENERAL: Dict[str, Any] = {
    'name': 'experiment',
    'seed': 0,
    'trials': 10_000,
    'box': {'low': -10.0, 'high': 10.0},
    'heavy_tail': True,
    'workers': 1,
    'chunk_size': 10_000,
    'n_max': 10_000,
}

DEFAULT_CHAIN = ['OperatorBuilder', 'ClaimVerifier', 'RateCalculator', 'RegularityChecker', 'WitnessBuilder', 'ReportExporter']


def dict_merge(source: dict, destination: dict) -> dict:
    for k, v in source.items():
        if isinstance(v, dict):
            n = destination.setdefault(k, {})
            dict_merge(v, n)
        else:
            destination[k] = v
    return destination


def config_argument_parser(args: List[str], allow_json_type_parsing: bool = True) -> dict:
    """
    Parse `key.path=value` overrides into a nested dict.
    Values: None, True/False, integers, floats, then JSON (e.g. '[1, 0.5]'), then plain strings.
    """
    # NOTE: quote the whole argument to pass JSON, e.g. --set "general.box={\"low\": -1, \"high\": 1}"
    config: dict = {}
    for arg in args:
        if '=' not in arg:
            raise ConfigError(f"Override '{arg}' is not of the form key.path=value.")
        keypath, value = arg.split('=', maxsplit=1)

        _config = config
        edges = keypath.split('.')
        for i, p in enumerate(edges):
            leaf = i == len(edges) - 1
            if p not in _config and not leaf:
                _config[p] = {}

            if not leaf:
                _config = _config[p]
            elif value == 'None':
                _config[p] = None
            elif value == 'True' or value == 'False':
                _config[p] = value == 'True'
            elif value.lstrip('-').isnumeric():
                _config[p] = int(value)
            elif value.lstrip('-').replace('.', '', 1).isnumeric():
                _config[p] = float(value)
            elif allow_json_type_parsing:
                try:
                    _config[p] = json.loads(value)
                except json.JSONDecodeError:
                    _config[p] = value
            else:
                _config[p] = value

    return config


def load_schema() -> dict:
    with open(SCHEMA_PATH, 'r') as f:
        return json.load(f)


def validate_config(config: dict) -> None:
    validator = jsonschema.Draft7Validator(load_schema())
    errors = sorted(validator.iter_errors(config), key=lambda e: list(e.absolute_path))
    if errors:
        e = errors[0]
        where = ".".join(str(p) for p in e.absolute_path) or "<root>"
        raise ConfigError(f"Invalid configuration at '{where}': {e.message}")


class Config:
    """
    Validated experiment configuration, the workspace of built objects and the run logger.

    Precedence: explicit flags (seed, samples, out) > `--set` overrides > `config` dict > file > defaults.
    """

    def __init__(self, config_file: Optional[str] = None, config: Optional[dict] = None, overrides: Optional[List[str]] = None,
                 seed: Optional[int] = None, samples: Optional[int] = None, out: Optional[str] = None) -> None:
        self.verbose: bool = True
        self.debug: bool = False
        self._logger: Optional['LabLog'] = None

        if config_file is not None:
            if not os.path.isfile(config_file):
                raise ConfigError(f"Config file {config_file} not found.")
            # yaml reads 1e-3 as a string, so json files go through the json parser
            try:
                with open(config_file, 'r') as f:
                    self._config = json.load(f) if config_file.endswith('.json') else yaml.safe_load(f)
            except (json.JSONDecodeError, yaml.YAMLError) as e:
                raise ConfigError(f"Config file {config_file} cannot be parsed: {e}") from e
            if not isinstance(self._config, dict):
                raise ConfigError(f"Config file {config_file} does not contain a mapping.")
        else:
            self._config = {'schema': SCHEMA_VERSION, 'general': {}}

        # override / extend file based config with explicit configurations (if any)
        if config is not None:
            self._config = dict_merge(config, self._config.copy())

        if overrides:
            self._config = dict_merge(config_argument_parser(overrides), self._config.copy())

        validate_config(self._config)

        # defaults, then flags
        general = dict_merge(self._config.get('general', {}), json.loads(json.dumps(DEFAULT_GENERAL)))
        if seed is not None:
            general['seed'] = seed
        if samples is not None:
            general['trials'] = samples
        if out is not None:
            general['out'] = out
        general.setdefault('out', os.environ.get(OUT_DIR_ENV, DEFAULT_OUT_DIR))
        self._config['general'] = general
        self._config.setdefault('modules', {})

        if not (isinstance(general['seed'], int) and general['seed'] >= 0):
            raise ConfigError(f"Seed must be a nonnegative integer, got {general['seed']!r}.")
        if not (isinstance(general['trials'], int) and general['trials'] >= 1):
            raise ConfigError(f"Number of samples must be a positive integer, got {general['trials']!r}.")

        self.data = Workspace(self)

    def __getitem__(self, key: Union[str, Type['Module']]) -> Any:
        if isinstance(key, str) and key in self._config['general']:
            return self._config['general'][key]
        elif isinstance(key, type) and key.__name__ in self._config['modules']:
            return self._config['modules'][key.__name__]
        else:
            raise KeyError(f"Config key '{key}' not found.")

    def section(self, name: str) -> Any:
        """A top-level section (operators, maps, claims, rates, witnesses); empty when absent."""
        return self._config.get(name, {} if name in ('operators', 'maps', 'modules') else [])

    @property
    def execute(self) -> List[Union[str, Dict[str, Any]]]:
        return self._config.get('execute', DEFAULT_CHAIN)

    @property
    def out_dir(self) -> str:
        return self['out']

    @property
    def logger(self) -> Optional['LabLog']:
        return self._logger

    def useLogger(self, logger: 'LabLog') -> None:
        self._logger = logger

    def v(self, *args) -> None:
        if self.verbose:
            print(*args)

    def to_dict(self) -> dict:
        return json.loads(json.dumps(self._config))


from .Workspace import Workspace
from .Module import Module
from .Logger import LabLog
