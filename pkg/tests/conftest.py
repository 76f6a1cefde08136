import json
import os

import numpy as np
import pytest

from ssnelab.hilbert import project_ball, halfspace_penalty, monotone_scaled_identity

CONFIGS = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'configs')


@pytest.fixture
def balls():
    """The disjoint balls B((0,0),1) and B((4,0),1)."""
    return project_ball([0, 0], 1), project_ball([4, 0], 1)


@pytest.fixture
def halfspaces():
    """Penalties of {x1 >= 1} and {x2 >= 1}, zeros at (1,0) and (0,1)."""
    return halfspace_penalty(np.array([-1.0, 0.0]), -1.0), halfspace_penalty(np.array([0.0, -1.0]), -1.0)


@pytest.fixture
def unit_map():
    return monotone_scaled_identity(2, 1.0)


@pytest.fixture
def write_config(tmp_path):
    """Write an experiment dict to <tmp>/<name> and return its path."""

    def write(config: dict, name: str = 'experiment.json') -> str:
        path = tmp_path / name
        path.write_text(json.dumps({'schema': 'ssnelab/experiment/v1', **config}))
        return str(path)

    return write


@pytest.fixture
def shipped():
    """Path of a config shipped in configs/."""
    return lambda name: os.path.join(CONFIGS, name)
