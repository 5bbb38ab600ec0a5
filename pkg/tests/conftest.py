import os
import sys

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

import numpy as np
import pytest

from EffectOrder.sampling import SamplerConfig


ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), '..'))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(params=[0.0, 1.0], ids=['linear', 'antilinear'])
def kind_cfg(request):
    '''
    Sampler configuration with operators of a single kind.
    '''
    return SamplerConfig(seed=11, dim=4, kind_mix=request.param)


@pytest.fixture
def parameter_file():
    return os.path.join(ROOT, 'default-parameters.json')
