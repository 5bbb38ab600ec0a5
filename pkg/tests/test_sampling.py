import numpy as np
import pytest

from EffectOrder.errors import ConfigError, ParameterError
from EffectOrder.hermitian import loewner_margin
from EffectOrder.operators import OperatorKind
from EffectOrder.sampling import SamplerConfig, make_rng, random_unitary, random_effect, random_ordered_pair, \
                                    random_non_ordered_pair, random_boundary_effect, random_invertible_operator, \
                                    random_moebius_param, random_canonical, random_congruence, random_vector, \
                                    random_phase


TOL = 1e-12


class TestSamplerConfig:

    @pytest.mark.parametrize('kwargs', [
        {'dim': 0},
        {'cond_max': 0.5},
        {'interior_margin': 0.5},
        {'interior_margin': -0.1},
        {'kind_mix': 1.5},
        {'p_range': (-1.0, 0.5)},
        {'p_range': (-0.5, -1.0)},
    ])
    def test_invalid(self, kwargs):
        with pytest.raises(ConfigError):
            SamplerConfig(**kwargs)

    def test_from_dict(self):
        cfg = SamplerConfig.from_dict({'DictName': 'Sampler', 'seed': 3, 'cond-max': 4.0, 'p_range': [-2, -1]})

        assert cfg.seed == 3
        assert cfg.cond_max == 4.0
        assert cfg.p_range == (-2.0, -1.0)

    def test_from_dict_unknown_key(self):
        with pytest.raises(ConfigError):
            SamplerConfig.from_dict({'dimension': 3})

    def test_with_dim(self):
        cfg = SamplerConfig(seed=4).with_dim(6)
        assert cfg.dim == 6
        assert cfg.seed == 4


class TestDeterminism:

    def test_same_stream_same_sample(self):
        cfg = SamplerConfig(seed=42, dim=4)
        np.testing.assert_array_equal(random_effect(cfg, 7).entries, random_effect(cfg, 7).entries)

    def test_streams_are_independent(self):
        cfg = SamplerConfig(seed=42, dim=4)
        assert not np.allclose(random_effect(cfg, 0).entries, random_effect(cfg, 1).entries)

    def test_neighbouring_streams_uncorrelated(self):
        # 199 pairs: the sample correlation of independent traces has std ~ 0.07
        cfg = SamplerConfig(seed=42, dim=4)
        traces = np.array([random_effect(cfg, k).matrix.eigenvalues().sum() for k in range(200)])
        rho = np.corrcoef(traces[:-1], traces[1:])[0, 1]

        assert traces.std() > 0.0
        assert abs(rho) < 0.25

    def test_seeds_differ(self):
        a = random_invertible_operator(SamplerConfig(seed=1, dim=3))
        b = random_invertible_operator(SamplerConfig(seed=2, dim=3))
        assert not np.allclose(a.matrix, b.matrix)

    def test_tags_are_separate(self):
        cfg = SamplerConfig(seed=9)
        assert make_rng(cfg, 'effect', 0).random() != make_rng(cfg, 'operator', 0).random()

    def test_tuple_streams(self):
        cfg = SamplerConfig(seed=9)
        assert make_rng(cfg, 'suite', 3).random() == make_rng(cfg, 'suite', (3,)).random()
        assert make_rng(cfg, 'suite', (3, 1)).random() != make_rng(cfg, 'suite', (3, 2)).random()

    @pytest.mark.parametrize('seed', [-1, 2**64, 2**70 + 5])
    def test_seed_out_of_range(self, seed):
        with pytest.raises(ConfigError):
            SamplerConfig(seed=seed)

    def test_largest_seed(self):
        a = random_effect(SamplerConfig(seed=2**64 - 1))
        b = random_effect(SamplerConfig(seed=2**64 - 1))
        np.testing.assert_array_equal(a.entries, b.entries)


class TestEffects:

    @pytest.mark.parametrize('stream', range(5))
    def test_interior_spectrum(self, stream):
        cfg = SamplerConfig(seed=1, dim=5, interior_margin=0.1)
        values = random_effect(cfg, stream).matrix.eigenvalues()

        assert values[0] >= 0.1 - TOL
        assert values[-1] <= 0.9 + TOL

    def test_scalar_dimension(self):
        E = random_effect(SamplerConfig(seed=1, dim=1))
        assert E.dim == 1
        assert 0.05 <= E.entries[0, 0].real <= 0.95

    @pytest.mark.parametrize('stream', range(5))
    def test_ordered_pair(self, stream):
        cfg = SamplerConfig(seed=1, dim=4)
        A, B = random_ordered_pair(cfg, stream)

        assert loewner_margin(A.matrix, B.matrix) >= -TOL
        assert B.matrix.max_eigenvalue() <= 1.0 - cfg.interior_margin + 1e-10

    @pytest.mark.parametrize('stream', range(5))
    def test_non_ordered_pair(self, stream):
        A, B = random_non_ordered_pair(SamplerConfig(seed=1, dim=4), stream)
        values = (B.matrix - A.matrix).eigenvalues()

        assert values[0] < -0.01
        assert values[-1] > 0.01

    def test_non_ordered_pair_needs_two_dimensions(self):
        with pytest.raises(ParameterError):
            random_non_ordered_pair(SamplerConfig(dim=1))

    @pytest.mark.parametrize('k', [1, 2, 3])
    def test_boundary_rank(self, k):
        E = random_boundary_effect(SamplerConfig(seed=3, dim=4), rank_deficiency=k)
        values = E.matrix.eigenvalues()

        assert np.sum(np.abs(values) <= 1e-12) == k
        assert values[k] >= 0.05 - TOL

    @pytest.mark.parametrize('k', [0, 4])
    def test_boundary_rank_range(self, k):
        with pytest.raises(ParameterError):
            random_boundary_effect(SamplerConfig(dim=4), rank_deficiency=k)


class TestOperators:

    def test_singular_values_bounded(self):
        cfg = SamplerConfig(seed=5, dim=6, cond_max=16.0)

        for stream in range(5):
            s = random_invertible_operator(cfg, stream).singular_values()
            assert s[0] <= 4.0 + 1e-9
            assert s[-1] >= 0.25 - 1e-9

    def test_unit_condition_is_unitary(self):
        T = random_invertible_operator(SamplerConfig(seed=5, dim=4, cond_max=1.0))
        np.testing.assert_allclose(T.matrix @ T.matrix.conj().T, np.eye(4), atol=1e-10)

    @pytest.mark.parametrize('kind_mix, kind', [(0.0, OperatorKind.LINEAR), (1.0, OperatorKind.ANTILINEAR)])
    def test_kind_mix(self, kind_mix, kind):
        cfg = SamplerConfig(seed=5, dim=3, kind_mix=kind_mix)
        assert all(random_invertible_operator(cfg, s).kind is kind for s in range(5))
        assert random_congruence(cfg).S.kind is kind

    def test_random_unitary(self):
        U = random_unitary(np.random.default_rng(0), 5)
        np.testing.assert_allclose(U.conj().T @ U, np.eye(5), atol=1e-12)


class TestParameters:

    def test_moebius_in_range(self):
        cfg = SamplerConfig(seed=5, p_range=(-3.0, -1.0))

        for stream in range(10):
            assert -3.0 <= random_moebius_param(cfg, stream).p <= -1.0

    def test_canonical_override(self):
        cfg = SamplerConfig(seed=5, dim=3)
        c = random_canonical(cfg, p=-2.0)

        assert c.p.p == -2.0
        np.testing.assert_array_equal(c.T.matrix, random_canonical(cfg).T.matrix)

    def test_vector_and_phase(self):
        cfg = SamplerConfig(seed=5, dim=3)

        assert random_vector(cfg).shape == (3,)
        assert abs(random_phase(cfg)) == pytest.approx(1.0)
