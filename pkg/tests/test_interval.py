import numpy as np
import pytest

from EffectOrder.errors import EffectMembershipError, NotPositiveError, SingularError
from EffectOrder.hermitian import HermitianMatrix, loewner_leq
from EffectOrder.operators import linear, antilinear
from EffectOrder.interval import Effect, as_effect, is_effect, to_cone, from_cone, cone_automorphism
from EffectOrder.sampling import SamplerConfig, random_ordered_pair, random_invertible_operator


TOL = 1e-10


class TestEffect:

    def test_extremes(self):
        assert Effect.zero(3).matrix.norm() == 0.0
        np.testing.assert_allclose(Effect.identity(3).entries, np.eye(3))
        assert not Effect.zero(3).is_invertible()
        assert Effect.identity(3).is_invertible()

    def test_clamps_round_off(self):
        E = Effect(np.diag([-1e-12, 1.0 + 1e-12]))
        values = E.matrix.eigenvalues()
        assert values[0] >= -1e-15
        assert values[-1] <= 1.0 + 1e-15

    @pytest.mark.parametrize('values', [[-0.1, 0.5], [0.5, 1.1]])
    def test_rejects_outside(self, values):
        with pytest.raises(EffectMembershipError):
            Effect(np.diag(values))

    def test_clamped_tolerance(self):
        E = Effect.clamped(np.diag([-1e-7, 0.5]), 1e-6)
        assert E.matrix.min_eigenvalue() == pytest.approx(0.0, abs=1e-15)

        with pytest.raises(EffectMembershipError):
            Effect.clamped(np.diag([-1e-5, 0.5]), 1e-6)

    def test_as_effect_and_predicate(self):
        E = as_effect(np.diag([0.25, 0.75]))
        assert as_effect(E) is E
        assert is_effect(E.matrix)
        assert not is_effect(HermitianMatrix(np.diag([0.25, 1.5])))


class TestCone:

    def test_values(self):
        X = to_cone(np.diag([0.5, 0.25]))
        np.testing.assert_allclose(X.entries, np.diag([1.0, 3.0]), atol=TOL)

        np.testing.assert_allclose(to_cone(Effect.identity(2)).entries, np.zeros((2, 2)), atol=TOL)

    def test_inverse_pair(self):
        X = HermitianMatrix(np.array([[2.0, 1j], [-1j, 1.0]]))
        np.testing.assert_allclose(to_cone(from_cone(X)).entries, X.entries, atol=1e-9)

    def test_boundary_refused(self):
        with pytest.raises(SingularError):
            to_cone(np.diag([0.0, 0.5]))

    def test_from_cone_requires_psd(self):
        with pytest.raises(NotPositiveError):
            from_cone(HermitianMatrix(np.diag([-0.5, 1.0])))

    @pytest.mark.parametrize('stream', range(4))
    def test_reverses_order(self, stream):
        A, B = random_ordered_pair(SamplerConfig(seed=2, dim=3), stream)
        assert loewner_leq(to_cone(B), to_cone(A), 1e-9)


class TestConeAutomorphism:

    @pytest.mark.parametrize('kind_mix', [0.0, 1.0])
    def test_preserves_positivity(self, kind_mix):
        S = random_invertible_operator(SamplerConfig(seed=4, dim=3, kind_mix=kind_mix))
        X = HermitianMatrix(np.diag([0.0, 1.0, 2.0]))
        assert cone_automorphism(S, X).min_eigenvalue() >= -TOL

    def test_singular(self):
        with pytest.raises(SingularError):
            cone_automorphism(linear(np.diag([1.0, 0.0])), HermitianMatrix(np.eye(2)))

    def test_not_psd(self):
        with pytest.raises(NotPositiveError):
            cone_automorphism(antilinear(np.eye(2)), HermitianMatrix(np.diag([-1.0, 1.0])))
