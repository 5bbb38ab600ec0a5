import math

import numpy as np
import pytest

from EffectOrder.errors import ParameterError, DomainError
from EffectOrder.hermitian import HermitianMatrix, loewner_margin
from EffectOrder.moebius import MoebiusParam, evaluate, compose, inverse, from_positive_real, to_positive_real, \
                                    eval_matrix_spectral, eval_matrix_resolvent, P_MAX
from EffectOrder.sampling import SamplerConfig, random_effect, random_ordered_pair


TOL = 1e-12
GRID = np.linspace(0.0, 1.0, 101)


class TestMoebiusParam:

    @pytest.mark.parametrize('p', [1.0, 2.5, math.nan, math.inf, 1.0 - 1e-13])
    def test_rejected(self, p):
        with pytest.raises(ParameterError):
            MoebiusParam(p)

    def test_accepted(self):
        assert MoebiusParam(-5).p == -5.0
        assert MoebiusParam(0.5).p == 0.5
        assert P_MAX < 1.0

    def test_pole_and_domain(self):
        p = MoebiusParam(-1.0)
        assert p.pole == pytest.approx(2.0)
        assert p.domain_upper(0.05) == pytest.approx(1.95)
        assert MoebiusParam(0.3).pole == math.inf


class TestEvaluate:

    @pytest.mark.parametrize('p', [-10.0, -1.0, 0.0, 0.5, 0.99])
    def test_fixes_endpoints(self, p):
        assert evaluate(p, 0.0) == 0.0
        assert evaluate(p, 1.0) == pytest.approx(1.0, abs=TOL)

    @pytest.mark.parametrize('p', [-10.0, -1.0, 0.5, 0.99])
    def test_increasing_on_unit_interval(self, p):
        assert np.all(np.diff(evaluate(p, GRID)) > 0.0)

    def test_value(self):
        assert evaluate(-1.0, 0.5) == pytest.approx(1.0/3.0)
        np.testing.assert_allclose(evaluate(0.0, GRID), GRID)

    @pytest.mark.parametrize('x', [-0.1, 2.0, 3.0])
    def test_outside_domain(self, x):
        with pytest.raises(DomainError):
            evaluate(-1.0, x)


class TestGroup:

    def test_compose_parameter(self):
        assert compose(-1.0, -1.0).p == pytest.approx(-3.0)
        assert compose(0.0, -0.7).p == pytest.approx(-0.7)

    @pytest.mark.parametrize('p, q', [(-1.0, -2.0), (0.5, -3.0), (0.9, 0.9), (-0.25, 0.7)])
    def test_compose_pointwise(self, p, q):
        r = compose(p, q)
        np.testing.assert_allclose(evaluate(r, GRID), evaluate(p, evaluate(q, GRID)), atol=TOL)

    @pytest.mark.parametrize('p', [-4.0, -0.5, 0.3, 0.9])
    def test_inverse(self, p):
        q = inverse(p)
        assert compose(p, q).p == pytest.approx(0.0, abs=1e-14)
        np.testing.assert_allclose(evaluate(q, evaluate(p, GRID)), GRID, atol=TOL)

    def test_inverse_value(self):
        assert inverse(-1.0).p == pytest.approx(0.5)

    def test_positive_reals(self):
        assert from_positive_real(2.0).p == -1.0
        assert to_positive_real(-1.0) == 2.0

        a, b = 0.3, 7.0
        assert to_positive_real(compose(from_positive_real(a), from_positive_real(b))) == pytest.approx(a*b)

    @pytest.mark.parametrize('a', [0.0, -1.0, math.inf])
    def test_positive_reals_rejected(self, a):
        with pytest.raises(ParameterError):
            from_positive_real(a)


class TestMatrixCalculus:

    def test_diagonal(self):
        A = HermitianMatrix(np.diag([0.2, 0.5]))
        B = eval_matrix_spectral(-1.0, A)
        np.testing.assert_allclose(B.entries, np.diag([evaluate(-1.0, 0.2), evaluate(-1.0, 0.5)]), atol=TOL)

    @pytest.mark.parametrize('p', [-2.0, -0.5, 0.3, 0.7])
    def test_two_routes_agree(self, p):
        A = random_effect(SamplerConfig(seed=3, dim=5)).matrix
        S = eval_matrix_spectral(p, A)
        R = eval_matrix_resolvent(p, A)
        assert (S - R).norm() <= 1e-9*(1.0 + A.norm())

    def test_resolvent_excludes_zero(self):
        with pytest.raises(ParameterError):
            eval_matrix_resolvent(0.0, HermitianMatrix(np.eye(2)*0.5))

    def test_beyond_margin(self):
        with pytest.raises(DomainError):
            eval_matrix_spectral(-1.0, HermitianMatrix(np.diag([0.5, 1.99])))

        B = eval_matrix_spectral(-1.0, HermitianMatrix(np.diag([0.5, 1.9])))
        assert B.max_eigenvalue() == pytest.approx(evaluate(-1.0, 1.9))

    def test_rejects_negative_spectrum(self):
        with pytest.raises(DomainError):
            eval_matrix_spectral(0.5, HermitianMatrix(np.diag([-0.1, 0.5])))

    @pytest.mark.parametrize('p', [-2.0, -0.5, 0.3, 0.7])
    @pytest.mark.parametrize('stream', range(5))
    def test_operator_monotone(self, p, stream):
        A, B = random_ordered_pair(SamplerConfig(seed=5, dim=4), stream)
        fA = eval_matrix_spectral(p, A.matrix)
        fB = eval_matrix_spectral(p, B.matrix)
        assert loewner_margin(fA, fB) >= -1e-8
