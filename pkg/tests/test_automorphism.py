import math

import numpy as np
import pytest

from EffectOrder.errors import ParameterError, SingularError, DimensionError, ConvergenceError
from EffectOrder.hermitian import loewner_margin
from EffectOrder.operators import OperatorKind, linear, identity, scale, phase_equiv
from EffectOrder.interval import Effect
from EffectOrder.automorphism import CanonicalParams, AltParams, CongruenceParams, \
                                    apply_canonical, apply_hidden_factorization, apply_alt, \
                                    apply_congruence_form, apply_automorphism, invert_apply, \
                                    from_congruence, to_congruence, to_alt, alt_to_canonical, \
                                    as_canonical, as_congruence, compose_automorphisms, \
                                    invert_automorphism, compose_canonical, limit_trace, limit_apply, \
                                    equal_pointwise
from EffectOrder.sampling import SamplerConfig, random_effect, random_ordered_pair, random_non_ordered_pair, \
                                    random_boundary_effect, random_canonical, random_congruence


TOL = 1e-8
STREAMS = range(3)


def gap(X, Y) -> float:
    return (X.matrix - Y.matrix).frobenius()


class TestParameters:

    @pytest.mark.parametrize('p', [0.0, 0.5])
    def test_canonical_needs_negative_p(self, p):
        with pytest.raises(ParameterError):
            CanonicalParams(p, identity(2))

    def test_canonical_needs_invertible_T(self):
        with pytest.raises(SingularError):
            CanonicalParams(-1.0, linear(np.diag([1.0, 0.0])))

    @pytest.mark.parametrize('r', [0.0, 1.0, -0.5])
    def test_alt_r_range(self, r):
        with pytest.raises(ParameterError):
            AltParams(-1.0, r, identity(2))

    def test_alt_norm_bound(self):
        with pytest.raises(ParameterError):
            AltParams(-1.0, 0.5, linear(1.5*np.eye(2)))

    def test_congruence_needs_invertible_S(self):
        with pytest.raises(SingularError):
            CongruenceParams(linear(np.zeros((2, 2))))


class TestApply:

    @pytest.mark.parametrize('stream', STREAMS)
    def test_fixes_extremes(self, kind_cfg, stream):
        c = random_canonical(kind_cfg, stream)
        n = kind_cfg.dim

        assert apply_canonical(c, Effect.zero(n)).matrix.norm() <= 1e-10
        np.testing.assert_allclose(apply_canonical(c, Effect.identity(n)).entries, np.eye(n), atol=1e-10)

    def test_identity_congruence(self):
        A = random_effect(SamplerConfig(seed=8, dim=3))
        g = CongruenceParams(identity(3))

        assert gap(apply_congruence_form(g, A), A) <= 1e-12
        assert gap(apply_canonical(from_congruence(g), A), A) <= 1e-10

    @pytest.mark.parametrize('stream', STREAMS)
    def test_forms_agree(self, kind_cfg, stream):
        c = random_canonical(kind_cfg, stream)
        A = random_effect(kind_cfg, stream)
        ref = apply_canonical(c, A)

        assert gap(apply_hidden_factorization(c, A), ref) <= TOL
        assert gap(apply_alt(to_alt(c), A), ref) <= TOL
        assert gap(apply_congruence_form(to_congruence(c), A), ref) <= TOL

    @pytest.mark.parametrize('stream', STREAMS)
    def test_preserves_order(self, kind_cfg, stream):
        c = random_canonical(kind_cfg, stream)
        A, B = random_ordered_pair(kind_cfg, stream)
        assert loewner_margin(c(A).matrix, c(B).matrix) >= -TOL

    @pytest.mark.parametrize('stream', STREAMS)
    def test_reflects_order(self, kind_cfg, stream):
        c = random_canonical(kind_cfg, stream)
        A, B = random_non_ordered_pair(kind_cfg, stream)

        assert loewner_margin(c(A).matrix, c(B).matrix) < -TOL
        assert loewner_margin(c(B).matrix, c(A).matrix) < -TOL

    @pytest.mark.parametrize('stream', STREAMS)
    def test_invert_apply(self, kind_cfg, stream):
        c = random_canonical(kind_cfg, stream)
        A = random_effect(kind_cfg, stream)
        assert gap(invert_apply(c, c(A)), A) <= TOL

    def test_dispatch(self):
        cfg = SamplerConfig(seed=1, dim=3)
        c = random_canonical(cfg)
        A = random_effect(cfg)

        assert gap(apply_automorphism(to_alt(c), A), apply_automorphism(c, A)) <= TOL
        with pytest.raises(ParameterError):
            apply_automorphism('canonical', A)

    def test_dimension_mismatch(self):
        c = random_canonical(SamplerConfig(dim=4))
        with pytest.raises(DimensionError):
            apply_canonical(c, Effect.identity(3))

    def test_congruence_form_refuses_boundary(self):
        cfg = SamplerConfig(seed=2, dim=3)
        with pytest.raises(SingularError):
            apply_congruence_form(random_congruence(cfg), random_boundary_effect(cfg))

    def test_congruence_diagonal(self):
        g = CongruenceParams(linear(np.diag([2.0, 1.0])))
        B = apply_congruence_form(g, Effect(0.5*np.eye(2)))

        np.testing.assert_allclose(B.entries, np.diag([0.2, 0.5]), atol=1e-12)

    def test_scalar_multiple_of_identity(self):
        # p = -1, T = sqrt(2) I acts on each eigenvalue as a -> 3a/(2 + a)
        a = np.array([0.0, 0.25, 0.6, 1.0])
        c = CanonicalParams(-1.0, linear(math.sqrt(2.0)*np.eye(4)))
        B = apply_canonical(c, Effect(np.diag(a)))

        np.testing.assert_allclose(B.entries, np.diag(3.0*a/(2.0 + a)), atol=1e-12)

        for x in a:
            c1 = CanonicalParams(-1.0, linear([[math.sqrt(2.0)]]))
            b = apply_canonical(c1, Effect([[x]])).entries[0, 0]
            assert b.real == pytest.approx(3.0*x/(2.0 + x), abs=1e-12)

    def test_canonical_accepts_boundary(self):
        cfg = SamplerConfig(seed=2, dim=3)
        X = apply_canonical(random_canonical(cfg), random_boundary_effect(cfg))
        assert X.matrix.min_eigenvalue() == pytest.approx(0.0, abs=1e-10)


class TestConversions:

    def test_to_alt_unit_operator(self):
        c = CanonicalParams(-1.0, identity(3))
        a = to_alt(c)

        assert a.r == 0.5
        assert a.S is c.T

    def test_to_alt_rescales(self):
        c = CanonicalParams(-1.0, linear(2.0*np.eye(2)))
        a = to_alt(c)

        assert a.r == pytest.approx(0.8)
        np.testing.assert_allclose(a.S.matrix, np.eye(2), atol=1e-15)

    @pytest.mark.parametrize('stream', STREAMS)
    def test_alt_round_trip(self, kind_cfg, stream):
        c = random_canonical(kind_cfg, stream)
        back = alt_to_canonical(to_alt(c))

        assert back.T.kind is c.T.kind
        assert equal_pointwise(back, c, trials=4, tol=TOL)

    @pytest.mark.parametrize('stream', STREAMS)
    def test_congruence_round_trip(self, kind_cfg, stream):
        g = random_congruence(kind_cfg, stream)
        back = to_congruence(from_congruence(g))

        assert back.S.kind is g.S.kind
        np.testing.assert_allclose(back.S.matrix, g.S.matrix, atol=1e-9)

    def test_auto_lambda(self):
        c = from_congruence(CongruenceParams(linear(2.0*np.eye(2))))
        assert c.p.p == pytest.approx(-4.0)

    def test_identity_lambda_four(self):
        g = CongruenceParams(identity(2))
        c2 = from_congruence(g, 2.0)
        c4 = from_congruence(g, 4.0)

        assert c2.p.p == pytest.approx(-1.0)
        assert c4.p.p == pytest.approx(-3.0)
        np.testing.assert_allclose(c4.T.matrix, math.sqrt(3.0)*np.eye(2), atol=1e-12)
        assert equal_pointwise(c2, c4, trials=4, tol=TOL)

    @pytest.mark.parametrize('stream', STREAMS)
    def test_lambda_independence(self, kind_cfg, stream):
        g = random_congruence(kind_cfg, stream)
        lam = max(1.0, g.S.singular_values()[0]**2)

        c1 = from_congruence(g, lam + 0.5)
        c2 = from_congruence(g, 3.0*lam)

        assert c1.p.p == pytest.approx(1.0 - (lam + 0.5))
        assert equal_pointwise(c1, c2, trials=4, tol=TOL)

    @pytest.mark.parametrize('S, lam', [(math.sqrt(2.0), 1.5), (0.5, 1.0), (0.5, 0.5)])
    def test_lambda_too_small(self, S, lam):
        with pytest.raises(ParameterError):
            from_congruence(CongruenceParams(linear(S*np.eye(2))), lam)

    def test_as_forms(self):
        cfg = SamplerConfig(seed=6, dim=2)
        c = random_canonical(cfg)
        g = to_congruence(c)

        assert as_canonical(c) is c
        assert as_congruence(g) is g
        assert equal_pointwise(as_canonical(g), c, trials=4, tol=TOL)
        assert equal_pointwise(as_congruence(to_alt(c)), c, trials=4, tol=TOL)


class TestGroup:

    @pytest.mark.parametrize('stream', STREAMS)
    def test_compose(self, kind_cfg, stream):
        g1 = random_congruence(kind_cfg, stream)
        g2 = random_congruence(kind_cfg, stream + 100)
        A = random_effect(kind_cfg, stream)

        g = compose_automorphisms(g1, g2)

        assert gap(g(A), g1(g2(A))) <= TOL

    def test_compose_kinds(self):
        cfg = SamplerConfig(seed=3, dim=3, kind_mix=1.0)
        g = compose_automorphisms(random_congruence(cfg, 0), random_congruence(cfg, 1))
        assert g.S.kind is OperatorKind.LINEAR

    @pytest.mark.parametrize('stream', STREAMS)
    def test_invert(self, kind_cfg, stream):
        g = random_congruence(kind_cfg, stream)
        A = random_effect(kind_cfg, stream)

        assert gap(invert_automorphism(g)(g(A)), A) <= TOL

    def test_compose_canonical(self):
        cfg = SamplerConfig(seed=12, dim=3)
        c1 = random_canonical(cfg, 0)
        c2 = random_canonical(cfg, 1)
        A = random_effect(cfg)

        assert gap(compose_canonical(c1, c2)(A), c1(c2(A))) <= TOL

    def test_compose_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            compose_automorphisms(CongruenceParams(identity(2)), CongruenceParams(identity(3)))

    @pytest.mark.parametrize('theta', [0.3, 2.0, -1.4])
    def test_phase_invariance(self, kind_cfg, theta):
        c = random_canonical(kind_cfg)
        rotated = CanonicalParams(c.p, scale(c.T, np.exp(1j*theta)))

        assert phase_equiv(rotated.T, c.T)
        assert equal_pointwise(rotated, c, trials=4, tol=TOL)

    def test_different_maps_differ(self):
        cfg = SamplerConfig(seed=5, dim=3)
        result = equal_pointwise(random_canonical(cfg, 0), random_canonical(cfg, 1), trials=4)

        assert not result
        assert result.max_deviation > TOL
        assert result.trials == 4


class TestBoundaryExtension:

    @pytest.fixture
    def boundary_case(self):
        cfg = SamplerConfig(seed=21, dim=3)
        return random_canonical(cfg), random_boundary_effect(cfg)

    def test_gaps_decrease(self, boundary_case):
        c, A = boundary_case
        trace = limit_trace(c, A, n_max=2**10)

        assert trace.ns[-1] == 2**10
        assert np.all(np.diff(trace.gaps) <= 1e-12)
        assert trace.extrapolated_gap < trace.gaps[-1]

    def test_limit_matches_direct(self, boundary_case):
        c, A = boundary_case
        direct = apply_canonical(c, A)

        assert gap(limit_apply(c, A), direct) <= 1e-6
        assert gap(limit_apply(to_congruence(c), A), direct) <= 1e-6

    @pytest.mark.parametrize('extrapolate, atol', [(True, 1e-6), (False, 1e-4)])
    def test_identity_on_projection(self, extrapolate, atol):
        c = CanonicalParams(-1.0, identity(2))
        A = Effect(np.diag([1.0, 0.0]))
        X = limit_apply(c, A, extrapolate=extrapolate)

        np.testing.assert_allclose(X.entries, np.diag([1.0, 0.0]), atol=atol)

    def test_raw_iterate_on_interior_effect(self):
        cfg = SamplerConfig(seed=21, dim=3)
        c, A = random_canonical(cfg), random_effect(cfg)

        X = limit_apply(c, A, extrapolate=False)

        assert gap(X, apply_canonical(c, A)) <= 1e-3
        assert gap(X, apply_congruence_form(to_congruence(c), A)) <= 1e-3

    def test_raw_iterate_on_boundary(self, boundary_case):
        c, A = boundary_case
        trace = limit_trace(c, A)
        X = limit_apply(c, A, extrapolate=False)

        assert trace.raw_delta <= 64.0/trace.ns[-1]
        assert gap(X, apply_canonical(c, A)) <= 2.0*trace.raw_delta

    def test_no_convergence(self, boundary_case):
        c, A = boundary_case

        with pytest.raises(ConvergenceError) as excinfo:
            limit_apply(c, A, n_max=8, extrapolate=False, convergence_tol=1e-9)

        assert excinfo.value.last_delta > 1e-9

    def test_congruence_trace_has_no_direct_value(self, boundary_case):
        c, A = boundary_case
        trace = limit_trace(to_congruence(c), A, n_max=64)

        assert trace.direct is None
        assert trace.gaps is None
        assert len(trace.iterates) == 7
