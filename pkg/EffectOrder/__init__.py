'''
Order automorphisms of the effect algebra [0, I] of a finite-dimensional
Hilbert space: Möbius functions, linear and conjugate-linear operators,
the canonical, alternative and congruence parameterizations, and
property suites that check them numerically.

    >>> from EffectOrder import random_canonical, random_effect, apply_canonical, SamplerConfig
    >>> cfg = SamplerConfig(seed=1, dim=3)
    >>> B = apply_canonical(random_canonical(cfg), random_effect(cfg))
'''
from EffectOrder.errors import EffectOrderError, ShapeError, DimensionError, SpectralError, NotPositiveError, \
                                SingularError, DomainError, EffectMembershipError, ParameterError, \
                                ConvergenceError, FormatError, ConfigError
from EffectOrder.hermitian import HermitianMatrix, SpectralDecomposition, LoewnerRelation, eigh, sqrt_psd, \
                                inv_sqrt_psd, is_psd, loewner_leq, loewner_compare
from EffectOrder.operators import OperatorKind, BoundedOperator, linear, antilinear, adjoint, compose, \
                                congruence, operator_norm, invert, phase_equiv
from EffectOrder.moebius import MoebiusParam, evaluate, inverse, from_positive_real, to_positive_real, \
                                eval_matrix_spectral, eval_matrix_resolvent
from EffectOrder.interval import Effect, to_cone, from_cone, cone_automorphism
from EffectOrder.automorphism import CanonicalParams, AltParams, CongruenceParams, apply_canonical, \
                                apply_hidden_factorization, apply_alt, apply_congruence_form, apply_automorphism, \
                                invert_apply, from_congruence, to_congruence, to_alt, alt_to_canonical, \
                                compose_automorphisms, invert_automorphism, compose_canonical, \
                                limit_trace, limit_apply, equal_pointwise
from EffectOrder.sampling import SamplerConfig, random_effect, random_ordered_pair, random_boundary_effect, \
                                random_invertible_operator, random_canonical, random_congruence
from EffectOrder.verify import VerifyConfig, VerificationReport, run_all, SUITE_NAMES
from EffectOrder.functions import load_parameters
