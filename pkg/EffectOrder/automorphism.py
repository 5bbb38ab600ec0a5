'''
Order automorphisms of the effect algebra [0, I].

Three parameterizations describe the same group of maps:

-   `CanonicalParams` (p < 0, T invertible):

        phi(A) = f_p( K^{1/2} (I - (I + T A T*)^{-1}) K^{1/2} ),   K = I + (T T*)^{-1};

-   `AltParams` (p < 0, 0 < r < 1, ||S|| <= 1):

        phi(A) = f_p( f_r(S S*)^{-1/2} f_r(S A S*) f_r(S S*)^{-1/2} );

-   `CongruenceParams` (S invertible), defined on (0, I] only:

        phi(A) = (I + S (A^{-1} - I) S*)^{-1}.

T and S may be linear or conjugate-linear. The conversions are constructive:

-   `from_congruence`: lambda > max(1, ||S||^2), R = (lambda I - S S*)^{-1/2} S,
    T = (R*)^{-1}, q = 1 - 1/lambda, p = q/(q - 1) = 1 - lambda;
-   `to_congruence`: S = sqrt(1 - p) K^{-1/2} (T*)^{-1}, the inverse construction;
-   `to_alt`: S = T, r = 1/2 if ||T|| <= 1, else S = T/||T||, r = ||T||^2/(1 + ||T||^2);
-   `alt_to_canonical`: T = sqrt(r/(1 - r)) S.

Composition and inversion are done in congruence form, where they are a
single operator product. The congruence form is extended to singular effects
by the limit along A_n = (1 - 1/n) A + I/n, see `limit_trace`.
'''
import logging
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Final, List, Optional, Union

import numpy as np

from EffectOrder.errors import ParameterError, SingularError, DimensionError, ConvergenceError
from EffectOrder.hermitian import HermitianMatrix, identity, sandwich, sqrt_psd, inv_sqrt_psd, \
                                    inv_hermitian, eigh, INVERTIBILITY_TOL, PSD_CLAMP_TOL
from EffectOrder.moebius import MoebiusParam, as_param, inverse, to_positive_real, \
                                    eval_matrix_spectral
from EffectOrder.operators import BoundedOperator, OperatorKind, linear, adjoint, compose, \
                                    congruence, gram, invert, operator_norm, scale
from EffectOrder.interval import Effect, as_effect, to_cone, from_cone, cone_automorphism


logger = logging.getLogger(__name__)

HALF = MoebiusParam(0.5)

#* Default limit tolerances: the extrapolant, and the scale c of c/n for raw iterates
LIMIT_TOL: Final = 1e-6
RAW_LIMIT_SCALE: Final = 64.0


def _check_invertible(T: BoundedOperator, where: str) -> None:

    smin = T.singular_values()[-1]

    if smin < INVERTIBILITY_TOL:
        logger.debug('%s: singular operator, smallest singular value %.3e', where, smin)
        raise SingularError(where, 'operator is singular to tolerance',
                                'smallest singular value = %.6e' % (smin))


def _check_negative(p: MoebiusParam, where: str) -> None:

    if not p.p < 0.0:
        logger.debug('%s: p = %r is not negative', where, p.p)
        raise ParameterError(where, 'p must be negative', 'p = %r' % (p.p))


@dataclass(frozen=True, eq=False)
class CanonicalParams:
    '''
    Canonical parameters (p, T) of phi_{p,T}.

    Parameters
    ------------------
    p: MoebiusParam, or float
        negative Möbius parameter.

    T: BoundedOperator
        invertible linear or antilinear operator.
    '''
    p: MoebiusParam
    T: BoundedOperator

    form = 'canonical'

    def __post_init__(self) -> None:
        object.__setattr__(self, 'p', as_param(self.p))
        _check_negative(self.p, 'CanonicalParams: __init__')
        _check_invertible(self.T, 'CanonicalParams: __init__')

    @property
    def dim(self) -> int:
        return self.T.dim

    @cached_property
    def k_matrix(self) -> HermitianMatrix:
        '''
        K = I + (T T*)^{-1}.
        '''
        return identity(self.dim) + inv_hermitian(gram(self.T))

    @cached_property
    def k_sqrt(self) -> HermitianMatrix:
        return sqrt_psd(self.k_matrix)

    @cached_property
    def k_inv_sqrt(self) -> HermitianMatrix:
        return inv_sqrt_psd(self.k_matrix)

    def __call__(self, A) -> Effect:
        return apply_canonical(self, A)


@dataclass(frozen=True, eq=False)
class AltParams:
    '''
    Alternative parameters (p, r, S) with ||S|| <= 1.

    Parameters
    ------------------
    p: MoebiusParam, or float
        negative Möbius parameter.

    r: float
        real number in (0, 1).

    S: BoundedOperator
        invertible operator with ||S|| <= 1 + PSD_CLAMP_TOL.
    '''
    p: MoebiusParam
    r: float
    S: BoundedOperator

    form = 'alt'

    def __post_init__(self) -> None:

        object.__setattr__(self, 'p', as_param(self.p))
        object.__setattr__(self, 'r', float(self.r))
        _check_negative(self.p, 'AltParams: __init__')

        if not 0.0 < self.r < 1.0:
            logger.debug('AltParams: r = %r outside (0, 1)', self.r)
            raise ParameterError('AltParams: __init__', 'r must lie in (0, 1)', 'r = %r' % (self.r))

        _check_invertible(self.S, 'AltParams: __init__')

        nS = operator_norm(self.S)
        if nS > 1.0 + PSD_CLAMP_TOL:
            logger.debug('AltParams: ||S|| = %.6e > 1', nS)
            raise ParameterError('AltParams: __init__', '||S|| must not exceed 1', '||S|| = %.12e' % (nS))

    @property
    def dim(self) -> int:
        return self.S.dim

    @cached_property
    def fr_inv_sqrt(self) -> HermitianMatrix:
        '''
        f_r(S S*)^{-1/2}.
        '''
        return inv_sqrt_psd(eval_matrix_spectral(self.r, gram(self.S), margin=0.0))

    def __call__(self, A) -> Effect:
        return apply_alt(self, A)


@dataclass(frozen=True, eq=False)
class CongruenceParams:
    '''
    Congruence parameter S of phi(A) = (I + S (A^{-1} - I) S*)^{-1}.

    Parameters
    ------------------
    S: BoundedOperator
        invertible linear or antilinear operator.
    '''
    S: BoundedOperator

    form = 'congruence'

    def __post_init__(self) -> None:
        _check_invertible(self.S, 'CongruenceParams: __init__')

    @property
    def dim(self) -> int:
        return self.S.dim

    def __call__(self, A) -> Effect:
        return apply_congruence_form(self, A)


AutomorphismForm = Union[CanonicalParams, AltParams, CongruenceParams]


def _check_dim(phi, A: Effect, where: str) -> None:

    if phi.dim != A.dim:
        logger.debug('%s: automorphism dim %d, effect dim %d', where, phi.dim, A.dim)
        raise DimensionError(where, 'dimension mismatch', '%d != %d' % (phi.dim, A.dim))


#* =============================================
#* Application

def apply_canonical(c: CanonicalParams, A) -> Effect:
    '''
    phi_{p,T}(A) = f_p( K^{1/2} (I - (I + T A T*)^{-1}) K^{1/2} ), K = I + (T T*)^{-1}.

    The formula is defined on all of [0, I], boundary effects included.

    Raises
    ------------------
    DomainError
        the inner argument left the domain of f_p, i.e., numerical breakdown.
    '''
    A = as_effect(A)
    _check_dim(c, A, 'apply_canonical')

    I = identity(A.dim)
    inner = I - inv_hermitian(I + congruence(c.T, A.matrix))
    X = sandwich(c.k_sqrt, inner)

    return Effect(eval_matrix_spectral(c.p, X, margin=0.0))


def apply_hidden_factorization(c: CanonicalParams, A) -> Effect:
    '''
    phi_{p,T}(A) = f_p( K^{1/2} f_{1/2}(T A T*) K^{1/2} / 2 ).

    An independent evaluation path of `apply_canonical`: a congruence, f_{1/2},
    a second congruence and f_p.
    '''
    A = as_effect(A)
    _check_dim(c, A, 'apply_hidden_factorization')

    Y = eval_matrix_spectral(HALF, congruence(c.T, A.matrix), margin=0.0)
    X = 0.5 * sandwich(c.k_sqrt, Y)

    return Effect(eval_matrix_spectral(c.p, X, margin=0.0))


def apply_alt(a: AltParams, A) -> Effect:
    '''
    phi(A) = f_p( f_r(S S*)^{-1/2} f_r(S A S*) f_r(S S*)^{-1/2} ).
    '''
    A = as_effect(A)
    _check_dim(a, A, 'apply_alt')

    F = eval_matrix_spectral(a.r, congruence(a.S, A.matrix), margin=0.0)
    X = sandwich(a.fr_inv_sqrt, F)

    return Effect(eval_matrix_spectral(a.p, X, margin=0.0))


def apply_congruence_form(g: CongruenceParams, A, tol=INVERTIBILITY_TOL) -> Effect:
    '''
    phi(A) = (I + S (A^{-1} - I) S*)^{-1}, an order automorphism of (0, I].

    Raises
    ------------------
    SingularError
        A is on the boundary of [0, I]; use `limit_apply` there.
    '''
    A = as_effect(A)
    _check_dim(g, A, 'apply_congruence_form')

    return from_cone(cone_automorphism(g.S, to_cone(A, tol)))


def apply_automorphism(phi: AutomorphismForm, A) -> Effect:
    '''
    Apply any of the three forms.
    '''
    if isinstance(phi, CanonicalParams):
        return apply_canonical(phi, A)
    elif isinstance(phi, AltParams):
        return apply_alt(phi, A)
    elif isinstance(phi, CongruenceParams):
        return apply_congruence_form(phi, A)

    raise ParameterError('apply_automorphism', 'unknown automorphism form', repr(phi))


def invert_apply(c: CanonicalParams, B) -> Effect:
    '''
    The unique A with phi_{p,T}(A) = B, by unwinding the canonical formula:

    -   X = f_{p/(p-1)}(B) = f_p^{-1}(B);
    -   (I + T A T*)^{-1} = I - K^{-1/2} X K^{-1/2};
    -   A = T^{-1} ((I + T A T*) - I) (T^{-1})*.

    Raises
    ------------------
    SingularError
        an intermediate matrix is singular to tolerance.
    '''
    B = as_effect(B)
    _check_dim(c, B, 'invert_apply')

    I = identity(B.dim)
    X = eval_matrix_spectral(inverse(c.p), B.matrix, margin=0.0)
    Y = I - sandwich(c.k_inv_sqrt, X)
    Z = inv_hermitian(Y) - I

    return Effect(congruence(invert(c.T), Z))


#* =============================================
#* Conversions

def from_congruence(g: CongruenceParams, lam='auto') -> CanonicalParams:
    '''
    Canonical parameters of a congruence-form automorphism.

    Parameters
    ------------------
    g: CongruenceParams
        congruence parameter S.

    lam: float, or 'auto', or None
        lambda > max(1, ||S||^2); 'auto' (or None) takes max(1, ||S||^2) + 1.
        Different admissible values give the same automorphism.

    Returns
    ------------------
    c: CanonicalParams
        p = 1 - lambda and T = (R*)^{-1} with R = (lambda I - S S*)^{-1/2} S.

    Raises
    ------------------
    ParameterError
        lambda <= 1 or lambda <= ||S||^2.
    '''
    S = g.S
    s2 = operator_norm(S)**2

    if lam is None or lam == 'auto':
        lam = max(1.0, s2) + 1.0

    lam = float(lam)

    if not (lam > 1.0 and lam > s2):
        logger.debug('from_congruence: lambda = %r, ||S||^2 = %r', lam, s2)
        raise ParameterError('from_congruence', 'lambda must exceed max(1, ||S||^2)',
                                'lambda = %r, ||S||^2 = %r' % (lam, s2))

    n = S.dim
    P = inv_sqrt_psd(lam*identity(n) - gram(S))
    R = compose(linear(P.entries), S)
    T = invert(adjoint(R))

    q = MoebiusParam(1.0 - 1.0/lam)

    return CanonicalParams(inverse(q), T)


def to_congruence(c: CanonicalParams) -> CongruenceParams:
    '''
    Congruence parameter S = sqrt(1 - p) K^{-1/2} (T*)^{-1} of phi_{p,T}.

    This inverts `from_congruence`, whose construction has lambda = 1 - p.
    '''
    lam = to_positive_real(c.p)
    F = math.sqrt(lam) * c.k_inv_sqrt
    S = compose(linear(F.entries), invert(adjoint(c.T)))

    return CongruenceParams(S)


def to_alt(c: CanonicalParams) -> AltParams:
    '''
    Alternative parameters of phi_{p,T}.

    ||T|| <= 1 gives S = T, r = 1/2; otherwise S = T/||T|| and r = ||T||^2/(1 + ||T||^2).
    '''
    nT = operator_norm(c.T)

    if nT <= 1.0:
        return AltParams(c.p, 0.5, c.T)

    return AltParams(c.p, nT**2/(1.0 + nT**2), scale(c.T, 1.0/nT))


def alt_to_canonical(a: AltParams) -> CanonicalParams:
    '''
    Canonical parameters of an alternative form: T = sqrt(r/(1 - r)) S.
    '''
    return CanonicalParams(a.p, scale(a.S, math.sqrt(a.r/(1.0 - a.r))))


def as_congruence(phi: AutomorphismForm) -> CongruenceParams:
    '''
    Congruence form of any parameterization.
    '''
    if isinstance(phi, CongruenceParams):
        return phi
    elif isinstance(phi, CanonicalParams):
        return to_congruence(phi)
    elif isinstance(phi, AltParams):
        return to_congruence(alt_to_canonical(phi))

    raise ParameterError('as_congruence', 'unknown automorphism form', repr(phi))


def as_canonical(phi: AutomorphismForm, lam='auto') -> CanonicalParams:
    '''
    Canonical form of any parameterization (`lam` is used for congruence inputs only).
    '''
    if isinstance(phi, CanonicalParams):
        return phi
    elif isinstance(phi, AltParams):
        return alt_to_canonical(phi)
    elif isinstance(phi, CongruenceParams):
        return from_congruence(phi, lam)

    raise ParameterError('as_canonical', 'unknown automorphism form', repr(phi))


#* =============================================
#* Group structure

def compose_automorphisms(g1: CongruenceParams, g2: CongruenceParams) -> CongruenceParams:
    '''
    Congruence parameter S1 S2 of phi_1 o phi_2.
    '''
    if g1.dim != g2.dim:
        logger.debug('compose_automorphisms: dimension mismatch %d != %d', g1.dim, g2.dim)
        raise DimensionError('compose_automorphisms', 'dimension mismatch', '%d != %d' % (g1.dim, g2.dim))

    return CongruenceParams(compose(g1.S, g2.S))


def invert_automorphism(g: CongruenceParams) -> CongruenceParams:
    '''
    Congruence parameter S^{-1} of phi^{-1}.
    '''
    return CongruenceParams(invert(g.S))


def compose_canonical(c1: CanonicalParams, c2: CanonicalParams, lam='auto') -> CanonicalParams:
    '''
    Canonical parameters of phi_1 o phi_2: convert, compose, convert back.
    '''
    g = compose_automorphisms(to_congruence(c1), to_congruence(c2))
    return from_congruence(g, lam)


#* =============================================
#* Boundary extension

@dataclass(frozen=True, eq=False)
class LimitTrace:
    '''
    The sequence phi(A_n), n = 1, 2, 4, ..., of the congruence form along
    A_n = (1 - 1/n) A + I/n.

    Attributes
    ------------------
    ns: list of int
        the powers of two used.

    iterates: list of HermitianMatrix
        phi(A_n).

    extrapolated: HermitianMatrix
        Romberg extrapolant of the iterates (the error of phi(A_n) is a
        power series in 1/n, and `levels` terms of it are eliminated).

    direct: HermitianMatrix, or None
        phi(A) by the canonical formula, when available.

    gaps: ndarray, or None
        ||phi(A_n) - phi(A)||_F for every n.

    extrapolated_gap: float, or None
        ||extrapolated - phi(A)||_F.

    last_delta: float
        difference of the last two values of the returned sequence
        (extrapolated or raw).
    '''
    ns              : List[int]
    iterates        : List[HermitianMatrix]
    extrapolated    : HermitianMatrix
    direct          : Optional[HermitianMatrix] = None
    gaps            : Optional[np.ndarray] = None
    extrapolated_gap: Optional[float] = None
    last_delta      : float = 0.0
    raw_delta       : float = 0.0

    @property
    def final(self) -> HermitianMatrix:
        return self.iterates[-1]


def _romberg(values: List[np.ndarray], levels: int) -> List[List[np.ndarray]]:
    '''
    Repeated Richardson extrapolation of a sequence sampled at h = 2^{-k}.
    '''
    table = [list(values)]

    for j in range(1, levels+1):
        prev = table[-1]
        f = 2.0**j
        table.append([(f*prev[i] - prev[i-1])/(f - 1.0) for i in range(1, len(prev))])

    return table


def limit_trace(phi: Union[CanonicalParams, CongruenceParams], A, n_max=2**14, levels=2) -> LimitTrace:
    '''
    Evaluate the congruence form along A_n = (1 - 1/n) A + I/n, n = 2^k <= n_max.

    Parameters
    ------------------
    phi: CanonicalParams, or CongruenceParams
        the automorphism; for canonical parameters the direct value phi(A)
        and the gaps are recorded as well.

    A: Effect
        any effect, singular ones included.

    n_max: int
        largest n.

    levels: int
        Romberg levels of the extrapolant.
    '''
    A = as_effect(A)

    if isinstance(phi, CanonicalParams):
        g = to_congruence(phi)
        direct = apply_canonical(phi, A).matrix
    else:
        g = as_congruence(phi)
        direct = None

    _check_dim(g, A, 'limit_trace')

    K = int(math.floor(math.log2(max(int(n_max), 1))))
    levels = max(0, min(int(levels), K))

    I = identity(A.dim)
    ns = [2**k for k in range(K+1)]
    iterates = []

    for n in ns:
        A_n = Effect((1.0 - 1.0/n)*A.matrix + (1.0/n)*I)
        iterates.append(apply_congruence_form(g, A_n).matrix)

    values = [X.entries for X in iterates]
    table = _romberg(values, levels)
    best = table[levels]

    extrapolated = HermitianMatrix(best[-1])

    raw_delta = float(np.linalg.norm(values[-1] - values[-2], 'fro')) if len(values) > 1 else 0.0
    last_delta = float(np.linalg.norm(best[-1] - best[-2], 'fro')) if len(best) > 1 else raw_delta

    gaps = None
    extrapolated_gap = None

    if direct is not None:
        gaps = np.array([(X - direct).frobenius() for X in iterates])
        extrapolated_gap = (extrapolated - direct).frobenius()

    return LimitTrace(ns=ns, iterates=iterates, extrapolated=extrapolated, direct=direct, gaps=gaps,
                        extrapolated_gap=extrapolated_gap, last_delta=last_delta, raw_delta=raw_delta)


def limit_apply(phi: Union[CanonicalParams, CongruenceParams], A, n_max=2**14,
                    extrapolate=True, convergence_tol=None, levels=2) -> Effect:
    '''
    phi(A) as the limit of the congruence form along A_n = (1 - 1/n) A + I/n.

    Parameters
    ------------------
    extrapolate: bool
        if True, return the Romberg extrapolant; if False, the final iterate phi(A_{n_max}),
        which is only first-order accurate in 1/n.

    convergence_tol: float, or None
        admissible last difference of the returned sequence. None means
        LIMIT_TOL for the extrapolant, and RAW_LIMIT_SCALE/n_max for the raw
        iterate, whose last difference is itself of order 1/n_max.

    Raises
    ------------------
    ConvergenceError
        the last difference exceeds `convergence_tol`; it carries that difference.
    '''
    trace = limit_trace(phi, A, n_max=n_max, levels=levels if extrapolate else 0)

    if convergence_tol is None:
        convergence_tol = LIMIT_TOL if extrapolate else RAW_LIMIT_SCALE/trace.ns[-1]

    delta = trace.last_delta if extrapolate else trace.raw_delta

    if delta > convergence_tol:
        logger.debug('limit_apply: last delta %.3e > %.1e at n = %d', delta, convergence_tol, trace.ns[-1])
        raise ConvergenceError('limit_apply', 'sequence did not settle within n_max = %d' % (trace.ns[-1]),
                                delta)

    value = trace.extrapolated if extrapolate else trace.final

    return Effect.clamped(value, convergence_tol if extrapolate else LIMIT_TOL)


#* =============================================
#* Pointwise comparison

@dataclass(frozen=True)
class PointwiseComparison:
    '''
    Outcome of `equal_pointwise`.
    '''
    equal           : bool
    max_deviation   : float
    worst_trial     : int
    trials          : int
    deviations      : List[float] = field(default_factory=list, repr=False)

    def __bool__(self) -> bool:
        return self.equal


def equal_pointwise(phi1: AutomorphismForm, phi2: AutomorphismForm, trials=32, seed=0, tol=1e-8,
                        interior_margin=0.05) -> PointwiseComparison:
    '''
    Compare two automorphisms on random effects.

    Trial k samples its effect from the stream (seed, k), so the result does
    not depend on the order in which trials are evaluated.

    Returns
    ------------------
    comparison: PointwiseComparison
        equal iff the largest Frobenius deviation is at most `tol`.
    '''
    from EffectOrder.sampling import SamplerConfig, random_effect

    if phi1.dim != phi2.dim:
        raise DimensionError('equal_pointwise', 'dimension mismatch', '%d != %d' % (phi1.dim, phi2.dim))

    cfg = SamplerConfig(seed=seed, dim=phi1.dim, interior_margin=interior_margin)
    deviations = []

    for k in range(int(trials)):
        A = random_effect(cfg, k)
        d = (apply_automorphism(phi1, A).matrix - apply_automorphism(phi2, A).matrix).frobenius()
        deviations.append(d)

    if not deviations:
        return PointwiseComparison(True, 0.0, -1, 0, [])

    worst = int(np.argmax(deviations))

    return PointwiseComparison(equal=bool(deviations[worst] <= tol), max_deviation=float(deviations[worst]),
                                worst_trial=worst, trials=len(deviations), deviations=deviations)
