'''
The function group G = {f_p : p < 1},

    f_p(x) = x / (p x + 1 - p),

with f_p o f_q = f_{p+q-pq} and f_p^{-1} = f_{p/(p-1)}; p -> f_{1-p} is an
isomorphism from the multiplicative positive reals onto G.

For 0 <= p < 1 the domain of f_p is [0, inf), for p < 0 it is [0, 1 - 1/p).
Every f_p maps [0, 1] increasingly onto itself and is operator monotone on
its domain, so it acts on Hermitian matrices by functional calculus. Two
routes are provided:

-   `eval_matrix_spectral`: U diag(f_p(eigenvalues)) U^H, the reference;
-   `eval_matrix_resolvent`: the closed resolvent forms

        p in (0,1):  f_p(A) = I/p - (1-p)/p^2 (A + (1/p - 1) I)^{-1}
        p < 0:       f_p(A) = I/p + (1-p)/p^2 ((1 - 1/p) I - A)^{-1}

    computed by LU inversion, used for cross-validation.
'''
import logging
import math
from dataclasses import dataclass
from typing import Final, Union

import numpy as np

from EffectOrder.errors import ParameterError, DomainError
from EffectOrder.hermitian import HermitianMatrix, SpectralDecomposition, \
                                    eigh, eigvalsh, identity, inv_hermitian, PSD_CLAMP_TOL


logger = logging.getLogger(__name__)

DOMAIN_MARGIN   : Final[float] = 0.05
P_MAX           : Final[float] = 1.0 - 1e-12


@dataclass(frozen=True)
class MoebiusParam:
    '''
    Parameter p < 1 of the Möbius function f_p.

    Parameters with p >= 1 - 1e-12 are rejected, which keeps 1 - p well conditioned.

    Attributes
    ------------------
    p: float
        the parameter.
    '''
    p: float

    def __post_init__(self) -> None:

        p = float(self.p)

        if not math.isfinite(p) or p >= P_MAX:
            logger.debug('MoebiusParam rejected p = %r', p)
            raise ParameterError('MoebiusParam: __init__', 'p must be a finite number below 1 - 1e-12',
                                    'p = %r' % (p))

        object.__setattr__(self, 'p', p)

    @property
    def pole(self) -> float:
        '''
        Right end 1 - 1/p of the domain (inf for p >= 0).
        '''
        if self.p >= 0.0:
            return math.inf
        return 1.0 - 1.0/self.p

    def domain_upper(self, margin=DOMAIN_MARGIN) -> float:
        '''
        Admissible largest eigenvalue of a matrix argument.

        For p < 0 the margin is a fraction of the gap between 1 and the pole,
        so [0, 1] stays admissible for every margin < 1.
        '''
        if self.p >= 0.0:
            return math.inf
        return self.pole - margin*(self.pole - 1.0)

    def __call__(self, x):
        return evaluate(self, x)


ParamLike = Union[MoebiusParam, float]


def as_param(p: ParamLike) -> MoebiusParam:
    if isinstance(p, MoebiusParam):
        return p
    return MoebiusParam(p)


#* =============================================
#* Scalar group

def evaluate(p: ParamLike, x):
    '''
    f_p(x) = x / (p x + 1 - p), for a scalar or an array x.

    Raises
    ------------------
    DomainError
        some x is negative, or beyond the pole 1 - 1/p when p < 0.
    '''
    p = as_param(p)
    xx = np.asarray(x, dtype=float)

    if np.any(xx < 0.0) or np.any(xx >= p.pole):
        logger.debug('evaluate: x outside the domain of f_%r', p.p)
        raise DomainError('evaluate', 'x outside the domain [0, %r) of f_p' % (p.pole),
                            'p = %r' % (p.p))

    y = xx / (p.p*xx + (1.0 - p.p))

    if np.ndim(x) == 0:
        return float(y)
    return y


def compose(p: ParamLike, q: ParamLike) -> MoebiusParam:
    '''
    Parameter of f_p o f_q, i.e., p + q - p q.

    It is computed as 1 - (1-p)(1-q), which keeps 1 - r accurate when r is close to 1.
    '''
    p, q = as_param(p), as_param(q)
    return MoebiusParam(1.0 - (1.0 - p.p)*(1.0 - q.p))


def inverse(p: ParamLike) -> MoebiusParam:
    '''
    Parameter p/(p-1) of f_p^{-1}.
    '''
    p = as_param(p)
    return MoebiusParam(p.p/(p.p - 1.0))


def from_positive_real(a: float) -> MoebiusParam:
    '''
    Isomorphism P -> G, a -> f_{1-a}.

    Raises
    ------------------
    ParameterError
        a is not a positive finite number.
    '''
    a = float(a)

    if not math.isfinite(a) or a <= 0.0:
        logger.debug('from_positive_real rejected a = %r', a)
        raise ParameterError('from_positive_real', 'a must be positive', 'a = %r' % (a))

    return MoebiusParam(1.0 - a)


def to_positive_real(p: ParamLike) -> float:
    '''
    Inverse isomorphism G -> P, f_p -> 1 - p.
    '''
    return 1.0 - as_param(p).p


#* =============================================
#* Matrix functional calculus

def check_spectrum(p: MoebiusParam, values: np.ndarray, margin: float) -> None:
    '''
    Check that eigenvalues lie inside the domain of f_p with `margin`.

    Raises
    ------------------
    DomainError
        an eigenvalue is below -PSD_CLAMP_TOL, or above `p.domain_upper(margin)`,
        or not below the pole.
    '''
    lo, hi = float(values[0]), float(values[-1])

    if lo < -PSD_CLAMP_TOL or hi > p.domain_upper(margin) or hi >= p.pole:
        logger.debug('spectrum [%.3e, %.3e] outside the domain of f_%r', lo, hi, p.p)
        raise DomainError('check_spectrum', 'spectrum outside the domain of f_p',
                            'p = %r, spectrum = [%.6e, %.6e], admissible = [0, %.6e]'
                            % (p.p, lo, hi, p.domain_upper(margin)))


def spectral_map(p: MoebiusParam, dec: SpectralDecomposition) -> HermitianMatrix:
    '''
    f_p applied to an already computed eigendecomposition.
    '''
    return dec.map(lambda x: evaluate(p, np.clip(x, 0.0, None)))


def eval_matrix_spectral(p: ParamLike, A: HermitianMatrix, margin=DOMAIN_MARGIN) -> HermitianMatrix:
    '''
    f_p(A) = U diag(f_p(lambda_i)) U^H.

    Parameters
    ------------------
    p: MoebiusParam, or float
        Möbius parameter.

    A: HermitianMatrix
        argument, spectrum in the domain of f_p.

    margin: float
        distance kept from the pole, see `MoebiusParam.domain_upper`.
        Eigenvalues in [-PSD_CLAMP_TOL, 0) are treated as 0.
    '''
    p = as_param(p)
    dec = eigh(A)
    check_spectrum(p, dec.eigenvalues, margin)
    return spectral_map(p, dec)


def eval_matrix_resolvent(p: ParamLike, A: HermitianMatrix, margin=DOMAIN_MARGIN) -> HermitianMatrix:
    '''
    f_p(A) by the closed resolvent forms (see module docstring).

    Raises
    ------------------
    ParameterError
        p = 0 has no resolvent form; f_0 is the identity.

    DomainError
        the spectrum of A lies outside the domain of f_p.
    '''
    p = as_param(p)

    if p.p == 0.0:
        raise ParameterError('eval_matrix_resolvent', 'p = 0 has no resolvent form',
                                'use eval_matrix_spectral')

    check_spectrum(p, eigvalsh(A), margin)

    n  = A.dim
    I  = identity(n)
    pp = p.p
    c  = (1.0 - pp)/pp**2

    if pp > 0.0:
        R = inv_hermitian(A + (1.0/pp - 1.0)*I)
        return (1.0/pp)*I - c*R
    else:
        R = inv_hermitian((1.0 - 1.0/pp)*I - A)
        return (1.0/pp)*I + c*R
