'''
The effect algebra [0, I] and the maps between operator intervals used to
build its automorphisms:

-   `Effect`: a Hermitian matrix with 0 <= A <= I;
-   `to_cone`: A -> A^{-1} - I, an order anti-isomorphism of (0, I] onto [0, inf);
-   `from_cone`: X -> (I + X)^{-1}, its inverse;
-   `cone_automorphism`: X -> S X S*, an order automorphism of [0, inf).
'''
import logging

import numpy as np

from EffectOrder.errors import EffectMembershipError, NotPositiveError, SingularError
from EffectOrder.hermitian import HermitianMatrix, eigh, eigvalsh, identity, zeros, \
                                    inv_hermitian, is_psd, PSD_CLAMP_TOL, INVERTIBILITY_TOL
from EffectOrder.operators import BoundedOperator, congruence


logger = logging.getLogger(__name__)


class Effect(object):
    '''
    Element of the effect algebra [0, I].

    Eigenvalues in [-PSD_CLAMP_TOL, 0) are clamped to 0 and eigenvalues in
    (1, 1 + PSD_CLAMP_TOL] to 1; anything further outside is rejected.

    Parameters
    ------------------
    matrix: HermitianMatrix, or array_like [n, n]
        candidate effect.

    Attributes
    ------------------
    matrix: HermitianMatrix
        the (possibly clamped) effect.
    '''
    __slots__ = ('matrix',)

    def __init__(self, matrix) -> None:

        if not isinstance(matrix, HermitianMatrix):
            matrix = HermitianMatrix(matrix)

        dec = eigh(matrix)
        lo, hi = dec.eigenvalues[0], dec.eigenvalues[-1]

        if lo < -PSD_CLAMP_TOL or hi > 1.0 + PSD_CLAMP_TOL:
            logger.debug('Effect rejected spectrum [%.3e, %.3e]', lo, hi)
            raise EffectMembershipError('Effect: __init__', 'matrix is not inside [0, I]',
                                        'spectrum = [%.6e, %.6e]' % (lo, hi))

        if lo < 0.0 or hi > 1.0:
            matrix = dec.map(lambda x: np.clip(x, 0.0, 1.0))

        self.matrix = matrix

    @classmethod
    def clamped(cls, matrix, tol: float) -> 'Effect':
        '''
        Effect from a matrix whose spectrum may leave [0, 1] by up to `tol`,
        e.g., an extrapolated limit; the spectrum is clipped to [0, 1].

        Raises
        ------------------
        EffectMembershipError
            the spectrum leaves [0, 1] by more than `tol`.
        '''
        if not isinstance(matrix, HermitianMatrix):
            matrix = HermitianMatrix(matrix)

        dec = eigh(matrix)
        lo, hi = dec.eigenvalues[0], dec.eigenvalues[-1]

        if lo < -tol or hi > 1.0 + tol:
            logger.debug('Effect.clamped rejected spectrum [%.3e, %.3e]', lo, hi)
            raise EffectMembershipError('Effect: clamped', 'matrix is not inside [0, I]',
                                        'spectrum = [%.6e, %.6e], tol = %.1e' % (lo, hi, tol))

        return cls(dec.map(lambda x: np.clip(x, 0.0, 1.0)))

    @classmethod
    def zero(cls, n: int) -> 'Effect':
        return cls(zeros(n))

    @classmethod
    def identity(cls, n: int) -> 'Effect':
        return cls(identity(n))

    @property
    def dim(self) -> int:
        return self.matrix.dim

    @property
    def entries(self) -> np.ndarray:
        return self.matrix.entries

    def __repr__(self) -> str:
        return 'Effect(dim=%d)' % (self.dim)

    def is_invertible(self, tol=INVERTIBILITY_TOL) -> bool:
        '''
        Whether the effect lies in (0, I] at `tol`.
        '''
        return bool(eigvalsh(self.matrix)[0] >= tol)


def as_effect(A) -> Effect:
    if isinstance(A, Effect):
        return A
    return Effect(A)


def is_effect(A: HermitianMatrix, tol=PSD_CLAMP_TOL) -> bool:
    '''
    Membership 0 <= A <= I at `tol`, without raising.
    '''
    values = eigvalsh(A)
    return bool(values[0] >= -tol and values[-1] <= 1.0 + tol)


def to_cone(A, tol=INVERTIBILITY_TOL) -> HermitianMatrix:
    '''
    A -> A^{-1} - I, from (0, I] onto [0, inf).

    Boundary effects are refused rather than clamped: the map is undefined there.

    Raises
    ------------------
    SingularError
        the smallest eigenvalue of A is below `tol`.
    '''
    A = as_effect(A)
    lo = eigvalsh(A.matrix)[0]

    if lo < tol:
        logger.debug('to_cone: boundary effect, min eigenvalue %.3e', lo)
        raise SingularError('to_cone', 'effect on the boundary of [0, I]',
                                'min eigenvalue = %.6e < tol = %.1e' % (lo, tol))

    return inv_hermitian(A.matrix) - identity(A.dim)


def from_cone(X: HermitianMatrix) -> Effect:
    '''
    X -> (I + X)^{-1}, from [0, inf) onto (0, I].

    Raises
    ------------------
    NotPositiveError
        X is not positive semidefinite at PSD_CLAMP_TOL.
    '''
    if not is_psd(X, PSD_CLAMP_TOL):
        logger.debug('from_cone: input is not PSD')
        raise NotPositiveError('from_cone', 'input is not positive semidefinite',
                                'min eigenvalue = %.6e' % (eigvalsh(X)[0]))

    return Effect(inv_hermitian(identity(X.dim) + X))


def cone_automorphism(S: BoundedOperator, X: HermitianMatrix) -> HermitianMatrix:
    '''
    Congruence X -> S X S* on the positive cone.

    Raises
    ------------------
    SingularError
        S is singular to tolerance.

    NotPositiveError
        X is not positive semidefinite at PSD_CLAMP_TOL.
    '''
    if not S.is_invertible():
        logger.debug('cone_automorphism: singular S')
        raise SingularError('cone_automorphism', 'S is singular to tolerance',
                                'smallest singular value = %.6e' % (S.singular_values()[-1]))

    if not is_psd(X, PSD_CLAMP_TOL):
        logger.debug('cone_automorphism: input is not PSD')
        raise NotPositiveError('cone_automorphism', 'input is not positive semidefinite',
                                'min eigenvalue = %.6e' % (eigvalsh(X)[0]))

    return congruence(S, X)
