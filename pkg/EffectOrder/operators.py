'''
Invertible bounded linear and conjugate-linear operators on C^n.

-   `OperatorKind`: linear or antilinear;
-   `BoundedOperator`: a matrix M plus a kind, acting as x -> M x (linear)
    or x -> M conj(x) (antilinear);
-   functions `apply`, `adjoint`, `compose`, `congruence`, `operator_norm`,
    `invert`, `phase_equiv` and the basis-vector oracle `basis_oracle`.

Coordinates of antilinear operators
---------------------------------------
An antilinear T is stored as T x = M conj(x). With the inner product
<u, v> = sum u_i conj(v_i) (conjugate-linear in the second argument)
this fixes:

-   adjoint: T* y = M^T conj(y), i.e., the plain transpose, kind antilinear;
-   congruence: T A T* = M conj(A) M^H;
-   T T* = M M^H, as for linear operators;
-   inverse: T^{-1} y = conj(M^{-1}) conj(y).

`basis_oracle` rebuilds T A T* column by column from the action, and the
test-suite checks all of the above against it.
'''
import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np
import scipy.linalg

from EffectOrder.errors import ShapeError, DimensionError, SingularError
from EffectOrder.hermitian import HermitianMatrix, INVERTIBILITY_TOL


logger = logging.getLogger(__name__)


class OperatorKind(Enum):

    LINEAR      = 'linear'
    ANTILINEAR  = 'antilinear'


@dataclass(frozen=True, eq=False)
class BoundedOperator:
    '''
    Bounded linear or conjugate-linear operator on C^n.

    Parameters
    ------------------
    kind: OperatorKind
        LINEAR acts as x -> M x, ANTILINEAR acts as x -> M conj(x).

    matrix: array_like [n, n]
        complex square matrix M, stored read-only.
    '''
    kind    : OperatorKind
    matrix  : np.ndarray

    def __post_init__(self) -> None:

        M = np.array(self.matrix, dtype=complex)

        if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] < 1:
            logger.debug('BoundedOperator rejected shape %s', M.shape)
            raise ShapeError('BoundedOperator: __init__', 'matrix is not a non-empty square matrix',
                                'shape = %s' % (str(M.shape)))

        if not isinstance(self.kind, OperatorKind):
            object.__setattr__(self, 'kind', OperatorKind(self.kind))

        M.flags.writeable = False
        object.__setattr__(self, 'matrix', M)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def is_linear(self) -> bool:
        return self.kind is OperatorKind.LINEAR

    def __repr__(self) -> str:
        return 'BoundedOperator(kind=%s, dim=%d)' % (self.kind.value, self.dim)

    def __call__(self, x) -> np.ndarray:
        return apply(self, x)

    def __matmul__(self, other: 'BoundedOperator') -> 'BoundedOperator':
        return compose(self, other)

    def singular_values(self) -> np.ndarray:
        '''
        Singular values of M, descending (the same for both kinds).
        '''
        return scipy.linalg.svdvals(self.matrix)

    def condition_number(self) -> float:
        s = self.singular_values()
        if s[-1] == 0.0:
            return float('inf')
        return float(s[0]/s[-1])

    def is_invertible(self, tol=INVERTIBILITY_TOL) -> bool:
        return bool(self.singular_values()[-1] >= tol)


def linear(matrix) -> BoundedOperator:
    return BoundedOperator(OperatorKind.LINEAR, matrix)


def antilinear(matrix) -> BoundedOperator:
    return BoundedOperator(OperatorKind.ANTILINEAR, matrix)


def identity(n: int, kind=OperatorKind.LINEAR) -> BoundedOperator:
    '''
    Identity (linear) or complex conjugation (antilinear) on C^n.
    '''
    return BoundedOperator(kind, np.eye(n))


def scale(T: BoundedOperator, z: complex) -> BoundedOperator:
    '''
    The operator z T, x -> z (T x).
    '''
    return BoundedOperator(T.kind, complex(z) * T.matrix)


def inner(u, v) -> complex:
    '''
    Inner product <u, v> = sum u_i conj(v_i).
    '''
    return complex(np.vdot(v, u))


#* =============================================
#* Operator algebra

def apply(T: BoundedOperator, x) -> np.ndarray:
    '''
    Action of T on a vector (or on the columns of a matrix).

    Parameters
    ------------------
    T: BoundedOperator
        operator on C^n.

    x: array_like [n], or [n, k]
        complex vector(s).

    Returns
    ------------------
    y: ndarray
        M x (linear) or M conj(x) (antilinear).
    '''
    x = np.asarray(x, dtype=complex)

    if x.shape[0] != T.dim:
        logger.debug('apply: vector length %d, operator dim %d', x.shape[0], T.dim)
        raise DimensionError('apply', 'dimension mismatch', '%d != %d' % (x.shape[0], T.dim))

    if T.is_linear:
        return T.matrix @ x
    else:
        return T.matrix @ np.conj(x)


def adjoint(T: BoundedOperator) -> BoundedOperator:
    '''
    Adjoint T*, defined by <T x, y> = <x, T* y> (linear) and
    <T x, y> = conj(<x, T* y>) (antilinear).

    The linear adjoint is M^H; the antilinear adjoint is the plain transpose M^T.
    '''
    if T.is_linear:
        return BoundedOperator(OperatorKind.LINEAR, T.matrix.conj().T)
    else:
        return BoundedOperator(OperatorKind.ANTILINEAR, T.matrix.T)


def compose(T1: BoundedOperator, T2: BoundedOperator) -> BoundedOperator:
    '''
    Composition T1 o T2 (T2 acts first).

    The result is linear iff both factors have the same kind. Its matrix is
    M1 M2 when T1 is linear and M1 conj(M2) when T1 is antilinear.
    '''
    _check_same_dim(T1, T2, 'compose')

    if T1.kind is T2.kind:
        kind = OperatorKind.LINEAR
    else:
        kind = OperatorKind.ANTILINEAR

    if T1.is_linear:
        M = T1.matrix @ T2.matrix
    else:
        M = T1.matrix @ np.conj(T2.matrix)

    return BoundedOperator(kind, M)


def congruence(T: BoundedOperator, A: HermitianMatrix) -> HermitianMatrix:
    '''
    Congruence transformation A -> T A T*.

    Linear: M A M^H. Antilinear: M conj(A) M^H.
    A positive A gives a positive result.
    '''
    if T.dim != A.dim:
        logger.debug('congruence: operator dim %d, matrix dim %d', T.dim, A.dim)
        raise DimensionError('congruence', 'dimension mismatch', '%d != %d' % (T.dim, A.dim))

    M = T.matrix

    if T.is_linear:
        return HermitianMatrix(M @ A.entries @ M.conj().T)
    else:
        return HermitianMatrix(M @ np.conj(A.entries) @ M.conj().T)


def gram(T: BoundedOperator) -> HermitianMatrix:
    '''
    T T* = M M^H, i.e., `congruence(T, I)`.
    '''
    return HermitianMatrix(T.matrix @ T.matrix.conj().T)


def operator_norm(T: BoundedOperator) -> float:
    '''
    Largest singular value of M.
    '''
    return float(T.singular_values()[0])


def invert(T: BoundedOperator, tol=INVERTIBILITY_TOL) -> BoundedOperator:
    '''
    Inverse operator of the same kind, T^{-1}(T x) = x.

    Linear: M^{-1}. Antilinear: conj(M^{-1}).

    Raises
    ------------------
    SingularError
        the smallest singular value is below `tol`.
    '''
    smin = T.singular_values()[-1]

    if smin < tol:
        logger.debug('invert: smallest singular value %.3e', smin)
        raise SingularError('invert', 'operator is singular to tolerance',
                                'smallest singular value = %.6e' % (smin))

    Minv = scipy.linalg.inv(T.matrix)

    if T.is_linear:
        return BoundedOperator(OperatorKind.LINEAR, Minv)
    else:
        return BoundedOperator(OperatorKind.ANTILINEAR, np.conj(Minv))


def phase_equiv(T1: BoundedOperator, T2: BoundedOperator, tol=1e-9) -> bool:
    '''
    Whether T1 = z T2 for a unit scalar z, i.e., [T1] = [T2] in CGL(H)/S^1.

    The candidate z is read from the entry of M2 with the largest modulus
    (ties broken by the lowest row-major index) and normalized to |z| = 1.
    Operators of different kinds are never equivalent.
    '''
    if T1.kind is not T2.kind or T1.dim != T2.dim:
        return False

    M1, M2 = T1.matrix, T2.matrix
    scale_2 = np.linalg.norm(M2, 'fro')

    if scale_2 == 0.0:
        return bool(np.linalg.norm(M1, 'fro') == 0.0)

    # np.argmax returns the first maximum in row-major order
    idx = np.unravel_index(np.argmax(np.abs(M2)), M2.shape)
    ratio = M1[idx] / M2[idx]

    if ratio == 0.0:
        return False

    z = ratio / abs(ratio)

    return bool(np.linalg.norm(M1 - z*M2, 'fro') <= tol*scale_2)


def basis_oracle(T: BoundedOperator, A: HermitianMatrix) -> np.ndarray:
    '''
    The matrix of T A T*, assembled column by column from the action on
    the standard basis vectors. Used to validate `congruence` and `adjoint`.
    '''
    n = T.dim
    Ts = adjoint(T)
    out = np.zeros((n, n), dtype=complex)

    for j in range(n):
        e = np.zeros(n, dtype=complex)
        e[j] = 1.0
        out[:, j] = apply(T, A.entries @ apply(Ts, e))

    return out


def _check_same_dim(T1: BoundedOperator, T2: BoundedOperator, where: str) -> None:

    if T1.dim != T2.dim:
        logger.debug('%s: dimension mismatch %d != %d', where, T1.dim, T2.dim)
        raise DimensionError(where, 'dimension mismatch', '%d != %d' % (T1.dim, T2.dim))
