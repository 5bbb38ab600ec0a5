'''
Complex Hermitian matrices and the Loewner order:

-   `HermitianMatrix`: immutable complex self-adjoint matrix, the ambient element of S(H);
-   `SpectralDecomposition`: ascending eigenvalues and a unitary matrix of eigenvectors;
-   spectral primitives: `eigh`, `sqrt_psd`, `inv_sqrt_psd`, `inv_hermitian`;
-   order predicates: `is_psd`, `is_strictly_positive`, `loewner_leq`, `loewner_compare`.

Numeric contract
------------------
The operator identities are exact, the arithmetic is not. Every intermediate
operator is re-hermitianized, and the following constants fix the tolerances.

SPECTRAL_TOL: float
    base tolerance of spectral reconstructions, 1e-9.

PSD_CLAMP_TOL: float
    eigenvalues in [-PSD_CLAMP_TOL, 0) are round-off and get clamped to 0, 1e-10.

INVERTIBILITY_TOL: float
    smallest admissible absolute eigenvalue (or singular value) of an inverted matrix, 1e-10.

TOL_FACTOR: float
    safety factor of the `n * eps * ||A||` residual bounds of `SpectralDecomposition`.
'''
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Final, Callable, Tuple

import numpy as np
import scipy.linalg

from EffectOrder.errors import ShapeError, DimensionError, SpectralError, \
                                NotPositiveError, SingularError


logger = logging.getLogger(__name__)

SPECTRAL_TOL        : Final[float] = 1e-9
PSD_CLAMP_TOL       : Final[float] = 1e-10
INVERTIBILITY_TOL   : Final[float] = 1e-10
TOL_FACTOR          : Final[float] = 100.0
MACHINE_EPS         : Final[float] = float(np.finfo(float).eps)


class HermitianMatrix(object):
    '''
    Complex n x n self-adjoint matrix.

    The input is symmetrized on construction, i.e., the stored entries are
    (X + X^H)/2, and the array is read-only afterwards.

    Parameters
    ------------------
    entries: array_like [n, n]
        complex (or real) square matrix.

    Attributes
    ------------------
    entries: ndarray [n, n], complex
        read-only Hermitian entries.

    dim: int
        dimension n >= 1.
    '''
    __slots__ = ('_entries',)

    def __init__(self, entries) -> None:

        X = np.array(entries, dtype=complex)

        if X.ndim != 2 or X.shape[0] != X.shape[1] or X.shape[0] < 1:
            logger.debug('HermitianMatrix rejected shape %s', X.shape)
            raise ShapeError('HermitianMatrix: __init__', 'input is not a non-empty square matrix',
                                'shape = %s' % (str(X.shape)))

        X = 0.5 * (X + X.conj().T)
        X.flags.writeable = False
        self._entries = X

    @property
    def entries(self) -> np.ndarray:
        return self._entries

    @property
    def dim(self) -> int:
        return self._entries.shape[0]

    def __repr__(self) -> str:
        return 'HermitianMatrix(dim=%d)' % (self.dim)

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self._entries.copy()
        return self._entries.astype(dtype)

    def __add__(self, other: 'HermitianMatrix') -> 'HermitianMatrix':
        _check_same_dim(self, other, 'HermitianMatrix: __add__')
        return HermitianMatrix(self._entries + other._entries)

    def __sub__(self, other: 'HermitianMatrix') -> 'HermitianMatrix':
        _check_same_dim(self, other, 'HermitianMatrix: __sub__')
        return HermitianMatrix(self._entries - other._entries)

    def __neg__(self) -> 'HermitianMatrix':
        return HermitianMatrix(-self._entries)

    def __mul__(self, scalar: float) -> 'HermitianMatrix':
        return HermitianMatrix(float(scalar) * self._entries)

    __rmul__ = __mul__

    def frobenius(self) -> float:
        '''
        Frobenius norm.
        '''
        return float(np.linalg.norm(self._entries, 'fro'))

    def norm(self) -> float:
        '''
        Operator norm, i.e., the largest absolute eigenvalue.
        '''
        return float(np.max(np.abs(self.eigenvalues())))

    def eigenvalues(self) -> np.ndarray:
        '''
        Real eigenvalues in ascending order.
        '''
        return eigvalsh(self)

    def min_eigenvalue(self) -> float:
        return float(self.eigenvalues()[0])

    def max_eigenvalue(self) -> float:
        return float(self.eigenvalues()[-1])

    def allclose(self, other: 'HermitianMatrix', atol=1e-12) -> bool:
        '''
        Frobenius distance to `other` is at most `atol`.
        '''
        _check_same_dim(self, other, 'HermitianMatrix: allclose')
        return (self - other).frobenius() <= atol


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    '''
    Eigendecomposition A = U diag(eigenvalues) U^H of a Hermitian matrix.

    Attributes
    ------------------
    eigenvalues: ndarray [n]
        real eigenvalues, ascending.

    eigenvectors: ndarray [n, n]
        unitary matrix, the columns are eigenvectors.
    '''
    eigenvalues : np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self) -> int:
        return self.eigenvalues.shape[0]

    def map(self, func: Callable[[np.ndarray], np.ndarray]) -> HermitianMatrix:
        '''
        Functional calculus U diag(func(eigenvalues)) U^H.
        '''
        U = self.eigenvectors
        values = np.asarray(func(self.eigenvalues), dtype=float)
        return HermitianMatrix((U * values) @ U.conj().T)

    def reconstruct(self) -> HermitianMatrix:
        return self.map(lambda x: x)

    def residuals(self, A: HermitianMatrix) -> Tuple[float, float]:
        '''
        Reconstruction and unitarity residuals.

        Returns
        ------------------
        reconstruction: float
            ||U diag(eigenvalues) U^H - A||_F

        unitarity: float
            ||U^H U - I||_F
        '''
        U = self.eigenvectors
        rec = np.linalg.norm((U * self.eigenvalues) @ U.conj().T - A.entries, 'fro')
        uni = np.linalg.norm(U.conj().T @ U - np.eye(self.dim), 'fro')
        return float(rec), float(uni)

    def residual_bounds(self, A: HermitianMatrix) -> Tuple[float, float]:
        '''
        Admissible residuals ``n eps ||A||_F TOL_FACTOR`` and ``n eps TOL_FACTOR``.
        '''
        n = self.dim
        return n*MACHINE_EPS*A.frobenius()*TOL_FACTOR, n*MACHINE_EPS*TOL_FACTOR


class LoewnerRelation(Enum):
    '''
    Outcome of a tolerance-aware Loewner comparison A <= B.
    '''
    LEQ             = 'leq'
    NOT_LEQ         = 'not-leq'
    INDETERMINATE   = 'indeterminate'


#* =============================================
#* Construction

def hermitianize(X) -> HermitianMatrix:
    '''
    Return (X + X^H)/2.

    Parameters
    ------------------
    X: array_like [n, n], or HermitianMatrix
        complex square matrix.
    '''
    if isinstance(X, HermitianMatrix):
        return X
    return HermitianMatrix(X)


def identity(n: int) -> HermitianMatrix:
    return HermitianMatrix(np.eye(n))


def zeros(n: int) -> HermitianMatrix:
    return HermitianMatrix(np.zeros((n, n)))


def sandwich(C: HermitianMatrix, X: HermitianMatrix) -> HermitianMatrix:
    '''
    Hermitian product C X C.
    '''
    _check_same_dim(C, X, 'sandwich')
    return HermitianMatrix(C.entries @ X.entries @ C.entries)


#* =============================================
#* Spectral primitives

def eigvalsh(A: HermitianMatrix) -> np.ndarray:
    '''
    Ascending eigenvalues of a Hermitian matrix.
    '''
    try:
        return scipy.linalg.eigh(A.entries, eigvals_only=True)
    except (np.linalg.LinAlgError, ValueError) as e:
        logger.debug('eigvalsh failed: %s', e)
        raise SpectralError('eigvalsh', 'eigen-solver did not converge', str(e)) from e


def eigh(A: HermitianMatrix) -> SpectralDecomposition:
    '''
    Eigendecomposition of a Hermitian matrix.

    Returns
    ------------------
    decomposition: SpectralDecomposition
        eigenvalues ascending, eigenvectors unitary.

    Raises
    ------------------
    SpectralError
        the LAPACK solver did not converge, or the input is not finite.
    '''
    try:
        values, vectors = scipy.linalg.eigh(A.entries)
    except (np.linalg.LinAlgError, ValueError) as e:
        logger.debug('eigh failed: %s', e)
        raise SpectralError('eigh', 'eigen-solver did not converge', str(e)) from e

    return SpectralDecomposition(eigenvalues=values, eigenvectors=vectors)


def condition_number(A: HermitianMatrix) -> float:
    '''
    Ratio of the largest to the smallest absolute eigenvalue (inf if singular).
    '''
    a = np.abs(eigvalsh(A))
    if a.min() == 0.0:
        return float('inf')
    return float(a.max() / a.min())


def sqrt_psd(A: HermitianMatrix) -> HermitianMatrix:
    '''
    Positive square root of a positive semidefinite matrix.

    Eigenvalues in [-PSD_CLAMP_TOL, 0) are clamped to 0.

    Raises
    ------------------
    NotPositiveError
        an eigenvalue is below -PSD_CLAMP_TOL.
    '''
    dec = eigh(A)

    if dec.eigenvalues[0] < -PSD_CLAMP_TOL:
        logger.debug('sqrt_psd: min eigenvalue %.3e', dec.eigenvalues[0])
        raise NotPositiveError('sqrt_psd', 'input is not positive semidefinite',
                                'min eigenvalue = %.6e' % (dec.eigenvalues[0]))

    return dec.map(lambda x: np.sqrt(np.clip(x, 0.0, None)))


def inv_sqrt_psd(A: HermitianMatrix) -> HermitianMatrix:
    '''
    Inverse square root A^{-1/2} of a strictly positive matrix.

    Raises
    ------------------
    SingularError
        the smallest eigenvalue is below INVERTIBILITY_TOL.
    '''
    dec = eigh(A)

    if dec.eigenvalues[0] < INVERTIBILITY_TOL:
        logger.debug('inv_sqrt_psd: min eigenvalue %.3e', dec.eigenvalues[0])
        raise SingularError('inv_sqrt_psd', 'input is not strictly positive',
                                'min eigenvalue = %.6e' % (dec.eigenvalues[0]))

    return dec.map(lambda x: 1.0/np.sqrt(x))


def inv_hermitian(A: HermitianMatrix) -> HermitianMatrix:
    '''
    Inverse of an invertible Hermitian matrix.

    Invertibility is decided on the eigenvalues; the inverse itself is computed
    by LU factorization, so it does not share the eigen-solver with `eigh`.
    The result is re-hermitianized.

    Raises
    ------------------
    SingularError
        the smallest absolute eigenvalue is below INVERTIBILITY_TOL.
    '''
    a = np.abs(eigvalsh(A))

    if a.min() < INVERTIBILITY_TOL:
        logger.debug('inv_hermitian: min |eigenvalue| %.3e', a.min())
        raise SingularError('inv_hermitian', 'matrix is singular to tolerance',
                                'min |eigenvalue| = %.6e' % (a.min()))

    return HermitianMatrix(scipy.linalg.inv(A.entries))


#* =============================================
#* Loewner order

def is_psd(A: HermitianMatrix, tol=0.0) -> bool:
    '''
    True iff the smallest eigenvalue of A is at least -tol.
    '''
    return bool(eigvalsh(A)[0] >= -tol)


def is_strictly_positive(A: HermitianMatrix, tol=INVERTIBILITY_TOL) -> bool:
    '''
    True iff the smallest eigenvalue of A is at least +tol.
    '''
    return bool(eigvalsh(A)[0] >= tol)


def loewner_margin(A: HermitianMatrix, B: HermitianMatrix) -> float:
    '''
    Smallest eigenvalue of B - A; A <= B iff it is non-negative.
    '''
    _check_same_dim(A, B, 'loewner_margin')
    return float(eigvalsh(B - A)[0])


def loewner_leq(A: HermitianMatrix, B: HermitianMatrix, tol=0.0) -> bool:
    '''
    Loewner order A <= B, i.e., B - A is positive semidefinite at `tol`.

    Raises
    ------------------
    DimensionError
        A and B have different dimensions.
    '''
    return loewner_margin(A, B) >= -tol


def loewner_compare(A: HermitianMatrix, B: HermitianMatrix, tol: float) -> LoewnerRelation:
    '''
    Three-valued Loewner comparison.

    Returns
    ------------------
    relation: LoewnerRelation
        LEQ if min eig(B - A) >= tol, NOT_LEQ if it is <= -tol,
        INDETERMINATE inside the band (-tol, tol).
    '''
    m = loewner_margin(A, B)

    if m >= tol:
        return LoewnerRelation.LEQ
    elif m <= -tol:
        return LoewnerRelation.NOT_LEQ
    else:
        return LoewnerRelation.INDETERMINATE


def _check_same_dim(A, B, where: str) -> None:

    if A.dim != B.dim:
        logger.debug('%s: dimension mismatch %d != %d', where, A.dim, B.dim)
        raise DimensionError(where, 'dimension mismatch', '%d != %d' % (A.dim, B.dim))
