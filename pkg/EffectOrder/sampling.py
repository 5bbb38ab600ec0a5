'''
Seeded random generation of effects, ordered pairs, boundary effects,
invertible (anti)linear operators and automorphism parameters.

Every sample is a pure function of (config, stream): the generator is a
Philox bit generator keyed by ``SeedSequence(seed, spawn_key=(tag, *stream))``,
so samples at different stream indices are independent and can be drawn
in any order, or from several threads.
'''
import logging
import math
from dataclasses import dataclass, replace
from typing import Tuple, Union

import numpy as np

from EffectOrder.errors import ConfigError, ParameterError
from EffectOrder.hermitian import HermitianMatrix
from EffectOrder.operators import BoundedOperator, OperatorKind
from EffectOrder.moebius import MoebiusParam
from EffectOrder.interval import Effect
from EffectOrder.automorphism import CanonicalParams, CongruenceParams
from EffectOrder.functions import config_kwargs


logger = logging.getLogger(__name__)

StreamIndex = Union[int, Tuple[int, ...]]

#* Seeds are unsigned 64-bit integers
SEED_BOUND = 2**64

#* Independent sub-streams per kind of sample
STREAM_TAGS = {
    'effect'        : 1,
    'ordered-pair'  : 2,
    'boundary'      : 3,
    'operator'      : 4,
    'moebius'       : 5,
    'canonical'     : 6,
    'congruence'    : 7,
    'non-ordered'   : 8,
    'vector'        : 9,
    'phase'         : 10,
    'suite'         : 11,
}


@dataclass(frozen=True)
class SamplerConfig:
    '''
    Configuration of the samplers.

    Parameters
    ------------------
    seed: int
        seed, 0 <= seed < 2^64.

    dim: int
        dimension n >= 1.

    cond_max: float
        largest condition number of sampled operators, >= 1.

    interior_margin: float
        spectra of effects are drawn from [interior_margin, 1 - interior_margin], in [0, 1/2).

    kind_mix: float
        probability that a sampled operator is antilinear.

    p_range: (float, float)
        negative Möbius parameters are drawn uniformly from this interval.
    '''
    seed            : int   = 0
    dim             : int   = 2
    cond_max        : float = 10.0
    interior_margin : float = 0.05
    kind_mix        : float = 0.5
    p_range         : Tuple[float, float] = (-4.0, -0.25)

    def __post_init__(self) -> None:

        object.__setattr__(self, 'p_range', tuple(float(v) for v in self.p_range))

        if not 0 <= int(self.seed) < SEED_BOUND:
            raise ConfigError('SamplerConfig', 'seed must be an unsigned 64-bit integer', 'seed = %r' % (self.seed))

        if int(self.dim) < 1:
            raise ConfigError('SamplerConfig', 'dim must be at least 1', 'dim = %r' % (self.dim))

        if not self.cond_max >= 1.0:
            raise ConfigError('SamplerConfig', 'cond_max must be at least 1', 'cond_max = %r' % (self.cond_max))

        if not 0.0 <= self.interior_margin < 0.5:
            raise ConfigError('SamplerConfig', 'interior_margin must lie in [0, 1/2)',
                                'interior_margin = %r' % (self.interior_margin))

        if not 0.0 <= self.kind_mix <= 1.0:
            raise ConfigError('SamplerConfig', 'kind_mix must be a probability', 'kind_mix = %r' % (self.kind_mix))

        low, high = self.p_range
        if not low < high < 0.0:
            raise ConfigError('SamplerConfig', 'p_range must be an interval of negative numbers',
                                'p_range = %r' % (self.p_range,))

    @classmethod
    def from_dict(cls, d: dict) -> 'SamplerConfig':
        '''
        Build from a parameter dictionary, e.g., the "Sampler" entry of
        `default-parameters.json`. Dashes and underscores in keys are
        interchangeable; "DictName" is ignored.

        Raises
        ------------------
        ConfigError
            unknown key.
        '''
        return cls(**config_kwargs(cls, d))

    def with_dim(self, dim: int) -> 'SamplerConfig':
        return replace(self, dim=int(dim))


def make_rng(cfg: SamplerConfig, tag: str, stream: StreamIndex = 0) -> np.random.Generator:
    '''
    Generator of the sub-stream (seed, tag, stream).
    '''
    if isinstance(stream, (int, np.integer)):
        stream = (int(stream),)

    key = (STREAM_TAGS[tag],) + tuple(int(s) for s in stream)
    ss = np.random.SeedSequence(entropy=int(cfg.seed), spawn_key=key)

    return np.random.Generator(np.random.Philox(ss))


#* =============================================
#* Primitives on a generator

def random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    '''
    Haar-distributed unitary matrix: QR of a complex Gaussian matrix with the
    phases of diag(R) moved into Q.
    '''
    Z = (rng.standard_normal((n, n)) + 1j*rng.standard_normal((n, n)))/math.sqrt(2.0)
    Q, R = np.linalg.qr(Z)
    d = np.diag(R)
    d = np.where(np.abs(d) > 0.0, d/np.abs(d), 1.0)

    return Q * d


def _spectrum_matrix(rng: np.random.Generator, values: np.ndarray) -> HermitianMatrix:

    U = random_unitary(rng, values.shape[0])
    return HermitianMatrix((U * values) @ U.conj().T)


def _draw_effect(rng: np.random.Generator, n: int, margin: float) -> Effect:

    values = rng.uniform(margin, 1.0 - margin, n)
    return Effect(_spectrum_matrix(rng, values))


def _draw_psd_direction(rng: np.random.Generator, n: int) -> np.ndarray:
    '''
    Random PSD matrix with operator norm 1.
    '''
    G = rng.standard_normal((n, n)) + 1j*rng.standard_normal((n, n))
    P = G @ G.conj().T
    P = 0.5*(P + P.conj().T)

    return P / np.linalg.eigvalsh(P)[-1]


def _draw_operator(rng: np.random.Generator, cfg: SamplerConfig) -> BoundedOperator:

    n = cfg.dim
    half_log = 0.5*math.log(cfg.cond_max)
    s = np.exp(rng.uniform(-half_log, half_log, n))

    U = random_unitary(rng, n)
    V = random_unitary(rng, n)
    M = (U * s) @ V.conj().T

    if rng.random() < cfg.kind_mix:
        kind = OperatorKind.ANTILINEAR
    else:
        kind = OperatorKind.LINEAR

    return BoundedOperator(kind, M)


def _draw_moebius(rng: np.random.Generator, cfg: SamplerConfig) -> MoebiusParam:

    low, high = cfg.p_range
    return MoebiusParam(rng.uniform(low, high))


#* =============================================
#* Samplers

def random_effect(cfg: SamplerConfig, stream: StreamIndex = 0) -> Effect:
    '''
    Effect with eigenvalues uniform in [interior_margin, 1 - interior_margin],
    conjugated by a Haar unitary.
    '''
    rng = make_rng(cfg, 'effect', stream)
    return _draw_effect(rng, cfg.dim, cfg.interior_margin)


def random_ordered_pair(cfg: SamplerConfig, stream: StreamIndex = 0) -> Tuple[Effect, Effect]:
    '''
    Effects A <= B.

    B = A + s P with P a random PSD matrix of norm 1 and
    s uniform in [0, 1 - interior_margin - max eig(A)], so max eig(B) <= 1 - interior_margin.
    '''
    rng = make_rng(cfg, 'ordered-pair', stream)
    A = _draw_effect(rng, cfg.dim, cfg.interior_margin)
    P = _draw_psd_direction(rng, cfg.dim)

    room = max(0.0, 1.0 - cfg.interior_margin - A.matrix.max_eigenvalue())
    s = rng.uniform(0.0, 1.0) * room

    B = Effect(HermitianMatrix(A.entries + s*P))

    return A, B


def random_non_ordered_pair(cfg: SamplerConfig, stream: StreamIndex = 0, margin=None) -> Tuple[Effect, Effect]:
    '''
    Effects A, B with B - A indefinite, i.e., neither A <= B nor B <= A.

    B = A + s (u u* - v v*) with orthonormal u, v and 0 < s <= margin, where the
    spectrum of A is drawn from [margin, 1 - margin]; B - A has eigenvalues s, -s
    and zeros.

    Parameters
    ------------------
    margin: float, or None
        defaults to max(interior_margin, 0.1).
    '''
    if cfg.dim < 2:
        raise ParameterError('random_non_ordered_pair', 'needs dim >= 2', 'dim = %d' % (cfg.dim))

    if margin is None:
        margin = max(cfg.interior_margin, 0.1)

    rng = make_rng(cfg, 'non-ordered', stream)
    A = _draw_effect(rng, cfg.dim, margin)

    W = random_unitary(rng, cfg.dim)
    u, v = W[:, 0], W[:, 1]
    s = margin * rng.uniform(0.5, 1.0)

    D = s*(np.outer(u, u.conj()) - np.outer(v, v.conj()))
    B = Effect(HermitianMatrix(A.entries + D))

    return A, B


def random_boundary_effect(cfg: SamplerConfig, stream: StreamIndex = 0, rank_deficiency=1) -> Effect:
    '''
    Singular effect with exactly `rank_deficiency` zero eigenvalues before the
    unitary conjugation; the others lie in [interior_margin, 1 - interior_margin].

    Raises
    ------------------
    ParameterError
        rank_deficiency < 1 or rank_deficiency >= dim.
    '''
    n = cfg.dim
    k = int(rank_deficiency)

    if not 1 <= k < n:
        logger.debug('random_boundary_effect: rank_deficiency %d, dim %d', k, n)
        raise ParameterError('random_boundary_effect', 'rank_deficiency must lie in [1, dim)',
                                'rank_deficiency = %d, dim = %d' % (k, n))

    rng = make_rng(cfg, 'boundary', stream)
    values = np.zeros(n)
    values[k:] = rng.uniform(cfg.interior_margin, 1.0 - cfg.interior_margin, n - k)

    return Effect(_spectrum_matrix(rng, values))


def random_invertible_operator(cfg: SamplerConfig, stream: StreamIndex = 0) -> BoundedOperator:
    '''
    Operator U diag(s) V^H with singular values s log-uniform in
    [1/sqrt(cond_max), sqrt(cond_max)]; antilinear with probability kind_mix.
    '''
    rng = make_rng(cfg, 'operator', stream)
    return _draw_operator(rng, cfg)


def random_moebius_param(cfg: SamplerConfig, stream: StreamIndex = 0) -> MoebiusParam:
    '''
    Negative Möbius parameter uniform in p_range.
    '''
    rng = make_rng(cfg, 'moebius', stream)
    return _draw_moebius(rng, cfg)


def random_canonical(cfg: SamplerConfig, stream: StreamIndex = 0, p=None) -> CanonicalParams:
    '''
    Random canonical parameters (p, T); `p` overrides the sampled parameter.
    '''
    rng = make_rng(cfg, 'canonical', stream)
    q = _draw_moebius(rng, cfg)
    T = _draw_operator(rng, cfg)

    return CanonicalParams(q if p is None else p, T)


def random_congruence(cfg: SamplerConfig, stream: StreamIndex = 0) -> CongruenceParams:
    rng = make_rng(cfg, 'congruence', stream)
    return CongruenceParams(_draw_operator(rng, cfg))


def random_vector(cfg: SamplerConfig, stream: StreamIndex = 0) -> np.ndarray:
    '''
    Complex Gaussian vector of length dim.
    '''
    rng = make_rng(cfg, 'vector', stream)
    return rng.standard_normal(cfg.dim) + 1j*rng.standard_normal(cfg.dim)


def random_phase(cfg: SamplerConfig, stream: StreamIndex = 0) -> complex:
    '''
    Unit complex number, uniform on the circle.
    '''
    rng = make_rng(cfg, 'phase', stream)
    return complex(np.exp(1j*rng.uniform(0.0, 2.0*math.pi)))
