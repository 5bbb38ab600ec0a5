'''
Property suites over random inputs, each checking one claim about the
Möbius group, the operator algebra or the effect-algebra automorphisms.

A suite returns a `VerificationReport`. Every check compares an error with
its own tolerance; `max_violation` is the worst error/tolerance ratio, so
a suite passes iff `max_violation <= 1`. The inputs of the worst check are
kept as a replayable witness (seed, stream, dim and the JSON of every input).

Comparisons that a floating-point margin cannot decide (e.g., an indefinite
difference whose eigenvalues are within 10 tol of zero) are counted as
indeterminate; inputs outside a precondition are counted as rejected.
Neither fails a suite.
'''
import json
import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, asdict, replace
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from EffectOrder.errors import ConfigError, ParameterError
from EffectOrder.hermitian import HermitianMatrix, identity, loewner_margin
from EffectOrder.operators import BoundedOperator, OperatorKind, apply, adjoint, compose, congruence, \
                                    basis_oracle, inner, invert, operator_norm, scale
from EffectOrder.moebius import MoebiusParam, DOMAIN_MARGIN, evaluate, inverse, from_positive_real, \
                                    eval_matrix_spectral, eval_matrix_resolvent
from EffectOrder.moebius import compose as compose_moebius
from EffectOrder.interval import Effect
from EffectOrder.automorphism import CanonicalParams, apply_canonical, apply_hidden_factorization, \
                                    apply_alt, apply_congruence_form, invert_apply, from_congruence, \
                                    to_congruence, to_alt, compose_automorphisms, invert_automorphism, \
                                    compose_canonical, limit_trace
from EffectOrder.sampling import SamplerConfig, make_rng, random_effect, random_ordered_pair, \
                                    random_non_ordered_pair, random_boundary_effect, random_invertible_operator, \
                                    random_canonical, random_congruence, random_vector, random_phase
from EffectOrder.functions import config_kwargs, matrix_to_json, operator_to_json, automorphism_to_json


logger = logging.getLogger(__name__)

DEFAULT_DIMS = (2, 3, 4, 5, 6)
INVERTIBLE_BOUND = 1e-9
INDETERMINATE_FACTOR = 10.0


def parse_dim_range(text: str) -> Tuple[int, ...]:
    '''
    "2-6" -> (2, 3, 4, 5, 6); "3" -> (3,); "2,4,8" -> (2, 4, 8).

    Raises
    ------------------
    ConfigError
        malformed range.
    '''
    try:
        if '-' in text:
            lo, hi = (int(v) for v in text.split('-'))
            dims = tuple(range(lo, hi+1))
        else:
            dims = tuple(int(v) for v in text.split(','))
    except ValueError as e:
        raise ConfigError('parse_dim_range', 'malformed dimension range', repr(text)) from e

    if len(dims) == 0 or min(dims) < 1:
        raise ConfigError('parse_dim_range', 'dimension range must be non-empty and positive', repr(text))

    return dims


@dataclass(frozen=True)
class VerifyConfig:
    '''
    Configuration of the verification suites.

    Parameters
    ------------------
    seed: int
        seed of all sample streams.

    dims: tuple of int, or None
        dimensions; None uses each suite's default.

    trials: int, or None
        overrides the trial count of every suite (per dimension and parameter).

    tol: float, or None
        overrides every tolerance of every suite.

    cond_max, kind_mix, interior_margin:
        passed on to `SamplerConfig`.

    k_max: int
        doublings n = 2^k, k <= k_max, of the boundary-extension suite.

    workers: int
        suites run on a thread pool of this size.
    '''
    seed            : int   = 0
    dims            : Optional[Tuple[int, ...]] = None
    trials          : Optional[int] = None
    tol             : Optional[float] = None
    cond_max        : float = 10.0
    kind_mix        : float = 0.5
    interior_margin : float = 0.05
    k_max           : int   = 14
    workers         : int   = 1

    def __post_init__(self) -> None:

        if isinstance(self.dims, str):
            object.__setattr__(self, 'dims', parse_dim_range(self.dims))
        elif self.dims is not None:
            object.__setattr__(self, 'dims', tuple(int(d) for d in self.dims))

        if self.trials is not None and int(self.trials) < 1:
            raise ConfigError('VerifyConfig', 'trials must be positive', 'trials = %r' % (self.trials))

        if self.tol is not None and not float(self.tol) > 0.0:
            raise ConfigError('VerifyConfig', 'tol must be positive', 'tol = %r' % (self.tol))

        if int(self.k_max) < 3:
            raise ConfigError('VerifyConfig', 'k_max must be at least 3', 'k_max = %r' % (self.k_max))

        if int(self.workers) < 1:
            raise ConfigError('VerifyConfig', 'workers must be positive', 'workers = %r' % (self.workers))

        #* validates the sampler fields
        self.sampler(2)

    @classmethod
    def from_dict(cls, d: dict) -> 'VerifyConfig':
        '''
        Build from a parameter dictionary, e.g., the "Verify" entry of `default-parameters.json`.
        '''
        return cls(**config_kwargs(cls, d))

    def sampler(self, dim: int) -> SamplerConfig:
        return SamplerConfig(seed=self.seed, dim=dim, cond_max=self.cond_max,
                                interior_margin=self.interior_margin, kind_mix=self.kind_mix)

    def dims_or(self, default: Tuple[int, ...]) -> Tuple[int, ...]:
        return default if self.dims is None else self.dims

    def trials_or(self, default: int) -> int:
        return default if self.trials is None else int(self.trials)


@dataclass
class VerificationReport:
    '''
    Outcome of one suite.

    Attributes
    ------------------
    suite: str
        suite name.

    claim: str
        the statement the suite checks.

    trials, failures, indeterminate, rejected: int
        counts; a trial fails if any of its checks fails.

    max_violation: float
        worst error/tolerance ratio over all checks.

    tolerance: dict
        tolerance of every check.

    worst_witness: dict, or None
        inputs of the worst check.

    config: dict
        echo of the configuration.

    wall_time: float
        seconds.

    metrics: dict
        largest raw error of every check (smallest value for lower bounds).
    '''
    suite           : str
    claim           : str
    trials          : int = 0
    failures        : int = 0
    indeterminate   : int = 0
    rejected        : int = 0
    max_violation   : float = 0.0
    tolerance       : Dict[str, float] = field(default_factory=dict)
    worst_witness   : Optional[dict] = None
    config          : dict = field(default_factory=dict)
    wall_time       : float = 0.0
    metrics         : Dict[str, float] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def merge(self, other: 'VerificationReport') -> 'VerificationReport':
        '''
        Combine two partial reports of the same suite (associative).
        '''
        if other.suite != self.suite:
            raise ConfigError('VerificationReport: merge', 'cannot merge different suites',
                                '%s != %s' % (self.suite, other.suite))

        worst = self if self.max_violation >= other.max_violation else other

        metrics = dict(self.metrics)
        for key, value in other.metrics.items():
            if key in metrics:
                if key in LOWER_BOUND_CHECKS:
                    metrics[key] = min(metrics[key], value)
                else:
                    metrics[key] = max(metrics[key], value)
            else:
                metrics[key] = value

        tolerance = dict(self.tolerance)
        tolerance.update(other.tolerance)

        return VerificationReport(
                    suite=self.suite, claim=self.claim,
                    trials=self.trials + other.trials,
                    failures=self.failures + other.failures,
                    indeterminate=self.indeterminate + other.indeterminate,
                    rejected=self.rejected + other.rejected,
                    max_violation=worst.max_violation,
                    tolerance=tolerance,
                    worst_witness=worst.worst_witness,
                    config=dict(self.config),
                    wall_time=self.wall_time + other.wall_time,
                    metrics=metrics)

    def to_dict(self, include_wall_time=True) -> dict:
        d = asdict(self)
        d['passed'] = self.passed
        if not include_wall_time:
            d.pop('wall_time')
        return d

    def to_json_line(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


#* Checks whose metric is a smallest value, not a largest error
LOWER_BOUND_CHECKS = ('invertible',)


class _Tally(object):
    '''
    Accumulates checks into a report.
    '''
    def __init__(self, suite: str, cfg: VerifyConfig) -> None:

        self.cfg = cfg
        self.report = VerificationReport(suite=suite, claim=SUITES[suite][1], config=asdict(cfg))
        self._failed = False
        self._t0 = time.perf_counter()

    def tol(self, name: str, default: float) -> float:
        value = default if self.cfg.tol is None else float(self.cfg.tol)
        self.report.tolerance[name] = value
        return value

    def begin(self) -> None:
        self.report.trials += 1
        self._failed = False

    def reject(self) -> None:
        self.report.rejected += 1

    def undecided(self) -> None:
        self.report.indeterminate += 1

    def _record(self, name: str, ratio: float, witness: Callable[[], dict]) -> bool:

        r = self.report

        if ratio > r.max_violation:
            r.max_violation = ratio
            r.worst_witness = dict(witness(), check=name)

        if ratio > 1.0:
            if not self._failed:
                r.failures += 1
                self._failed = True
            logger.debug('%s: check %s failed, violation ratio %.3e', r.suite, name, ratio)
            return False

        return True

    def check(self, name: str, error: float, tol: float, witness: Callable[[], dict]) -> bool:
        '''
        Pass iff error <= tol.
        '''
        error = float(error)
        self.report.metrics[name] = max(self.report.metrics.get(name, 0.0), error)
        return self._record(name, error/tol, witness)

    def check_lower(self, name: str, value: float, bound: float, witness: Callable[[], dict]) -> bool:
        '''
        Pass iff value >= bound > 0.
        '''
        value = float(value)
        self.report.metrics[name] = min(self.report.metrics.get(name, math.inf), value)
        ratio = bound/value if value > 0.0 else math.inf
        return self._record(name, ratio, witness)

    def require(self, name: str, ok: bool, witness: Callable[[], dict]) -> bool:
        return self._record(name, 0.0 if ok else math.inf, witness)

    def finish(self) -> VerificationReport:
        r = self.report
        r.wall_time = time.perf_counter() - self._t0
        logger.info('%s: %d trials, %d failures, %.2f s', r.suite, r.trials, r.failures, r.wall_time)
        return r


def _encode(value):

    if isinstance(value, (HermitianMatrix, Effect)):
        return matrix_to_json(value)
    elif isinstance(value, BoundedOperator):
        return operator_to_json(value)
    elif isinstance(value, MoebiusParam):
        return value.p
    elif isinstance(value, np.ndarray):
        return [[float(z.real), float(z.imag)] for z in np.asarray(value, dtype=complex).ravel()]
    elif isinstance(value, complex):
        return [value.real, value.imag]
    elif hasattr(value, 'form'):
        return automorphism_to_json(value)

    return value


def _witness(cfg: VerifyConfig, stream, dim: int, **inputs) -> Callable[[], dict]:
    '''
    Lazy witness: the inputs are serialized only when the check becomes the worst one.
    '''
    def build() -> dict:
        return {'seed': cfg.seed, 'stream': list(stream), 'dim': dim,
                'inputs': {key: _encode(value) for key, value in inputs.items()}}
    return build


#* =============================================
#* Suites

def suite_moebius_group(cfg: VerifyConfig) -> VerificationReport:
    '''
    f_p o f_q = f_{p+q-pq} on a grid of [0, 1], the inverse law, the
    isomorphism a -> f_{1-a} and associativity, for p, q in (-10, 1).

    Inputs too close to p = 1 are counted as rejected.
    '''
    tally = _Tally('moebius-group', cfg)
    sid = SUITE_NAMES.index('moebius-group')

    tol_c = tally.tol('composition', 1e-12)
    tol_i = tally.tol('inverse', 1e-14)
    tol_m = tally.tol('isomorphism', 1e-14)
    tol_a = tally.tol('associativity', 1e-13)

    n = cfg.trials_or(10000)
    rng = make_rng(SamplerConfig(seed=cfg.seed, dim=1), 'suite', (sid, 0))
    PQS = rng.uniform(-10.0, 1.0, (n, 3))
    AB = np.exp(rng.uniform(math.log(0.1), math.log(10.0), (n, 2)))
    grid = np.linspace(0.0, 1.0, 101)

    for k in range(n):

        try:
            p, q, s = (MoebiusParam(v) for v in PQS[k])
            r = compose_moebius(p, q)
        except ParameterError:
            tally.reject()
            continue

        tally.begin()
        a, b = AB[k]
        w = _witness(cfg, (sid, k), 1, p=p, q=q, s=s, a=float(a), b=float(b))

        err = np.max(np.abs(evaluate(p, evaluate(q, grid)) - evaluate(r, grid)))
        tally.check('composition', err, tol_c, w)

        tally.check('inverse', abs(compose_moebius(p, inverse(p)).p), tol_i, w)

        ab = from_positive_real(a*b).p
        err = abs(ab - compose_moebius(from_positive_real(a), from_positive_real(b)).p)/max(1.0, a*b)
        tally.check('isomorphism', err, tol_m, w)

        try:
            left  = compose_moebius(r, s).p
            right = compose_moebius(p, compose_moebius(q, s)).p
        except ParameterError:
            continue
        tally.check('associativity', abs(left - right)/max(1.0, abs(left)), tol_a, w)

    #* Parameters at or beyond 1 - 1e-12, directly or after composition
    for pv, qv in ADVERSARIAL_PAIRS:
        try:
            compose_moebius(MoebiusParam(pv), MoebiusParam(qv))
        except ParameterError:
            tally.reject()
            continue
        tally.begin()

    return tally.finish()


ADVERSARIAL_PAIRS = (
    (1.0 - 1e-13, 0.5),
    (0.5, 1.0 - 5e-13),
    (1.0, 0.0),
    (1.0 - 1e-7, 1.0 - 1e-7),
)

MONOTONE_P_VALUES = (-2.0, -0.5, 0.3, 0.7, 0.0)


def suite_operator_monotone(cfg: VerifyConfig) -> VerificationReport:
    '''
    A <= B implies f_p(A) <= f_p(B) on ordered pairs scaled to the domain of f_p;
    the spectral and resolvent routes agree; f_{p/(p-1)}(f_p(A)) = A on effects.
    '''
    tally = _Tally('operator-monotone', cfg)
    sid = SUITE_NAMES.index('operator-monotone')

    tol_o = tally.tol('monotone', 1e-8)
    tol_d = tally.tol('dual-route', 1e-9)
    tol_b = tally.tol('bijection', 1e-9)

    n = cfg.trials_or(200)

    for ip, pv in enumerate(MONOTONE_P_VALUES):

        p = MoebiusParam(pv)
        p_inv = inverse(p)
        factor = p.domain_upper(DOMAIN_MARGIN) if pv < 0.0 else 4.0

        for dim in cfg.dims_or(DEFAULT_DIMS):

            scfg = cfg.sampler(dim)

            for k in range(n):

                stream = (sid, ip, k)
                A, B = random_ordered_pair(scfg, stream)
                As, Bs = factor*A.matrix, factor*B.matrix

                tally.begin()
                w = _witness(cfg, stream, dim, p=p, A=As, B=Bs)

                fA = eval_matrix_spectral(p, As)
                fB = eval_matrix_spectral(p, Bs)
                tally.check('monotone', max(0.0, -loewner_margin(fA, fB)), tol_o, w)

                if pv != 0.0:
                    for X, fX in ((As, fA), (Bs, fB)):
                        dev = (eval_matrix_resolvent(p, X) - fX).frobenius()/(1.0 + X.frobenius())
                        tally.check('dual-route', dev, tol_d, w)

                back = eval_matrix_spectral(p_inv, eval_matrix_spectral(p, A.matrix, margin=0.0), margin=0.0)
                tally.check('bijection', (back - A.matrix).frobenius(), tol_b, w)

    return tally.finish()


AUTOMORPHISMS_PER_DIM = 5


def suite_automorphism_order(cfg: VerifyConfig) -> VerificationReport:
    '''
    phi_{p,T} and its inverse preserve the order, do not order non-comparable
    pairs, fix 0 and I, and map invertible effects to invertible effects.
    '''
    tally = _Tally('automorphism-order', cfg)
    sid = SUITE_NAMES.index('automorphism-order')

    tol_o = tally.tol('forward', 1e-8)
    tally.tol('reverse', tol_o)
    tol_n = tally.tol('indefinite', 1e-8)
    tol_e = tally.tol('extrema', 1e-10)
    tally.report.tolerance['invertible'] = INVERTIBLE_BOUND

    n = cfg.trials_or(200)

    for dim in cfg.dims_or(DEFAULT_DIMS):

        scfg = cfg.sampler(dim)
        I = identity(dim)

        for j in range(AUTOMORPHISMS_PER_DIM):

            c = random_canonical(scfg, (sid, j))

            tally.begin()
            w = _witness(cfg, (sid, j), dim, phi=c)
            tally.check('extrema', apply_canonical(c, Effect.zero(dim)).matrix.frobenius(), tol_e, w)
            tally.check('extrema', (apply_canonical(c, Effect.identity(dim)).matrix - I).frobenius(), tol_e, w)

            for k in range(n):

                stream = (sid, j, k)
                A, B = random_ordered_pair(scfg, stream)

                tally.begin()
                w = _witness(cfg, stream, dim, phi=c, A=A, B=B)

                fA, fB = apply_canonical(c, A), apply_canonical(c, B)
                tally.check('forward', max(0.0, -loewner_margin(fA.matrix, fB.matrix)), tol_o, w)

                gA, gB = invert_apply(c, A), invert_apply(c, B)
                tally.check('reverse', max(0.0, -loewner_margin(gA.matrix, gB.matrix)), tol_o, w)

                tally.check_lower('invertible', fA.matrix.min_eigenvalue(), INVERTIBLE_BOUND, w)

                if dim < 2:
                    continue

                C, D = random_non_ordered_pair(scfg, stream)
                values = (apply_canonical(c, D).matrix - apply_canonical(c, C).matrix).eigenvalues()
                gap = min(-values[0], values[-1])

                if gap >= INDETERMINATE_FACTOR*tol_n:
                    continue
                elif gap > -tol_n:
                    tally.undecided()
                else:
                    tally.check('indefinite', -gap, tol_n, _witness(cfg, stream, dim, phi=c, A=C, B=D))

    return tally.finish()


def suite_representation_equivalence(cfg: VerifyConfig) -> VerificationReport:
    '''
    The canonical, alternative, congruence and f_{1/2}-factorized evaluations
    agree; the conversion from congruence form does not depend on lambda and
    round-trips; ||T|| <= 1 converts with r = 1/2.
    '''
    tally = _Tally('representation-equivalence', cfg)
    sid = SUITE_NAMES.index('representation-equivalence')

    tol_f = tally.tol('forms', 1e-8)
    tol_h = tally.tol('hidden-factorization', 1e-9)
    tol_l = tally.tol('lambda', 1e-8)
    tol_r = tally.tol('round-trip', 1e-9)

    n = cfg.trials_or(100)

    for dim in cfg.dims_or((2, 3, 4, 5, 6, 7, 8)):

        scfg = cfg.sampler(dim)

        for k in range(n):

            stream = (sid, k)
            c = random_canonical(scfg, stream)
            A = random_effect(scfg, stream)

            tally.begin()
            w = _witness(cfg, stream, dim, phi=c, A=A)

            X0 = apply_canonical(c, A).matrix
            X1 = apply_alt(to_alt(c), A).matrix
            X2 = apply_congruence_form(to_congruence(c), A).matrix
            dev = max((X0 - X1).frobenius(), (X0 - X2).frobenius(), (X1 - X2).frobenius())
            tally.check('forms', dev, tol_f, w)

            tally.check('hidden-factorization', (apply_hidden_factorization(c, A).matrix - X0).frobenius(), tol_h, w)

            g = random_congruence(scfg, stream)
            s2 = operator_norm(g.S)**2
            Y0 = apply_congruence_form(g, A).matrix
            for lam in ('auto', s2 + 2.0, s2 + 10.0):
                Y = apply_canonical(from_congruence(g, lam), A).matrix
                tally.check('lambda', (Y - Y0).frobenius(), tol_l,
                                _witness(cfg, stream, dim, phi=g, A=A, lam=lam))

            S = to_congruence(from_congruence(g)).S
            tally.require('round-trip-kind', S.kind is g.S.kind, w)
            tally.check('round-trip', np.linalg.norm(S.matrix - g.S.matrix, 'fro'), tol_r,
                            _witness(cfg, stream, dim, phi=g))

            small = CanonicalParams(c.p, scale(c.T, 0.9/operator_norm(c.T)))
            a = to_alt(small)
            tally.require('half-branch', a.r == 0.5 and a.S is small.T, _witness(cfg, stream, dim, phi=small))

    return tally.finish()


#* Gap ratios gaps[k-1]/gaps[k] of the last RATE_RATIOS doublings must be 2 within RATE_TOL
RATE_TOL = 0.2
RATE_RATIOS = 2
RATE_MIN_K = 10


def suite_boundary_extension(cfg: VerifyConfig) -> VerificationReport:
    '''
    Along A_n = (1 - 1/n) A + I/n, n = 2^k, the congruence form approaches the
    canonical value at singular A monotonically and at first order, the gap
    halving with each doubling; the extrapolated limit agrees with it, and
    both agree on interior effects.
    '''
    tally = _Tally('boundary-extension', cfg)
    sid = SUITE_NAMES.index('boundary-extension')

    tol_m = tally.tol('monotone-gap', 1e-12)
    tol_x = tally.tol('extrapolated-gap', 1e-6)
    tol_i = tally.tol('interior-gap', 1e-9)
    tol_r = tally.tol('first-order-rate', RATE_TOL)

    n = cfg.trials_or(50)
    n_max = 2**int(cfg.k_max)

    for dim in cfg.dims_or(DEFAULT_DIMS):

        if dim < 2:
            continue

        scfg = cfg.sampler(dim)

        for k in range(n):

            stream = (sid, k)
            c = random_canonical(scfg, stream)
            A = random_boundary_effect(scfg, stream, rank_deficiency=1 + k % (dim - 1))

            tally.begin()
            w = _witness(cfg, stream, dim, phi=c, A=A)

            trace = limit_trace(c, A, n_max=n_max)
            increase = float(np.max(np.diff(trace.gaps))) if len(trace.gaps) > 1 else 0.0
            tally.check('monotone-gap', max(0.0, increase), tol_m, w)
            tally.check('extrapolated-gap', trace.extrapolated_gap, tol_x, w)

            if cfg.k_max >= RATE_MIN_K:
                ratios = trace.gaps[-RATE_RATIOS-1:-1]/trace.gaps[-RATE_RATIOS:]
                tally.check('first-order-rate', float(np.max(np.abs(ratios - 2.0))), tol_r, w)

            tally.report.metrics['final-raw-gap'] = max(tally.report.metrics.get('final-raw-gap', 0.0),
                                                        float(trace.gaps[-1]))

            B = random_effect(scfg, stream)
            dev = (apply_congruence_form(to_congruence(c), B).matrix - apply_canonical(c, B).matrix).frobenius()
            tally.check('interior-gap', dev, tol_i, _witness(cfg, stream, dim, phi=c, A=B))

    return tally.finish()


PHASES_PER_TRIAL = 8


def suite_phase_and_group(cfg: VerifyConfig) -> VerificationReport:
    '''
    phi_{p,zT} = phi_{p,T} for unit z; composition and inversion in
    congruence form match pointwise composition and inversion; the kind of a
    composed operator follows the kind algebra.
    '''
    tally = _Tally('phase-and-group', cfg)
    sid = SUITE_NAMES.index('phase-and-group')

    tol_p = tally.tol('phase', 1e-8)
    tol_c = tally.tol('compose', 1e-8)
    tol_i = tally.tol('inverse', 1e-8)

    n = cfg.trials_or(50)

    for dim in cfg.dims_or(DEFAULT_DIMS):

        scfg = cfg.sampler(dim)

        for k in range(n):

            stream = (sid, k)
            c1 = random_canonical(scfg, (sid, k, 0))
            c2 = random_canonical(scfg, (sid, k, 1))
            g1 = random_congruence(scfg, (sid, k, 0))
            g2 = random_congruence(scfg, (sid, k, 1))
            A = random_effect(scfg, stream)

            tally.begin()
            w = _witness(cfg, stream, dim, phi1=c1, phi2=c2, g1=g1, g2=g2, A=A)

            X = apply_canonical(c1, A).matrix
            for j in range(PHASES_PER_TRIAL):
                z = random_phase(scfg, (sid, k, j))
                Y = apply_canonical(CanonicalParams(c1.p, scale(c1.T, z)), A).matrix
                tally.check('phase', (X - Y).frobenius(), tol_p, w)

            g = compose_automorphisms(g1, g2)
            Y = apply_congruence_form(g1, apply_congruence_form(g2, A)).matrix
            tally.check('compose', (apply_congruence_form(g, A).matrix - Y).frobenius(), tol_c, w)
            tally.require('kind', g.S.is_linear == (g1.S.kind is g2.S.kind), w)

            Y = apply_canonical(c1, apply_canonical(c2, A)).matrix
            tally.check('compose', (apply_canonical(compose_canonical(c1, c2), A).matrix - Y).frobenius(), tol_c, w)

            e = compose_automorphisms(g1, invert_automorphism(g1))
            tally.check('inverse', (apply_congruence_form(e, A).matrix - A.matrix).frobenius(), tol_i, w)

            B = apply_congruence_form(g1, A)
            tally.check('inverse', (apply_congruence_form(invert_automorphism(g1), B).matrix - A.matrix).frobenius(),
                            tol_i, w)

            #* antilinear o antilinear is linear
            aa = compose(BoundedOperator(OperatorKind.ANTILINEAR, g1.S.matrix),
                         BoundedOperator(OperatorKind.ANTILINEAR, g2.S.matrix))
            tally.require('kind', aa.is_linear, w)

    return tally.finish()


def suite_antilinear_algebra(cfg: VerifyConfig) -> VerificationReport:
    '''
    The adjoint identity, the congruence against the basis-vector oracle,
    associativity of composition, positivity and phase invariance of the
    congruence, and the inverse.
    '''
    tally = _Tally('antilinear-algebra', cfg)
    sid = SUITE_NAMES.index('antilinear-algebra')

    tol_a = tally.tol('adjoint', 1e-12)
    tol_o = tally.tol('oracle', 1e-10)
    tol_s = tally.tol('associativity', 1e-12)
    tol_p = tally.tol('positivity', 1e-12)
    tol_z = tally.tol('phase', 1e-12)
    tol_i = tally.tol('inverse', 1e-12)

    n = cfg.trials_or(200)

    for dim in cfg.dims_or(DEFAULT_DIMS):

        scfg = cfg.sampler(dim)

        for k in range(n):

            stream = (sid, k)
            T = random_invertible_operator(scfg, (sid, k, 0))
            T2 = random_invertible_operator(scfg, (sid, k, 1))
            T3 = random_invertible_operator(scfg, (sid, k, 2))
            x = random_vector(scfg, (sid, k, 0))
            y = random_vector(scfg, (sid, k, 1))
            A = random_effect(scfg, stream)
            z = random_phase(scfg, stream)

            tally.begin()
            w = _witness(cfg, stream, dim, T=T, x=x, y=y, A=A)

            nM = operator_norm(T)
            nx, ny = np.linalg.norm(x), np.linalg.norm(y)

            lhs = inner(apply(T, x), y)
            rhs = inner(x, apply(adjoint(T), y))
            if not T.is_linear:
                rhs = rhs.conjugate()
            tally.check('adjoint', abs(lhs - rhs)/(nM*nx*ny), tol_a, w)

            C = congruence(T, A.matrix)
            tally.check('oracle', np.linalg.norm(C.entries - basis_oracle(T, A.matrix), 'fro'), tol_o, w)

            tally.check('positivity', max(0.0, -C.min_eigenvalue())/nM**2, tol_p, w)

            Cz = congruence(scale(T, z), A.matrix)
            tally.check('phase', (C - Cz).frobenius()/nM**2, tol_z, w)

            L = compose(compose(T, T2), T3)
            R = compose(T, compose(T2, T3))
            tally.require('associativity-kind', L.kind is R.kind, w)
            scale_3 = nM*operator_norm(T2)*operator_norm(T3)
            tally.check('associativity', np.linalg.norm(L.matrix - R.matrix, 'fro')/scale_3, tol_s, w)

            back = apply(invert(T), apply(T, x))
            tally.check('inverse', np.linalg.norm(back - x)/(nx*T.condition_number()), tol_i, w)

    return tally.finish()


#* Registry: name -> (suite, claim)
SUITES = {
    'moebius-group'             : (suite_moebius_group,
                                   'f_p o f_q = f_{p+q-pq}; f_p^{-1} = f_{p/(p-1)}; a -> f_{1-a} is an isomorphism'),
    'operator-monotone'         : (suite_operator_monotone,
                                   'every f_p is operator monotone on its domain'),
    'automorphism-order'        : (suite_automorphism_order,
                                   'A <= B iff phi(A) <= phi(B); phi(0) = 0, phi(I) = I; (0, I] is invariant'),
    'representation-equivalence': (suite_representation_equivalence,
                                   'canonical, alternative and congruence forms define the same map'),
    'boundary-extension'        : (suite_boundary_extension,
                                   'phi(A) = lim phi((1 - 1/n) A + I/n) on the boundary of [0, I]'),
    'phase-and-group'           : (suite_phase_and_group,
                                   'phi depends on [T] in CGL(H)/S^1; composition and inversion are a group'),
    'antilinear-algebra'        : (suite_antilinear_algebra,
                                   'adjoint, congruence and composition of conjugate-linear operators'),
}

SUITE_NAMES = list(SUITES.keys())


def run_suite(name: str, cfg: VerifyConfig) -> VerificationReport:
    '''
    Raises
    ------------------
    ConfigError
        unknown suite name; the message lists the valid names.
    '''
    if name not in SUITES:
        raise ConfigError('run_suite', 'unknown suite %r' % (name), 'valid suites: %s' % (', '.join(SUITE_NAMES)))

    logger.info('suite %s', name)
    return SUITES[name][0](cfg)


def run_all(cfg: VerifyConfig, names: Optional[List[str]] = None) -> Tuple[List[VerificationReport], int]:
    '''
    Run suites (all by default), on `cfg.workers` threads.

    Returns
    ------------------
    reports: list of VerificationReport
        in the order of `names`.

    status: int
        0 if every suite passed, 1 otherwise.
    '''
    names = SUITE_NAMES if names is None else list(names)

    for name in names:
        if name not in SUITES:
            raise ConfigError('run_all', 'unknown suite %r' % (name), 'valid suites: %s' % (', '.join(SUITE_NAMES)))

    if cfg.workers > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            reports = list(pool.map(lambda name: run_suite(name, cfg), names))
    else:
        reports = [run_suite(name, cfg) for name in names]

    status = 0 if all(r.passed for r in reports) else 1

    return reports, status


def format_table(reports: List[VerificationReport]) -> str:
    '''
    Human-readable summary, one line per suite.
    '''
    lines = ['%-28s %8s %8s %8s %8s %12s %9s  %s' % ('suite', 'trials', 'failures', 'indet.', 'rejected',
                                                    'max viol.', 'time [s]', 'status')]

    for r in reports:
        lines.append('%-28s %8d %8d %8d %8d %12.3e %9.2f  %s' % (r.suite, r.trials, r.failures, r.indeterminate,
                        r.rejected, r.max_violation, r.wall_time, 'PASS' if r.passed else 'FAIL'))

    return '\n'.join(lines)


def with_overrides(cfg: VerifyConfig, **kwargs) -> VerifyConfig:
    '''
    Copy of `cfg` with the non-None keyword arguments replaced.
    '''
    return replace(cfg, **{k: v for k, v in kwargs.items() if v is not None})
