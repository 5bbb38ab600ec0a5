'''
Command line: ``python -m EffectOrder <subcommand> ...``

    gen       random effects, ordered pairs, boundary effects, operators, automorphisms
    apply     apply an automorphism to an effect (direct formula, limit, or both)
    convert   convert between the canonical, alternative and congruence forms
    compose   compose two automorphisms (result in congruence form)
    invert    invert an automorphism (result in the input's form)
    verify    run the property suites

Exit codes: 0 success, 1 failed check (suite failure, non-converged limit,
direct/limit disagreement), 2 configuration or input error.
'''
import argparse
import logging
import os
import sys
from dataclasses import replace
from typing import List, Optional

from EffectOrder.errors import EffectOrderError, ConvergenceError, ConfigError
from EffectOrder.automorphism import CongruenceParams, apply_automorphism, as_canonical, as_congruence, \
                                    to_alt, from_congruence, \
                                    compose_automorphisms, invert_automorphism, limit_apply
from EffectOrder.sampling import SamplerConfig, random_effect, random_ordered_pair, random_boundary_effect, \
                                    random_invertible_operator, random_canonical, random_congruence
from EffectOrder.verify import VerifyConfig, SUITE_NAMES, run_all, format_table, parse_dim_range, with_overrides
from EffectOrder.functions import load_parameters, dump_json, read_automorphism, read_effect, matrix_to_json, \
                                    operator_to_json, automorphism_to_json, pair_to_json


logger = logging.getLogger(__name__)

SEED_ENV = 'EFFECT_ORDER_SEED'
GEN_KINDS = ('effect', 'ordered-pair', 'boundary-effect', 'operator', 'automorphism')
FORMS = ('canonical', 'alt', 'congruence')


def build_parser() -> argparse.ArgumentParser:

    parser = argparse.ArgumentParser(prog='EffectOrder',
                                     description='Order automorphisms of the effect algebra [0, I].')
    parser.add_argument('-v', '--verbose', action='store_true', help='debug logging')

    sub = parser.add_subparsers(dest='command', required=True)

    #* gen
    p = sub.add_parser('gen', help='generate random inputs')
    p.add_argument('kind', choices=GEN_KINDS)
    p.add_argument('--dim', type=int, default=None)
    p.add_argument('--seed', type=int, default=None)
    p.add_argument('--stream', type=int, default=0, help='stream index of the sample')
    p.add_argument('--cond-max', type=float, default=None)
    p.add_argument('--kind-mix', type=float, default=None)
    p.add_argument('--interior-margin', type=float, default=None)
    p.add_argument('--rank-deficiency', type=int, default=1)
    p.add_argument('--p', type=float, default=None, help='Möbius parameter of a generated automorphism')
    p.add_argument('--lambda', dest='lam', default=None,
                    help='build the automorphism from a random congruence S with this lambda (or "auto")')
    p.add_argument('--form', choices=FORMS, default='canonical')
    p.add_argument('--config', default=None, help='parameter file with a "Sampler" dictionary')
    p.add_argument('--out', default=None)

    #* apply
    p = sub.add_parser('apply', help='apply an automorphism to an effect')
    p.add_argument('automorphism')
    p.add_argument('effect')
    p.add_argument('--boundary-mode', choices=('direct', 'limit', 'both'), default='direct')
    p.add_argument('--tol', type=float, default=1e-6, help='limit convergence and direct/limit agreement')
    p.add_argument('--n-max', type=int, default=2**14)
    p.add_argument('--out', default=None)

    #* convert
    p = sub.add_parser('convert', help='convert an automorphism to another form')
    p.add_argument('automorphism')
    p.add_argument('--to', choices=FORMS, required=True)
    p.add_argument('--lambda', dest='lam', default='auto')
    p.add_argument('--out', default=None)

    #* compose
    p = sub.add_parser('compose', help='compose two automorphisms, phi_1 o phi_2')
    p.add_argument('first')
    p.add_argument('second')
    p.add_argument('--out', default=None)

    #* invert
    p = sub.add_parser('invert', help='invert an automorphism')
    p.add_argument('automorphism')
    p.add_argument('--lambda', dest='lam', default='auto')
    p.add_argument('--out', default=None)

    #* verify
    p = sub.add_parser('verify', help='run the property suites')
    p.add_argument('--suite', default='all', help='suite name or "all"; one of: %s' % (', '.join(SUITE_NAMES)))
    p.add_argument('--dim-range', default=None, help='e.g. "2-6"')
    p.add_argument('--trials', type=int, default=None)
    p.add_argument('--seed', type=int, default=None)
    p.add_argument('--tol', type=float, default=None)
    p.add_argument('--workers', type=int, default=None)
    p.add_argument('--config', default=None, help='parameter file with a "Verify" dictionary')
    p.add_argument('--json-out', default=None, help='JSON lines, one report per suite')

    return parser


def resolve_seed(flag: Optional[int], fallback=0) -> int:
    '''
    --seed, else the EFFECT_ORDER_SEED environment variable, else `fallback`.
    '''
    if flag is not None:
        return int(flag)

    env = os.environ.get(SEED_ENV)
    if env is not None:
        try:
            return int(env)
        except ValueError as e:
            raise ConfigError('resolve_seed', '%s is not an integer' % (SEED_ENV), repr(env)) from e

    return int(fallback)


def parse_lambda(text):

    if text is None or text == 'auto':
        return 'auto'

    try:
        return float(text)
    except ValueError as e:
        raise ConfigError('parse_lambda', 'lambda must be a number or "auto"', repr(text)) from e


def _emit(doc: dict, out: Optional[str]) -> None:

    text = dump_json(doc, out)

    if out is None:
        sys.stdout.write(text)


#* =============================================
#* Subcommands

def cmd_gen(args) -> int:

    base = load_parameters(args.config, 'Sampler') if args.config else {}
    cfg = SamplerConfig.from_dict(base)

    overrides = {'dim': args.dim, 'cond_max': args.cond_max, 'kind_mix': args.kind_mix,
                    'interior_margin': args.interior_margin}
    cfg = replace(cfg, seed=resolve_seed(args.seed, cfg.seed), **{k: v for k, v in overrides.items() if v is not None})

    stream = args.stream
    kind = args.kind

    if kind == 'effect':
        doc = matrix_to_json(random_effect(cfg, stream))

    elif kind == 'ordered-pair':
        doc = pair_to_json(*random_ordered_pair(cfg, stream))

    elif kind == 'boundary-effect':
        doc = matrix_to_json(random_boundary_effect(cfg, stream, args.rank_deficiency))

    elif kind == 'operator':
        doc = operator_to_json(random_invertible_operator(cfg, stream))

    else:
        if args.lam is not None and args.p is not None:
            raise ConfigError('gen automorphism', '--p and --lambda are exclusive',
                                'the lambda of a congruence construction fixes p = 1 - lambda')

        if args.lam is not None:
            g = random_congruence(cfg, stream)
            phi = g if args.form == 'congruence' else from_congruence(g, parse_lambda(args.lam))
        else:
            phi = random_canonical(cfg, stream, p=args.p)

        doc = automorphism_to_json(_to_form(phi, args.form))

    logger.info('gen %s: dim %d, seed %d, stream %d', kind, cfg.dim, cfg.seed, stream)
    _emit(doc, args.out)

    return 0


def _to_form(phi, form: str, lam='auto'):

    if form == 'congruence':
        return as_congruence(phi)

    c = as_canonical(phi, lam)

    if form == 'alt':
        return to_alt(c)

    return c


def cmd_apply(args) -> int:

    phi = read_automorphism(args.automorphism)
    A = read_effect(args.effect)
    mode = args.boundary_mode

    if mode == 'direct':
        _emit(matrix_to_json(apply_automorphism(phi, A)), args.out)
        return 0

    target = phi if isinstance(phi, CongruenceParams) else as_canonical(phi)
    X = limit_apply(target, A, n_max=args.n_max, convergence_tol=args.tol)

    if mode == 'limit':
        _emit(matrix_to_json(X), args.out)
        return 0

    D = apply_automorphism(as_canonical(phi), A)
    delta = (D.matrix - X.matrix).frobenius()
    logger.info('direct vs limit: Frobenius gap %.3e', delta)

    _emit({'effect': matrix_to_json(D), 'limit': matrix_to_json(X), 'delta': delta}, args.out)

    return 0 if delta <= args.tol else 1


def cmd_convert(args) -> int:

    phi = read_automorphism(args.automorphism)
    _emit(automorphism_to_json(_to_form(phi, args.to, parse_lambda(args.lam))), args.out)
    return 0


def cmd_compose(args) -> int:

    phi1 = read_automorphism(args.first)
    phi2 = read_automorphism(args.second)

    g = compose_automorphisms(as_congruence(phi1), as_congruence(phi2))

    doc = automorphism_to_json(g)
    doc['composed_from'] = [phi1.form, phi2.form]

    _emit(doc, args.out)
    return 0


def cmd_invert(args) -> int:

    phi = read_automorphism(args.automorphism)
    g = invert_automorphism(as_congruence(phi))

    _emit(automorphism_to_json(_to_form(g, phi.form, parse_lambda(args.lam))), args.out)
    return 0


def cmd_verify(args) -> int:

    base = load_parameters(args.config, 'Verify') if args.config else {}
    cfg = VerifyConfig.from_dict(base)

    dims = parse_dim_range(args.dim_range) if args.dim_range else None
    cfg = with_overrides(cfg, dims=dims, trials=args.trials, tol=args.tol, workers=args.workers,
                            seed=resolve_seed(args.seed, cfg.seed))

    if args.suite == 'all':
        names = None
    elif args.suite in SUITE_NAMES:
        names = [args.suite]
    else:
        raise ConfigError('verify', 'unknown suite %r' % (args.suite), 'valid suites: %s' % (', '.join(SUITE_NAMES)))

    reports, status = run_all(cfg, names)

    print(format_table(reports))

    if args.json_out:
        with open(args.json_out, 'w') as f:
            for r in reports:
                f.write(r.to_json_line() + '\n')

    return status


COMMANDS = {
    'gen'       : cmd_gen,
    'apply'     : cmd_apply,
    'convert'   : cmd_convert,
    'compose'   : cmd_compose,
    'invert'    : cmd_invert,
    'verify'    : cmd_verify,
}


def main(argv: Optional[List[str]] = None) -> int:

    args = build_parser().parse_args(argv)

    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format='>>> %(levelname)s %(name)s: %(message)s')

    try:
        return COMMANDS[args.command](args)

    except ConvergenceError as e:
        print(str(e), file=sys.stderr)
        return 1

    except EffectOrderError as e:
        print(str(e), file=sys.stderr)
        return 2
