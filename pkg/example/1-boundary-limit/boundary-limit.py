'''
Extend the congruence form of an automorphism to a singular effect.

The congruence form (I + S (A^{-1} - I) S*)^{-1} needs A^{-1}. Along
A_n = (1 - 1/n) A + I/n it approaches the canonical value phi(A), and the
gap shrinks like 1/n; the Romberg extrapolant removes the first two terms
of that error.

Example
---------------
>>> python boundary-limit.py
'''
import os
import sys
import time

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..', '..')))

from EffectOrder import SamplerConfig, random_canonical, random_boundary_effect, \
                        apply_canonical, limit_trace, limit_apply
from EffectOrder.functions import load_parameters


if __name__ == '__main__':

    t0 = time.time()

    fname = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'default-parameters.json')
    cfg = SamplerConfig.from_dict(load_parameters(fname, 'Sampler'))

    for rank_deficiency in range(1, cfg.dim):

        phi = random_canonical(cfg, rank_deficiency)
        A = random_boundary_effect(cfg, rank_deficiency, rank_deficiency=rank_deficiency)

        trace = limit_trace(phi, A, n_max=2**14)

        print('>>> =============================================')
        print('>>> dim %d, rank deficiency %d, p = %.4f' % (cfg.dim, rank_deficiency, phi.p.p))
        print('>>> %8s %15s %15s' % ('n', 'gap', 'n * gap'))

        for n, g in zip(trace.ns, trace.gaps):
            print('>>> %8d %15.3E %15.3E' % (n, g, n*g))

        print('>>> extrapolated gap: %.3E' % (trace.extrapolated_gap))

        X = limit_apply(phi, A)
        D = apply_canonical(phi, A)
        print('>>> limit_apply vs direct: %.3E' % ((X.matrix - D.matrix).frobenius()))

    print('>>> =============================================')
    print('>>> Time [total]: %.2f s' % (time.time() - t0))
