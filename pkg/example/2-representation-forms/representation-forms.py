'''
One automorphism in its three parameterizations.

A random congruence parameter S is converted to canonical parameters for
several admissible lambda, to the alternative form, and back; all of them
are applied to the same effects. The composition with the inverse is
applied as well and should give back the input.

The JSON files written here can be fed to the command line, e.g.,

>>> python representation-forms.py
>>> python -m EffectOrder apply phi-canonical.json effect-0.json --boundary-mode direct
'''
import os
import sys

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..', '..')))

from EffectOrder import SamplerConfig, random_congruence, random_effect, operator_norm, \
                        from_congruence, to_congruence, to_alt, apply_automorphism, \
                        compose_automorphisms, invert_automorphism, OperatorKind
from EffectOrder.functions import dump_json, automorphism_to_json, matrix_to_json


N_EFFECT = 5


if __name__ == '__main__':

    for kind_mix in [0.0, 1.0]:

        cfg = SamplerConfig(seed=7, dim=3, kind_mix=kind_mix)
        g = random_congruence(cfg)
        s2 = operator_norm(g.S)**2

        forms = {'congruence': g}
        for lam in [s2 + 0.5, s2 + 5.0, 10.0*s2]:
            if lam > 1.0:
                forms['canonical, lambda = %.2f' % (lam)] = from_congruence(g, lam)

        c = from_congruence(g)
        forms['alt'] = to_alt(c)
        forms['congruence, round trip'] = to_congruence(c)

        print('>>> =============================================')
        print('>>> S is %s, ||S||^2 = %.4f' % ('linear' if g.S.kind is OperatorKind.LINEAR else 'antilinear', s2))

        effects = [random_effect(cfg, k) for k in range(N_EFFECT)]
        reference = [apply_automorphism(g, A) for A in effects]

        for name, phi in forms.items():
            dev = max((apply_automorphism(phi, A).matrix - X.matrix).frobenius()
                        for A, X in zip(effects, reference))
            print('>>> %-30s max deviation %.3E' % (name, dev))

        e = compose_automorphisms(g, invert_automorphism(g))
        dev = max((apply_automorphism(e, A).matrix - A.matrix).frobenius() for A in effects)
        print('>>> %-30s max deviation %.3E' % ('phi o phi^{-1} vs identity', dev))

        if kind_mix == 0.0:
            dump_json(automorphism_to_json(c), 'phi-canonical.json')
            dump_json(automorphism_to_json(forms['alt']), 'phi-alt.json')
            dump_json(automorphism_to_json(g), 'phi-congruence.json')
            for k, A in enumerate(effects):
                dump_json(matrix_to_json(A), 'effect-%d.json' % (k))

    print('>>> =============================================')
