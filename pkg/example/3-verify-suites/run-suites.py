'''
Run the property suites with the parameters in `default-parameters.json`
and keep one JSON line per suite in `verify-report.jsonl`.

>>> python run-suites.py
>>> python run-suites.py boundary-extension automorphism-order

The same run from the command line:

>>> python -m EffectOrder verify --config default-parameters.json --json-out verify-report.jsonl
'''
import os
import sys
import time
import logging

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..', '..')))

from EffectOrder import VerifyConfig, run_all, SUITE_NAMES
from EffectOrder.functions import load_parameters
from EffectOrder.verify import format_table


if __name__ == '__main__':

    logging.basicConfig(level=logging.INFO, format='>>> %(levelname)s %(name)s: %(message)s')

    t0 = time.time()

    fname = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'default-parameters.json')
    cfg = VerifyConfig.from_dict(load_parameters(fname, 'Verify'))

    names = sys.argv[1:] if len(sys.argv) > 1 else SUITE_NAMES

    reports, status = run_all(cfg, names)

    print(format_table(reports))

    with open('verify-report.jsonl', 'w') as f:
        for r in reports:
            f.write(r.to_json_line() + '\n')

    for r in reports:
        if not r.passed:
            print('>>> %s failed, worst check: %s' % (r.suite, r.worst_witness['check']))

    print('>>> =============================================')
    print('>>> Time [total]: %.2f min' % ((time.time() - t0)/60.0))
    print('>>> =============================================')

    sys.exit(status)
