'''
Parameter files and the JSON interchange format.

Matrix::

    {"dim": n, "entries": [[[re, im], ...], ...]}

Operator::

    {"kind": "linear" | "antilinear", "matrix": <matrix>}

Automorphism::

    {"form": "canonical",  "p": p, "operator": <operator>}
    {"form": "alt",        "p": p, "r": r, "operator": <operator>}
    {"form": "congruence", "operator": <operator>}

Ordered pair::

    {"A": <matrix>, "B": <matrix>}

Floats are written with `repr` precision, so load -> save -> load is idempotent.
'''
import os
import json
import logging
from dataclasses import fields
from typing import Any

import numpy as np

from EffectOrder.errors import FormatError, ConfigError
from EffectOrder.hermitian import HermitianMatrix
from EffectOrder.operators import BoundedOperator, OperatorKind
from EffectOrder.interval import Effect
from EffectOrder.automorphism import CanonicalParams, AltParams, CongruenceParams, AutomorphismForm


logger = logging.getLogger(__name__)

FORMS = ('canonical', 'alt', 'congruence')


def load_parameters(json_name: str, dict_name='Sampler') -> dict:
    '''
    Load dictionaries from .json file.

    Parameters
    -----------------
    json_name: str
        json file name, containing a list of dictionaries

    dict_name: str
        dictionary name.

        - "Sampler": parameters of `SamplerConfig`.
        - "Verify": parameters of `VerifyConfig`.

    Returns
    -----------------
    dictionary: dict
        parameter dictionary

    Raises
    -----------------
    ConfigError
        the file holds no dictionary with this "DictName".
    '''
    dicts = load_json(json_name)

    if not isinstance(dicts, list):
        raise ConfigError('load_parameters', 'parameter file must contain a list of dictionaries', json_name)

    dictionary = None

    for d in dicts:
        if isinstance(d, dict) and dict_name == d.get('DictName'):
            dictionary = d

    if dictionary is None:
        raise ConfigError('load_parameters', 'There is not a dictionary with DictName = %s' % (dict_name), json_name)

    return dictionary


def config_kwargs(cls, d: dict) -> dict:
    '''
    Keyword arguments of the dataclass `cls` from a parameter dictionary.

    Dashes and underscores in keys are interchangeable, so CLI flag names
    can be used in parameter files; "DictName" is ignored.

    Raises
    -----------------
    ConfigError
        unknown key.
    '''
    names = {f.name for f in fields(cls)}
    kwargs = {}

    for key, value in d.items():

        if key == 'DictName':
            continue

        name = key.replace('-', '_')

        if name not in names:
            logger.debug('%s: unknown key %r', cls.__name__, key)
            raise ConfigError(cls.__name__, 'unknown parameter %r' % (key),
                                'valid parameters: %s' % (', '.join(sorted(names))))

        kwargs[name] = value

    return kwargs


#* =============================================
#* Files

def load_json(path: str) -> Any:
    '''
    Read a JSON file.

    Raises
    ------------------
    FormatError
        the file does not exist or is not valid JSON; the message carries line and column.
    '''
    if not os.path.isfile(path):
        raise FormatError('load_json', 'file not found', path)

    with open(path, 'r') as f:
        text = f.read()

    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        logger.debug('load_json: %s: %s', path, e)
        raise FormatError('load_json', 'malformed JSON in %s' % (path),
                            'line %d, column %d: %s' % (e.lineno, e.colno, e.msg)) from e


def dump_json(obj: Any, path=None) -> str:
    '''
    Serialize `obj` with a stable key order; write it to `path` if given.
    '''
    text = json.dumps(obj, indent=2, sort_keys=True) + '\n'

    if path is not None:
        with open(path, 'w') as f:
            f.write(text)

    return text


#* =============================================
#* Codec

def _fail(loc: str, what: str) -> FormatError:
    logger.debug('decode failed at %s: %s', loc, what)
    return FormatError('decode', what, 'at %s' % (loc))


def _require(doc: dict, key: str, loc: str) -> Any:

    if not isinstance(doc, dict):
        raise _fail(loc, 'expected an object')

    if key not in doc:
        raise _fail(loc, 'missing key "%s"' % (key))

    return doc[key]


def _number(x, loc: str) -> float:

    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise _fail(loc, 'expected a number')

    return float(x)


def matrix_to_json(A) -> dict:
    '''
    Complex matrix (HermitianMatrix, Effect or ndarray) to the JSON layout.
    '''
    if isinstance(A, (HermitianMatrix, Effect)):
        M = A.entries
    else:
        M = np.asarray(A, dtype=complex)

    entries = [[[float(z.real), float(z.imag)] for z in row] for row in M]

    return {'dim': int(M.shape[0]), 'entries': entries}


def array_from_json(doc: dict, loc='$') -> np.ndarray:
    '''
    The complex square array of a matrix document.
    '''
    dim = _require(doc, 'dim', loc)
    rows = _require(doc, 'entries', loc)

    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise _fail(loc + '.dim', 'expected a positive integer')

    if not isinstance(rows, list) or len(rows) != dim:
        raise _fail(loc + '.entries', 'expected %d rows' % (dim))

    M = np.empty((dim, dim), dtype=complex)

    for i, row in enumerate(rows):

        if not isinstance(row, list) or len(row) != dim:
            raise _fail('%s.entries[%d]' % (loc, i), 'expected %d entries' % (dim))

        for j, z in enumerate(row):

            where = '%s.entries[%d][%d]' % (loc, i, j)

            if not isinstance(z, list) or len(z) != 2:
                raise _fail(where, 'expected a pair [re, im]')

            M[i, j] = complex(_number(z[0], where), _number(z[1], where))

    return M


def matrix_from_json(doc: dict, loc='$') -> HermitianMatrix:
    return HermitianMatrix(array_from_json(doc, loc))


def effect_from_json(doc: dict, loc='$') -> Effect:
    '''
    Raises
    ------------------
    FormatError
        malformed document.

    EffectMembershipError
        the matrix is not in [0, I].
    '''
    return Effect(matrix_from_json(doc, loc))


def operator_to_json(T: BoundedOperator) -> dict:
    return {'kind': T.kind.value, 'matrix': matrix_to_json(T.matrix)}


def operator_from_json(doc: dict, loc='$') -> BoundedOperator:

    kind = _require(doc, 'kind', loc)
    kinds = [k.value for k in OperatorKind]

    if kind not in kinds:
        raise _fail(loc + '.kind', 'expected one of %s' % (', '.join(kinds)))

    return BoundedOperator(OperatorKind(kind), array_from_json(_require(doc, 'matrix', loc), loc + '.matrix'))


def automorphism_to_json(phi: AutomorphismForm) -> dict:

    if isinstance(phi, CanonicalParams):
        return {'form': 'canonical', 'p': phi.p.p, 'operator': operator_to_json(phi.T)}

    elif isinstance(phi, AltParams):
        return {'form': 'alt', 'p': phi.p.p, 'r': phi.r, 'operator': operator_to_json(phi.S)}

    elif isinstance(phi, CongruenceParams):
        return {'form': 'congruence', 'operator': operator_to_json(phi.S)}

    raise FormatError('automorphism_to_json', 'unknown automorphism form', repr(phi))


def automorphism_from_json(doc: dict, loc='$') -> AutomorphismForm:
    '''
    Raises
    ------------------
    FormatError
        malformed document.

    ParameterError, SingularError
        the parameters violate the invariants of their form.
    '''
    form = _require(doc, 'form', loc)

    if form not in FORMS:
        raise _fail(loc + '.form', 'expected one of %s' % (', '.join(FORMS)))

    op = operator_from_json(_require(doc, 'operator', loc), loc + '.operator')

    if form == 'canonical':
        return CanonicalParams(_number(_require(doc, 'p', loc), loc + '.p'), op)

    elif form == 'alt':
        return AltParams(_number(_require(doc, 'p', loc), loc + '.p'),
                         _number(_require(doc, 'r', loc), loc + '.r'), op)

    return CongruenceParams(op)


def pair_to_json(A, B) -> dict:
    return {'A': matrix_to_json(A), 'B': matrix_to_json(B)}


def pair_from_json(doc: dict, loc='$'):
    return (effect_from_json(_require(doc, 'A', loc), loc + '.A'),
            effect_from_json(_require(doc, 'B', loc), loc + '.B'))


def read_automorphism(path: str) -> AutomorphismForm:
    return automorphism_from_json(load_json(path))


def read_effect(path: str) -> Effect:
    return effect_from_json(load_json(path))
