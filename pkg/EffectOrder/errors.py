'''
Exceptions raised by `EffectOrder`.

All errors share the diagnostic layout::

    Error [Where]: what
        detail

so that a failure printed by the command line reads the same way as
one raised inside a script.
'''


class EffectOrderError(Exception):
    '''
    Base class of all `EffectOrder` errors.

    Parameters
    ------------------
    where: str
        location of the failure, e.g., 'HermitianMatrix: __init__'.

    what: str
        short description.

    detail: str, or None
        optional second line, usually the offending value.
    '''
    def __init__(self, where: str, what: str, detail=None) -> None:

        self.where  = where
        self.what   = what
        self.detail = detail

        text = 'Error [%s]: %s' % (where, what)
        if detail is not None:
            text += '\n    %s' % (detail)

        super().__init__(text)


class ShapeError(EffectOrderError):
    '''Input matrix or vector does not have the required shape.'''


class DimensionError(EffectOrderError):
    '''Operands have different dimensions.'''


class SpectralError(EffectOrderError):
    '''The Hermitian eigen-solver did not converge.'''


class NotPositiveError(EffectOrderError):
    '''A positive semidefinite input has an eigenvalue below the clamp tolerance.'''


class SingularError(EffectOrderError):
    '''A matrix or operator is singular to tolerance.'''


class DomainError(EffectOrderError):
    '''A spectrum lies outside the domain of a Möbius function.'''


class EffectMembershipError(EffectOrderError):
    '''A matrix is not inside the effect algebra [0, I].'''


class ParameterError(EffectOrderError):
    '''A parameter violates the invariant of its type (p, r, lambda, ...).'''


class ConvergenceError(EffectOrderError):
    '''
    The boundary-extension sequence did not settle.

    Attributes
    ------------------
    last_delta: float
        the last successive difference of the sequence.
    '''
    def __init__(self, where: str, what: str, last_delta: float) -> None:

        self.last_delta = float(last_delta)

        super().__init__(where, what, 'last delta = %.3e' % (self.last_delta))


class FormatError(EffectOrderError):
    '''A JSON document does not decode into the expected object.'''


class ConfigError(EffectOrderError):
    '''Invalid configuration (parameter file, flags, or suite name).'''
