"""Exception hierarchy.

Two families: :class:`InvalidInput` for malformed values (bad frames,
non-normalized masses, rows that are not stochastic, ...) and
:class:`UndefinedOperation` for well-formed inputs on which an operation
has no defined result (conditioning on an event with zero belief, total
contradiction under a matrix, ...).
"""


class EvidenceError(Exception):
    """Base class for every error raised by massflow."""


class InvalidInput(EvidenceError, ValueError):
    pass


class UndefinedOperation(EvidenceError, ArithmeticError):
    pass


# frames
class EmptyFrame(InvalidInput):
    pass


class DuplicateLabel(InvalidInput):
    pass


class FrameTooLarge(InvalidInput):
    pass


class EmptyDimension(InvalidInput):
    pass


class FrameMismatch(InvalidInput):
    pass


class InvalidSubset(InvalidInput):
    pass


# size caps of specific algorithms
class FrameTooLargeForDense(InvalidInput):
    pass


class FrameTooLargeForCheck(InvalidInput):
    pass


# mass distributions
class EmptySetMass(InvalidInput):
    pass


class NotNormalized(InvalidInput):
    pass


class AllMassZero(InvalidInput):
    pass


class NotABeliefFunction(UndefinedOperation):
    pass


# updating
class ConditioningUndefined(UndefinedOperation):
    pass


class RevisionUndefined(UndefinedOperation):
    pass


# specialization matrices
class RowNotStochastic(InvalidInput):
    pass


class FlowOutsideSubset(InvalidInput):
    pass


class EmptyEvent(InvalidInput):
    pass


class TotalContradiction(UndefinedOperation):
    pass


class NotASpecialization(UndefinedOperation):
    pass


class ConservationViolated(InvalidInput):
    pass


# rules
class EmptyFocus(InvalidInput):
    pass


class InvalidRule(InvalidInput):
    pass
