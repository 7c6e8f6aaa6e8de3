"""Exception hierarchy shared by the engine and the workbench."""


class AlgebraError(Exception):
    """Base class for every error raised by gradedbass."""


class InputError(AlgebraError):
    """Malformed or inadmissible input (workbench exit code 2)."""


class NonHomogeneous(InputError):
    pass


class LinearRelation(InputError):
    pass


class BadPrime(InputError):
    pass


class FieldMismatch(InputError):
    pass


class AmbientMismatch(InputError):
    pass


class NotWellDefined(InputError):
    pass


class NotFree(InputError):
    pass


class MismatchedV(InputError):
    pass


class NotHypersurface(InputError):
    pass


class NonUnitConstantTerm(InputError):
    pass


class Undetermined(AlgebraError):
    """A computation ran out of its configured bounds (workbench exit code 3)."""


class DegreeOverflow(Undetermined):
    pass


class WindowUnstable(Undetermined):
    pass


class WindowExhausted(Undetermined):
    pass


class NotStabilized(AlgebraError):
    pass


class Unsupported(AlgebraError):
    pass


class HypothesisViolated(AlgebraError):
    """A verification check does not apply to the given input."""
