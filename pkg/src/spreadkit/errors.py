"""Exception hierarchy shared by all spreadkit modules."""


class SpreadkitError(Exception):
    pass


class ParameterError(SpreadkitError, ValueError):
    pass


class NotPrime(ParameterError):
    pass


class DegreeOutOfRange(ParameterError):
    pass


class FieldTooLarge(ParameterError):
    pass


class DivisionByZero(SpreadkitError, ZeroDivisionError):
    pass


class ZeroSpace(SpreadkitError, ValueError):
    pass


class AmbientMismatch(SpreadkitError, ValueError):
    pass


class MixedDimensions(SpreadkitError, ValueError):
    pass


class NotASpread(SpreadkitError, ValueError):
    pass


class SkeletonDistanceError(SpreadkitError, ValueError):
    pass


class ShapeError(SpreadkitError, ValueError):
    pass


class InconsistentSystem(SpreadkitError, ValueError):
    pass


class TooLarge(SpreadkitError, ValueError):
    pass


class SpreadFileError(SpreadkitError, ValueError):
    pass
