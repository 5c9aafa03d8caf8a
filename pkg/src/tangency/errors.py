"""Exception hierarchy shared by every module.

Each class carries the CLI exit code of its error class:
parse errors exit 2, violated preconditions 3, field-capacity problems 4.
"""


class TangencyError(Exception):
    exit_code = 3


class FormatError(TangencyError):
    exit_code = 2


# preconditions
class FieldMismatch(TangencyError):
    pass


class ArityMismatch(TangencyError):
    pass


class ZeroPolynomial(TangencyError):
    pass


class ConstantPolynomial(TangencyError):
    pass


class NotSquareFree(TangencyError):
    pass


class PointNotOnCurve(TangencyError):
    pass


class PointNotOnBoth(PointNotOnCurve):
    pass


class SingularPoint(TangencyError):
    pass


class VerticalTangent(TangencyError):
    pass


class VerticalLine(TangencyError):
    pass


class CommonComponent(TangencyError):
    pass


class DuplicateCurve(TangencyError):
    pass


class ConstraintViolated(TangencyError):
    pass


class TooManyCurves(TangencyError):
    pass


class EmptyInput(TangencyError):
    pass


# field capacity
class CharacteristicTooSmall(TangencyError):
    exit_code = 4


class WrongField(TangencyError):
    exit_code = 4


class InsufficientPoints(TangencyError):
    exit_code = 4

    def __init__(self, message, found=0):
        super().__init__(message)
        self.found = found


class InsufficientFieldPoints(TangencyError):
    exit_code = 4
