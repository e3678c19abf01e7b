"""Exception hierarchy shared by every module of the package."""


class KisinError(Exception):
    """Base class for all errors raised by kisindd."""


class NotAUnit(KisinError, ArithmeticError):
    pass


class PrecisionExhausted(KisinError, ArithmeticError):
    """A valuation needed by an algorithm hit the truncation boundary."""


class SingularMatrix(KisinError, ArithmeticError):
    pass


class DimensionMismatch(KisinError, ValueError):
    pass


class InvalidOrientation(KisinError, ValueError):
    pass


class FieldTooSmall(KisinError, ValueError):
    pass


class DescentViolation(KisinError, ValueError):
    pass


class CommutationFailure(KisinError, ValueError):
    pass


class NotInLoopGroup(KisinError, ValueError):
    pass


class ShapeMismatch(KisinError, ValueError):
    pass


class TypeMismatch(KisinError, ValueError):
    pass


class RamifiedNotSupported(KisinError, NotImplementedError):
    pass


class SingularAtPi(KisinError, ArithmeticError):
    pass


class UnknownFormat(KisinError, ValueError):
    pass


class MalformedInput(KisinError, ValueError):
    """Bad JSON input; ``path`` names the offending location, e.g. ``$.frobenius[1][0][2]``."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path
