"""Exception hierarchy.

Input errors (bad files, bad parameters) map to CLI exit code 2; physics and
numerical failures map to exit code 1.
"""


class NBodyError(Exception):
    """Base class for every error raised by this package."""


class InputError(NBodyError, ValueError):
    """The caller supplied something malformed."""


class NonPositiveMass(InputError):
    pass


class NonPositiveMassScale(InputError):
    pass


class BadDimension(InputError):
    pass


class TooFewParticles(InputError):
    pass


class DuplicateOrOutOfRangeCoupling(InputError):
    pass


class ParseError(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class ConditionNotSatisfied(InputError):
    pass


class CutoffTooLow(InputError):
    pass


class NotSymmetric(InputError):
    pass


class PhysicsError(NBodyError):
    """The inputs are well formed but the physics contract fails."""


class UnstableSystem(PhysicsError):
    """A mode has a non-positive squared frequency.

    ``index`` is the 0-based position in the ascending eigenvalue list (or in
    mode order for the closed-form path) and ``value`` the offending
    eigenvalue.
    """

    def __init__(self, index, value, message=None):
        self.index = index
        self.value = value
        super().__init__(message or f"mode {index} has non-positive eigenvalue {value!r}")


class Mismatch(PhysicsError):
    def __init__(self, max_relative_deviation, tol=None):
        self.max_relative_deviation = max_relative_deviation
        self.tol = tol
        msg = f"frequencies disagree: max relative deviation {max_relative_deviation:.3e}"
        if tol is not None:
            msg += f" > tol {tol:.3e}"
        super().__init__(msg)


class WrongZeroModeCount(PhysicsError):
    def __init__(self, count):
        self.count = count
        super().__init__(f"expected exactly one zero mode, found {count}")


class NoConvergence(NBodyError, ArithmeticError):
    pass
