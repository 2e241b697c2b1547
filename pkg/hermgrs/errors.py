"""Exception types raised across the package.

Caller mistakes derive from ``InputError`` and map to CLI exit code 2; the
remaining ``HermGrsError`` subclasses describe a legitimate negative outcome
(exit code 1). ``DefectError`` is reserved for states that can only arise from
a bug and is never swallowed.
"""


class HermGrsError(ValueError):
    pass


class InputError(HermGrsError):
    pass


class NotPrime(InputError):
    pass


class TooLarge(InputError):
    pass


class NotEven(InputError):
    pass


class LengthMismatch(InputError):
    pass


class DuplicateRoot(InputError):
    pass


class DuplicateNode(InputError):
    pass


class ZeroPolynomial(InputError):
    pass


class NotMonic(InputError):
    pass


class InvalidCode(InputError):
    pass


class NotInFamily(InputError):
    pass


class TooLargeToEnumerate(InputError):
    pass


class TooManySubsets(InputError):
    pass


class DocumentError(InputError):
    pass


class DivisionByZero(HermGrsError, ZeroDivisionError):
    pass


class DivisionByZeroPoly(DivisionByZero):
    pass


class NoFeasibleLambda(HermGrsError):
    pass


class NormInfeasible(HermGrsError):
    pass


class KernelTooLarge(HermGrsError):
    pass


class VerificationFailed(HermGrsError):
    pass


class DefectError(RuntimeError):
    pass


class NoIrreducibleFound(DefectError):
    pass
