"""Exception hierarchy shared by every module of the package."""


class EntanglementError(Exception):
    """Base class for all errors raised by qconcur."""


class NonHermitianInput(EntanglementError, ValueError):
    pass


class ConvergenceFailure(EntanglementError, RuntimeError):
    pass


class NegativeSpectrum(EntanglementError, ValueError):
    pass


class ZeroState(EntanglementError, ValueError):
    """A superposition cancelled, or all amplitudes were zero."""


class InvalidDecomposition(EntanglementError, ValueError):
    pass


class InvalidDensity(EntanglementError, ValueError):
    pass


class SpinTooLarge(EntanglementError, ValueError):
    pass


class DomainError(EntanglementError, ValueError):
    pass


class InvariantViolation(EntanglementError, ArithmeticError):
    """A computed quantity left its mathematically allowed range."""


class PreconditionFailed(EntanglementError, ValueError):
    pass


class NonOrthonormalCoefficients(EntanglementError, ValueError):
    pass
