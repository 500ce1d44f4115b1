"""Exception hierarchy shared by all modules."""


class SatakeError(Exception):
    """Base class; ``exit_code`` is what the CLI returns when this escapes."""

    exit_code = 2


class ValidationError(SatakeError):
    pass


class NotFiniteType(ValidationError):
    pass


class PinningViolated(ValidationError):
    pass


class NotFiniteOrder(ValidationError):
    pass


class UnknownName(ValidationError):
    pass


class NotDominant(ValidationError):
    pass


class NotAntidominant(ValidationError):
    pass


class NotSigmaFixed(ValidationError):
    pass


class SigmaNontrivial(ValidationError):
    pass


class NotPrimePower(ValidationError):
    pass


class ModeMismatch(ValidationError):
    pass


class ConstraintViolated(ValidationError):
    pass


class EnvelopeExceeded(SatakeError):
    exit_code = 4


class OrbitTooLarge(EnvelopeExceeded):
    pass


class WeylGroupTooLarge(EnvelopeExceeded):
    pass


class VerificationError(SatakeError):
    """An internal cross-check failed; always a bug, never expected."""

    exit_code = 3


class MethodMismatch(VerificationError):
    pass


class NotInSpan(VerificationError):
    pass


class NonPolynomial(VerificationError):
    pass


class SupportViolation(VerificationError):
    pass


class Mismatch(VerificationError):
    pass


class PrecisionExhausted(SatakeError):
    pass


class Singular(SatakeError):
    pass
