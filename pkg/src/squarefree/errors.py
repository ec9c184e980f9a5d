"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside an operation's domain."""


class RangeError(DomainError):
    """A sieve range does not fit the supported integer width."""


class PolicyError(DomainError):
    """A truncation policy cannot drive the requested computation."""


class NotInLambdaError(DomainError):
    """A phase is not an element of the spectrum group."""


class PrecisionError(ArithmeticError):
    """A requested tolerance cannot be certified."""
