"""Exception types shared across the library."""


class ValidationError(ValueError):
    """Bad input: preconditions on (p, f, R, m) or malformed data."""


class AmbientGuardError(ValidationError):
    """The computation would need a working field larger than the size guard."""


class TheoremViolation(AssertionError):
    """Two routes that must agree by theorem returned different answers.

    This is never swallowed: it signals a bug in the implementation (or a
    genuinely inconsistent input, which should be impossible).
    """
