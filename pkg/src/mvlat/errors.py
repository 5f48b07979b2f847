class InputError(ValueError):
    """User-supplied data violates a documented precondition."""


class SizeGuardError(InputError):
    """A computation would exceed one of the declared size guards."""


class InvariantError(RuntimeError):
    """An internal consistency check failed; this indicates a bug."""
