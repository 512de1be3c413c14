"""Exception types shared across the package."""


class InvalidInput(ValueError):
    """Raised for malformed or mathematically inadmissible input.

    ``path`` optionally locates the offending value inside a JSON document
    (e.g. ``"jobs[2].surface.n1"``).
    """

    def __init__(self, message, path=None):
        self.path = path
        self.detail = message
        if path:
            message = f"{path}: {message}"
        super().__init__(message)


    def under(self, prefix: str) -> "InvalidInput":
        """The same error located below ``prefix`` in a larger document."""
        path = f"{prefix}.{self.path}" if self.path else prefix
        return InvalidInput(self.detail, path)


class InternalInconsistency(RuntimeError):
    """A closed formula and its independent oracle disagree."""
