"""Exception hierarchy shared by every module."""


class ElimForestError(ValueError):
    """Base class for domain errors (bad input, inapplicable operation)."""


class GraphError(ElimForestError):
    pass


class InvalidTreeError(ElimForestError):
    pass


class RotationError(ElimForestError):
    """Raised when a rotation is not applicable.

    ``index`` is set when the failure happens inside a sequence.
    """

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message if index is None else f"step {index}: {message}")
        self.index = index


class CapExceeded(ElimForestError):
    """A node, memory or time cap was hit before the computation finished."""

    def __init__(self, message: str, partial: int | None = None):
        super().__init__(message)
        self.partial = partial
