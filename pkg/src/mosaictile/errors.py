"""Exception types shared across the package."""


class ParameterError(ValueError):
    """Invalid board, table or range parameter."""


class InvariantViolation(AssertionError):
    """An internal consistency check failed. Should never fire."""


class OracleLimitError(RuntimeError):
    """Brute-force enumeration refused because the board has too many cells."""

    def __init__(self, cells, limit):
        self.cells = cells
        self.limit = limit
        super().__init__(
            f"board has {cells} cells, above the enumeration limit of {limit}; "
            f"raise the limit explicitly to proceed"
        )
