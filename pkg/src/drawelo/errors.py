"""Exception types shared across the package."""


class ZeroProbabilityError(ValueError):
    """A model assigned probability zero to an outcome that actually occurred.

    Raised instead of returning an infinite log score / log likelihood so the
    caller learns which game and outcome broke the evaluation.
    """


class ConvergenceError(RuntimeError):
    """Batch fitting diverged or the data admit no finite optimum."""


class SchemaError(ValueError):
    """A CSV input is missing required columns."""


class RowError(ValueError):
    """A CSV data row could not be parsed."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line
