"""Exception types."""


class ValidationError(ValueError):
    """An object failed its axioms; ``report`` lists every violation."""

    def __init__(self, what, report):
        self.report = list(report)
        super().__init__(f"{what} is invalid: " + "; ".join(self.report))


class PreconditionError(ValueError):
    """A deformation does not satisfy its condition up to the required order."""

    def __init__(self, message, order=None, witness=None):
        self.order = order
        self.witness = witness
        super().__init__(message)


class ConsistencyError(RuntimeError):
    """Two independent computations of the same quantity disagree."""


class SchemaError(ValueError):
    """A workbench file could not be parsed."""

    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)
