"""Exception taxonomy: domain errors (bad values) vs resource errors (budget)."""


class PqmError(Exception):
    """Base class for all package-specific errors."""


class DomainError(PqmError, ValueError):
    """Invalid value for the requested operation (bad symbol, width, nu, ...)."""


class ResourceError(PqmError, RuntimeError):
    """A configured budget (qubit cap, ...) would be exceeded."""


class DatasetFormatError(DomainError):
    """Malformed input data; carries row/column location when known."""

    def __init__(self, message: str, row: int | None = None, column: str | None = None):
        loc = []
        if row is not None:
            loc.append(f"row {row}")
        if column is not None:
            loc.append(f"column {column!r}")
        if loc:
            message = f"{message} ({', '.join(loc)})"
        super().__init__(message)
        self.row = row
        self.column = column
