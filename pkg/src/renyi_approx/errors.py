"""Exception hierarchy shared by every module of the package."""


class RenyiError(Exception):
    """Base class for all errors raised by :mod:`renyi_approx`."""


class InputError(RenyiError, ValueError):
    """Invalid user input (shapes, parameter ranges, file contents)."""


class NumericalError(RenyiError, ArithmeticError):
    """An estimator produced a result that cannot be used."""


class ZeroDiagonal(InputError):
    pass


class NonFinite(InputError):
    pass


class SizeMismatch(InputError):
    pass


class DomainError(InputError):
    pass


class AlphaIsOne(InputError):
    pass


class DegenerateBounds(InputError):
    pass


class ParseError(InputError):
    def __init__(self, message, row=None, column=None):
        where = []
        if row is not None:
            where.append(f"row {row}")
        if column is not None:
            where.append(f"column {column!r}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)
        self.row = row
        self.column = column


class RankCollapse(NumericalError):
    pass


class NonPositiveTrace(NumericalError):
    pass
