"""Exception types.

Everything a caller can trigger with bad input derives from
:class:`PreconditionError` (itself a ``ValueError``); the CLI maps these to
exit status 2.
"""


class PreconditionError(ValueError):
    pass


class UniformityError(PreconditionError):
    pass


class InvalidTargetError(PreconditionError):
    pass


class OverlapError(PreconditionError):
    pass


class OrderError(PreconditionError):
    pass


class NotACliqueError(PreconditionError):
    pass


class SearchLimitError(PreconditionError):
    pass


class HypergraphParseError(PreconditionError):
    def __init__(self, message: str, line: int | None = None, path: str | None = None):
        self.line = line
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}: "
        elif where:
            where += " "
        super().__init__(f"{where}{message}")
