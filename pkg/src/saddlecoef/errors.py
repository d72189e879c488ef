"""Exception hierarchy shared by the library and the command line."""


class InputError(ValueError):
    """An argument violates an operation's precondition."""


class SpecParseError(InputError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class ComputationRefused(RuntimeError):
    """The request is well formed but outside the supported budget or domain."""


class InvariantViolation(AssertionError):
    """An internal consistency check failed."""
