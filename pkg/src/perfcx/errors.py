"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: ``DataError`` -> 2, ``ResourceLimitError`` -> 3.
"""


class PerfcxError(Exception):
    pass


class DataError(PerfcxError):
    """Input violates a precondition (shape mismatch, missing flag, bad hypothesis data)."""


class ParseError(DataError):
    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        where = f" (line {line}, col {col})" if line is not None else ""
        super().__init__(f"{message}{where}")


class ResourceLimitError(PerfcxError):
    """A configured cap (S-pairs, total terms) was exceeded; never a wrong answer."""


class NotLocalError(DataError):
    """A unit of the local ring is needed but the graded ring cannot invert it."""


class InternalDefect(PerfcxError):
    """Something that is mathematically impossible happened; indicates a bug."""
