"""Exception hierarchy shared by the library and the command line."""


class SkewvizError(Exception):
    """Base class for every error raised by skewviz."""


class EmptySample(SkewvizError, ValueError):
    """No finite observations remain after dropping NaN/inf."""


class DegenerateVariance(SkewvizError, ArithmeticError):
    """A scale estimate needed by the computation is zero."""


class DomainError(SkewvizError, ValueError):
    """A parameter lies outside its admissible range."""


class EmptyFigure(SkewvizError, ValueError):
    """A figure was requested with no panels."""


class ColumnNotFound(SkewvizError, LookupError):
    pass


class ParseError(SkewvizError, ValueError):
    def __init__(self, message, line=None, path=None):
        self.line = line
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}: "
        elif where:
            where += " "
        super().__init__(where + message)
