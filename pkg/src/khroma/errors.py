"""Exception types raised by khroma."""


class KhromaError(Exception):
    pass


class GraphParseError(KhromaError, ValueError):
    def __init__(self, lineno: int, message: str):
        self.lineno = lineno
        self.message = message
        where = f"line {lineno}: " if lineno else ""
        super().__init__(f"{where}{message}")


class BudgetExceeded(KhromaError):
    """A size limit was hit; ``parameter`` names the limiting quantity."""

    def __init__(self, parameter: str, value, limit):
        self.parameter = parameter
        self.value = value
        self.limit = limit
        super().__init__(f"budget exceeded: {parameter}={value} > {limit}")


class ConsistencyError(KhromaError):
    """Two independent computations of the same quantity disagree."""


class DifferentialError(KhromaError):
    """A composite of consecutive differentials is nonzero."""

    def __init__(self, message: str, cell=None):
        self.cell = cell
        if cell is not None:
            message = f"{message} at cell {cell}"
        super().__init__(message)


class ChainMapError(KhromaError):
    """A map fails to carry cycles to cycles or boundaries to boundaries."""

    def __init__(self, message: str, cell=None):
        self.cell = cell
        if cell is not None:
            message = f"{message} at cell {cell}"
        super().__init__(message)
