"""Exception types shared by every module."""


class GammaError(Exception):
    """Base class for all errors raised by gammalab."""


class ModulusOutOfRange(GammaError, ValueError):
    pass


class ShapeMismatch(GammaError, ValueError):
    pass


class TensorShapeMismatch(ShapeMismatch):
    pass


class NotWellDefined(GammaError, ValueError):
    """A generator image (or tensor entry) is not killed by the generator's order.

    ``index`` is the offending generator index, or an ``(i, j, k)`` tuple for
    structure tensors.
    """

    def __init__(self, index, detail: str = ""):
        self.index = index
        msg = f"not well defined at {index}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class CapExceeded(GammaError):
    """An exhaustive loop or search would exceed its configured size budget."""

    def __init__(self, message: str, *, size: int | None = None,
                 cap: int | None = None, survivors: int | None = None,
                 depth: int | None = None):
        self.size = size
        self.cap = cap
        self.survivors = survivors
        self.depth = depth
        super().__init__(message)


class NotValidated(GammaError):
    """Analysis was requested on an instance that fails associativity."""


class NotLeftDerivation(GammaError, ValueError):
    pass


class ParseError(GammaError, ValueError):
    def __init__(self, line: int, reason: str):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")
