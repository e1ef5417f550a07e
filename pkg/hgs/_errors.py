class HGSError(Exception):
    """Base of all errors raised by :py:mod:`hgs`"""


class ZeroDiagonal(HGSError, ValueError):
    """An iteration matrix was requested for a matrix with ``a[i, i] == 0``"""

    def __init__(self, index: int):
        super().__init__(f"zero diagonal entry at index {index}")
        self.index = index


class DimensionMismatch(HGSError, ValueError):
    pass


class BadIndexSet(HGSError, ValueError):
    pass


class NotIrreducible(HGSError, ValueError):
    pass


class BadAngle(HGSError, ValueError):
    pass


class BadId(HGSError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else ""


class BadClass(HGSError, ValueError):
    pass


class ParseError(HGSError, ValueError):
    """Malformed Matrix Market input, located by 1-based line and column"""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class NoConvergence(HGSError, ArithmeticError):
    """The eigensolver exhausted its sweep budget"""

    def __init__(self, sweeps: int, remaining: int):
        super().__init__(
            f"QR iteration did not converge within {sweeps} sweeps "
            f"({remaining} eigenvalues outstanding)"
        )
        self.sweeps = sweeps
        self.remaining = remaining


class SingularBlock(HGSError, ArithmeticError):
    pass


class ZeroPivot(HGSError, ArithmeticError):
    def __init__(self, step: int):
        super().__init__(f"zero pivot at elimination step {step}")
        self.step = step


class GenerationFailed(HGSError, RuntimeError):
    """No random candidate passed the class check within the attempt budget"""
