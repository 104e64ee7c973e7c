"""Exception hierarchy shared by all pvgauge modules."""


class PVGaugeError(Exception):
    """Base class for every error raised by this package."""


class DivisionByZero(PVGaugeError, ZeroDivisionError):
    pass


class DimensionMismatch(PVGaugeError, ValueError):
    pass


class SingularMatrix(PVGaugeError, ArithmeticError):
    pass


class PoleAtEvaluationPoint(PVGaugeError, ArithmeticError):
    pass


class NeedsUserBound(PVGaugeError):
    """The automatic degree bound does not apply; supply DegreeBounds explicitly."""

    def __init__(self, message, factor=None):
        super().__init__(message)
        self.factor = factor


class Inconclusive(PVGaugeError):
    pass


class NonRationalResidueOrPole(PVGaugeError):
    pass


class UnmappedGenerator(PVGaugeError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else ""


class NotConstant(PVGaugeError):
    pass


class NotRational(PVGaugeError):
    pass


class NotAnIntertwiner(PVGaugeError):
    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class SourceTargetMismatch(PVGaugeError):
    pass


class IntertwiningFails(PVGaugeError):
    def __init__(self, message, generator=None):
        super().__init__(message)
        self.generator = generator


class ExprSyntaxError(PVGaugeError, SyntaxError):
    def __init__(self, message, line=1, column=1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.msg = message
        self.lineno = line
        self.offset = column

    def __str__(self):
        return f"{self.msg} (line {self.lineno}, column {self.offset})"


class InconsistentRowLength(PVGaugeError, ValueError):
    pass
