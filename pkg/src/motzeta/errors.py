"""Exception types raised by motzeta."""


class MotzetaError(Exception):
    """Base class for all library errors."""


class MissingSymbolValue(MotzetaError, KeyError):
    def __init__(self, symbol):
        super().__init__(symbol)
        self.symbol = symbol

    def __str__(self):
        return f"no value assigned to stratum symbol [{self.symbol}]"


class UnknownComponent(MotzetaError, KeyError):
    def __init__(self, component_id):
        super().__init__(component_id)
        self.component_id = component_id

    def __str__(self):
        return f"unknown component id {self.component_id!r}"


class MissingNu(MotzetaError):
    pass


class MissingMu(MotzetaError):
    pass


class MissingChi(MotzetaError):
    pass


class MissingClassL(MotzetaError):
    pass


class NotAStratum(MotzetaError):
    pass


class SingletonCenter(MotzetaError):
    pass


class ArityMismatch(MotzetaError):
    pass


class BudgetExceeded(MotzetaError):
    pass


class NonPrimeField(MotzetaError):
    pass


class BadReduction(MotzetaError):
    """The prime divides some multiplicity, so point counts are not meaningful."""


class EmptyPolynomial(MotzetaError):
    pass


class ParseError(MotzetaError):
    def __init__(self, message, *, position=None, field=None, line=None):
        super().__init__(message)
        self.message = message
        self.position = position
        self.field = field
        self.line = line

    def __str__(self):
        where = []
        if self.line is not None:
            where.append(f"line {self.line}")
        if self.field is not None:
            where.append(f"field {self.field}")
        if self.position is not None:
            where.append(f"position {self.position}")
        if where:
            return f"{self.message} ({', '.join(where)})"
        return self.message


class ValidationError(MotzetaError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))
