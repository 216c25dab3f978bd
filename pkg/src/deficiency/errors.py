"""Exception types raised across the package."""


class DeficiencyError(Exception):
    """Base class for every error raised by this package."""


class PresentationSyntaxError(DeficiencyError, ValueError):
    def __init__(self, message, line, column):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class UnknownGeneratorError(PresentationSyntaxError):
    pass


class EmptyRelatorError(PresentationSyntaxError):
    pass


class CapacityExceeded(DeficiencyError):
    """Coset enumeration did not complete within the coset budget."""

    def __init__(self, max_cosets):
        super().__init__(f"coset enumeration exceeded {max_cosets} cosets; "
                         "index unknown, raise the cap")
        self.max_cosets = max_cosets


class RelatorViolation(DeficiencyError):
    def __init__(self, index):
        super().__init__(f"relator {index} is not killed by the permutation images")
        self.index = index


class IncompatibleTable(DeficiencyError, ValueError):
    pass


class ZeroPolynomialError(DeficiencyError, ValueError):
    pass


class InvalidSpecialization(DeficiencyError, ValueError):
    pass


class NotSurjective(DeficiencyError, ValueError):
    pass


class RelatorPhiNonzero(DeficiencyError, ValueError):
    def __init__(self, index, value):
        super().__init__(f"relator {index} has phi-sum {value}, expected 0")
        self.index = index
        self.value = value


class NotStructured(DeficiencyError):
    """The module is outside the direct-sum class handled here."""

    def __init__(self, message, matrix=None):
        super().__init__(message)
        self.matrix = matrix


class NotRegularSequence(DeficiencyError, ValueError):
    def __init__(self, a, b, reason="not a regular sequence"):
        super().__init__(f"({a}, {b}): {reason}")
        self.pair = (a, b)
