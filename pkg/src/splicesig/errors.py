class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


class DiagramParseError(ValueError):
    def __init__(self, message, location=None):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


class SpliceCompatibilityError(ValueError):
    def __init__(self, message, expected_a1, expected_a2):
        self.expected_a1 = expected_a1
        self.expected_a2 = expected_a2
        super().__init__(message)


class InvariantFailure(AssertionError):
    """Two computations that must agree did not. Always a bug, never a result."""
