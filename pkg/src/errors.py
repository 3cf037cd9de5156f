"""Exception hierarchy for the analysis pipeline."""

from typing import Optional


class AnalysisError(Exception):
    """Base class for all errors raised by the analysis pipeline."""


class PolynomialSyntaxError(AnalysisError):
    """Raised when polynomial text does not conform to the grammar."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class UnknownVariableError(AnalysisError):
    """Raised when an identifier is not part of the ring's variable table."""

    def __init__(self, name: str, offset: Optional[int] = None):
        where = f" at offset {offset}" if offset is not None else ""
        super().__init__(f"Unknown variable '{name}'{where}")
        self.name = name
        self.offset = offset


class GroebnerLimitError(AnalysisError):
    """Raised when a Groebner computation exceeds its configured resources."""

    def __init__(self, message: str, pairs_processed: int, basis_size: int):
        super().__init__(f"{message} (pairs processed: {pairs_processed}, basis size: {basis_size})")
        self.pairs_processed = pairs_processed
        self.basis_size = basis_size


class UnluckyPrimeError(AnalysisError):
    """Raised when modular images disagree and more primes are needed."""

    def __init__(self, message: str, primes=()):
        super().__init__(message)
        self.primes = tuple(primes)


class NotACenterError(AnalysisError):
    """Raised when an odd period coefficient or a secular term survives."""

    def __init__(self, order: int, detail: str = ""):
        super().__init__(f"Origin is not a center under the given constraints: order {order} {detail}".rstrip())
        self.order = order


class CertificateError(AnalysisError):
    """Raised when a Darboux certificate cannot be used."""


class SeriesCapError(AnalysisError):
    """Raised when a requested series order exceeds the configured cap."""

    def __init__(self, requested: int, cap: int):
        super().__init__(f"Requested order {requested} exceeds configured cap {cap}")
        self.requested = requested
        self.cap = cap


class IntegrationError(AnalysisError):
    """Raised when a numeric orbit integration fails."""

    def __init__(self, reason: str):
        super().__init__(f"Integration failed: {reason}")
        self.reason = reason


class EliminationError(AnalysisError):
    """Raised when an elimination chain has no applicable step."""

    def __init__(self, message: str, polynomial: str = ""):
        super().__init__(f"{message}: {polynomial}" if polynomial else message)
        self.polynomial = polynomial


class SearchBudgetError(AnalysisError):
    """Raised when the alternating-sign search exhausts its attempts."""


class SystemFileError(AnalysisError):
    """Raised for I/O, parse and validation errors in system files."""

    def __init__(self, message: str, path=None, line: Optional[int] = None):
        location = ""
        if path is not None:
            location = f"{path}:{line}: " if line is not None else f"{path}: "
        super().__init__(f"{location}{message}")
        self.path = path
        self.line = line
