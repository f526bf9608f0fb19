# adiabat: entropy from the adiabatic accessibility order.
# Licensed under the GPL-3.0; see pyproject.toml.

__all__ = [
    "AdiabatError",
    "DomainError",
    "ClassError",
    "DegenerateReferenceError",
    "ReversedReferenceError",
    "IncomparableReferenceError",
    "UnboundedEntropyError",
    "OracleViolationError",
    "InconsistentRelationError",
    "NonMonotoneEntropyError",
    "ExhaustedSearchError",
    "FitError",
    "ComparisonError",
]


class AdiabatError(Exception):
    def __init__(self, message: str, errors: list[str] | None = None):
        super().__init__(message)
        self.message = message
        self.errors = errors or []

    def __iter__(self):
        yield "message", self.message
        yield "errors", self.errors


class DomainError(AdiabatError):
    pass


class ClassError(AdiabatError):
    """States which do not lie in one comparability class (e.g. unequal amounts of substance)."""
    pass


class DegenerateReferenceError(AdiabatError):
    pass


class ReversedReferenceError(AdiabatError):
    pass


class IncomparableReferenceError(AdiabatError):
    pass


class UnboundedEntropyError(AdiabatError):
    pass


class OracleViolationError(AdiabatError):
    pass


class InconsistentRelationError(AdiabatError):
    def __init__(self, message: str, chain: list[str], errors: list[str] | None = None):
        super().__init__(message, errors)
        self.chain = chain

    def __iter__(self):
        yield from super().__iter__()
        yield "chain", self.chain


class NonMonotoneEntropyError(AdiabatError):
    pass


class ExhaustedSearchError(AdiabatError):
    pass


class FitError(AdiabatError):
    pass


class ComparisonError(AdiabatError):
    """Incomparable states inside one class: no entropy function can encode the relation."""
    pass
