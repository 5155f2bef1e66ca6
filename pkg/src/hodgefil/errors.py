"""Exception hierarchy.

Every error carries the module and operation that raised it plus the
offending datum, so the CLI can emit a structured report.
"""

from __future__ import annotations


class HodgefilError(Exception):
    """Base class.  ``exit_code`` is what the CLI returns for this error."""

    exit_code = 4
    module = "hodgefil"

    def __init__(self, message: str, *, operation: str = "", datum=None):
        super().__init__(message)
        self.operation = operation
        self.datum = datum

    def to_dict(self) -> dict:
        return {
            "error": type(self).__name__,
            "module": self.module,
            "operation": self.operation,
            "datum": None if self.datum is None else str(self.datum),
            "message": str(self),
        }


# exactseries

class SeriesError(HodgefilError):
    module = "exactseries"


class ResidueObstruction(SeriesError):
    pass


class InsufficientPrecision(SeriesError):
    pass


class ZeroDivisor(SeriesError, ZeroDivisionError):
    pass


class BadDenominator(SeriesError):
    exit_code = 3


# formsio

class DataError(HodgefilError):
    module = "formsio"
    exit_code = 3


class FixtureNotFound(DataError):
    pass


class ParseError(DataError):
    pass


class SchemaError(DataError):
    pass


class PrecisionTooLow(DataError):
    pass


class DependentForms(DataError):
    pass


class DimensionMismatch(DataError):
    pass


class EtaMismatch(DataError):
    pass


# derham

class DeRhamError(HodgefilError):
    module = "derham"


class NoAdmissibleJ(DeRhamError):
    pass


class DegenerateBasis(DeRhamError):
    pass


class NotSymplectic(DeRhamError):
    pass


class SingularBlock(DeRhamError):
    pass


# correspondence

class CorrespondenceError(HodgefilError):
    module = "correspondence"


class InadmissiblePrime(CorrespondenceError):
    pass


class NotBlockTriangular(CorrespondenceError):
    pass


# hodge

class HodgeError(HodgefilError):
    module = "hodge"


class InconsistentSystem(HodgeError):
    pass


class NonUniqueSolution(HodgeError):
    pass
