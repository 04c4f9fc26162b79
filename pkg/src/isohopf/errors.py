"""Exception hierarchy. Every error carries a stable class name used in reports."""


class IsoHopfError(Exception):
    """Base class for all library errors."""

    @property
    def code(self) -> str:
        return type(self).__name__


class ParseError(IsoHopfError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)


class SchemaError(IsoHopfError):
    def __init__(self, message: str, field: str | None = None):
        self.field = field
        super().__init__(f"{field}: {message}" if field else message)


class NotZeroDimensional(IsoHopfError):
    pass


class NotContained(IsoHopfError):
    pass


class NotFiniteLength(IsoHopfError):
    pass


class EmptyScheme(IsoHopfError):
    pass


class DegenerateSlice(IsoHopfError):
    pass


class ResourceError(IsoHopfError):
    """Raised when a Groebner computation exceeds its step budget."""


class NotIsotropic(IsoHopfError):
    def __init__(self, message: str, residual=None):
        self.residual = residual
        super().__init__(message)


class ZeroVector(IsoHopfError):
    pass


class ZeroLocusNotOriginOnly(IsoHopfError):
    pass


class BadWeights(IsoHopfError):
    pass


class NoRationalSplitting(IsoHopfError):
    pass


class NotMaximalIsotropic(IsoHopfError):
    pass


class PerturbationFailed(IsoHopfError):
    pass


class NotHomogeneous(IsoHopfError):
    pass


class ConsistencyFailure(IsoHopfError):
    pass


class ComplexNotExact2Periodic(IsoHopfError):
    pass


class NoInvariantIsotropic(IsoHopfError):
    pass


class NonIntegerRatio(IsoHopfError):
    pass


class ZeroBaseWeight(BadWeights):
    pass


class WeightConstraintViolated(IsoHopfError):
    pass


class SectionNotInSubspace(IsoHopfError):
    pass


class CloseRoots(IsoHopfError):
    pass


class RankAmbiguous(IsoHopfError):
    pass


class ResidualTooLarge(IsoHopfError):
    pass


class BudgetExceeded(IsoHopfError):
    pass


class WindingMismatch(IsoHopfError):
    pass


class WrongDimension(IsoHopfError):
    pass
