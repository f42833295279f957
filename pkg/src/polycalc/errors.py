"""Exception and warning types shared across the toolbox."""


class PolycalcError(Exception):
    """Base class for all toolbox errors."""


class DimensionMismatchError(PolycalcError):
    """Operands have incompatible ambient or preimage dimensions."""


class EmptyInputError(PolycalcError):
    """A representation that must carry data is structurally empty."""


class EmptySetError(PolycalcError):
    """The operation requires a nonempty polyhedron."""


class LpNumericalError(PolycalcError):
    """The simplex engine lost numerical consistency even after a
    basis refactorization retry."""


class LpIterationError(PolycalcError):
    """The simplex engine hit its pivot cap without converging."""


class DimensionTooLargeError(PolycalcError):
    """Explicit vertex bookkeeping refused: too many ambient dimensions."""


class RankDegeneracyError(PolycalcError):
    """A crossing edge of the outer approximation could not be
    certified at tolerance."""


class CutLpError(PolycalcError):
    """A separation LP inside the projection loop failed to produce a
    usable cut."""


class IterationCapError(PolycalcError):
    """The projection loop exceeded its cut budget."""


class IncompleteProjectionError(PolycalcError):
    """Truncation artifacts survived every enlargement retry; the
    partial result is attached.

    Attributes:
        result: the last ProjectionResult, with truncation_warning set.
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class ProjectionTimeoutError(PolycalcError):
    """Cooperative deadline expired inside the projection loop."""


class PointNotInSetError(PolycalcError):
    """The anchor point is not a member of the polyhedron."""


class NotProperError(PolycalcError):
    """The function takes the value -inf somewhere."""


class EmptyDomainError(PolycalcError):
    """The function is +inf everywhere."""


class PointNotInDomainError(PolycalcError):
    """The function is +inf at the evaluation point."""


class NotAGaugeBodyError(PolycalcError):
    """The set is unbounded or does not contain the origin, so it
    defines no gauge."""


class OracleTooLargeError(PolycalcError):
    """The exact elimination or enumeration exceeded its size guard."""


class OracleMismatchError(PolycalcError):
    """Cross-check between the engine and the exact oracle failed."""


class ParseError(PolycalcError):
    """Expression text could not be parsed.

    Attributes:
        position: byte offset of the offending token.
    """

    def __init__(self, message, position):
        super().__init__("%s (at offset %d)" % (message, position))
        self.position = position


class LowDimensionalWarning(UserWarning):
    """The set is not full-dimensional; facet output describes the
    affine hull, whose equations appear as two-sided rows."""
