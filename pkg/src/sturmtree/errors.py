"""Exception hierarchy.

Exit-code mapping used by the CLI: input-shaped problems (SchemaError,
RegularityError, PeriodError, OutOfRange, ParameterError, ForbiddenFactor,
NotPeriodic, RadiusMismatch) exit 2, resource problems (CapExceeded) exit 3,
verification failures exit 1.
"""


class SturmtreeError(Exception):
    """Base class for all package errors."""


class SchemaError(SturmtreeError):
    """Serialized presentation does not conform to the JSON schema."""


class RegularityError(SturmtreeError):
    """Degree sum at some vertex differs from k."""

    def __init__(self, position, total, k):
        self.position = position
        self.total = total
        self.k = k
        super().__init__(
            f"degree sum {total} != k={k} at position {position}"
        )


class PeriodError(SturmtreeError):
    """A declared periodic tail does not repeat record-by-record."""


class OutOfRange(SturmtreeError):
    """Position does not address a vertex of the presentation."""


class CapExceeded(SturmtreeError):
    """Requested object would exceed the configured node cap."""

    def __init__(self, needed, cap):
        self.needed = needed
        self.cap = cap
        super().__init__(f"needs {needed} nodes, cap is {cap}")


class RadiusMismatch(SturmtreeError):
    """Operation got balls of incompatible radii."""


class NotPeriodic(SturmtreeError):
    """Quotient reconstruction requested without a census plateau."""


class ParameterError(SturmtreeError):
    """Word-lifting parameters violate the required index identities."""


class ForbiddenFactor(SturmtreeError):
    """Base word contains a factor the construction cannot lift."""


class Unstable(SturmtreeError):
    """Factor count kept growing when the scan window was doubled."""


class Unsaturated(SturmtreeError):
    """Brute-force census did not stabilize across a period step."""
