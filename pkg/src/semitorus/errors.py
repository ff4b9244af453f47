"""Exception types raised by the library."""


class SemitorusError(Exception):
    """Base class for all domain errors."""


class DegenerateBasis(SemitorusError):
    pass


class NotSublattice(SemitorusError):
    pass


class UnknownType(SemitorusError):
    pass


class NotAnAutomorphism(SemitorusError):
    pass


class NotPolyhedral(SemitorusError):
    """The quotient exists as a cell complex but is not a polyhedral map."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class NotSemiEquivelar(SemitorusError):
    def __init__(self, vertex, found, expected):
        super().__init__(f"vertex {vertex} has face-cycle {found}, expected {expected}")
        self.vertex = vertex
        self.found = found
        self.expected = expected


class NotCompatible(SemitorusError):
    """An automorphism does not preserve the fibres of a covering projection."""


class TooLarge(SemitorusError):
    pass
