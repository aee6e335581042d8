"""Exception hierarchy. Every error is a ValueError so callers can catch broadly."""


class NPlaceError(ValueError):
    pass


class ArityMismatch(NPlaceError):
    pass


class CarrierMismatch(NPlaceError):
    pass


class MalformedTuple(NPlaceError):
    pass


class PositionOutOfRange(NPlaceError):
    pass


class WrongListLength(NPlaceError):
    pass


class UnknownIdentity(NPlaceError):
    pass


class UnknownElement(NPlaceError):
    pass


class MalformedTable(NPlaceError):
    pass


class NotAssociative(NPlaceError):
    def __init__(self, op_index, x, y, z):
        self.op_index, self.x, self.y, self.z = op_index, x, y, z
        super().__init__(
            f"operation {op_index} is not associative at ({x!r}, {y!r}, {z!r})"
        )


class CapExceeded(NPlaceError):
    def __init__(self, cap, what="states"):
        self.cap = cap
        super().__init__(f"more than {cap} {what}")


class TooLarge(NPlaceError):
    pass


class LoadError(NPlaceError):
    pass


class NotRepresentable(NPlaceError):
    pass


class NotARepresentation(NPlaceError):
    pass


class NotUnitaryExtension(NPlaceError):
    pass


class InvalidPair(NPlaceError):
    pass


class EmptySet(NPlaceError):
    pass


class CarriersNotDisjoint(NPlaceError):
    pass


class SystemCheckFailed(NPlaceError):
    pass
