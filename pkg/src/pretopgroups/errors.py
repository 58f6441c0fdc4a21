class PretopError(Exception):
    """Base class. ``detail`` carries a machine-readable witness when there is one."""

    def __init__(self, message: str = "", detail=None):
        super().__init__(message or self.__class__.__name__)
        self.detail = detail


class InvalidInput(PretopError):
    pass


class SchemaError(InvalidInput):
    pass


class UniverseNotCovered(InvalidInput):
    pass


class NotSubfamily(InvalidInput):
    pass


class EmptySubspace(InvalidInput):
    pass


class NotPreTopology(InvalidInput):
    pass


class NotAssociative(InvalidInput):
    pass


class NoIdentity(InvalidInput):
    pass


class NoInverse(InvalidInput):
    pass


class NotSubgroup(InvalidInput):
    pass


class NotNormal(InvalidInput):
    pass


class CapExceeded(PretopError):
    pass


class CosetCapExceeded(CapExceeded):
    pass


class AxiomsViolated(PretopError):
    pass


class NotPreTopGroup(PretopError):
    pass


class NotAlmostTopological(PretopError):
    pass


class NotClosed(InvalidInput):
    pass


class PointInSet(InvalidInput):
    pass


class NotT1(PretopError):
    pass


class NotClosedSubgroup(PretopError):
    pass


class NotSurjective(PretopError):
    pass


class NotPreContinuous(PretopError):
    pass


class NotOpenMap(PretopError):
    pass


class InvalidChain(PretopError):
    pass


class NotInvariantChain(PretopError):
    pass


class KernelNotNormal(PretopError):
    pass


class UnknownQuestion(InvalidInput):
    pass
