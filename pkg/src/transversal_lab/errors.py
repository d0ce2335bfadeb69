"""Exception types shared across the package."""


class TransversalLabError(Exception):
    """Base class for every error raised by this package."""


class NotAGroup(TransversalLabError):
    def __init__(self, reason, witness=None):
        self.reason = reason
        self.witness = witness
        msg = reason if witness is None else f"{reason}: {witness}"
        super().__init__(msg)


class NotASubgroup(TransversalLabError):
    pass


class MalformedCycle(TransversalLabError):
    pass


class ClosureTooLarge(TransversalLabError):
    pass


class GroupTooLarge(TransversalLabError):
    pass


class UnknownFamily(TransversalLabError):
    pass


class ParameterOutOfRange(TransversalLabError):
    pass


class InvalidTransversal(TransversalLabError):
    pass


class NotARightLoop(TransversalLabError):
    pass


class NoIdentity(NotARightLoop):
    pass


class ColumnNotBijective(NotARightLoop):
    def __init__(self, column):
        self.column = column
        super().__init__(f"right translation by {column} is not a bijection")


class ConventionMismatch(TransversalLabError):
    """The two computations of an f-map disagree; a composition-order bug."""


class NotInGSS(TransversalLabError):
    pass


class NotACongruence(TransversalLabError):
    pass


class IllDefined(TransversalLabError):
    pass


class LoopTooLarge(TransversalLabError):
    pass


class HypothesisViolated(TransversalLabError):
    pass
