"""Exception hierarchy shared by every module of the package."""


class WeilError(Exception):
    """Base class for all errors raised by :mod:`weil`."""


# algebra construction
class NotFiniteDimensional(WeilError):
    pass


class NotLocal(WeilError):
    pass


class EmptyRelationsWithGenerators(NotFiniteDimensional):
    pass


class WrongVariableCount(WeilError):
    pass


class AlgebraMismatch(WeilError):
    pass


class ModeMismatch(WeilError):
    pass


class NotLocalMorphism(WeilError):
    pass


class RelationNotKilled(WeilError):
    def __init__(self, relation):
        self.relation = relation
        super().__init__(f"relation {relation!s} does not map to 0")


class CompositionMismatch(WeilError):
    pass


class NotPolynomial(WeilError):
    pass


# expressions
class ExprSyntaxError(WeilError):
    def __init__(self, message, position):
        self.position = position
        super().__init__(f"{message} at position {position}")


class UnknownIdentifier(ExprSyntaxError):
    pass


class ArityViolation(WeilError):
    def __init__(self, message, position=None):
        self.position = position
        super().__init__(message if position is None else f"{message} at position {position}")


class DomainError(WeilError, ArithmeticError):
    pass


# laws / limits
class ProbeSetNotClosed(WeilError):
    pass


class NotConnected(WeilError):
    pass


class LimitNotWeil(WeilError):
    pass


class ConeNotVerified(WeilError):
    pass


class UnsupportedBundle(WeilError):
    pass


class DuplicateName(WeilError):
    pass
