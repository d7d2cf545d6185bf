"""Exception hierarchy shared by all modules."""


class BrouwerError(Exception):
    """Base class for every error raised by brouwerlab."""


# posets / algebras
class DuplicateElement(BrouwerError):
    pass


class UnknownElement(BrouwerError):
    pass


class CyclicOrder(BrouwerError):
    pass


class CarrierTooLarge(BrouwerError):
    pass


class InvalidN(BrouwerError):
    pass


class NotComparable(BrouwerError):
    pass


class NotInCarrier(BrouwerError):
    pass


# formulas / semantics
class FormulaSyntaxError(BrouwerError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class FreshNotFresh(BrouwerError):
    pass


class UnboundVariable(BrouwerError):
    pass


class BudgetExceeded(BrouwerError):
    pass


# degree simulation
class InconsistentPresentation(BrouwerError):
    pass


class NotDownwardClosed(BrouwerError):
    pass


class MemberOutsideAmbient(BrouwerError):
    pass


class AntichainViolated(BrouwerError):
    pass


class NotCanonical(BrouwerError):
    pass


class InvalidConfig(BrouwerError):
    pass


class EmptyColumns(BrouwerError):
    pass


class EBelowBViolation(BrouwerError):
    pass


class ENotInAmbientComplement(BrouwerError):
    pass


class InputFormatError(BrouwerError):
    pass
