"""Exception hierarchy.

Every error carries a CLI exit class: validation problems map to exit code 2,
exhausted search budgets to exit code 3.
"""


class CoarsePlaneError(Exception):
    exit_code = 2


class ValidationError(CoarsePlaneError):
    pass


class AsymmetricAdjacency(ValidationError):
    pass


class LoopOrMultiEdge(ValidationError):
    pass


class NonPlanarTrace(ValidationError):
    pass


class NotACycle(ValidationError):
    pass


class CycleTouchesOuterFace(ValidationError):
    pass


class Disconnected(ValidationError):
    pass


class GeodesicEntersCycle(ValidationError):
    pass


class NotInS1(ValidationError):
    pass


class EmptySideClass(CoarsePlaneError):
    pass


class HullLeavesCore(CoarsePlaneError):
    pass


class TouchesRim(ValidationError):
    pass


class NotConnected(ValidationError):
    pass


class DegreeBelowTwo(ValidationError):
    pass


class EverythingIsADecoration(ValidationError):
    pass


class ViolationFound(CoarsePlaneError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class CheegerNonpositive(CoarsePlaneError):
    pass


class FaceNotInCore(ValidationError):
    pass


class NotHyperbolicParameters(ValidationError):
    pass


class BudgetExceeded(CoarsePlaneError):
    exit_code = 3


class CapExceeded(BudgetExceeded):
    def __init__(self, message, total=None):
        super().__init__(message)
        self.total = total


class SearchBudgetExceeded(BudgetExceeded):
    def __init__(self, message, states=None):
        super().__init__(message)
        self.states = states
