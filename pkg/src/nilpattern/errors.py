"""Exception types shared across modules."""


class CrossCheckError(AssertionError):
    """Two independent routes to the same object disagree."""


class WitnessError(ValueError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class HypothesisError(WitnessError):
    """A structural hypothesis (such as S_i + h_i = g_i) does not hold."""


class PreconditionError(WitnessError):
    """Input violates a documented precondition."""


class GuardExceeded(RuntimeError):
    """An enumeration or grid would exceed its configured size limit."""
