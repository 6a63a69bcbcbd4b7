"""Exception hierarchy shared across the package."""


class PovmkitError(Exception):
    """Base class for all domain errors raised by this package."""


class NotHermitian(PovmkitError):
    pass


class NotPositive(PovmkitError):
    pass


class NotAState(PovmkitError):
    pass


class NotAnEffect(PovmkitError):
    pass


class NotUnitary(PovmkitError):
    pass


class DimensionMismatch(PovmkitError):
    pass


class BadRank(PovmkitError):
    pass


class BadCompleteness(PovmkitError):
    """A set of effects fails to resolve the identity.

    For two-stage measurement trees, ``stage`` is 1 or 2 and ``outcome`` is
    the first-stage outcome whose conditional measurement is at fault.
    """

    def __init__(self, message, stage=None, outcome=None):
        super().__init__(message)
        self.stage = stage
        self.outcome = outcome


class NotInformationallyComplete(PovmkitError):
    pass


class InconsistentSamples(PovmkitError):
    pass


class ZeroProbability(PovmkitError):
    pass


class ZeroProbabilityData(PovmkitError):
    pass


class NotAJoint(PovmkitError):
    pass


class NotEfficient(PovmkitError):
    pass


class TooLarge(PovmkitError):
    pass


class ImpossibleOutcome(PovmkitError):
    pass


class PriorExcludesTruth(UserWarning):
    """Warning: a prior has no support near the sampled state, so the
    agent-convergence contract is void for that run."""
