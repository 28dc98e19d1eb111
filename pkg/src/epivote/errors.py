"""Exception types shared across the package.

Every error raised by the library derives from EpivoteError so the CLI can map
any failure to exit code 2 without enumerating causes.
"""


class EpivoteError(Exception):
    """Base class for all library errors."""


class ModelSyntaxError(EpivoteError):
    """Malformed model text. Carries the 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class PartitionError(EpivoteError):
    """A voter's indistinguishability blocks do not partition the state set."""


class OwnPreferenceViolation(EpivoteError):
    """Two states a voter cannot tell apart assign her different preferences."""

    def __init__(self, voter: int, state_a: str, state_b: str):
        super().__init__(
            f"voter {voter} cannot distinguish {state_a} and {state_b} "
            f"but has different preferences there"
        )
        self.voter = voter
        self.state_a = state_a
        self.state_b = state_b


class DanglingState(EpivoteError):
    """A state is mentioned without a valuation, or a valuation is incomplete."""


class UnknownState(EpivoteError):
    """A state name that is not in the model (bad point, bad block member)."""


class SizeLimit(EpivoteError):
    """An enumeration would exceed the configured cap on profile/state counts."""


class EmptySet(EpivoteError):
    """An operation was given an empty set where a nonempty one is required."""


class EmptyResult(EpivoteError):
    """An update removed every state; the restricted model would be empty."""


class MissingTiebreak(EpivoteError):
    """A voting rule that needs a tie-breaking order was requested without one."""


class FormulaSyntaxError(EpivoteError):
    """Malformed formula text. Carries the 0-based character position."""

    def __init__(self, pos: int, message: str):
        super().__init__(f"position {pos}: {message}")
        self.pos = pos


class UnknownVoter(EpivoteError):
    """A formula refers to a voter outside the election."""


class UnknownCandidate(EpivoteError):
    """A formula or order refers to a candidate outside the election."""


class IncompleteProfileAtom(EpivoteError):
    """A profile or preference atom does not rank every candidate exactly once."""


class Indistinguishable(EpivoteError):
    """No formula can separate the target states: bisimilar states straddle it."""
