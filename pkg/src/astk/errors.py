"""Exception hierarchy shared by every astk module."""


class AstkError(Exception):
    """Base class for all errors raised by astk."""


class RingMismatch(AstkError):
    pass


class DomainError(AstkError):
    """Operation not available over the given coefficient domain or ring mode."""


class IntegrityError(AstkError):
    """A structure failed one of its defining identities (malformed input)."""


class UnsupportedGroup(AstkError):
    pass


class UnsupportedOperation(AstkError):
    pass


class NotFiniteDimensional(AstkError):
    pass


class GroupLoadError(AstkError):
    """Raised by the group-file loader; ``invariant`` names the violated check."""

    def __init__(self, invariant: str, message: str):
        super().__init__(f"{invariant}: {message}")
        self.invariant = invariant


class UsageError(AstkError):
    pass
