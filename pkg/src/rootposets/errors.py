"""Exception types shared across the library.

The CLI maps these to its exit-code contract: usage problems exit 2,
resource-cap violations exit 3, reproduced-claim mismatches exit 1.
"""


class RootPosetError(Exception):
    """Base class for library errors."""


class ConfigurationError(RootPosetError):
    """Invalid system family / rank combination."""


class UnsupportedOperationError(RootPosetError):
    """Operation whose defining theory fails for the given system."""


class ContractViolationError(RootPosetError):
    """Caller passed data outside an operation's stated precondition."""


class ResourceCapError(RootPosetError):
    """Enumeration would exceed a configured size cap."""


class InvariantError(RootPosetError):
    """A theorem the library relies on failed to hold; this is a bug
    (or a research event) and should never be caught silently."""
