"""Shared exception types.

Overflow of the checked 64-bit range is reported with the builtin
OverflowError; everything else derives from ParityForgeError so the CLI
can map error families to exit codes.
"""


class ParityForgeError(Exception):
    """Base class for all package errors."""


class Incompatible(ParityForgeError):
    """Simultaneous congruences have no common solution."""


class NotDivisible(ParityForgeError):
    """A form division that must be exact is not."""


class NoRelation(ParityForgeError):
    """No two-term relation with the requested shift exists."""


class OutOfDomain(ParityForgeError):
    """Parameters outside a theorem's stated domain."""


class CaseUnavailable(ParityForgeError):
    """No applicable subcase for the given parameters (retryable with different limits)."""


class InternalCheckFailed(ParityForgeError):
    """A consistency check that must hold by construction failed."""


class ClaimMismatch(ParityForgeError):
    """An assembled witness does not satisfy its claim."""


class NotOdd(ParityForgeError):
    """An operation requiring odd n received an even one."""


class FormParseError(ParityForgeError):
    """Bad form/system syntax; carries the character position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (position {position})")
        self.position = position
