"""Exception hierarchy shared by the whole package.

Three failure modes are distinguished because the command line maps them to
distinct exit codes: malformed input, a violated mathematical precondition
(reported together with an exact witness), and a tripped resource cap.
"""

from __future__ import annotations


class SlmcError(Exception):
    """Base class for all package errors."""


class InputError(SlmcError):
    """Malformed or inconsistent input: unknown symbols, bad grammar, wrong spaces."""


class PreconditionError(SlmcError):
    """A mathematical precondition failed; carries an exact witness when available."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class ResourceCapError(SlmcError):
    """An enumeration cap (word length, arity, polynomial degree) was exceeded.

    Caps fail loudly instead of truncating, so a result is never silently wrong.
    """
