"""Shared error type for violated internal invariants.

Raised when a computation contradicts something the library itself guarantees
(as opposed to bad user input).  The CLI maps it to exit code 2.
"""


class InternalInvariantError(RuntimeError):
    pass
