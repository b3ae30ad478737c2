"""Shared exception types.

The command line maps these onto exit codes: InvalidInput -> 2,
CapExceeded -> 3.  GluingError signals an internal inconsistency while
assembling a ball complex and is always a bug or corrupted input, never
a normal outcome.
"""


class InvalidInput(ValueError):
    pass


class CapExceeded(RuntimeError):
    pass


class GluingError(RuntimeError):
    pass
