"""Exception types shared by every module.

`PreconditionError` marks bad input (CLI exit code 2); `InvariantError`
marks an internal consistency check that failed (CLI exit code 1).
"""


class PreconditionError(ValueError):
    """An operation was called outside its documented domain."""


class InvariantError(RuntimeError):
    """An internal cross-check disagreed; this indicates a bug."""


def require(cond: bool, message: str) -> None:
    if not cond:
        raise PreconditionError(message)


def ensure(cond: bool, message: str) -> None:
    if not cond:
        raise InvariantError(message)
