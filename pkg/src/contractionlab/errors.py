"""Shared exception types."""


class GuardExceeded(Exception):
    """An exact search was asked to run above its configured size ceiling."""


class InvariantError(ValueError):
    """A domain object violates one of its declared invariants.

    The message always names the violated invariant so that parsers and
    constructors can surface it verbatim.
    """


class ParseError(ValueError):
    """Malformed instance text.  Carries the 1-based offending line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no
