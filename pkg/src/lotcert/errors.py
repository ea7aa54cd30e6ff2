"""Exception types shared across the package."""


class LotcertError(Exception):
    """Base class for all package-specific errors."""


class WordSyntaxError(LotcertError):
    """Malformed word text; carries the offending character position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class IndexOutOfRange(LotcertError):
    """A letter's chain index left the allowed range."""


class ForeignGenerator(LotcertError):
    """A word mentions a generator outside the expected alphabet."""


class NotDecomposable(LotcertError):
    """The conjugating word admits no valid split."""


class ChainMismatch(LotcertError):
    """A relator does not have the expected conjugation shape."""


class SelfReference(LotcertError):
    """A composite move would use its target relator as its own helper."""


class NegativeExponent(LotcertError):
    """Exponent vectors with negative entries are not supported."""


class CompileError(LotcertError):
    """A compiled move sequence failed an internal consistency check."""


class SchemaError(LotcertError):
    """A certificate document is malformed; carries a location path."""

    def __init__(self, message: str, location: str = "document"):
        super().__init__(f"{message} [{location}]")
        self.location = location


class MoveError(LotcertError):
    """An elementary move was rejected; the presentation is unchanged."""

    def __init__(self, kind: str, message: str):
        super().__init__(message)
        self.kind = kind


class ReplayError(MoveError):
    """Replay stopped because the move at ``step`` was rejected."""

    def __init__(self, step: int, cause: MoveError):
        super().__init__(cause.kind, f"step {step}: {cause}")
        self.step = step
        self.cause = cause
