"""Exception types shared across the package."""


class RotDistError(Exception):
    """Base class for all errors raised by rotdist."""


class ParseError(RotDistError, ValueError):
    """Malformed tree, word or generating-set text."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class NotASiblingPair(RotDistError, ValueError):
    pass


class NotApplicable(RotDistError, ValueError):
    """A rotation was requested where the tree has no caret to move."""


class NotApplicableAtStep(NotApplicable):
    """A word could not be executed on a tree without adding carets.

    ``index`` is the position of the offending letter in the word, counting
    from the left (letters are executed right to left).
    """

    def __init__(self, index: int, message: str = ""):
        self.index = index
        super().__init__(message or f"letter {index} is not applicable")


class UnspecifiedCase(RotDistError):
    """A G(c) transition that the published tables do not cover."""


class SizeMismatch(RotDistError, ValueError):
    pass


class NotRightArmSet(RotDistError, ValueError):
    pass


class NotDefined(RotDistError):
    """The requested restricted distance does not exist for this pair."""


class ResourceCap(RotDistError):
    """Exhaustive computation refused because n exceeds the configured cap."""


class ParameterViolation(RotDistError, ValueError):
    pass


class InternalInvariantViolation(RotDistError, AssertionError):
    pass
