"""Shared exception types."""


class ParseError(ValueError):
    """A file or byte stream does not conform to its declared format.

    ``offset`` is the byte position at which the problem was detected,
    when known.
    """

    def __init__(self, message, offset=None):
        if offset is not None:
            message = f"{message} (at byte {offset})"
        super().__init__(message)
        self.offset = offset


class ShapeMismatchError(ValueError):
    """Two artifacts that must agree on a dimension do not."""
