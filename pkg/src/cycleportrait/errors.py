"""Exception types shared across the package."""


class InvalidPortraitError(ValueError):
    """An index set does not recompose to a valid sign vector.

    Raised when the coordinate-wise sum of the named cycle vertices is not
    +1/-1 everywhere, which means the index set cannot describe any vertex
    (typically a corrupted or hand-edited portrait).
    """


class PortraitFormatError(ValueError):
    """A portrait has the wrong mode or shape for the requested operation."""


class PortraitParseError(ValueError):
    """A serialized portrait stream is malformed.

    ``line`` is the 1-based line number for text streams, ``offset`` the
    byte offset for binary streams; whichever does not apply is None.
    """

    def __init__(self, message, *, line=None, offset=None):
        if line is not None:
            message = f"line {line}: {message}"
        elif offset is not None:
            message = f"byte {offset}: {message}"
        super().__init__(message)
        self.line = line
        self.offset = offset


class StreamProtocolError(RuntimeError):
    """A streaming decomposition session was driven out of protocol.

    Covers delivering more or fewer coordinates than the declared
    dimension and pushing into a finalized session.
    """
