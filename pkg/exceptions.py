class MontesinosProbeError(Exception):
    """Base class of every error raised by the probe library."""


class InputError(MontesinosProbeError, ValueError):
    """The user supplied something the library cannot work with. The CLI exits with code 1."""


class ParseError(InputError):
    """
    A text input did not match its grammar.

    Args:
        message: what went wrong
        text: the text being parsed
        position: 0-based offset of the offending character
    """

    def __init__(self, message, text="", position=0):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}: {text!r}")


class DiagramSizeError(InputError):
    """A diagram has more crossings than the configured cap of an engine."""

    def __init__(self, crossings, cap, engine):
        self.crossings = crossings
        self.cap = cap
        super().__init__(f"{engine} refuses a diagram with {crossings} crossings (cap {cap})")


class RealizationError(InputError):
    """A Dowker-Thistlethwaite code has no planar realization."""


class ConsistencyError(MontesinosProbeError, RuntimeError):
    """An internal invariant failed. This signals a bug, never a property of the input. Exit code 2."""
