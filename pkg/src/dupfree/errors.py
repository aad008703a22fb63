"""Exception hierarchy shared by every module."""


class DupFreeError(Exception):
    """Base class for all errors raised by this package."""


class InvalidWordError(DupFreeError, ValueError):
    """A letter is outside the alphabet, or word text is malformed."""


class WordTooShortError(DupFreeError, ValueError):
    """A rule or transform was applied to a word shorter than it requires."""


class NotASquareError(DupFreeError, ValueError):
    """De-duplication was requested where the two blocks differ."""


class EmptyLengthSetError(DupFreeError, ValueError):
    pass


class SeparationError(DupFreeError, ValueError):
    """An equal-length length set violates the ``l >= 2 l'`` separation."""


class EmptyCodeError(DupFreeError, ValueError):
    pass


class MalformedPlanError(DupFreeError, ValueError):
    pass


class InfeasiblePlanError(DupFreeError, ValueError):
    """Requested duplications cannot fit into the word."""


class TraceModelError(DupFreeError, ValueError):
    """A trace violates the invariants of its declared channel model."""


class ResourceLimitError(DupFreeError, RuntimeError):
    """A configured size or search budget was exceeded."""
