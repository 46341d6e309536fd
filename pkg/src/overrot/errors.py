"""Exception hierarchy.

Every error raised on purpose by the library derives from ``OverRotError`` so
the CLI can map it onto an exit code.  Input-format problems and precondition
violations are kept apart because they get different codes.
"""


class OverRotError(Exception):
    """Base class for library errors."""


class FormatError(OverRotError, ValueError):
    """Malformed pattern, map, itinerary or family file."""


class PreconditionError(OverRotError, ValueError):
    """An operation was called outside its domain.

    ``stage`` names the pipeline step that rejected the input, so messages
    coming out of long pipelines stay traceable.
    """

    def __init__(self, message, stage=None):
        self.stage = stage
        if stage:
            message = f"[{stage}] {message}"
        super().__init__(message)


class HorseshoeError(PreconditionError):
    """Divergent cycle: it forces a horseshoe, so every over-rotation number
    in [0, 1/2] occurs and no single pair describes it."""


class TrivialDynamicsError(PreconditionError):
    """Per(f) = Fix(f); the over-rotation interval is not defined."""


class InfiniteCriticalDataError(PreconditionError):
    """The forward orbits of the breakpoints do not close up within budget."""


class AcyclicGraphError(PreconditionError):
    """Minimum mean cycle requested on a graph without cycles."""
