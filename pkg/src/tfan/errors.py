"""Exception hierarchy for tfan.

Every failure mode callers are expected to handle gets its own class, so the
CLI can map them onto exit codes and a one-line diagnosis.
"""


class TfanError(Exception):
    """Base class for all tfan errors."""


class InvalidInput(TfanError):
    """An argument violates a documented precondition."""


class ParseError(TfanError):
    """Syntax or semantic error in a problem file."""

    def __init__(self, message, line=None, col=None):
        super().__init__(message)
        self.line = line
        self.col = col

    def __str__(self):
        loc = ""
        if self.line is not None:
            loc = f"line {self.line}"
            if self.col is not None:
                loc += f", col {self.col}"
            loc += ": "
        return loc + super().__str__()


class DivisionDiverged(TfanError):
    """A division/normal-form loop exceeded its step cap.

    Carries a short trace of the last reduction states for diagnosis.
    """

    def __init__(self, message, trace=()):
        super().__init__(message)
        self.trace = tuple(trace)


class InredDiverged(TfanError):
    """Initial reduction exceeded its step cap (generic regime only)."""


class RegimeError(TfanError):
    """A prime-regime operation was invoked on an ideal without p - t."""


class WitnessFailed(TfanError):
    """Witness division left a nonzero remainder: the prescribed initial
    form does not lie in the initial ideal, or the inputs are inconsistent."""


class NonGenericWeight(TfanError):
    """A weight vector meant to be interior to a maximal cone lies on a
    lower-dimensional equivalence class.  Carries the violated equations."""

    def __init__(self, message, equations=()):
        super().__init__(message)
        self.equations = tuple(tuple(r) for r in equations)
