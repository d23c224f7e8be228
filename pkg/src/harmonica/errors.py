"""Exception hierarchy shared by every module."""


class HarmonicaError(Exception):
    """Base class; ``clause`` names the violated condition."""

    clause = "error"

    def __init__(self, message: str = "", clause: str | None = None):
        super().__init__(message or self.clause)
        if clause is not None:
            self.clause = clause


# plane graphs
class EmbeddingError(HarmonicaError):
    clause = "embedding"


class NonPlanarEmbedding(EmbeddingError):
    clause = "euler"


class OuterWalkNotAFace(EmbeddingError):
    clause = "outer walk is not a face"


class OuterWalkNotCycle(EmbeddingError):
    clause = "outer walk is not a cycle"


class ParallelEdgeOrLoop(EmbeddingError):
    clause = "parallel edge or loop"


class EmptyResult(EmbeddingError):
    clause = "empty result"


# canvases and colorings
class InvalidCanvas(HarmonicaError):
    clause = "canvas"

    def __init__(self, violations):
        self.violations = list(violations)
        text = "; ".join(f"{v.clause} ({v.vertex})" for v in self.violations)
        super().__init__(text)


class PinnedConflict(HarmonicaError):
    clause = "pinned coloring conflict"


class PreconditionViolated(HarmonicaError):
    clause = "precondition"


class NotASeparatingChord(PreconditionViolated):
    clause = "not a separating chord"


class TooSmall(HarmonicaError):
    clause = "fewer than two colorings"


class ReductionError(PreconditionViolated):
    clause = "democratic reduction"


class ImproperInput(HarmonicaError):
    clause = "improper input coloring"


class HypothesisViolated(PreconditionViolated):
    clause = "hypothesis"


class HypothesesViolated(PreconditionViolated):
    """Raised with the full audit report of failed list-size clauses."""

    clause = "hypotheses"

    def __init__(self, report):
        self.report = dict(report) if isinstance(report, dict) else {str(r): [] for r in report}
        super().__init__("; ".join(sorted(self.report)))


class InfeasibleParameters(HarmonicaError):
    clause = "infeasible generator parameters"


class ConsistencyViolation(HarmonicaError):
    """The colorable/obstructed biconditional failed; carries a replayable dump."""

    clause = "verdicts disagree"

    def __init__(self, message, dump):
        self.dump = dump
        super().__init__(message)
