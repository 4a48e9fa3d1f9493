"""Exception hierarchy. The CLI prints ``type(err).__name__`` on domain errors."""


class GaussSpectraError(ValueError):
    pass


class MalformedCode(GaussSpectraError):
    pass


class MalformedState(GaussSpectraError):
    pass


class MalformedGraph(GaussSpectraError):
    pass


class InvalidPretzel(GaussSpectraError):
    pass


class ZeroParameter(InvalidPretzel):
    pass


class NotUnoriented(GaussSpectraError):
    pass


class OutOfRange(GaussSpectraError):
    pass


class EdgeExists(GaussSpectraError):
    pass


class ZeroPolynomial(GaussSpectraError):
    pass


class HypothesisViolated(GaussSpectraError):
    pass


class PartitionMismatch(GaussSpectraError):
    pass


class OddCoverCount(GaussSpectraError):
    pass


class HasErasedChords(GaussSpectraError):
    pass


class HasUnoriented(GaussSpectraError):
    pass
