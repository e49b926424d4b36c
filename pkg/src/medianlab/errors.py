"""Exception hierarchy shared by all modules."""


class MedianLabError(Exception):
    """Base class for domain errors."""


class CapExceeded(MedianLabError):
    """A bounded search on a lazily generated graph ran past its radius cap."""


class VertexNotFound(MedianLabError):
    pass


class GraphFormatError(MedianLabError):
    """Malformed graph, action, word or ledger input."""


class NotMedian(MedianLabError):
    """A triple with zero or several medians was found."""


class NotVerifiedMedian(MedianLabError):
    pass


class UnknownHyperplane(MedianLabError):
    pass


class SameHyperplane(MedianLabError):
    pass


class IllegalMove(MedianLabError):
    pass


class NotGeodesic(MedianLabError):
    pass


class EndpointMismatch(MedianLabError):
    pass


class UnknownGenerator(MedianLabError):
    pass


class NotAutomorphism(MedianLabError):
    pass


class InversionDetected(MedianLabError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
