"""Exception hierarchy shared by the codec, graph and overlay modules."""


class FftncError(Exception):
    """Base class for every error raised by this package."""


class DomainError(FftncError, ValueError):
    """An argument lies outside the domain of the operation."""


class InsufficientRankError(FftncError):
    """The collected coefficient vectors do not span the source space."""

    def __init__(self, rank: int, k: int):
        super().__init__(f"insufficient rank: rank {rank} of {k}")
        self.rank = rank
        self.k = k


class IntegrityError(FftncError):
    """Blocks disagree with each other or with their claimed provenance."""


class ContainerFormatError(FftncError, ValueError):
    """A share container could not be parsed or serialized."""


class CapacityError(FftncError):
    """The graph cannot grow further or lacks room for a placement."""


class ReduceError(FftncError):
    """The overlay cannot be folded into a graph of half the size."""


class ScenarioParseError(FftncError, ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno
