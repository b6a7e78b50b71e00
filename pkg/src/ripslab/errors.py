"""Exception hierarchy.  Every domain error derives from :class:`RipsLabError`
so the CLI can map it to exit status 1."""


class RipsLabError(Exception):
    pass


class InvalidParameter(RipsLabError, ValueError):
    pass


class MetricError(RipsLabError, ValueError):
    """Raised by :func:`ripslab.metric_spaces.validate`."""


class NotSquare(MetricError):
    pass


class AsymmetricEntry(MetricError):
    def __init__(self, i, j):
        super().__init__(f"d[{i}][{j}] != d[{j}][{i}]")
        self.i, self.j = i, j


class NegativeEntry(MetricError):
    def __init__(self, i, j):
        super().__init__(f"d[{i}][{j}] is negative or not finite")
        self.i, self.j = i, j


class NonzeroDiagonal(MetricError):
    def __init__(self, i):
        super().__init__(f"d[{i}][{i}] != 0")
        self.i = i


class TriangleViolation(MetricError):
    def __init__(self, i, j, k):
        super().__init__(f"d[{i}][{k}] > d[{i}][{j}] + d[{j}][{k}]")
        self.i, self.j, self.k = i, j, k


class SizeOverflow(RipsLabError):
    pass


class SizeMismatch(RipsLabError, ValueError):
    pass


class IndexOutOfRange(RipsLabError, IndexError):
    pass


class SlackTooSmall(RipsLabError):
    def __init__(self, required_eps_max):
        super().__init__(f"eps must be <= {required_eps_max!r} to keep the triangle inequality")
        self.required_eps_max = required_eps_max


class CapExceeded(RipsLabError):
    def __init__(self, simplex_count):
        super().__init__(f"simplex budget exceeded ({simplex_count} simplices)")
        self.simplex_count = simplex_count


class InsufficientDimension(RipsLabError):
    pass


class NotPrime(RipsLabError, ValueError):
    pass


class NoEssentialComponent(RipsLabError):
    pass


class FieldMismatch(RipsLabError):
    pass


class BudgetExceeded(RipsLabError):
    pass


class DomainError(RipsLabError, ValueError):
    pass


class DimensionMismatch(RipsLabError, ValueError):
    pass
