"""Exception hierarchy shared by every module of the package."""


class CofiniteError(Exception):
    """Base class for all package errors."""


class TotalityError(CofiniteError, ValueError):
    """A periodic tail sends some non-exceptional key to a negative number."""

    def __init__(self, keys):
        self.keys = tuple(sorted(keys))
        super().__init__(
            "map is not total: tail value negative at keys %s" % list(self.keys)
        )


class PreconditionError(CofiniteError):
    """An operation was called on a map outside its domain of definition."""


class NotNearBijection(PreconditionError):
    pass


class NotNearInjection(PreconditionError):
    pass


class NotSurjective(PreconditionError):
    pass


class IndexNonzero(PreconditionError):
    def __init__(self, index):
        self.index = index
        super().__init__("index is %d, expected 0" % index)


class IndexPositive(PreconditionError):
    def __init__(self, index):
        self.index = index
        super().__init__("index is %d, expected <= 0" % index)


class IndexNegative(PreconditionError):
    def __init__(self, index):
        self.index = index
        super().__init__("index is %d, expected >= 0" % index)


class IndexMismatch(PreconditionError):
    def __init__(self, left, right):
        self.left = left
        self.right = right
        super().__init__("indices differ: %d != %d" % (left, right))


class FibersMismatch(PreconditionError):
    def __init__(self, point, message):
        self.point = point
        super().__init__(message)


class InfiniteSetError(CofiniteError):
    """Raised when a finite answer was demanded for an infinite set."""

    def __init__(self, result, what="set"):
        self.result = result
        super().__init__("%s is infinite: %s" % (what, result.describe()))
