"""Exception hierarchy shared by every module of the package."""


class FrameError(Exception):
    """Base class for all errors raised by erasureframes."""


class InvalidInput(FrameError, ValueError):
    pass


class InvalidParameters(FrameError, ValueError):
    pass


class NotLeftInvertible(FrameError):
    pass


class NotParseval(FrameError):
    pass


class NotUniform(FrameError):
    pass


class NotTwoUniform(FrameError):
    pass


class NotASignature(FrameError):
    """No admissible (k, mu) exists for a candidate signature matrix."""


class NotTwoUniformSignature(NotASignature):
    """Q^2 - (n-1)I is not an integer multiple of Q."""


class InconsistentParameters(NotASignature):
    """The two independent routes to k disagree, or k is not an integer."""


class NotStronglyRegular(FrameError):
    pass


class SizeLimit(FrameError):
    pass


class NotReconstructible(FrameError):
    pass


class Unavailable(FrameError):
    pass


class BudgetExceeded(FrameError):
    """Raised when an enumeration would exceed its subset budget.

    The partial result computed before stopping is attached as ``report``
    and is flagged non-exact.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class SignatureParseError(FrameError, ValueError):
    pass


class BadCharacter(SignatureParseError):
    def __init__(self, row, col, char):
        super().__init__(f"bad character {char!r} at row {row}, column {col}")
        self.row, self.col, self.char = row, col, char


class NotSymmetric(SignatureParseError):
    def __init__(self, i, j):
        super().__init__(f"entries ({i},{j}) and ({j},{i}) differ")
        self.i, self.j = i, j


class NonZeroDiagonal(SignatureParseError):
    def __init__(self, i):
        super().__init__(f"diagonal entry {i} is not '0'")
        self.i = i


class RaggedLines(SignatureParseError):
    pass
