"""
Exceptions raised by the trichotomy engine.

Library code raises these; the classifier turns resource limits into an
Unknown verdict and the cli turns input problems into exit code 1.
"""


class TrichotomyError(Exception):
    """Base class for every error the engine raises on purpose."""


class DegreeMismatch(TrichotomyError):
    pass


class EmptyDegree(TrichotomyError):
    pass


class NonMember(TrichotomyError):
    pass


class OrderExceedsLimit(TrichotomyError):
    def __init__(self, order, limit):
        super().__init__(f"group order {order} exceeds the enumeration limit {limit}")
        self.order = order
        self.limit = limit


class IndexExceedsLimit(TrichotomyError):
    def __init__(self, index, limit):
        super().__init__(f"index {index} exceeds the limit {limit}")
        self.index = index
        self.limit = limit


class NotNormal(TrichotomyError):
    pass


class NotPrime(TrichotomyError):
    pass


class SizeExceeded(TrichotomyError):
    pass


class BadParams(TrichotomyError):
    pass


class ActionNotClosed(TrichotomyError):
    pass


class ActionNotFaithful(TrichotomyError):
    pass


class ActionNotAutomorphism(TrichotomyError):
    pass


class NotSylow(TrichotomyError):
    pass


class NotCharacter(TrichotomyError):
    pass


class SourceMismatch(TrichotomyError):
    pass


class CheckFailed(TrichotomyError):
    def __init__(self, check, detail=""):
        message = f"check '{check}' failed"
        if detail:
            message += f": {detail}"
        super().__init__(message)
        self.check = check


class FusionNotControlled(TrichotomyError):
    pass


class NotFound(TrichotomyError):
    pass


class StaleCertificate(TrichotomyError):
    pass


class GroupSpecError(TrichotomyError):
    """
    A group specification that does not parse.

    Attributes
    ----------
    line : int
        1-based line of the offending character
    column : int
        1-based column of the offending character
    """

    def __init__(self, message, line=1, column=1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class UnknownBuiltin(GroupSpecError):
    pass
