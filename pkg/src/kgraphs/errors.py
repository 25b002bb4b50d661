"""Exception hierarchy shared by all modules."""


class KGraphError(ValueError):
    """Base class for every error raised by this package."""


class DuplicateId(KGraphError):
    pass


class UnknownVertex(KGraphError, KeyError):
    pass


class DanglingEndpoint(KGraphError):
    pass


class BadColor(KGraphError):
    pass


class ValidationError(KGraphError):
    """A presentation failed validation; ``report`` carries every finding."""

    def __init__(self, report):
        self.report = report
        super().__init__("; ".join(str(p) for p in report.problems[:5]))


class NotComposable(KGraphError):
    pass


class DegreeOutOfRange(KGraphError):
    pass


class TooLarge(KGraphError):
    pass


class NotSaturatedHereditary(KGraphError):
    pass


class QuotientEmpty(KGraphError):
    pass


class NoWitness(KGraphError):
    """A search the theory guarantees to succeed came back empty (a bug)."""


class CapExceeded(KGraphError):
    pass


class NotRankOne(KGraphError):
    pass


class NotRankTwo(KGraphError):
    pass


class BadPair(KGraphError):
    pass


class InconsistentSquare(KGraphError):
    pass


class KgSyntaxError(KGraphError):
    def __init__(self, line: int, reason: str):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")
