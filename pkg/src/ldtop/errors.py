"""Exception hierarchy shared by all ldtop modules."""


class LdtopError(Exception):
    """Base class; the CLI maps subclasses onto exit codes."""

    exit_code = 3


class ParseError(LdtopError):
    exit_code = 2


class MissingFace(LdtopError):
    def __init__(self, simplex, face):
        super().__init__(f"simplex {simplex} is missing its face {face}")
        self.simplex = simplex
        self.face = face


class SimplexNotFound(LdtopError):
    pass


class NotNested(LdtopError):
    def __init__(self, n):
        super().__init__(f"stage {n} is not contained in stage {n + 1}")
        self.n = n


class StarUnstable(LdtopError):
    def __init__(self, simplex, n):
        super().__init__(f"star of {simplex} still changes at stage {n}")
        self.simplex = simplex
        self.n = n


class MissingStability(LdtopError):
    pass


class InconsistentIdentification(LdtopError):
    pass


class NotSubcomplex(LdtopError):
    pass


class NotSimplicial(LdtopError):
    pass


class PreconditionViolated(LdtopError):
    pass


class Disconnected(LdtopError):
    pass


class BudgetExceeded(LdtopError):
    exit_code = 4


class WordProblemUnresolved(LdtopError):
    exit_code = 4


class NonMonotone(LdtopError):
    pass
