"""Exception hierarchy. Every error raised by the library derives from StratkitError."""


class StratkitError(Exception):
    pass


# presentation / rewriting
class PresentationSyntaxError(StratkitError, SyntaxError):
    def __init__(self, msg, lineno=None):
        self.lineno = lineno
        super().__init__("line %d: %s" % (lineno, msg) if lineno else msg)


class NonHomogeneousRelation(StratkitError):
    pass


class UnknownSymbol(StratkitError):
    pass


class NonComposablePath(StratkitError):
    pass


class NotFiniteWithinBound(StratkitError):
    pass


class CompletionOverflow(StratkitError):
    pass


class NotFinite(StratkitError):
    pass


# algebra / modules
class UnknownVertex(StratkitError):
    pass


class VectorOutOfSpace(StratkitError):
    pass


class NotStable(StratkitError):
    pass


class NotIsomorphic(StratkitError):
    pass


class IsomorphismUndecided(StratkitError):
    pass


# stratification
class TooLarge(StratkitError):
    pass


class NotInitialSegment(StratkitError):
    pass


class NoFiltrationFound(StratkitError):
    pass


class DivisibilityFailure(NoFiltrationFound):
    pass


class HypothesisViolated(StratkitError):
    pass


class WitnessFailure(StratkitError):
    pass


# homological
class CertificateFailure(StratkitError):
    pass


class NotTruncatedModule(StratkitError):
    pass
