"""Exception hierarchy.

Validation problems subclass ``ValueError``; resource caps subclass
``ResourceCap`` so callers (and the CLI exit codes) can tell them apart.
"""


class GolombError(Exception):
    pass


class ResourceCap(GolombError):
    pass


class SizeCap(ResourceCap):
    pass


class OpenSetCap(ResourceCap):
    pass


class EmptyFactorList(GolombError, ValueError):
    pass


class NonDividingChain(GolombError, ValueError):
    pass


class ParentMismatch(GolombError, ValueError):
    pass


class RankMismatch(GolombError, ValueError):
    pass


class ParseError(GolombError, ValueError):
    pass


class NotProper(GolombError, ValueError):
    pass


class ZeroSubmodule(GolombError, ValueError):
    pass


class NotCoprime(GolombError, ValueError):
    pass


class NoSolution(GolombError):
    pass


class NotARefutation(GolombError):
    """A claimed refutation certificate does not hold."""

    def __init__(self, message, failed=None):
        super().__init__(message)
        self.failed = failed


class NotABasis(GolombError):
    def __init__(self, message, counterexample=None):
        super().__init__(message)
        self.counterexample = counterexample
