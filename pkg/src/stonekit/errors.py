"""Exception hierarchy shared by every module.

The CLI prints ``type(exc).__name__`` on stderr for any :class:`StoneError`,
so class names are part of the public interface.
"""


class StoneError(Exception):
    """Base class for domain errors."""


class MalformedInput(StoneError, ValueError):
    """Tables or JSON documents with the wrong shape or out-of-range indices."""


class SizeLimit(StoneError, ValueError):
    pass


class AxiomViolation(StoneError):
    """A Boolean algebra law fails.

    ``axiom`` is one of ``commutativity``, ``associativity``, ``absorption``,
    ``distributivity``, ``complement``, ``bounds``; ``witness`` is the
    lexicographically first tuple of element indices that breaks it.
    """

    def __init__(self, axiom, witness):
        self.axiom = axiom
        self.witness = tuple(witness)
        super().__init__(f"{axiom} fails at {self.witness}")


class DegenerateAlgebra(StoneError):
    pass


class InvalidModulus(StoneError, ValueError):
    pass


class ShapeMismatch(StoneError, ValueError):
    pass


class NotProper(StoneError):
    pass


class NotAHom(StoneError):
    pass


class NotSurjective(StoneError):
    pass


class IncompatibleTransitions(StoneError):
    def __init__(self, index, message=""):
        self.index = index
        super().__init__(f"transition {index}: {message}" if message else f"transition {index}")


class NotPrime(StoneError, ValueError):
    pass


class PrecisionZero(StoneError, ValueError):
    pass


class WrongPrime(StoneError, ValueError):
    pass


class ModuliNotClosed(StoneError, ValueError):
    pass


class UnknownModulus(StoneError, KeyError):
    pass


class PrimeMismatch(StoneError, ValueError):
    pass


class InsufficientPrecision(StoneError):
    pass


class NotOpen(StoneError):
    pass


class NotRegularOpen(StoneError):
    def __init__(self, member):
        self.member = member
        super().__init__(f"not a regular open: {member!r}")


class UnsupportedKind(StoneError, ValueError):
    pass
