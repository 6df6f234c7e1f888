"""Exception hierarchy for numerical semigroup operations."""


class SemigroupError(ValueError):
    """Base class for every error raised by :mod:`numsg`."""


class ClosureViolation(SemigroupError):
    """The complement of a gap set is not closed under addition."""

    def __init__(self, a: int, b: int):
        self.a = a
        self.b = b
        super().__init__(f"{a} and {b} are members but {a + b} is a gap")


class NotCoprime(SemigroupError):
    def __init__(self, gens, d: int):
        self.gens = tuple(gens)
        self.gcd = d
        super().__init__(f"generators {list(self.gens)} share the common divisor {d}")


class WindowTooLarge(SemigroupError):
    pass


class RootHasNoParent(SemigroupError):
    pass


class OrdinaryInput(SemigroupError):
    pass


class NotApplicable(SemigroupError):
    pass


class InvalidDivisor(SemigroupError):
    pass


class Unbounded(SemigroupError):
    pass


class NotInChain(SemigroupError):
    pass


class PrefixTooShort(SemigroupError):
    pass


class NotExpressible(SemigroupError):
    pass


class RangeError(SemigroupError):
    pass


class NotPrime(SemigroupError):
    pass
