"""Canonical bit-vector representation of a numerical semigroup.

A semigroup is stored as a Python integer used as a bit set over the window
``[0, c + m)``; bit ``i`` is set iff ``i`` is a member.  Every integer at or
above the window is implicitly a member.
"""

from __future__ import annotations

import os
from functools import reduce
from math import gcd
from typing import Iterable, Iterator

from .errors import ClosureViolation, NotCoprime, SemigroupError, WindowTooLarge

__all__ = [
    "NumericalSemigroup",
    "max_window",
]

_DEFAULT_MAX_WINDOW = 1 << 20


def max_window() -> int:
    """Largest window (in bits) any constructor will accept.

    Overridable through the ``SG_MAX_WINDOW`` environment variable.
    """
    raw = os.environ.get("SG_MAX_WINDOW")
    if raw is None:
        return _DEFAULT_MAX_WINDOW
    try:
        value = int(raw)
    except ValueError:
        raise SemigroupError(f"SG_MAX_WINDOW must be an integer, got {raw!r}") from None
    if value < 1:
        raise SemigroupError("SG_MAX_WINDOW must be positive")
    return value


def _mask(n: int) -> int:
    return (1 << n) - 1


def _bits_of(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class NumericalSemigroup:
    """An immutable numerical semigroup.

    Build instances with :meth:`from_gaps` or :meth:`from_generators`.  Two
    semigroups compare equal iff they have the same members.
    """

    __slots__ = ("_bits", "_c", "_m", "_g", "_mingens")

    def __init__(self, *args, **kwargs):
        raise TypeError("use NumericalSemigroup.from_gaps or NumericalSemigroup.from_generators")

    # -- construction -----------------------------------------------------

    @classmethod
    def _from_mask(cls, bits: int, limit: int) -> "NumericalSemigroup":
        """Normalize a membership mask where every integer >= ``limit`` is a member.

        No closure check is done here; callers either know the set is closed
        or validate afterwards.
        """
        low = bits & _mask(limit)
        c = (~low & _mask(limit)).bit_length()
        self = object.__new__(cls)
        if c == 0:
            self._bits, self._c, self._m, self._g = 1, 0, 1, 0
            self._mingens = (1,)
            return self
        # c <= limit, and m <= c, so members up to 2c are all visible here
        ext = low | (_mask(limit + c + 1) ^ _mask(limit))
        rest = ext >> 1
        m = (rest & -rest).bit_length()
        window = c + m
        if window > max_window():
            raise WindowTooLarge(f"window of {window} bits exceeds the limit of {max_window()}")
        self._bits = ext & _mask(window)
        self._c = c
        self._m = m
        self._g = c - (self._bits & _mask(c)).bit_count()
        self._mingens = None
        return self

    @classmethod
    def natural(cls) -> "NumericalSemigroup":
        """The trivial semigroup of all non-negative integers."""
        return cls._from_mask(1, 1)

    @classmethod
    def from_gaps(cls, gaps: Iterable[int]) -> "NumericalSemigroup":
        """Return ``N0 minus gaps``.

        Raises
        ------
        ClosureViolation
            If the complement is not closed under addition.
        """
        gap_mask = 0
        for x in gaps:
            x = int(x)
            if x <= 0:
                raise SemigroupError(f"gaps must be positive integers, got {x}")
            if x >= max_window():
                raise WindowTooLarge(f"gap {x} exceeds the window limit")
            gap_mask |= 1 << x
        limit = gap_mask.bit_length()
        bits = _mask(max(limit, 1)) & ~gap_mask
        _check_closure(bits, limit)
        return cls._from_mask(bits, max(limit, 1))

    @classmethod
    def from_generators(cls, gens: Iterable[int]) -> "NumericalSemigroup":
        """Smallest numerical semigroup containing ``gens``.

        Raises
        ------
        NotCoprime
            If the generators share a common divisor greater than one.
        """
        values = sorted({int(x) for x in gens})
        if not values:
            raise SemigroupError("at least one generator is required")
        if values[0] <= 0:
            raise SemigroupError(f"generators must be positive, got {values[0]}")
        d = reduce(gcd, values)
        if d != 1:
            raise NotCoprime(values, d)
        a = values[0]
        # grow the closure until a run of `a` consecutive members appears
        bits = 1
        run = 0
        x = 0
        limit_guard = max_window() + a
        while run < a:
            x += 1
            if x > limit_guard:
                raise WindowTooLarge("closure does not fit in the window limit")
            if any(v <= x and (bits >> (x - v)) & 1 for v in values):
                bits |= 1 << x
                run += 1
            else:
                run = 0
        return cls._from_mask(bits, x + 1)

    # -- basic statistics -------------------------------------------------

    @property
    def conductor(self) -> int:
        return self._c

    @property
    def multiplicity(self) -> int:
        return self._m

    @property
    def genus(self) -> int:
        return self._g

    @property
    def frobenius(self) -> int:
        return self._c - 1

    @property
    def window(self) -> int:
        """Length ``c + m`` of the explicit membership window."""
        return self._c + self._m

    @property
    def bits(self) -> int:
        """Membership bits over the window ``[0, c + m)``."""
        return self._bits

    def bits_upto(self, n: int) -> int:
        """Membership bits over ``[0, n)``, extending past the window as needed."""
        if n <= self.window:
            return self._bits & _mask(n)
        return self._bits | (_mask(n) ^ _mask(self.window))

    @property
    def gaps(self) -> tuple[int, ...]:
        return tuple(_bits_of(~self._bits & _mask(self._c)))

    def __contains__(self, x: int) -> bool:
        if x < 0:
            return False
        if x >= self._c:
            return True
        return bool((self._bits >> x) & 1)

    def members(self, upto: int) -> list[int]:
        """Members strictly below ``upto``."""
        return [x for x in range(upto) if x in self]

    def element(self, i: int) -> int:
        """The ``i``-th smallest member (``element(0) == 0``)."""
        if i < 0:
            raise SemigroupError("index must be non-negative")
        nleft = self._c - self._g
        if i >= nleft:
            return self._c + (i - nleft)
        for k, x in enumerate(_bits_of(self._bits & _mask(self._c))):
            if k == i:
                return x
        raise AssertionError("unreachable")

    def left_elements(self) -> list[int]:
        """Members smaller than the conductor, 0 included."""
        return list(_bits_of(self._bits & _mask(self._c)))

    def minimal_generators(self) -> list[int]:
        if self._mingens is None:
            window = self.window
            nonzero = self._bits & ~1
            sums = 0
            for a in _bits_of(nonzero):
                if 2 * a >= window:
                    break
                sums |= nonzero << a
            self._mingens = tuple(_bits_of(nonzero & ~sums & _mask(window)))
        return list(self._mingens)

    def effective_generators(self) -> list[int]:
        c = self._c
        return [x for x in self.minimal_generators() if x >= c]

    @property
    def embedding_dimension(self) -> int:
        return len(self.minimal_generators())

    def is_ordinary(self) -> bool:
        return self._c - self._g <= 1

    def is_hyperelliptic(self) -> bool:
        c = self._c
        if c % 2:
            return False
        evens = int("01" * (c // 2), 2) if c else 0
        return self._bits & _mask(c) == evens

    # -- tree moves used by the tree module -------------------------------

    def _without(self, x: int) -> "NumericalSemigroup":
        """Remove an effective generator ``x`` (no validation)."""
        limit = max(self.window, x + 1)
        bits = (self._bits | (_mask(limit) ^ _mask(self.window))) & ~(1 << x)
        return NumericalSemigroup._from_mask(bits, limit)

    def _with_frobenius(self) -> "NumericalSemigroup":
        return NumericalSemigroup._from_mask(self._bits | (1 << (self._c - 1)), self.window)

    def validate(self) -> None:
        """Re-check every representation invariant; raise ``AssertionError`` on failure."""
        c, m, bits = self._c, self._m, self._bits
        assert bits & 1, "0 must be a member"
        assert bits < (1 << (c + m)), "bits outside the window"
        if c:
            assert not (bits >> (c - 1)) & 1, "c - 1 must be a gap"
        assert (bits >> c) == _mask(m), "window above the conductor must be full"
        assert self._g == c - (bits & _mask(c)).bit_count()
        rest = bits >> 1
        if c:
            assert (rest & -rest).bit_length() == m
        else:
            assert m == 1
        _check_closure(bits & _mask(c), c)

    # -- dunder -----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, NumericalSemigroup):
            return NotImplemented
        return self._c == other._c and self._bits == other._bits

    def __hash__(self) -> int:
        return hash((self._c, self._bits))

    def __lt__(self, other: "NumericalSemigroup") -> bool:
        return (self._g, self.gaps) < (other._g, other.gaps)

    def __reduce__(self):
        return (_restore, (self._bits, self.window))

    def __str__(self) -> str:
        if self._c == 0:
            return "{0,→}"
        shown = self.left_elements() + [self._c]
        return "{" + ",".join(map(str, shown)) + ",→}"

    def __repr__(self) -> str:
        return f"NumericalSemigroup.from_gaps({list(self.gaps)})"

    @property
    def key(self) -> str:
        """Canonical string key: the gaps, comma separated (empty for N0)."""
        return ",".join(map(str, self.gaps))


def _restore(bits: int, window: int) -> NumericalSemigroup:
    return NumericalSemigroup._from_mask(bits, window)


def _check_closure(bits: int, limit: int) -> None:
    """Raise ``ClosureViolation`` if two members below ``limit`` sum to a gap.

    Sums at or above ``limit`` are members by assumption, so only pairs of
    nonzero members below ``limit`` matter.
    """
    window = _mask(limit)
    holes = ~bits & window
    nonzero = bits & window & ~1
    for a in _bits_of(nonzero):
        if 2 * a >= limit:
            break
        bad = (nonzero << a) & holes
        if bad:
            s = (bad & -bad).bit_length() - 1
            raise ClosureViolation(a, s - a)
