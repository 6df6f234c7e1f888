"""Named families of numerical semigroups and the push operator."""

from __future__ import annotations

from dataclasses import dataclass

from .core import NumericalSemigroup
from .errors import NotExpressible, RangeError, SemigroupError

__all__ = [
    "M",
    "TABLE1",
    "TupleNotation",
    "from_tuple",
    "gamma",
    "hyperelliptic",
    "nu",
    "ordinary",
    "push",
    "push_n",
    "table1",
    "to_tuple",
]


def ordinary(g: int) -> NumericalSemigroup:
    """``{0, g+1, ->}``."""
    if g < 0:
        raise SemigroupError("genus must be non-negative")
    return NumericalSemigroup.from_gaps(range(1, g + 1))


def hyperelliptic(g: int) -> NumericalSemigroup:
    """``{0, 2, 4, ..., 2g, ->}``."""
    if g < 0:
        raise SemigroupError("genus must be non-negative")
    return NumericalSemigroup.from_gaps(range(1, 2 * g, 2))


def M(n: int) -> NumericalSemigroup:
    """``{4k : k >= 0} ∪ [4n+2, ∞)``, of genus ``3n + 1``."""
    if n < 1:
        raise SemigroupError("n must be at least 1")
    return NumericalSemigroup.from_gaps(x for x in range(1, 4 * n + 2) if x % 4)


# -- tuple notation ------------------------------------------------------------


@dataclass(frozen=True)
class TupleNotation:
    """``(b1, ..., bj)_n`` over multiplicity ``m``: the set
    ``{0, m, ..., nm, nm+b1, ..., nm+bj, ->}``."""

    m: int
    n: int
    betas: tuple

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.betas)) + f")_{self.n}"


def from_tuple(t: TupleNotation) -> NumericalSemigroup:
    m, n, betas = t.m, t.n, tuple(t.betas)
    if m < 2 or n < 1 or not betas:
        raise SemigroupError(f"invalid tuple notation {t}")
    if any(b <= 0 for b in betas) or any(a >= b for a, b in zip(betas, betas[1:])):
        raise SemigroupError(f"betas must be positive and strictly increasing in {t}")
    c = n * m + betas[-1]
    members = {k * m for k in range(n + 1)} | {n * m + b for b in betas}
    s = NumericalSemigroup.from_gaps(set(range(1, c)) - members)
    if s.conductor != c or s.multiplicity != m:
        raise SemigroupError(f"{t} does not describe a semigroup of multiplicity {m} and conductor {c}")
    return s


def to_tuple(s: NumericalSemigroup, m: int) -> TupleNotation:
    """Tuple notation with the largest possible ``n``."""
    if s.multiplicity != m or s.is_ordinary():
        raise NotExpressible(f"{s} has no tuple notation over multiplicity {m}")
    left = s.left_elements()
    n = 0
    while n + 1 < len(left) and left[n + 1] == (n + 1) * m:
        n += 1
    base = n * m
    betas = tuple(x - base for x in left[n + 1:]) + (s.conductor - base,)
    return TupleNotation(m, n, betas)


# -- multiplicity 6 ------------------------------------------------------------

TABLE1: dict[str, tuple] = {
    "A": (2,),
    "B": (3,),
    "C": (2, 4),
    "D": (4,),
    "E": (3, 5),
    "F": (2, 5),
    "G": (2, 4, 6),
    "H": (5,),
    "I": (4, 6),
    "J": (3, 6),
    "K": (2, 6),
    "L": (2, 4, 6, 8),
    "M": (6,),
    "N": (4, 6, 8),
    "O": (3, 6, 8),
    "P": (2, 6, 8),
    "Q": (2, 4, 6, 8, 10),
    "R": (6, 8),
    "S": (4, 6, 9),
    "T": (4, 6, 8, 10),
    "U": (3, 6, 9),
    "V": (2, 6, 8, 10),
    "X": (2, 4, 6, 8, 10, 12),
}


def table1(label: str, n: int) -> NumericalSemigroup:
    try:
        betas = TABLE1[label]
    except KeyError:
        raise SemigroupError(f"unknown label {label!r}") from None
    return from_tuple(TupleNotation(6, n, betas))


def gamma(n: int, t: int) -> NumericalSemigroup:
    """``(a_1, ..., a_{2t+1})_n`` over multiplicity 6; genus ``5n + 4t + 1``."""
    if n < 1 or not 1 <= t <= n + 1:
        raise RangeError(f"gamma needs n >= 1 and 1 <= t <= n+1, got n={n}, t={t}")
    last = 2 * t + 1

    def a(i):
        if i == last:
            return 3 * i - 1
        return 3 * i + 1 if i % 2 else 3 * i

    s = from_tuple(TupleNotation(6, n, tuple(a(i) for i in range(1, last + 1))))
    if s.genus != 5 * n + 4 * t + 1:
        raise AssertionError(f"gamma({n},{t}) has genus {s.genus}")
    return s


def nu(n: int, t: int) -> NumericalSemigroup:
    """``(b_1, ..., b_{2t+2})_n`` over multiplicity 6; genus ``5n + 4t + 2``."""
    if n < 1 or not 1 <= t <= n:
        raise RangeError(f"nu needs 1 <= t <= n, got n={n}, t={t}")
    last = 2 * t + 2

    def b(i):
        if i % 2:
            return 3 * i - 1
        return 3 * i - 2 if i == last else 3 * i

    s = from_tuple(TupleNotation(6, n, tuple(b(i) for i in range(1, last + 1))))
    if s.genus != 5 * n + 4 * t + 2:
        raise AssertionError(f"nu({n},{t}) has genus {s.genus}")
    return s


# -- push ----------------------------------------------------------------------


def push(s: NumericalSemigroup) -> NumericalSemigroup:
    """``{0} ∪ {m + x : x ∈ s}`` where ``m`` is the multiplicity of ``s``."""
    if s.genus == 0:
        return s
    m = s.multiplicity
    c = s.conductor + m
    members = {0} | {m + x for x in s.left_elements()}
    return NumericalSemigroup.from_gaps(set(range(1, c)) - members)


def push_n(s: NumericalSemigroup, k: int) -> NumericalSemigroup:
    if k < 0:
        raise SemigroupError("k must be non-negative")
    for _ in range(k):
        s = push(s)
    return s
