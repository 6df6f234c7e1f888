"""Infinite chains in the semigroup tree.

A node lies in an infinite chain exactly when it is ordinary or the gcd
``d`` of its nonzero left elements differs from 1.  Chains through
non-ordinary nodes are in bijection with seeds ``(d, base)`` via
:func:`omega` and its inverse :func:`sigma`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import Optional

from .core import NumericalSemigroup
from .errors import (
    InvalidDivisor,
    NotApplicable,
    NotInChain,
    OrdinaryInput,
    PrefixTooShort,
    SemigroupError,
    Unbounded,
)

__all__ = [
    "ChainCount",
    "ChainSeed",
    "chain_children",
    "chain_member",
    "count_infinite_chains",
    "descendants_beyond",
    "in_infinite_chain",
    "is_fertile",
    "is_type_c",
    "left_gcd",
    "max_descendant",
    "omega",
    "scale_down",
    "sigma",
]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def left_gcd(s: NumericalSemigroup) -> int:
    """gcd of the nonzero left elements of a non-ordinary semigroup."""
    if s.is_ordinary():
        raise OrdinaryInput(f"{s} is ordinary; its left gcd is undefined")
    return reduce(gcd, s.left_elements()[1:])


def in_infinite_chain(s: NumericalSemigroup) -> bool:
    return s.is_ordinary() or left_gcd(s) != 1


def max_descendant(s: NumericalSemigroup) -> NumericalSemigroup:
    """Deepest descendant of a node with no infinite chain below it.

    It is the semigroup generated by the nonzero left elements.
    """
    if s.is_ordinary():
        raise NotApplicable(f"{s} is ordinary and has descendants of every genus")
    d = left_gcd(s)
    if d != 1:
        raise NotApplicable(f"{s} has left gcd {d} and lies in an infinite chain")
    return NumericalSemigroup.from_generators(s.left_elements()[1:])


def scale_down(s: NumericalSemigroup, d: int) -> NumericalSemigroup:
    """``{0} ∪ {λ/d : λ nonzero left element} ∪ [⌈c/d⌉, ∞)``."""
    if d < 1:
        raise InvalidDivisor(f"divisor must be positive, got {d}")
    left = s.left_elements()[1:]
    bad = [x for x in left if x % d]
    if bad:
        raise InvalidDivisor(f"{d} does not divide the left element {bad[0]}")
    top = -(-s.conductor // d)
    gaps = set(range(1, top)) - {x // d for x in left}
    return NumericalSemigroup.from_gaps(gaps)


def descendants_beyond(s: NumericalSemigroup, x: int) -> list[NumericalSemigroup]:
    """Descendants of ``s`` that keep every member of ``s`` up to ``x``.

    These are found by a DFS that only ever removes generators larger than
    ``x``.  The search is finite because every such descendant contains the
    semigroup generated by the mandatory set (members up to ``x`` together
    with the left elements), so its conductor is bounded.
    """
    if x not in s:
        raise SemigroupError(f"{x} is not a member of {s}")
    mandatory = set(s.members(x + 1)) | set(s.left_elements())
    mandatory.discard(0)
    if not mandatory or reduce(gcd, mandatory) != 1:
        raise Unbounded(f"members of {s} up to {x} do not generate a numerical semigroup")
    bound = NumericalSemigroup.from_generators(mandatory).conductor
    out = []
    stack = [s]
    while stack:
        node = stack.pop()
        kids = []
        for y in node.effective_generators():
            if y <= x:
                continue
            child = node._without(y)
            if child.conductor > bound:
                raise AssertionError(f"{child} escapes the conductor bound {bound}")
            kids.append(child)
        out.extend(kids)
        stack.extend(reversed(kids))
    return sorted(out)


@dataclass(frozen=True)
class ChainCount:
    """Number of infinite chains through a node; ``n is None`` means infinitely many."""

    n: Optional[int]

    @property
    def infinite(self) -> bool:
        return self.n is None

    def __str__(self) -> str:
        return "infinite" if self.n is None else str(self.n)


def count_infinite_chains(s: NumericalSemigroup) -> ChainCount:
    if s.is_ordinary():
        return ChainCount(None)
    d = left_gcd(s)
    if d == 1:
        raise NotInChain(f"{s} has left gcd 1 and lies in no infinite chain")
    if not _is_prime(d):
        return ChainCount(None)
    base = scale_down(s, d)
    top = s.left_elements()[-1] // d
    return ChainCount(1 + len(descendants_beyond(base, top)))


def chain_children(s: NumericalSemigroup) -> list[NumericalSemigroup]:
    """Children lying in an infinite chain.

    Only the removals of ``c`` and ``c + 1`` can keep a left gcd above 1:
    removing anything larger puts both ``c`` and ``c + 1`` among the left
    elements.
    """
    c = s.conductor
    out = []
    for x in s.effective_generators():
        if x > c + 1:
            break
        child = s._without(x)
        if in_infinite_chain(child):
            out.append(child)
    return out


def is_fertile(s: NumericalSemigroup) -> bool:
    """Strict majority of the children lie in infinite chains (leaves are not fertile)."""
    return 2 * len(chain_children(s)) > len(s.effective_generators())


def is_type_c(s: NumericalSemigroup) -> bool:
    return len(s.effective_generators()) == 3 and len(chain_children(s)) == 2


def chain_member(g: int, m: int) -> NumericalSemigroup:
    """A chain member of genus ``g`` and multiplicity ``m`` (``2 <= m <= g + 1``).

    ``{0, m, 2m, ..., qm, g + 1 + q, ->}`` with ``q = ⌊g/(m-1)⌋``.
    """
    if not 2 <= m <= g + 1:
        raise SemigroupError(f"need 2 <= m <= g + 1, got g={g}, m={m}")
    q = g // (m - 1)
    c = g + 1 + q
    members = {k * m for k in range(q + 1)}
    return NumericalSemigroup.from_gaps(set(range(1, c)) - members)


# -- seeds ---------------------------------------------------------------------


@dataclass(frozen=True)
class ChainSeed:
    d: int
    base: NumericalSemigroup

    def __post_init__(self):
        if self.d < 2:
            raise InvalidDivisor(f"seed divisor must be at least 2, got {self.d}")


def _omega_step(seed: ChainSeed, j: int) -> NumericalSemigroup:
    d, base = seed.d, seed.base
    gaps = [x for x in range(1, j) if x % d or (x // d) not in base]
    return NumericalSemigroup.from_gaps(gaps)


def omega(seed: ChainSeed, up_to_genus: int) -> list[NumericalSemigroup]:
    """The chain ``d·base ∪ [j, ∞)``, ``j = 0, 1, ...``, up to the given genus."""
    if up_to_genus < 0:
        raise SemigroupError("up_to_genus must be non-negative")
    out: list[NumericalSemigroup] = []
    j = 0
    while True:
        s = _omega_step(seed, j)
        if s.genus > up_to_genus:
            return out
        if not out or out[-1] != s:
            out.append(s)
        j += 1


def sigma(prefix: list[NumericalSemigroup]) -> ChainSeed:
    """Recover the seed of the chain a finite prefix belongs to.

    The last element ``L`` fixes ``d`` and the candidate base
    ``scale_down(L, d)``.  The base is determined by ``L`` once all of its
    generators lie below ``c(L)/d``, which holds when
    ``d·(c(base) + m(base) - 1) < c(L)``; shorter prefixes are ambiguous.
    """
    if not prefix:
        raise PrefixTooShort("empty prefix")
    for a, b in zip(prefix, prefix[1:]):
        if b.genus != a.genus + 1 or b._with_frobenius() != a:
            raise SemigroupError(f"{b} is not a child of {a}")
    for s in prefix:
        if not in_infinite_chain(s):
            raise NotInChain(f"{s} lies in no infinite chain")
    last = prefix[-1]
    if last.is_ordinary():
        raise PrefixTooShort("prefix never leaves the ordinary semigroups")
    d = left_gcd(last)
    base = scale_down(last, d)
    if d * (base.conductor + base.multiplicity - 1) >= last.conductor:
        raise PrefixTooShort(f"prefix ending at {last} does not determine its chain")
    seed = ChainSeed(d, base)
    chain = omega(seed, last.genus)
    start = prefix[0].genus - chain[0].genus
    if chain[start:] != list(prefix):
        raise SemigroupError("prefix is not a segment of the chain it determines")
    return seed
