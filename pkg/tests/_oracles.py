"""Slow, independent reference implementations used only by the tests.

Nothing here touches the bit-vector representation or the tree code: sets
are plain Python sets and every property is checked by brute force.
"""

from functools import lru_cache
from itertools import combinations
from math import gcd
from functools import reduce


def closed(gaps, limit=None):
    """True iff N0 minus ``gaps`` is closed under addition."""
    gaps = set(gaps)
    if not gaps:
        return True
    top = max(gaps)
    members = [x for x in range(1, top + 1) if x not in gaps]
    for i, a in enumerate(members):
        for b in members[i:]:
            if a + b > top:
                break
            if a + b in gaps:
                return False
    return True


@lru_cache(maxsize=None)
def gap_sets(g):
    """All gap sets of genus ``g`` (every gap is below 2g, and 1 is a gap when g > 0)."""
    if g == 0:
        return (frozenset(),)
    out = []
    for rest in combinations(range(2, 2 * g), g - 1):
        gaps = (1,) + rest
        if closed(gaps):
            out.append(frozenset(gaps))
    return tuple(sorted(out, key=sorted))


def members_below(gaps, n):
    return [x for x in range(n) if x not in gaps]


def conductor(gaps):
    return max(gaps) + 1 if gaps else 0


def closure_of(gens, bound):
    """Members of the monoid generated by ``gens`` up to ``bound`` (DP)."""
    reach = [False] * (bound + 1)
    reach[0] = True
    for x in range(1, bound + 1):
        reach[x] = any(v <= x and reach[x - v] for v in gens)
    return {x for x in range(bound + 1) if reach[x]}


def gaps_of_generated(gens):
    d = reduce(gcd, gens)
    assert d == 1
    bound = max(gens) * min(gens) * 2 + 10
    mem = closure_of(gens, bound)
    return frozenset(x for x in range(1, bound) if x not in mem)


def minimal_generators(gaps):
    if not gaps:
        return [1]
    c = conductor(gaps)
    m = min(x for x in range(1, c + 2) if x not in gaps)
    out = []
    for x in range(1, c + m):
        if x in gaps:
            continue
        if not any((a not in gaps) and (x - a not in gaps) for a in range(1, x)):
            out.append(x)
    return out


def effective_generators(gaps):
    c = conductor(gaps)
    return [x for x in minimal_generators(gaps) if x >= c]


def children_gaps(gaps):
    return [frozenset(gaps | {x}) for x in effective_generators(gaps)]


def parent_gaps(gaps):
    return frozenset(gaps - {max(gaps)})


def left_gcd(gaps):
    c = conductor(gaps)
    left = [x for x in range(1, c) if x not in gaps]
    return reduce(gcd, left, 0)


def is_ordinary(gaps):
    return gaps == frozenset(range(1, len(gaps) + 1))
