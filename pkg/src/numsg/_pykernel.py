"""Pure-Python counting kernel for genus-bounded tree traversal.

A node is carried as a compact tuple ``(M, R, c, m, g, d, gens)``:

* ``M``: membership bits over ``[0, N)`` for a fixed traversal width ``N``
* ``R``: the same set mirrored, bit ``j`` set iff ``N - j`` is a member
* ``d``: gcd of the nonzero left elements, 0 when there are none
* ``gens``: effective generators, ascending

Children follow the child-generator dichotomy: removing ``x`` keeps the
parent's generators above ``x`` and may add ``x + m``.  Whether ``x + m`` is
decomposable is a single AND between ``M`` and a shifted ``R``.
"""

from __future__ import annotations

from math import gcd

BACKEND = "python"


def width_for(max_genus: int, window: int) -> int:
    # children of nodes with genus < G need x + m <= 4G + 1
    return max(4 * max_genus + 8, window + 2)


def root_state(bits: int, c: int, m: int, g: int, width: int):
    M = bits | (((1 << width) - 1) ^ ((1 << (c + m)) - 1))
    R = int(format(M, f"0{width + 1}b")[::-1], 2)
    gens = []
    for x in range(max(c, 1), c + m + 1):
        y = x
        if not (M & (R >> (width - y)) & ((1 << y) - 2)):
            gens.append(x)
    d = 0
    for a in range(1, c):
        if (M >> a) & 1:
            d = gcd(d, a)
    return (M, R, c, m, g, d, tuple(gens))


def children(state, width: int, chain_only: bool, fixed_m: int):
    """Yield ``(x, child_state)`` for every child passing the filters, plus
    ``(x, None)`` for rejected children (so callers can count examined nodes)."""
    M, R, c, m, g, d, gens = state
    for i, x in enumerate(gens):
        if x == c:
            nd = d
        elif x == c + 1:
            nd = gcd(d, c)
        else:
            nd = 1
        nm = m + 1 if x == m else m
        if (fixed_m and nm != fixed_m) or (chain_only and nd == 1):
            yield x, None
            continue
        M2 = M & ~(1 << x)
        R2 = R & ~(1 << (width - x))
        if x == m:
            ngens = tuple(range(nm, 2 * nm))
        else:
            y = x + m
            if M2 & (R2 >> (width - y)) & ((1 << y) - 2):
                ngens = gens[i + 1:]
            else:
                ngens = gens[i + 1:] + (y,)
        yield x, (M2, R2, x + 1, nm, g + 1, nd, ngens)


def fertile(state) -> bool:
    _, _, c, _, _, d, gens = state
    if d == 1:
        return False
    chain_kids = 0
    if c in gens:
        chain_kids += 1
    if c + 1 in gens and gcd(d, c) != 1:
        chain_kids += 1
    return 2 * chain_kids > len(gens)


def tally(state, count, chain, chain_by_m, fertile_counts, stride):
    _, _, c, m, g, d, gens = state
    count[g] += 1
    if d != 1:
        chain[g] += 1
        chain_by_m[g * stride + m] += 1
        if fertile(state):
            fertile_counts[g] += 1


def count_subtree(bits: int, c: int, m: int, g: int, max_genus: int,
                  chain_only: bool = False, fixed_m: int = 0):
    """Count the subtree below the semigroup given by window ``bits``.

    The root itself is counted unconditionally.  Returns the tuple
    ``(count, examined, chain, chain_by_m, fertile)`` of flat lists; the
    ``chain_by_m`` list is row-major with stride ``max_genus + 2``.
    """
    size = max_genus + 1
    stride = max_genus + 2
    count = [0] * size
    examined = [0] * size
    chain = [0] * size
    chain_by_m = [0] * (size * stride)
    fert = [0] * size
    if g > max_genus:
        return count, examined, chain, chain_by_m, fert
    width = width_for(max_genus, c + m)
    root = root_state(bits, c, m, g, width)
    examined[g] += 1
    tally(root, count, chain, chain_by_m, fert, stride)
    stack = [root]
    pop = stack.pop
    push = stack.append
    while stack:
        node = pop()
        if node[4] >= max_genus:
            continue
        ng = node[4] + 1
        for _, child in children(node, width, chain_only, fixed_m):
            examined[ng] += 1
            if child is not None:
                tally(child, count, chain, chain_by_m, fert, stride)
                push(child)
    return count, examined, chain, chain_by_m, fert
