"""Closed-form chain counts and their cross-checks against enumeration."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional

from .chains import in_infinite_chain, is_fertile
from .core import NumericalSemigroup
from .errors import NotPrime, SemigroupError
from .families import M, TABLE1, hyperelliptic, push, push_n, table1
from .tree import enumerate_tree, iter_tree, multiplicity_subtree_root

__all__ = [
    "FormulaReport",
    "FormulaRow",
    "SUITES",
    "TAU_EDGES",
    "chain_counts_by_multiplicity",
    "fertile_set",
    "i4",
    "i6",
    "i6_variant",
    "i_prime",
    "is_prime",
    "m4_motif_occurrences",
    "majority_check",
    "run_suite",
    "tau_replication",
]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def i_prime(g: int, m: int) -> int:
    """Chain members of genus ``g`` and prime multiplicity ``m``."""
    if not is_prime(m):
        raise NotPrime(f"{m} is not prime")
    return 0 if g < m - 1 else 1


def i4(g: int) -> int:
    if g <= 2:
        return 0
    if g <= 4:
        return 1
    return (g + 1) // 3


def _sum_range(lo: int, hi: int, f) -> int:
    # empty when lo > hi
    return sum(f(n) for n in range(lo, hi + 1))


def _i6_base(g: int) -> int:
    base = g - 5 if g % 5 <= 2 else g - 4
    # same split written through the remainder of g - 6 modulo 5
    r = (g - 6) % 5
    alt = g - 5 if r in (0, 1, 4) else g - 4
    if alt != base:
        raise AssertionError(f"base term disagreement at g={g}: {base} vs {alt}")
    return base


def _i6_general(g: int, upper_c: int) -> int:
    return (
        _i6_base(g)
        + _sum_range(1, (g - 11) // 9, lambda n: n)
        + _sum_range(1, (g - 8) // 9, lambda n: n)
        + _sum_range((g - 2) // 9, upper_c, lambda n: (g - 11 - 5 * n) // 4)
        + _sum_range((g + 1) // 9, (g - 12) // 5, lambda n: (g - 8 - 5 * n) // 4)
    )


def i6(g: int) -> int:
    """Chain members of genus ``g`` and multiplicity 6."""
    if g < 0:
        raise SemigroupError("genus must be non-negative")
    if g <= 4:
        return 0
    if g == 5:
        return 1
    if g <= 15:
        return _i6_base(g)
    return _i6_general(g, (g - 15) // 5)


def i6_variant(g: int) -> int:
    """:func:`i6` with the third sum running up to ``⌊(g-11)/5⌋`` instead of ``⌊(g-15)/5⌋``."""
    if g < 16:
        return i6(g)
    return _i6_general(g, (g - 11) // 5)


def fertile_set(g: int) -> list[NumericalSemigroup]:
    """The fertile semigroups of genus ``g``."""
    if g < 0:
        raise SemigroupError("genus must be non-negative")
    if g == 0:
        return [NumericalSemigroup.natural()]
    if g == 1:
        return [NumericalSemigroup.from_gaps([1])]
    out = [hyperelliptic(g)]
    if g % 3 == 1:
        out.append(M((g - 1) // 3))
    return sorted(out)


def majority_check(g: int, jobs: int = 1) -> tuple[int, int, bool]:
    """``(i_g, n_g, 2 i_g <= n_g)`` from full enumeration."""
    counts = enumerate_tree(NumericalSemigroup.natural(), g, jobs=jobs)
    i, n = counts.chain[g], counts.count[g]
    return i, n, 2 * i <= n


def chain_counts_by_multiplicity(m: int, max_genus: int, jobs: int = 1) -> list[int]:
    """``i_g(m)`` for ``g = 0..max_genus``, from the chain-pruned multiplicity-``m`` subtree."""
    root = multiplicity_subtree_root(m)
    if root.genus > max_genus:
        return [0] * (max_genus + 1)
    counts = enumerate_tree(root, max_genus, in_infinite_chain, multiplicity=m, jobs=jobs)
    return counts.count


# -- self-replication ----------------------------------------------------------

# the seven-node multiplicity-4 motif rooted at A = {0,4,6,->}
_M4_MOTIF_EDGES = [("A", "B"), ("A", "C"), ("B", "D"), ("C", "E"), ("D", "F"), ("E", "G")]


def _m4_motif_sets() -> dict[str, NumericalSemigroup]:
    extra = {
        "A": [1, 2, 3, 5],
        "B": [1, 2, 3, 5, 6],
        "C": [1, 2, 3, 5, 7],
        "D": [1, 2, 3, 5, 6, 7],
        "E": [1, 2, 3, 5, 7, 9],
        "F": [1, 2, 3, 5, 6, 7, 9],
        "G": [1, 2, 3, 5, 7, 9, 11],
    }
    return {k: NumericalSemigroup.from_gaps(v) for k, v in extra.items()}


def _chain_tree(root: NumericalSemigroup, max_genus: int, m: int):
    kids: dict[NumericalSemigroup, list] = {}
    nodes = []
    for rec in iter_tree(root, max_genus, in_infinite_chain, multiplicity=m):
        s = rec.semigroup
        nodes.append(s)
        kids[s] = []
        if rec.parent_key is not None:
            kids[s._with_frobenius()].append(s)
    return nodes, kids


def _shape(s, kids, depth):
    if depth == 0:
        return ()
    return tuple(sorted(_shape(k, kids, depth - 1) for k in kids[s]))


def m4_motif_occurrences(max_genus: int) -> list[int]:
    """Push exponents ``k`` for which ``4⊕^k`` of the seven-node motif sits
    completely inside the chain-pruned multiplicity-4 tree up to ``max_genus``.

    Occurrences are found structurally (nodes whose three-level chain subtree
    has the motif's shape) and each one is checked node by node to be the
    push of the motif.  ``k = 0`` is the motif itself; the others are its
    replications.
    """
    root = multiplicity_subtree_root(4)
    nodes, kids = _chain_tree(root, max_genus, 4)
    motif = _m4_motif_sets()
    motif_kids = {s: [] for s in motif.values()}
    for a, b in _M4_MOTIF_EDGES:
        motif_kids[motif[a]].append(motif[b])
    target = _shape(motif["A"], motif_kids, 3)
    found = []
    for s in nodes:
        if _shape(s, kids, 3) != target:
            continue
        k = 0
        base = motif["A"]
        while base.genus < s.genus:
            base = push(base)
            k += 1
        if base != s:
            raise AssertionError(f"motif-shaped subtree at {s} is not a push of A")
        image = {label: push_n(t, k) for label, t in motif.items()}
        for a, b in _M4_MOTIF_EDGES:
            if image[b] not in kids.get(image[a], []):
                raise AssertionError(f"pushed motif edge {a}-{b} missing at k={k}")
        found.append(k)
    return sorted(found)


# edges of the multiplicity-6 finite tree rooted at A_n, by TABLE1 row label
TAU_EDGES = [
    ("A", "B"), ("A", "C"),
    ("B", "D"), ("B", "E"), ("C", "F"), ("C", "G"),
    ("D", "H"), ("D", "I"), ("E", "J"), ("F", "K"), ("G", "L"),
    ("H", "M"), ("I", "N"), ("J", "O"), ("K", "P"), ("L", "Q"),
    ("M", "R"), ("N", "S"), ("N", "T"), ("O", "U"), ("P", "V"), ("Q", "X"),
]


def tau_replication(n: int, depth: int = 5) -> bool:
    """Check the chain-pruned multiplicity-6 subtrees at ``A_n`` and ``R_n``.

    Both are truncated ``depth`` levels below their roots.  The first must
    equal the labelled tree :data:`TAU_EDGES` at index ``n`` (when
    ``depth == 5``), and pushing it by 6 must give the second exactly.
    """
    a_root = table1("A", n)
    r_root = table1("R", n)
    a_nodes, a_kids = _chain_tree(a_root, a_root.genus + depth, 6)
    r_nodes, r_kids = _chain_tree(r_root, r_root.genus + depth, 6)
    if depth == 5:
        want = {table1(lab, n) for lab in TABLE1}
        if set(a_nodes) != want:
            return False
        for a, b in TAU_EDGES:
            if table1(b, n) not in a_kids[table1(a, n)]:
                return False
    pushed = {push(s): sorted(push(k) for k in ks) for s, ks in a_kids.items()}
    mine = {s: sorted(ks) for s, ks in r_kids.items()}
    return pushed == mine


# -- reports -------------------------------------------------------------------


@dataclass
class FormulaRow:
    genus: int
    formula: object
    brute: object
    label: str = ""

    @property
    def match(self) -> bool:
        return self.formula == self.brute


@dataclass
class FormulaReport:
    suite: str
    max_genus: int
    rows: list = field(default_factory=list)
    info: list = field(default_factory=list)
    runtime: float = 0.0

    @property
    def ok(self) -> bool:
        return all(r.match for r in self.rows)

    def first_mismatch(self) -> Optional[FormulaRow]:
        for r in self.rows:
            if not r.match:
                return r
        return None

    def render(self) -> str:
        lines = [f"suite {self.suite} (genus <= {self.max_genus})"]
        lines.append(f"{'case':<10} {'genus':>5}  {'formula':<24} {'enumeration':<24} ok")
        for r in self.rows:
            lines.append(
                f"{r.label:<10} {r.genus:>5}  {str(r.formula):<24} {str(r.brute):<24} "
                f"{'yes' if r.match else 'NO'}"
            )
        for line in self.info:
            lines.append(f"info: {line}")
        lines.append(f"{'all match' if self.ok else 'MISMATCH'} in {self.runtime:.2f}s")
        return "\n".join(lines)


def _suite_prime(G, jobs):
    rows = []
    for m in (2, 3, 5, 7, 11):
        counts = chain_counts_by_multiplicity(m, G, jobs)
        rows += [FormulaRow(g, i_prime(g, m), counts[g], f"m={m}") for g in range(G + 1)]
    return rows, []


def _suite_m4(G, jobs):
    counts = chain_counts_by_multiplicity(4, G, jobs)
    return [FormulaRow(g, i4(g), counts[g], "m=4") for g in range(G + 1)], []


def _suite_m6(G, jobs):
    counts = chain_counts_by_multiplicity(6, G, jobs)
    rows = [FormulaRow(g, i6(g), counts[g], "m=6") for g in range(G + 1)]
    info = [
        f"third sum bound (g-11)/5 agrees with (g-15)/5 for 16 <= g <= {G}"
        if all(i6(g) == i6_variant(g) for g in range(16, G + 1))
        else "third sum bounds (g-11)/5 and (g-15)/5 disagree"
    ]
    return rows, info


def _suite_fertile(G, jobs):
    # fertile nodes have a chain child, so they lie in chains themselves
    found: dict[int, list] = {g: [] for g in range(G + 1)}
    for rec in iter_tree(NumericalSemigroup.natural(), G, in_infinite_chain):
        if is_fertile(rec.semigroup):
            found[rec.semigroup.genus].append(rec.semigroup)
    rows = []
    for g in range(G + 1):
        want = ", ".join(str(s) for s in fertile_set(g))
        got = ", ".join(str(s) for s in sorted(found[g]))
        rows.append(FormulaRow(g, want, got, "fertile"))
    return rows, []


def _suite_majority(G, jobs):
    counts = enumerate_tree(NumericalSemigroup.natural(), G, jobs=jobs)
    rows = []
    for g in range(5, G + 1):
        i, n = counts.chain[g], counts.count[g]
        rows.append(FormulaRow(g, "2i <= n", "2i <= n" if 2 * i <= n else f"2*{i} > {n}", "majority"))
    info = []
    for g in range(1, G + 1):
        a, b = counts.count[g - 1], counts.count[g]
        info.append(f"n_{g - 1} = {a} <= n_{g} = {b}: {'yes' if a <= b else 'no'}")
    return rows, info


SUITES = {
    "prime": _suite_prime,
    "m4": _suite_m4,
    "m6": _suite_m6,
    "fertile": _suite_fertile,
    "majority": _suite_majority,
}


def run_suite(name: str, max_genus: int, jobs: int = 1) -> FormulaReport:
    if name not in SUITES:
        raise SemigroupError(f"unknown suite {name!r}")
    if max_genus < 0:
        raise SemigroupError("max_genus must be non-negative")
    t0 = time.perf_counter()
    rows, info = SUITES[name](max_genus, jobs)
    return FormulaReport(name, max_genus, rows, info, time.perf_counter() - t0)
