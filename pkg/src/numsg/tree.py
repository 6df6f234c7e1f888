"""Navigation of the semigroup tree and genus-bounded enumeration."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional

from . import _pykernel, kernel
from .chains import in_infinite_chain, is_fertile
from .core import NumericalSemigroup
from .errors import RootHasNoParent, SemigroupError

__all__ = [
    "GenusCounts",
    "TreeNodeRecord",
    "children",
    "classify_node",
    "efficacy",
    "enumerate_tree",
    "everything",
    "in_infinite_chain",
    "is_descendant",
    "is_descendant_by_parents",
    "iter_tree",
    "multiplicity_subtree_root",
    "parent",
]

Filter = Callable[[NumericalSemigroup], bool]


@dataclass(frozen=True)
class TreeNodeRecord:
    semigroup: NumericalSemigroup
    parent_key: Optional[str]
    removed_generator: Optional[int]
    in_chain: bool


@dataclass
class GenusCounts:
    """Per-genus tallies of an enumeration.

    ``count[g]`` is the number of visited nodes of genus ``g`` (nodes that
    passed the filter), ``examined[g]`` additionally includes children that
    were generated and rejected, ``chain[g]`` counts visited nodes lying in
    an infinite chain and ``chain_by_m[m][g]`` splits that by multiplicity.
    """

    max_genus: int
    count: list = field(default_factory=list)
    examined: list = field(default_factory=list)
    chain: list = field(default_factory=list)
    chain_by_m: dict = field(default_factory=dict)
    fertile: list = field(default_factory=list)

    def __post_init__(self):
        size = self.max_genus + 1
        for name in ("count", "examined", "chain", "fertile"):
            if not getattr(self, name):
                setattr(self, name, [0] * size)

    @classmethod
    def from_kernel(cls, max_genus: int, raw) -> "GenusCounts":
        count, examined, chain, flat, fert = raw
        stride = max_genus + 2
        by_m = {}
        for g in range(max_genus + 1):
            for m in range(1, stride):
                v = flat[g * stride + m]
                if v:
                    by_m.setdefault(m, [0] * (max_genus + 1))[g] = v
        return cls(max_genus, list(count), list(examined), list(chain), by_m, list(fert))

    def merge(self, other: "GenusCounts") -> "GenusCounts":
        if other.max_genus != self.max_genus:
            raise ValueError("cannot merge counts with different genus bounds")
        out = GenusCounts(self.max_genus)
        for name in ("count", "examined", "chain", "fertile"):
            setattr(out, name, [a + b for a, b in zip(getattr(self, name), getattr(other, name))])
        for src in (self.chain_by_m, other.chain_by_m):
            for m, row in src.items():
                acc = out.chain_by_m.setdefault(m, [0] * (self.max_genus + 1))
                for g, v in enumerate(row):
                    acc[g] += v
        return out

    def n(self, g: int) -> int:
        return self.count[g]

    def i(self, g: int, m: Optional[int] = None) -> int:
        if m is None:
            return self.chain[g]
        return self.chain_by_m.get(m, [0] * (self.max_genus + 1))[g]

    def rows(self) -> list[dict]:
        return [
            {
                "genus": g,
                "count": self.count[g],
                "examined": self.examined[g],
                "chain": self.chain[g],
                "fertile": self.fertile[g],
            }
            for g in range(self.max_genus + 1)
        ]

    def __eq__(self, other) -> bool:
        if not isinstance(other, GenusCounts):
            return NotImplemented
        trim = lambda d: {m: r for m, r in d.items() if any(r)}  # noqa: E731
        return (
            self.max_genus == other.max_genus
            and self.count == other.count
            and self.examined == other.examined
            and self.chain == other.chain
            and self.fertile == other.fertile
            and trim(self.chain_by_m) == trim(other.chain_by_m)
        )


# -- navigation ---------------------------------------------------------------


def children(s: NumericalSemigroup) -> list[NumericalSemigroup]:
    """Children ordered by the removed generator, ascending."""
    return [s._without(x) for x in s.effective_generators()]


def parent(s: NumericalSemigroup) -> NumericalSemigroup:
    if s.genus == 0:
        raise RootHasNoParent("N0 is the root of the tree")
    return s._with_frobenius()


def efficacy(s: NumericalSemigroup) -> int:
    return len(s.effective_generators())


def classify_node(s: NumericalSemigroup) -> str:
    h = efficacy(s)
    if h == 0:
        return "leaf"
    if h == 1:
        return "stick"
    return "branching"


def is_descendant(candidate: NumericalSemigroup, ancestor: NumericalSemigroup) -> bool:
    """Structural test: strictly larger genus, contained in the ancestor and
    agreeing with it below the ancestor's conductor."""
    if candidate.genus <= ancestor.genus:
        return False
    c = ancestor.conductor
    # agreeing below c already makes the candidate a subset: every gap of
    # the ancestor lies below c
    return candidate.bits_upto(c) == ancestor.bits_upto(c)


def is_descendant_by_parents(candidate: NumericalSemigroup, ancestor: NumericalSemigroup) -> bool:
    """Same relation, decided by walking parents up from ``candidate``."""
    if candidate.genus <= ancestor.genus:
        return False
    s = candidate
    while s.genus > ancestor.genus:
        s = parent(s)
    return s == ancestor


def multiplicity_subtree_root(m: int) -> NumericalSemigroup:
    """The ordinary semigroup ``{0, m, ->}``, root of the multiplicity-m subtree."""
    if m < 1:
        raise SemigroupError("multiplicity must be positive")
    return NumericalSemigroup.from_gaps(range(1, m))


def everything(s: NumericalSemigroup) -> bool:
    return True


# -- enumeration -------------------------------------------------------------


def _accepts(s: NumericalSemigroup, flt: Optional[Filter], multiplicity: Optional[int]) -> bool:
    if multiplicity is not None and s.multiplicity != multiplicity:
        return False
    return flt is None or bool(flt(s))


def _record(s, parent_key, x) -> TreeNodeRecord:
    return TreeNodeRecord(s, parent_key, x, in_infinite_chain(s))


def iter_tree(
    root: NumericalSemigroup,
    max_genus: int,
    filter: Optional[Filter] = None,
    *,
    multiplicity: Optional[int] = None,
) -> Iterator[TreeNodeRecord]:
    """Depth-first preorder over descendants of ``root`` up to ``max_genus``.

    Only nodes accepted by ``filter`` (and of the given multiplicity, when
    set) are yielded and descended into.  Children are visited by ascending
    removed generator.
    """
    if not _accepts(root, filter, multiplicity) or root.genus > max_genus:
        return
    yield from _iter_from(_record(root, None, None), max_genus, filter, multiplicity)


def _iter_from(start, max_genus, flt, multiplicity, rejected=None):
    stack = [start]
    while stack:
        rec = stack.pop()
        yield rec
        s = rec.semigroup
        if s.genus >= max_genus:
            continue
        key = s.key
        kids = []
        for x in s.effective_generators():
            child = s._without(x)
            if _accepts(child, flt, multiplicity):
                kids.append(_record(child, key, x))
            elif rejected is not None:
                rejected[s.genus + 1] += 1
        stack.extend(reversed(kids))


def _subtree_records(args):
    rec, max_genus, flt, multiplicity = args
    rejected = [0] * (max_genus + 1)
    return list(_iter_from(rec, max_genus, flt, multiplicity, rejected)), rejected


def _subtree_counts(args):
    bits, c, m, g, max_genus, chain_only, fixed_m, backend = args
    return kernel.count_subtree(bits, c, m, g, max_genus, chain_only, fixed_m, backend=backend)


def _tally_record(counts: GenusCounts, rec: TreeNodeRecord) -> None:
    s = rec.semigroup
    g = s.genus
    counts.count[g] += 1
    counts.examined[g] += 1
    if rec.in_chain:
        counts.chain[g] += 1
        counts.chain_by_m.setdefault(s.multiplicity, [0] * (counts.max_genus + 1))[g] += 1
        if is_fertile(s):
            counts.fertile[g] += 1


def _split_genus(root_genus: int, max_genus: int, level_sizes: list, jobs: int) -> int:
    """Shallowest genus whose level holds enough subtrees to keep ``jobs`` workers busy."""
    for g in range(root_genus + 1, max_genus + 1):
        if level_sizes[g] >= 8 * jobs:
            return g
    return max_genus


def enumerate_tree(
    root: NumericalSemigroup,
    max_genus: int,
    filter: Optional[Filter] = None,
    visitor: Optional[Callable[[TreeNodeRecord], None]] = None,
    *,
    multiplicity: Optional[int] = None,
    jobs: int = 1,
    backend: Optional[str] = None,
) -> GenusCounts:
    """Traverse the subtree of ``root`` up to ``max_genus`` and tally it.

    ``filter`` prunes: rejected nodes are neither visited nor descended into.
    The built-in filters :func:`everything` and :func:`in_infinite_chain`
    without a visitor take the kernel fast path; anything else walks real
    :class:`NumericalSemigroup` objects.  With ``jobs > 1`` subtrees below a
    split level are handed to worker processes; the visitor still sees
    records in serial depth-first order.
    """
    if max_genus < root.genus:
        raise SemigroupError("max_genus must be at least the genus of the root")
    if jobs < 1:
        raise SemigroupError("jobs must be positive")
    if visitor is None and filter in (None, everything, in_infinite_chain):
        return _fast_counts(root, max_genus, filter is in_infinite_chain, multiplicity, jobs, backend)

    counts = GenusCounts(max_genus)
    if not _accepts(root, filter, multiplicity):
        counts.examined[root.genus] += 1
        return counts
    rejected = [0] * (max_genus + 1)
    if jobs == 1:
        records = _iter_from(_record(root, None, None), max_genus, filter, multiplicity, rejected)
    else:
        records = _parallel_records(root, max_genus, filter, multiplicity, jobs, rejected)
    for rec in records:
        _tally_record(counts, rec)
        if visitor is not None:
            visitor(rec)
    counts.examined = [a + b for a, b in zip(counts.examined, rejected)]
    return counts


def _parallel_records(root, max_genus, flt, multiplicity, jobs, rejected):
    probe = [0] * (max_genus + 1)
    for rec in iter_tree(root, min(max_genus, root.genus + 6), flt, multiplicity=multiplicity):
        probe[rec.semigroup.genus] += 1
    split = _split_genus(root.genus, max_genus, probe, jobs)
    plan = []
    start = _record(root, None, None)
    for rec in _iter_from(start, split, flt, multiplicity, rejected):
        plan.append(("subtree" if rec.semigroup.genus == split else "node", rec))
    tasks = [(rec, max_genus, flt, multiplicity) for kind, rec in plan if kind == "subtree"]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        results = pool.map(_subtree_records, tasks, chunksize=1)
        for kind, rec in plan:
            if kind == "node":
                yield rec
            else:
                records, rej = next(results)
                for g, v in enumerate(rej):
                    rejected[g] += v
                yield from records


def _fast_counts(root, max_genus, chain_only, multiplicity, jobs, backend) -> GenusCounts:
    fixed_m = multiplicity or 0
    if (fixed_m and root.multiplicity != fixed_m) or (chain_only and not in_infinite_chain(root)):
        counts = GenusCounts(max_genus)
        counts.examined[root.genus] += 1
        return counts
    args = (root.bits, root.conductor, root.multiplicity, root.genus, max_genus, chain_only, fixed_m, backend)
    if jobs == 1 or max_genus - root.genus < 2:
        return GenusCounts.from_kernel(max_genus, _subtree_counts(args))

    # top part in-process with the Python kernel's node states
    probe = GenusCounts.from_kernel(
        min(max_genus, root.genus + 8),
        _subtree_counts(args[:4] + (min(max_genus, root.genus + 8),) + args[5:]),
    )
    split = _split_genus(root.genus, probe.max_genus, probe.count, jobs)
    size = max_genus + 1
    stride = max_genus + 2
    count, examined, chain, by_m, fert = [0] * size, [0] * size, [0] * size, [0] * (size * stride), [0] * size
    width = _pykernel.width_for(max_genus, root.window)
    start = _pykernel.root_state(root.bits, root.conductor, root.multiplicity, root.genus, width)
    frontier = []
    stack = [start]
    while stack:
        node = stack.pop()
        g = node[4]
        if g == split:
            frontier.append(node)
            continue
        if node is start:
            examined[g] += 1
        _pykernel.tally(node, count, chain, by_m, fert, stride)
        for _, child in _pykernel.children(node, width, chain_only, fixed_m):
            examined[g + 1] += 1
            if child is not None:
                stack.append(child)
    top = GenusCounts.from_kernel(max_genus, (count, examined, chain, by_m, fert))
    tasks = []
    for M, _, c, m, g, _, _ in frontier:
        window = M & ((1 << (c + m)) - 1)
        tasks.append((window, c, m, g, max_genus, chain_only, fixed_m, backend))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        chunk = max(1, len(tasks) // (4 * jobs))
        for task, raw in zip(tasks, pool.map(_subtree_counts, tasks, chunksize=chunk)):
            sub = GenusCounts.from_kernel(max_genus, raw)
            # the parent already counted this subtree root as examined
            sub.examined[task[3]] -= 1
            top = top.merge(sub)
    return top
