"""Tree export: drawable graph formats plus a JSON form that round-trips."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Optional

from .chains import chain_children
from .core import NumericalSemigroup
from .errors import NotExpressible, SemigroupError
from .families import TABLE1, table1, to_tuple
from .tree import iter_tree

__all__ = [
    "ExportGraph",
    "ExportNode",
    "build_graph",
    "chain_path",
    "highlight_sets",
]

HIGHLIGHT_COLORS = {"tau": "blue", "gamma-chain": "green", "nu-chain": "green"}


@dataclass
class ExportNode:
    key: str
    gaps: tuple
    genus: int
    multiplicity: int
    conductor: int
    label: str
    highlight: Optional[str] = None

    @classmethod
    def of(cls, s: NumericalSemigroup, label: str, highlight=None) -> "ExportNode":
        return cls(s.key, s.gaps, s.genus, s.multiplicity, s.conductor, label, highlight)

    def as_json(self) -> dict:
        return {
            "key": self.key,
            "gaps": list(self.gaps),
            "genus": self.genus,
            "multiplicity": self.multiplicity,
            "conductor": self.conductor,
            "frobenius": self.conductor - 1,
            "label": self.label,
            "highlight": self.highlight,
        }


@dataclass
class ExportGraph:
    """Nodes in depth-first preorder and parent-to-child edges.

    Each edge is ``(parent_key, child_key, removed_generator)``.
    """

    nodes: list = field(default_factory=list)
    edges: list = field(default_factory=list)

    def __post_init__(self):
        keys = [n.key for n in self.nodes]
        if len(set(keys)) != len(keys):
            raise SemigroupError("duplicate node in export graph")
        known = set(keys)
        heads = set()
        for p, c, _ in self.edges:
            if p not in known or c not in known:
                raise SemigroupError(f"edge {p!r} -> {c!r} references a missing node")
            if c in heads:
                raise SemigroupError(f"node {c!r} has two parents")
            heads.add(c)
        if self.nodes and len(known - heads) != 1:
            raise SemigroupError("export graph must have exactly one root")

    @property
    def root(self) -> Optional[ExportNode]:
        return self.nodes[0] if self.nodes else None

    def children_of(self) -> dict:
        out = {n.key: [] for n in self.nodes}
        for p, c, x in self.edges:
            out[p].append((c, x))
        return out

    # -- DOT -------------------------------------------------------------

    def to_dot(self) -> str:
        ids = {n.key: f"n{i}" for i, n in enumerate(self.nodes)}
        lines = [
            "digraph sgtree {",
            "  rankdir=LR;",
            '  node [shape=plaintext, fontname="Helvetica"];',
        ]
        for n in self.nodes:
            attrs = [f'label="{_dot_escape(n.label)}"', f'genus="{n.genus}"']
            if n.highlight:
                attrs.append(f'class="{n.highlight}"')
                attrs.append(f"fontcolor={HIGHLIGHT_COLORS[n.highlight]}")
            lines.append(f"  {ids[n.key]} [{', '.join(attrs)}];")
        by_key = {n.key: n for n in self.nodes}
        for p, c, x in self.edges:
            color = HIGHLIGHT_COLORS.get(by_key[c].highlight, "red")
            lines.append(f'  {ids[p]} -> {ids[c]} [label="{x}", color={color}];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    # -- TikZ ------------------------------------------------------------

    def to_tikz(self) -> str:
        if not self.nodes:
            return "\\begin{tikzpicture}\\end{tikzpicture}\n"
        kids = self.children_of()
        by_key = {n.key: n for n in self.nodes}

        # iterative rendering so that deep chains do not hit the recursion limit
        out = []
        stack = [("open", self.root.key)]
        while stack:
            kind, key = stack.pop()
            if kind == "close":
                out.append("]")
                continue
            if kind == "edge":
                color = HIGHLIGHT_COLORS.get(by_key[key].highlight, "red")
                out.append(f" \\edge [{color}]; ")
                continue
            out.append(f"[.{{{_tikz_label(by_key[key].label)}}} ")
            stack.append(("close", key))
            for c, _ in reversed(kids[key]):
                stack.append(("open", c))
                stack.append(("edge", c))
        body = "".join(out)
        return (
            "\\begin{tikzpicture}[grow'=right, sibling distance=4mm]"
            f"\\Tree{body}\\end{{tikzpicture}}\n"
        )

    # -- JSON ------------------------------------------------------------

    def to_json(self) -> str:
        doc = {
            "format": "numsg-tree",
            "version": 1,
            "nodes": [n.as_json() for n in self.nodes],
            "edges": [{"parent": p, "child": c, "removed": x} for p, c, x in self.edges],
        }
        return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "ExportGraph":
        doc = json.loads(text)
        if doc.get("format") != "numsg-tree" or doc.get("version") != 1:
            raise SemigroupError("not a numsg-tree document")
        nodes = []
        for d in doc["nodes"]:
            s = NumericalSemigroup.from_gaps(d["gaps"])
            node = ExportNode.of(s, d["label"], d["highlight"])
            if node.as_json() != d or node.key != d["key"]:
                raise SemigroupError(f"node record {d['key']!r} is inconsistent with its gaps")
            nodes.append(node)
        edges = [(e["parent"], e["child"], e["removed"]) for e in doc["edges"]]
        return cls(nodes, edges)

    def render(self, fmt: str) -> str:
        if fmt == "dot":
            return self.to_dot()
        if fmt == "tikz":
            return self.to_tikz()
        if fmt == "json":
            return self.to_json()
        raise SemigroupError(f"unknown format {fmt!r}")


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def _tikz_label(text: str) -> str:
    if text.startswith("("):
        body, _, n = text.rpartition("_")
        return f"${body}_{{{n}}}$"
    return "$\\{" + text[1:-1].replace("→", "\\rightarrow") + "\\}$"


# -- building ------------------------------------------------------------------


def chain_path(start: NumericalSemigroup, max_genus: int) -> list[NumericalSemigroup]:
    """Descend from ``start`` through chain children, preferring the removal of
    the conductor whenever two children lie in chains."""
    out = [start]
    s = start
    while s.genus < max_genus:
        kids = chain_children(s)
        if not kids:
            break
        s = kids[0]
        out.append(s)
    return out


def highlight_sets(text: str, max_genus: int) -> tuple[str, set]:
    """Parse ``tau:N``, ``gamma-chain:N`` or ``nu-chain:N`` into a class and node set."""
    name, _, arg = text.partition(":")
    try:
        n = int(arg)
    except ValueError:
        raise SemigroupError(f"bad highlight {text!r}; expected NAME:N") from None
    if n < 1:
        raise SemigroupError("highlight index must be at least 1")
    if name == "tau":
        return name, {table1(lab, n) for lab in TABLE1}
    if name == "gamma-chain":
        return name, set(chain_path(table1("S", n), max_genus))
    if name == "nu-chain":
        return name, set(chain_path(table1("V", n), max_genus))
    raise SemigroupError(f"unknown highlight {name!r}")


def _label(s: NumericalSemigroup, multiplicity: Optional[int]) -> str:
    if multiplicity is not None:
        try:
            return str(to_tuple(s, multiplicity))
        except NotExpressible:
            pass
    return str(s)


def build_graph(
    root: NumericalSemigroup,
    max_genus: int,
    filter: Optional[Callable] = None,
    *,
    multiplicity: Optional[int] = None,
    label_multiplicity: Optional[int] = None,
    from_genus: Optional[int] = None,
    highlights: Optional[list] = None,
    records=None,
) -> ExportGraph:
    """Export the (filtered) subtree of ``root`` up to ``max_genus``.

    ``multiplicity`` restricts the traversal to one multiplicity;
    ``label_multiplicity`` switches labels to tuple notation;
    ``from_genus`` drops the nodes above that level, which must then hold a
    single node.  ``records`` may supply a precomputed depth-first record
    stream (for instance from a parallel enumeration).
    """
    classes: list[tuple[str, set]] = [highlight_sets(h, max_genus) for h in highlights or []]
    if records is None:
        records = iter_tree(root, max_genus, filter, multiplicity=multiplicity)
    nodes, edges = [], []
    lo = root.genus if from_genus is None else from_genus
    for rec in records:
        s = rec.semigroup
        if s.genus < lo:
            continue
        hl = next((name for name, members in classes if s in members), None)
        nodes.append(ExportNode.of(s, _label(s, label_multiplicity), hl))
        if s.genus > lo:
            edges.append((rec.parent_key, s.key, rec.removed_generator))
    if not nodes:
        raise SemigroupError("no nodes to export in the requested genus range")
    if sum(1 for n in nodes if n.genus == lo) != 1:
        raise SemigroupError(f"level {lo} holds more than one node; the export would not be a tree")
    return ExportGraph(nodes, edges)

