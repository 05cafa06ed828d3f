"""Newick tree parsing and conversion of clock-balanced trees to triples.

Branch lengths are parsed as exact rationals from their decimal notation and
default to 1 when omitted.  A tree converts to a triple only when every leaf
sits at the same depth; the leaf distance is then the depth below the deepest
common ancestor, scaled by a common denominator into integers.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterator

from .ultra import UltraTriple

_NUMBER = re.compile(r"\d*\.?\d+(?:[eE][+-]?\d+)?")
_LABEL_STOP = set("();,:")


class NewickError(ValueError):
    """Malformed Newick input, with the offending character position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class ClockViolationError(ValueError):
    """Two leaves at different depths, so no ultrametric distance exists."""

    def __init__(self, first: str, second: str, d1: Fraction, d2: Fraction):
        super().__init__(
            f"leaves {first!r} (depth {d1}) and {second!r} (depth {d2}) "
            "are not equidistant from the root"
        )
        self.witness = (first, second)


@dataclass(frozen=True)
class NewickNode:
    name: str | None
    length: Fraction
    children: tuple["NewickNode", ...]

    @property
    def is_leaf(self) -> bool:
        return not self.children


class NewickTree:
    """A parsed rooted tree with distinct, nonempty leaf names."""

    def __init__(self, root: NewickNode):
        self.root = root
        leaves = [node for node in _walk(root) if node.is_leaf]
        names = [leaf.name for leaf in leaves]
        for leaf in leaves:
            if not leaf.name:
                raise NewickError("leaf without a name", 0)
        dupes = {n for n in names if names.count(n) > 1}
        if dupes:
            raise NewickError(f"duplicate leaf name {sorted(dupes)[0]!r}", 0)
        self.leaf_names = names

    def leaf_depths(self) -> dict[str, Fraction]:
        """Root-to-leaf path length per leaf (the root's own length is ignored)."""
        depths: dict[str, Fraction] = {}
        for leaf, path in self._leaf_paths().items():
            depths[leaf] = path[-1][1]
        return depths

    def _leaf_paths(self) -> dict[str, list[tuple[int, Fraction]]]:
        """Per leaf: the (node-id, depth-at-node) chain from the root down."""
        out: dict[str, list[tuple[int, Fraction]]] = {}

        def descend(node: NewickNode, depth: Fraction, trail):
            here = trail + [(id(node), depth)]
            if node.is_leaf:
                out[node.name] = here
            for child in node.children:
                descend(child, depth + child.length, here)

        descend(self.root, Fraction(0), [])
        return out


def _walk(node: NewickNode) -> Iterator[NewickNode]:
    yield node
    for child in node.children:
        yield from _walk(child)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def fail(self, message: str):
        raise NewickError(message, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def subtree(self) -> NewickNode:
        self.skip_ws()
        if self.peek() == "(":
            self.pos += 1
            children = [self.subtree()]
            self.skip_ws()
            while self.peek() == ",":
                self.pos += 1
                children.append(self.subtree())
                self.skip_ws()
            if self.peek() != ")":
                self.fail("expected ',' or ')'")
            self.pos += 1
            name = self.label()
            length = self.length()
            return NewickNode(name=name, length=length, children=tuple(children))
        name = self.label()
        if name is None:
            self.fail("expected a leaf name or '('")
        return NewickNode(name=name, length=self.length(), children=())

    def label(self) -> str | None:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] not in _LABEL_STOP:
            self.pos += 1
        token = self.text[start : self.pos].strip()
        return token or None

    def length(self) -> Fraction:
        self.skip_ws()
        if self.peek() != ":":
            return Fraction(1)
        self.pos += 1
        self.skip_ws()
        if self.peek() == "-":
            self.fail("branch lengths must be nonnegative")
        match = _NUMBER.match(self.text, self.pos)
        if not match:
            self.fail("expected a branch length")
        self.pos = match.end()
        return Fraction(match.group())


def parse_newick(text: str) -> NewickTree:
    """Parse one tree: nested parentheses, optional names and ':length', ';'."""
    parser = _Parser(text)
    root = parser.subtree()
    parser.skip_ws()
    if parser.peek() != ";":
        parser.fail("expected ';'")
    parser.pos += 1
    parser.skip_ws()
    if parser.pos != len(text):
        parser.fail("trailing characters after ';'")
    return NewickTree(root)


def triple_from_tree(tree: NewickTree) -> UltraTriple:
    """Zero weights, distances = depth below the deepest common ancestor."""
    names = tree.leaf_names
    if not names:
        raise ValueError("tree has no leaves")
    paths = tree._leaf_paths()
    depths = {name: paths[name][-1][1] for name in names}
    first = names[0]
    for other in names[1:]:
        if depths[other] != depths[first]:
            raise ClockViolationError(first, other, depths[first], depths[other])

    distances: dict[tuple[str, str], Fraction] = {}
    for a, b in combinations(names, 2):
        shared = Fraction(0)
        for (ida, da), (idb, _) in zip(paths[a], paths[b]):
            if ida != idb:
                break
            shared = da
        distances[(a, b)] = depths[a] - shared

    scale = math.lcm(*(d.denominator for d in distances.values())) if distances else 1
    index = {name: i for i, name in enumerate(names)}
    matrix = [[0] * len(names) for _ in names]
    for (a, b), d in distances.items():
        value = int(d * scale)
        matrix[index[a]][index[b]] = value
        matrix[index[b]][index[a]] = value
    return UltraTriple(names, {name: 0 for name in names}, matrix)
