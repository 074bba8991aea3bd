"""Colored rooted trees and forests with canonical forms.

Values are immutable and hashable.  Children of a vertex and components of
a forest are kept sorted by canonical key, so two forests are isomorphic as
colored posets exactly when their keys are equal.

Poset convention: the root is the unique maximal element.  Order ideals are
therefore leafward ("lower") vertex sets, and the complement of an ideal
always contains the root.  Vertices are addressed by preorder index over
the canonical structure: component by component, root first, then each
child block in stored order.

Grammar (parsed by :func:`parse_forest`, produced by every ``key``)::

    tree   := color | color "(" tree ("," tree)* ")"
    forest := "0" | tree ("+" tree)*

Whitespace is ignored; colors match ``[A-Za-z0-9_]+``.  The bare token
``0`` denotes the empty forest, so ``0`` is rejected as a color token
(otherwise a single vertex colored ``0`` would share its canonical key
with the empty forest).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from itertools import permutations, product as cartesian
from typing import Iterable, Iterator

_COLOR_RE = re.compile(r"[A-Za-z0-9_]+")

__all__ = [
    "ForestSyntaxError",
    "ColoredTree",
    "ColoredForest",
    "IdealSplit",
    "Cut",
    "parse_forest",
    "parse_tree",
    "forest_from_key",
    "canonical_form",
    "singleton",
    "chain",
    "corolla",
    "empty_forest",
    "aut_order",
    "ideal_vertex_sets",
    "order_ideals",
    "grouped_ideal_splits",
    "admissible_cuts",
    "single_edge_cuts",
    "graft",
    "structure_constant",
    "convex_subposets",
    "color_counts",
    "restrict",
    "forest_isomorphisms",
]


class ForestSyntaxError(ValueError):
    """Malformed forest text; ``offset`` is the failing character position."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class ColoredTree:
    """A rooted tree with a color token on every vertex.

    ``children`` is stored sorted by canonical key, which makes ``key`` a
    canonical form: equal keys exactly when isomorphic.  Instances are
    treated as immutable; do not assign to fields after construction.
    """

    __slots__ = ("color", "children", "key", "size", "_hash")

    def __init__(self, color: str, children: Iterable["ColoredTree"] = ()):
        if not _COLOR_RE.fullmatch(color):
            raise ValueError(f"invalid color token {color!r}")
        if color == "0":
            raise ValueError("color '0' is reserved for the empty forest")
        kids = tuple(sorted(children, key=lambda c: c.key))
        self.color = color
        self.children = kids
        if kids:
            self.key = color + "(" + ",".join(c.key for c in kids) + ")"
        else:
            self.key = color
        self.size = 1 + sum(c.size for c in kids)
        self._hash = hash(self.key)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ColoredTree) and self.key == other.key

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"ColoredTree({self.key!r})"

    def subtree_at(self, index: int) -> "ColoredTree":
        """Subtree rooted at the given preorder vertex index."""
        if index == 0:
            return self
        i = index - 1
        for child in self.children:
            if i < child.size:
                return child.subtree_at(i)
            i -= child.size
        raise IndexError(
            f"vertex index {index} out of range for a {self.size}-vertex tree"
        )

    def vertex_colors(self) -> tuple[str, ...]:
        out: list[str] = []
        self._collect_colors(out)
        return tuple(out)

    def _collect_colors(self, out: list[str]) -> None:
        out.append(self.color)
        for child in self.children:
            child._collect_colors(out)

    def parent_indices(self) -> tuple[int, ...]:
        """Preorder parent array; the root has parent -1."""
        parents = [-1] * self.size
        self._fill_parents(parents, 0)
        return tuple(parents)

    def _fill_parents(self, parents: list[int], offset: int) -> None:
        off = offset + 1
        for child in self.children:
            parents[off] = offset
            child._fill_parents(parents, off)
            off += child.size

    def as_forest(self) -> "ColoredForest":
        return ColoredForest((self,))


class ColoredForest:
    """A finite multiset of colored rooted trees; may be empty.

    Components are stored sorted by canonical key; ``key`` joins them with
    ``+`` (the empty forest is ``"0"``).  Vertex indices run through the
    components in stored order.
    """

    __slots__ = ("components", "key", "size", "_hash", "_parents", "_colors", "_kids")

    def __init__(self, components: Iterable[ColoredTree] = ()):
        comps = tuple(sorted(components, key=lambda t: t.key))
        self.components = comps
        self.key = "+".join(t.key for t in comps) if comps else "0"
        self.size = sum(t.size for t in comps)
        self._hash = hash(self.key)
        self._parents: tuple[int, ...] | None = None
        self._colors: tuple[str, ...] | None = None
        self._kids: tuple[tuple[int, ...], ...] | None = None

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ColoredForest) and self.key == other.key

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"ColoredForest({self.key!r})"

    @property
    def is_empty(self) -> bool:
        return not self.components

    @property
    def is_connected(self) -> bool:
        return len(self.components) == 1

    def as_tree(self) -> ColoredTree:
        if len(self.components) != 1:
            raise ValueError(f"forest {self.key!r} is not a single tree")
        return self.components[0]

    def oplus(self, other: "ColoredForest") -> "ColoredForest":
        """Disjoint union of two forests."""
        return ColoredForest(self.components + other.components)

    def component_offsets(self) -> tuple[int, ...]:
        offs = []
        off = 0
        for t in self.components:
            offs.append(off)
            off += t.size
        return tuple(offs)

    def subtree_at(self, index: int) -> ColoredTree:
        i = index
        for t in self.components:
            if i < t.size:
                return t.subtree_at(i)
            i -= t.size
        raise IndexError(
            f"vertex index {index} out of range for a {self.size}-vertex forest"
        )

    def vertex_colors(self) -> tuple[str, ...]:
        if self._colors is None:
            out: list[str] = []
            for t in self.components:
                t._collect_colors(out)
            self._colors = tuple(out)
        return self._colors

    def parent_indices(self) -> tuple[int, ...]:
        if self._parents is None:
            parents = [-1] * self.size
            off = 0
            for t in self.components:
                t._fill_parents(parents, off)
                off += t.size
            self._parents = tuple(parents)
        return self._parents

    def children_indices(self) -> tuple[tuple[int, ...], ...]:
        """Per-vertex tuples of child indices."""
        if self._kids is None:
            kids: list[list[int]] = [[] for _ in range(self.size)]
            for v, p in enumerate(self.parent_indices()):
                if p >= 0:
                    kids[p].append(v)
            self._kids = tuple(tuple(k) for k in kids)
        return self._kids


def _as_forest(f: ColoredForest | ColoredTree) -> ColoredForest:
    return f.as_forest() if isinstance(f, ColoredTree) else f


# ---------------------------------------------------------------------------
# Parsing and construction helpers


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _at_end(self) -> bool:
        self._skip_ws()
        return self.pos >= len(self.text)

    def _peek(self) -> str:
        self._skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _color(self) -> tuple[str, int]:
        self._skip_ws()
        m = _COLOR_RE.match(self.text, self.pos)
        if not m:
            raise ForestSyntaxError("expected color", self.pos)
        self.pos = m.end()
        return m.group(), m.start()

    def tree(self) -> ColoredTree:
        color, start = self._color()
        if color == "0":
            raise ForestSyntaxError("color '0' is reserved for the empty forest", start)
        children: list[ColoredTree] = []
        if self._peek() == "(":
            self.pos += 1
            children.append(self.tree())
            while True:
                ch = self._peek()
                if ch == ",":
                    self.pos += 1
                    children.append(self.tree())
                elif ch == ")":
                    self.pos += 1
                    break
                else:
                    raise ForestSyntaxError("expected ',' or ')'", self.pos)
        return ColoredTree(color, tuple(children))

    def forest(self) -> ColoredForest:
        self._skip_ws()
        m = _COLOR_RE.match(self.text, self.pos)
        if m and m.group() == "0":
            # bare "0" is the empty forest; anywhere else "0" is rejected
            save = self.pos
            self.pos = m.end()
            if self._at_end():
                return ColoredForest(())
            self.pos = save
            raise ForestSyntaxError(
                "color '0' is reserved for the empty forest", m.start()
            )
        trees = [self.tree()]
        while self._peek() == "+":
            self.pos += 1
            trees.append(self.tree())
        if not self._at_end():
            raise ForestSyntaxError("unexpected trailing text", self.pos)
        return ColoredForest(tuple(trees))


def parse_forest(text: str) -> ColoredForest:
    """Parse forest text; raises :class:`ForestSyntaxError` with an offset."""
    return _Parser(text).forest()


def parse_tree(text: str) -> ColoredTree:
    """Parse text that must denote a single nonempty tree."""
    f = parse_forest(text)
    if len(f.components) != 1:
        raise ForestSyntaxError("expected a single tree", 0)
    return f.components[0]


_PARSE_CACHE: dict[str, ColoredForest] = {}


def forest_from_key(key: str) -> ColoredForest:
    """Parse with a process-wide memo; safe because forests are immutable."""
    f = _PARSE_CACHE.get(key)
    if f is None:
        f = parse_forest(key)
        _PARSE_CACHE[f.key] = f
        _PARSE_CACHE[key] = f
    return f


def canonical_form(f: ColoredForest | ColoredTree) -> str:
    """Canonical key: equal keys exactly when isomorphic as colored posets."""
    return f.key


def singleton(color: str) -> ColoredTree:
    return ColoredTree(color)


def chain(colors: Iterable[str], *, from_root: bool = True) -> ColoredTree:
    """Ladder tree for a color sequence.

    ``from_root=True`` reads the sequence root to leaf; pass ``False`` for
    leaf-to-root data.  Each vertex has at most one child.
    """
    seq = list(colors)
    if not seq:
        raise ValueError("a chain needs at least one color")
    if not from_root:
        seq.reverse()
    node = ColoredTree(seq[-1])
    for color in reversed(seq[:-1]):
        node = ColoredTree(color, (node,))
    return node


def corolla(root_color: str, leaf_colors: Iterable[str]) -> ColoredTree:
    """Depth-one tree: every leaf attached directly to the root."""
    return ColoredTree(root_color, tuple(ColoredTree(c) for c in leaf_colors))


def empty_forest() -> ColoredForest:
    return ColoredForest(())


# ---------------------------------------------------------------------------
# Automorphisms and isomorphisms


_AUT_CACHE: dict[str, int] = {}


def _run_lengths(keys: Iterable[str]) -> Iterator[int]:
    count = 0
    last: str | None = None
    for k in keys:
        if k == last:
            count += 1
        else:
            if count:
                yield count
            last, count = k, 1
    if count:
        yield count


def _tree_aut(t: ColoredTree) -> int:
    cached = _AUT_CACHE.get(t.key)
    if cached is not None:
        return cached
    result = 1
    for child in t.children:
        result *= _tree_aut(child)
    for run in _run_lengths(c.key for c in t.children):
        result *= math.factorial(run)
    _AUT_CACHE[t.key] = result
    return result


def aut_order(f: ColoredForest | ColoredTree) -> int:
    """Order of the color-preserving automorphism group.

    Product over vertices of factorials of multiplicities of equal child
    subtrees, times factorials of multiplicities of equal components.
    """
    if isinstance(f, ColoredTree):
        return _tree_aut(f)
    result = 1
    for t in f.components:
        result *= _tree_aut(t)
    for run in _run_lengths(t.key for t in f.components):
        result *= math.factorial(run)
    return result


def _tree_isomorphisms(t1: ColoredTree, t2: ColoredTree) -> list[dict[int, int]]:
    if t1.key != t2.key:
        return []
    offs = []
    off = 1
    for c in t1.children:
        offs.append(off)
        off += c.size
    maps: list[dict[int, int]] = [{0: 0}]
    i = 0
    n = len(t1.children)
    while i < n:
        j = i
        while j < n and t1.children[j].key == t1.children[i].key:
            j += 1
        run = range(i, j)
        per_run: list[dict[int, int]] = []
        for perm in permutations(range(j - i)):
            choice_lists = []
            for r, p in enumerate(perm):
                src, dst = i + r, i + p
                subs = _tree_isomorphisms(t1.children[src], t2.children[dst])
                choice_lists.append(
                    [
                        {offs[src] + k: offs[dst] + v for k, v in m.items()}
                        for m in subs
                    ]
                )
            for combo in cartesian(*choice_lists):
                merged: dict[int, int] = {}
                for m in combo:
                    merged.update(m)
                per_run.append(merged)
        maps = [{**base, **extra} for base in maps for extra in per_run]
        i = j
    return maps


def forest_isomorphisms(
    f1: ColoredForest | ColoredTree, f2: ColoredForest | ColoredTree
) -> list[dict[int, int]]:
    """All color-and-order preserving vertex bijections, as index maps.

    Empty when the forests are not isomorphic; of length ``aut_order``
    when they are equal.
    """
    f1, f2 = _as_forest(f1), _as_forest(f2)
    if f1.key != f2.key:
        return []
    offs = f1.component_offsets()
    comps = f1.components
    maps: list[dict[int, int]] = [{}]
    i = 0
    n = len(comps)
    while i < n:
        j = i
        while j < n and comps[j].key == comps[i].key:
            j += 1
        per_run: list[dict[int, int]] = []
        for perm in permutations(range(j - i)):
            choice_lists = []
            for r, p in enumerate(perm):
                src, dst = i + r, i + p
                subs = _tree_isomorphisms(comps[src], f2.components[dst])
                choice_lists.append(
                    [
                        {offs[src] + k: offs[dst] + v for k, v in m.items()}
                        for m in subs
                    ]
                )
            for combo in cartesian(*choice_lists):
                merged: dict[int, int] = {}
                for m in combo:
                    merged.update(m)
                per_run.append(merged)
        maps = [{**base, **extra} for base in maps for extra in per_run]
        i = j
    return maps


# ---------------------------------------------------------------------------
# Order ideals, cuts, convex subposets


def ideal_vertex_sets(f: ColoredForest | ColoredTree) -> list[frozenset[int]]:
    """Every downward-closed vertex-index set, each exactly once.

    An ideal of a tree is either the whole tree or a choice of ideal in
    each child subtree; ideals of forests are products over components.
    """
    f = _as_forest(f)

    def rec(t: ColoredTree, offset: int) -> list[frozenset[int]]:
        whole = frozenset(range(offset, offset + t.size))
        child_lists = []
        off = offset + 1
        for c in t.children:
            child_lists.append(rec(c, off))
            off += c.size
        out = [whole]
        for combo in cartesian(*child_lists):
            out.append(frozenset().union(*combo) if combo else frozenset())
        return out

    per_component = []
    for t, off in zip(f.components, f.component_offsets()):
        per_component.append(rec(t, off))
    out = []
    for combo in cartesian(*per_component):
        out.append(frozenset().union(*combo) if combo else frozenset())
    return out


def restrict(
    f: ColoredForest | ColoredTree, vertices: Iterable[int]
) -> tuple[ColoredForest, tuple[int, ...]]:
    """Induced sub-forest on a convex vertex set.

    Returns the forest together with the map from its preorder indices to
    the original indices.  Within the induced poset, a vertex keeps its
    original parent when that parent is in the set and becomes a component
    root otherwise; this is the Hasse diagram of the induced order only
    for convex sets, which is all this library ever restricts to.
    """
    f = _as_forest(f)
    vs = frozenset(vertices)
    for v in vs:
        if not 0 <= v < f.size:
            raise IndexError(f"vertex index {v} out of range")
    parents = f.parent_indices()
    colors = f.vertex_colors()
    kids: dict[int, list[int]] = {v: [] for v in vs}
    roots: list[int] = []
    for v in sorted(vs):
        p = parents[v]
        if p in vs:
            kids[p].append(v)
        else:
            roots.append(v)

    def build(v: int) -> tuple[ColoredTree, list[int]]:
        subs = [build(c) for c in kids[v]]
        subs.sort(key=lambda tc: (tc[0].key, tc[1][0]))
        tree = ColoredTree(colors[v], tuple(t for t, _ in subs))
        order = [v]
        for _, o in subs:
            order.extend(o)
        return tree, order

    built = [build(r) for r in roots]
    built.sort(key=lambda tc: (tc[0].key, tc[1][0]))
    forest = ColoredForest(tuple(t for t, _ in built))
    mapping = tuple(i for _, o in built for i in o)
    return forest, mapping


@dataclass(frozen=True)
class IdealSplit:
    """An order ideal of an ambient forest, with its complement."""

    ideal: ColoredForest
    complement: ColoredForest
    ideal_vertices: frozenset[int]


def order_ideals(f: ColoredForest | ColoredTree) -> list[IdealSplit]:
    """All ideal/complement splits, one per downward-closed vertex set."""
    f = _as_forest(f)
    allv = frozenset(range(f.size))
    out = []
    for s in ideal_vertex_sets(f):
        ideal, _ = restrict(f, s)
        complement, _ = restrict(f, allv - s)
        out.append(IdealSplit(ideal, complement, s))
    return out


def _forest_key(trees: Iterable[ColoredTree]) -> str:
    keys = sorted(t.key for t in trees)
    return "+".join(keys) if keys else "0"


_TreeSplit = tuple[tuple[ColoredTree, ...], ColoredTree | None]
_TREE_SPLITS_CACHE: dict[str, list[_TreeSplit]] = {}
_GROUPED_CACHE: dict[str, dict[tuple[str, str], int]] = {}


def _tree_splits(t: ColoredTree) -> list[_TreeSplit]:
    cached = _TREE_SPLITS_CACHE.get(t.key)
    if cached is not None:
        return cached
    out: list[_TreeSplit] = [((t,), None)]
    for combo in cartesian(*[_tree_splits(c) for c in t.children]):
        ideal = tuple(x for ic, _ in combo for x in ic)
        comp = ColoredTree(t.color, tuple(cc for _, cc in combo if cc is not None))
        out.append((ideal, comp))
    _TREE_SPLITS_CACHE[t.key] = out
    return out


def grouped_ideal_splits(f: ColoredForest | ColoredTree) -> dict[tuple[str, str], int]:
    """Ideal splits aggregated by (ideal key, complement key).

    Values count downward-closed vertex sets realizing the pair, which is
    the multiplicity the Hall convolution needs.
    """
    f = _as_forest(f)
    cached = _GROUPED_CACHE.get(f.key)
    if cached is not None:
        return cached
    acc: list[tuple[tuple[ColoredTree, ...], tuple[ColoredTree, ...]]] = [((), ())]
    for component in f.components:
        splits = _tree_splits(component)
        acc = [
            (ideal + ic, comp + ((cc,) if cc is not None else ()))
            for ideal, comp in acc
            for ic, cc in splits
        ]
    counts: dict[tuple[str, str], int] = {}
    for ideal, comp in acc:
        pair = (_forest_key(ideal), _forest_key(comp))
        counts[pair] = counts.get(pair, 0) + 1
    _GROUPED_CACHE[f.key] = counts
    return counts


@dataclass(frozen=True)
class Cut:
    """An admissible edge cut of a tree.

    Each edge is named by its lower (child) vertex index.  ``lower`` is
    the forest that falls off, ``upper`` the part containing the root.
    """

    edges: frozenset[int]
    lower: ColoredForest
    upper: ColoredTree


def admissible_cuts(t: ColoredTree) -> list[Cut]:
    """All admissible cuts, including the empty cut.

    In bijection with the order ideals whose complement is nonempty: cut
    edges are the edges from maximal ideal vertices to their parents.
    The total split (ideal = whole tree) corresponds to no edge set.
    """
    f = t.as_forest()
    parents = f.parent_indices()
    allv = frozenset(range(t.size))
    out = []
    for s in ideal_vertex_sets(f):
        if len(s) == t.size:
            continue
        edges = frozenset(v for v in s if parents[v] not in s)
        lower, _ = restrict(f, s)
        upper = restrict(f, allv - s)[0].as_tree()
        out.append(Cut(edges, lower, upper))
    return out


def single_edge_cuts(t: ColoredTree) -> list[tuple[ColoredTree, ColoredTree]]:
    """One (below, above) pair per edge, with multiplicity.

    The first tree is rooted at the lower end of the removed edge; the
    second contains the original root.
    """
    out: list[tuple[ColoredTree, ColoredTree]] = []
    for i, child in enumerate(t.children):
        rest = t.children[:i] + t.children[i + 1 :]
        out.append((child, ColoredTree(t.color, rest)))
        for lower, upper in single_edge_cuts(child):
            out.append((lower, ColoredTree(t.color, rest + (upper,))))
    return out


def graft(scion: ColoredTree, stock: ColoredTree, vertex: int) -> ColoredTree:
    """Attach the scion's root as a new child of the given stock vertex."""
    if vertex == 0:
        return ColoredTree(stock.color, stock.children + (scion,))
    i = vertex - 1
    for pos, child in enumerate(stock.children):
        if i < child.size:
            new_child = graft(scion, child, i)
            kids = stock.children[:pos] + (new_child,) + stock.children[pos + 1 :]
            return ColoredTree(stock.color, kids)
        i -= child.size
    raise IndexError(
        f"graft target {vertex} out of range for a {stock.size}-vertex tree"
    )


def structure_constant(t1: ColoredTree, t2: ColoredTree, s: ColoredTree) -> int:
    """Number of edges of ``s`` whose removal leaves ``t1`` below and ``t2`` above."""
    if t1.size + t2.size != s.size:
        return 0
    k1, k2 = t1.key, t2.key
    return sum(
        1 for below, above in single_edge_cuts(s) if below.key == k1 and above.key == k2
    )


def convex_subposets(f: ColoredForest | ColoredTree) -> set[str]:
    """Canonical keys of all induced forests L minus I for nested ideals I in L."""
    f = _as_forest(f)
    out: set[str] = set()
    for outer in ideal_vertex_sets(f):
        g, _ = restrict(f, outer)
        g_all = frozenset(range(g.size))
        for inner in ideal_vertex_sets(g):
            out.add(restrict(g, g_all - inner)[0].key)
    return out


def color_counts(f: ColoredForest | ColoredTree) -> dict[str, int]:
    """Vertex count per color; the multidegree used for grading.

    Additive under disjoint union and on the two sides of every ideal
    split.  The empty forest has the empty dict.
    """
    counts: dict[str, int] = {}
    for c in _as_forest(f).vertex_colors():
        counts[c] = counts.get(c, 0) + 1
    return counts
