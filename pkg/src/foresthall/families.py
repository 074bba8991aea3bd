"""Closed families of colored forests.

A family is given by a membership predicate on connected trees; a forest
belongs when all of its components do, and the empty forest always
belongs.  Families used by the algebra operations must be closed under
taking convex subposets (``verify_closed`` checks this on a bounded
range); the candidate pruning in the Hall convolution relies on it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement, product as cartesian
from typing import Callable, Iterable

from .forests import (
    ColoredForest,
    ColoredTree,
    chain,
    convex_subposets,
    corolla,
    forest_from_key,
    graft,
    singleton,
)

__all__ = [
    "FamilySpec",
    "EnumerationBudgetError",
    "builtin",
    "parse_family",
    "closure",
    "verify_closed",
    "ClosureReport",
    "enumerate_connected",
    "all_forests",
    "one_color_ladders",
    "antichains",
    "colored_ladders",
    "interval_ladders",
    "alternating_ladders",
    "periodic_ladders",
    "headtail_ladders",
    "corollas",
]


class EnumerationBudgetError(ValueError):
    """Requested enumeration size exceeds the family's configured budget."""


@dataclass(eq=False)
class FamilySpec:
    """A closed family: predicate, alphabet, and optional direct enumerator.

    ``name`` is the canonical CLI spelling (``"interval-ladders:4"``) and
    is what algebra elements compare by.  Predicates must be pure.
    """

    name: str
    alphabet: tuple[str, ...]
    contains_tree: Callable[[ColoredTree], bool]
    enumerator: Callable[[int], list[ColoredTree]] | None = None
    params: tuple = ()
    enumeration_limit: int = 12
    _cache: dict[int, tuple[ColoredTree, ...]] = field(default_factory=dict, repr=False)

    def contains(self, f: ColoredForest | ColoredTree) -> bool:
        if isinstance(f, ColoredTree):
            return self.contains_tree(f)
        return all(self.contains_tree(t) for t in f.components)

    def enumerate_connected(self, size: int) -> tuple[ColoredTree, ...]:
        """All iso-classes of connected members with exactly ``size`` vertices."""
        if size < 1:
            raise ValueError("size must be at least 1")
        if size > self.enumeration_limit:
            raise EnumerationBudgetError(
                f"size {size} exceeds the enumeration budget "
                f"({self.enumeration_limit}) of family {self.name}"
            )
        cached = self._cache.get(size)
        if cached is None:
            if self.enumerator is not None:
                trees = self.enumerator(size)
            else:
                trees = _grow_enumerate(self, size)
            dedup = {t.key: t for t in trees}
            cached = tuple(sorted(dedup.values(), key=lambda t: t.key))
            self._cache[size] = cached
        return cached

    def enumerate_forests(self, size: int) -> tuple[ColoredForest, ...]:
        """All members (possibly disconnected) with exactly ``size`` vertices."""
        if size == 0:
            return (ColoredForest(()),)
        pool: list[ColoredTree] = []
        for n in range(1, size + 1):
            pool.extend(self.enumerate_connected(n))
        pool.sort(key=lambda t: (t.size, t.key))
        out: list[ColoredForest] = []

        def pick(start: int, budget: int, chosen: list[ColoredTree]) -> None:
            if budget == 0:
                out.append(ColoredForest(tuple(chosen)))
                return
            for i in range(start, len(pool)):
                t = pool[i]
                if t.size > budget:
                    break
                chosen.append(t)
                pick(i, budget - t.size, chosen)
                chosen.pop()

        pick(0, size, [])
        return tuple(sorted(out, key=lambda f: f.key))


def enumerate_connected(family: FamilySpec, size: int) -> tuple[ColoredTree, ...]:
    return family.enumerate_connected(size)


def _grow_enumerate(family: FamilySpec, size: int) -> list[ColoredTree]:
    """Generic enumeration: grow members by grafting single vertices.

    Complete for families closed under convex subposets, because deleting
    a leaf of a member (the complement of a one-vertex ideal inside it)
    stays in the family.
    """
    if size == 1:
        return [singleton(c) for c in family.alphabet if family.contains_tree(singleton(c))]
    out: dict[str, ColoredTree] = {}
    for t in family.enumerate_connected(size - 1):
        for v in range(t.size):
            for c in family.alphabet:
                grown = graft(singleton(c), t, v)
                if grown.key not in out and family.contains_tree(grown):
                    out[grown.key] = grown
    return list(out.values())


# ---------------------------------------------------------------------------
# Built-in families


def _is_chain(t: ColoredTree) -> bool:
    while t.children:
        if len(t.children) > 1:
            return False
        t = t.children[0]
    return True


def _chain_colors(t: ColoredTree) -> list[str] | None:
    """Root-to-leaf color sequence, or None when not a chain."""
    out = [t.color]
    while t.children:
        if len(t.children) > 1:
            return None
        t = t.children[0]
        out.append(t.color)
    return out


def _int_colors(n: int) -> tuple[str, ...]:
    return tuple(str(i) for i in range(1, n + 1))


def all_forests(colors: Iterable[str]) -> FamilySpec:
    """Every forest colored by the alphabet."""
    alphabet = tuple(colors)
    allowed = set(alphabet)
    if not alphabet:
        raise ValueError("alphabet must be nonempty")

    def member(t: ColoredTree) -> bool:
        return all(c in allowed for c in t.vertex_colors())

    def enumerate_trees(size: int) -> list[ColoredTree]:
        return _all_trees_of_size(alphabet, size)

    return FamilySpec(
        name="all:" + ",".join(alphabet),
        alphabet=alphabet,
        contains_tree=member,
        enumerator=enumerate_trees,
        params=(alphabet,),
    )


_ALL_TREES_CACHE: dict[tuple[tuple[str, ...], int], list[ColoredTree]] = {}


def _all_trees_of_size(alphabet: tuple[str, ...], size: int) -> list[ColoredTree]:
    cached = _ALL_TREES_CACHE.get((alphabet, size))
    if cached is not None:
        return cached
    if size == 1:
        result = [singleton(c) for c in alphabet]
    else:
        pool: list[ColoredTree] = []
        for n in range(1, size):
            pool.extend(_all_trees_of_size(alphabet, n))
        pool.sort(key=lambda t: (t.size, t.key))
        result = []

        def pick(start: int, budget: int, chosen: list[ColoredTree]) -> None:
            if budget == 0:
                for c in alphabet:
                    result.append(ColoredTree(c, tuple(chosen)))
                return
            for i in range(start, len(pool)):
                t = pool[i]
                if t.size > budget:
                    break
                chosen.append(t)
                pick(i, budget - t.size, chosen)
                chosen.pop()

        pick(0, size - 1, [])
    _ALL_TREES_CACHE[(alphabet, size)] = result
    return result


def one_color_ladders(color: str = "1") -> FamilySpec:
    """Chains over a single color."""

    def member(t: ColoredTree) -> bool:
        cs = _chain_colors(t)
        return cs is not None and all(c == color for c in cs)

    return FamilySpec(
        name=f"ladders1:{color}" if color != "1" else "ladders1",
        alphabet=(color,),
        contains_tree=member,
        enumerator=lambda size: [chain([color] * size)],
        params=(color,),
    )


def antichains(colors: Iterable[str]) -> FamilySpec:
    """Forests of isolated colored vertices (trivial partial order)."""
    alphabet = tuple(colors)
    allowed = set(alphabet)

    def member(t: ColoredTree) -> bool:
        return t.size == 1 and t.color in allowed

    def enumerate_trees(size: int) -> list[ColoredTree]:
        return [singleton(c) for c in alphabet] if size == 1 else []

    return FamilySpec(
        name="antichains:" + ",".join(alphabet),
        alphabet=alphabet,
        contains_tree=member,
        enumerator=enumerate_trees,
        params=(alphabet,),
    )


def colored_ladders(colors: Iterable[str]) -> FamilySpec:
    """Chains with arbitrary colors from the alphabet."""
    alphabet = tuple(colors)
    allowed = set(alphabet)

    def member(t: ColoredTree) -> bool:
        cs = _chain_colors(t)
        return cs is not None and all(c in allowed for c in cs)

    def enumerate_trees(size: int) -> list[ColoredTree]:
        return [chain(seq) for seq in cartesian(alphabet, repeat=size)]

    return FamilySpec(
        name="ladders:" + ",".join(alphabet),
        alphabet=alphabet,
        contains_tree=member,
        enumerator=enumerate_trees,
        params=(alphabet,),
    )


def interval_ladders(n: int) -> FamilySpec:
    """Chains colored k, k+1, ..., k+m root-to-leaf inside 1..n."""
    if n < 1:
        raise ValueError("n must be at least 1")

    def member(t: ColoredTree) -> bool:
        cs = _chain_colors(t)
        if cs is None or not all(c.isdigit() for c in cs):
            return False
        vals = [int(c) for c in cs]
        if not (1 <= vals[0] and vals[-1] <= n):
            return False
        return all(b == a + 1 for a, b in zip(vals, vals[1:]))

    def enumerate_trees(size: int) -> list[ColoredTree]:
        return [
            chain([str(k + i) for i in range(size)])
            for k in range(1, n - size + 2)
        ]

    return FamilySpec(
        name=f"interval-ladders:{n}",
        alphabet=_int_colors(n),
        contains_tree=member,
        enumerator=enumerate_trees,
        params=(n,),
    )


def alternating_ladders() -> FamilySpec:
    """Two-colored chains whose colors alternate."""

    def member(t: ColoredTree) -> bool:
        cs = _chain_colors(t)
        if cs is None or any(c not in ("1", "2") for c in cs):
            return False
        return all(a != b for a, b in zip(cs, cs[1:]))

    def enumerate_trees(size: int) -> list[ColoredTree]:
        out = []
        for start in ("1", "2"):
            other = "2" if start == "1" else "1"
            seq = [start if i % 2 == 0 else other for i in range(size)]
            out.append(chain(seq))
        return out

    return FamilySpec(
        name="alt-ladders",
        alphabet=("1", "2"),
        contains_tree=member,
        enumerator=enumerate_trees,
        params=(),
    )


def periodic_ladders(n: int) -> FamilySpec:
    """Chains following the cyclic color sequence 1, 2, ..., n, 1, ... root-to-leaf."""
    if n < 1:
        raise ValueError("n must be at least 1")

    def succ(c: int) -> int:
        return c % n + 1

    def member(t: ColoredTree) -> bool:
        cs = _chain_colors(t)
        if cs is None or not all(c.isdigit() for c in cs):
            return False
        vals = [int(c) for c in cs]
        if not all(1 <= v <= n for v in vals):
            return False
        return all(b == succ(a) for a, b in zip(vals, vals[1:]))

    def enumerate_trees(size: int) -> list[ColoredTree]:
        out = []
        for start in range(1, n + 1):
            seq = []
            c = start
            for _ in range(size):
                seq.append(str(c))
                c = succ(c)
            out.append(chain(seq))
        return out

    return FamilySpec(
        name=f"periodic-ladders:{n}",
        alphabet=_int_colors(n),
        contains_tree=member,
        enumerator=enumerate_trees,
        params=(n,),
    )


def headtail_ladders() -> FamilySpec:
    """Chains of 1's followed by 2's, root-to-leaf."""

    def member(t: ColoredTree) -> bool:
        cs = _chain_colors(t)
        if cs is None or any(c not in ("1", "2") for c in cs):
            return False
        seen_two = False
        for c in cs:
            if c == "2":
                seen_two = True
            elif seen_two:
                return False
        return True

    def enumerate_trees(size: int) -> list[ColoredTree]:
        return [
            chain(["1"] * ones + ["2"] * (size - ones)) for ones in range(size + 1)
        ]

    return FamilySpec(
        name="headtail-ladders",
        alphabet=("1", "2"),
        contains_tree=member,
        enumerator=enumerate_trees,
        params=(),
    )


def corollas(colors: Iterable[str]) -> FamilySpec:
    """Singletons and depth-one trees over the alphabet."""
    alphabet = tuple(colors)
    allowed = set(alphabet)

    def member(t: ColoredTree) -> bool:
        if any(c not in allowed for c in t.vertex_colors()):
            return False
        return all(not child.children for child in t.children)

    def enumerate_trees(size: int) -> list[ColoredTree]:
        if size == 1:
            return [singleton(c) for c in alphabet]
        out = []
        for root in alphabet:
            for leaves in combinations_with_replacement(alphabet, size - 1):
                out.append(corolla(root, leaves))
        return out

    return FamilySpec(
        name="corollas:" + ",".join(alphabet),
        alphabet=alphabet,
        contains_tree=member,
        enumerator=enumerate_trees,
        params=(alphabet,),
    )


_BUILTIN_BY_NAME: dict[str, Callable[..., FamilySpec]] = {
    "ALL_FORESTS": all_forests,
    "LADDERS_1": one_color_ladders,
    "ANTICHAINS": antichains,
    "LADDERS": colored_ladders,
    "INTERVAL_LADDERS": interval_ladders,
    "ALT_LADDERS_2": alternating_ladders,
    "PERIODIC_LADDERS": periodic_ladders,
    "HEADTAIL_LADDERS": headtail_ladders,
    "COROLLAS": corollas,
}


def builtin(name: str, *params) -> FamilySpec:
    """Construct a built-in family by its canonical identifier."""
    ctor = _BUILTIN_BY_NAME.get(name)
    if ctor is None:
        raise ValueError(
            f"unknown family {name!r}; expected one of {sorted(_BUILTIN_BY_NAME)}"
        )
    return ctor(*params)


_CLI_NAMES: dict[str, str] = {
    "all": "ALL_FORESTS",
    "ladders1": "LADDERS_1",
    "antichains": "ANTICHAINS",
    "ladders": "LADDERS",
    "interval-ladders": "INTERVAL_LADDERS",
    "alt-ladders": "ALT_LADDERS_2",
    "periodic-ladders": "PERIODIC_LADDERS",
    "headtail-ladders": "HEADTAIL_LADDERS",
    "corollas": "COROLLAS",
}


def parse_family(text: str) -> FamilySpec:
    """Family from a CLI string such as ``all:a,b`` or ``interval-ladders:4``.

    The part after the colon is either a comma-separated alphabet or a
    single integer parameter, depending on the family.
    """
    name, _, arg = text.partition(":")
    name = name.strip()
    key = _CLI_NAMES.get(name)
    if key is None:
        raise ValueError(
            f"unknown family {name!r}; expected one of {sorted(_CLI_NAMES)}"
        )
    arg = arg.strip()
    if key in ("ALT_LADDERS_2", "HEADTAIL_LADDERS"):
        if arg:
            raise ValueError(f"family {name!r} takes no parameters")
        return builtin(key)
    if key in ("INTERVAL_LADDERS", "PERIODIC_LADDERS"):
        if not arg.isdigit():
            raise ValueError(f"family {name!r} needs an integer parameter, e.g. {name}:4")
        return builtin(key, int(arg))
    if key == "LADDERS_1":
        return builtin(key, arg) if arg else builtin(key)
    if not arg:
        raise ValueError(f"family {name!r} needs a color list, e.g. {name}:a,b")
    colors = tuple(c.strip() for c in arg.split(","))
    if any(not c for c in colors):
        raise ValueError(f"empty color in family parameters {text!r}")
    return builtin(key, colors)


# ---------------------------------------------------------------------------
# Closure and closure verification


def closure(generators: Iterable[ColoredForest | ColoredTree], max_size: int) -> set[str]:
    """Connected members of the least closed family containing the generators.

    Returns canonical keys of the connected members with at most
    ``max_size`` vertices; disjoint-union closure is implicit (a forest
    belongs exactly when its components do).
    """
    if max_size < 1:
        raise ValueError("max_size must be at least 1")
    result: set[str] = set()
    seen: set[str] = set()
    queue: list[ColoredForest] = []
    for g in generators:
        f = g.as_forest() if isinstance(g, ColoredTree) else g
        if f.key not in seen:
            seen.add(f.key)
            queue.append(f)
    while queue:
        f = queue.pop()
        for key in convex_subposets(f):
            sub = forest_from_key(key)
            for component in sub.components:
                if component.size <= max_size:
                    result.add(component.key)
                if component.key not in seen:
                    seen.add(component.key)
                    queue.append(component.as_forest())
    return result


@dataclass(frozen=True)
class ClosureReport:
    """Result of a closure audit; counterexamples pair member and escapee."""

    family: str
    max_size: int
    checked: int
    counterexamples: tuple[tuple[str, str], ...]

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "max_size": self.max_size,
            "checked": self.checked,
            "passed": self.passed,
            "counterexamples": [list(c) for c in self.counterexamples],
        }


def verify_closed(family: FamilySpec, max_size: int) -> ClosureReport:
    """Check that every convex subposet of every small member is a member."""
    checked = 0
    bad: list[tuple[str, str]] = []
    for size in range(1, max_size + 1):
        for t in family.enumerate_connected(size):
            for key in convex_subposets(t):
                checked += 1
                if not family.contains(forest_from_key(key)):
                    bad.append((t.key, key))
                    return ClosureReport(family.name, max_size, checked, tuple(bad))
    return ClosureReport(family.name, max_size, checked, tuple(bad))
