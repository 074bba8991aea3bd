"""The Ringel-Hall algebra of a closed forest family.

Elements are finitely supported maps from canonical forest keys to exact
coefficients.  The product is convolution over order ideals:

    (f * g)(P) = sum over ideals I of P of f([I]) g([P \\ I])

realized on delta inputs by generating candidate extensions (attach each
component of the left argument below a vertex of the right one, or leave
it free), then counting ideal splits of each candidate honestly.  The
coproduct splits a forest into ordered pairs of component sub-multisets,
each iso-class pair once.  All paper-level operations stay integral; math
on elements accepts exact rationals and the integrality of the structure
constants is asserted by the test suite rather than assumed here.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Iterator, Mapping

from .families import FamilySpec
from .forests import (
    ColoredForest,
    ColoredTree,
    aut_order,
    color_counts,
    forest_from_key,
    grouped_ideal_splits,
)

__all__ = [
    "HallElement",
    "TensorElement",
    "delta",
    "unit",
    "hall_mul",
    "count_extensions",
    "coproduct",
    "antipode",
    "counit",
    "degree_split",
    "coefficient_string",
]

Coeff = int | Fraction

EMPTY_KEY = "0"


def _normalized(terms: Mapping[str, Coeff]) -> dict[str, Coeff]:
    return {k: v for k, v in terms.items() if v != 0}


def coefficient_string(c: Coeff) -> str:
    """Exact decimal integer or ``p/q`` rendering of a coefficient."""
    if isinstance(c, Fraction) and c.denominator != 1:
        return f"{c.numerator}/{c.denominator}"
    return str(int(c))


def _coeff_from_string(text: str) -> Coeff:
    if "/" in text:
        return Fraction(text)
    return int(text)


class HallElement:
    """A finitely supported exact linear combination of forest classes."""

    __slots__ = ("family", "terms")

    def __init__(self, family: FamilySpec, terms: Mapping[str, Coeff]):
        self.family = family
        self.terms = _normalized(terms)
        for key in self.terms:
            if not family.contains(forest_from_key(key)):
                raise ValueError(f"key {key!r} is not in family {family.name}")

    # -- container-ish helpers

    def coefficient(self, key: str) -> Coeff:
        return self.terms.get(key, 0)

    def support(self) -> list[str]:
        return sorted(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def items(self) -> Iterator[tuple[str, Coeff]]:
        return iter(sorted(self.terms.items()))

    # -- vector space structure

    def __add__(self, other: "HallElement") -> "HallElement":
        _check_same_family(self, other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return HallElement(self.family, out)

    def __sub__(self, other: "HallElement") -> "HallElement":
        return self + (-1) * other

    def __neg__(self) -> "HallElement":
        return (-1) * self

    def __rmul__(self, scalar: Coeff) -> "HallElement":
        return HallElement(self.family, {k: scalar * v for k, v in self.terms.items()})

    def __mul__(self, scalar: Coeff) -> "HallElement":
        return self.__rmul__(scalar)

    def star(self, other: "HallElement") -> "HallElement":
        return hall_mul(self, other)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, HallElement)
            and self.family.name == other.family.name
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.family.name, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"HallElement({self.family.name!r}, {self.pretty()!r})"

    def pretty(self) -> str:
        if not self.terms:
            return "0 (zero element)"
        return " + ".join(
            f"{coefficient_string(c)}*{k}" for k, c in sorted(self.terms.items())
        )

    def to_json(self) -> dict:
        return {
            "family": self.family.name,
            "terms": [
                {"forest": k, "coeff": coefficient_string(c)}
                for k, c in sorted(self.terms.items())
            ],
        }

    @classmethod
    def from_json(cls, payload: Mapping, family: FamilySpec) -> "HallElement":
        terms: dict[str, Coeff] = {}
        for item in payload["terms"]:
            key = forest_from_key(item["forest"]).key
            terms[key] = terms.get(key, 0) + _coeff_from_string(item["coeff"])
        return cls(family, terms)


def _check_same_family(a: "HallElement | TensorElement", b) -> None:
    if a.family.name != b.family.name:
        raise ValueError(
            f"mixed families: {a.family.name!r} versus {b.family.name!r}"
        )


class TensorElement:
    """A finitely supported combination of ordered pairs of forest classes."""

    __slots__ = ("family", "terms")

    def __init__(self, family: FamilySpec, terms: Mapping[tuple[str, str], Coeff]):
        self.family = family
        self.terms = {k: v for k, v in terms.items() if v != 0}
        for left, right in self.terms:
            for key in (left, right):
                if not family.contains(forest_from_key(key)):
                    raise ValueError(f"key {key!r} is not in family {family.name}")

    def coefficient(self, left: str, right: str) -> Coeff:
        return self.terms.get((left, right), 0)

    def __add__(self, other: "TensorElement") -> "TensorElement":
        _check_same_family(self, other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return TensorElement(self.family, out)

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        return self + (-1) * other

    def __rmul__(self, scalar: Coeff) -> "TensorElement":
        return TensorElement(
            self.family, {k: scalar * v for k, v in self.terms.items()}
        )

    def __mul__(self, scalar: Coeff) -> "TensorElement":
        return self.__rmul__(scalar)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, TensorElement)
            and self.family.name == other.family.name
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.family.name, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"TensorElement({self.family.name!r}, {len(self.terms)} terms)"

    def swap(self) -> "TensorElement":
        return TensorElement(
            self.family, {(r, l): c for (l, r), c in self.terms.items()}
        )

    def star(self, other: "TensorElement") -> "TensorElement":
        """Componentwise product of tensors (used for bialgebra checks)."""
        _check_same_family(self, other)
        out: dict[tuple[str, str], Coeff] = {}
        for (l1, r1), c1 in self.terms.items():
            for (l2, r2), c2 in other.terms.items():
                left = _delta_mul(self.family, l1, l2)
                right = _delta_mul(self.family, r1, r2)
                for lk, lc in left.items():
                    for rk, rc in right.items():
                        pair = (lk, rk)
                        out[pair] = out.get(pair, 0) + c1 * c2 * lc * rc
        return TensorElement(self.family, out)

    def to_json(self) -> dict:
        return {
            "family": self.family.name,
            "terms": [
                {"left": l, "right": r, "coeff": coefficient_string(c)}
                for (l, r), c in sorted(self.terms.items())
            ],
        }


# ---------------------------------------------------------------------------
# Basis elements


def delta(f: ColoredForest | ColoredTree, family: FamilySpec) -> HallElement:
    """Indicator of the isomorphism class of ``f``."""
    forest = f.as_forest() if isinstance(f, ColoredTree) else f
    if not family.contains(forest):
        raise ValueError(f"forest {forest.key!r} is not in family {family.name}")
    return HallElement(family, {forest.key: 1})


def unit(family: FamilySpec) -> HallElement:
    return HallElement(family, {EMPTY_KEY: 1})


# ---------------------------------------------------------------------------
# Convolution product


_DELTA_MUL_CACHE: dict[tuple[str, str, str], dict[str, int]] = {}


def _attach(
    base: ColoredForest, scion: ColoredTree, targets: Iterable[int | None]
) -> ColoredForest:
    """Attach one scion copy per target; ``None`` adds a free component."""
    per_vertex: dict[int, int] = {}
    free = 0
    for t in targets:
        if t is None:
            free += 1
        else:
            per_vertex[t] = per_vertex.get(t, 0) + 1

    def rebuild(tree: ColoredTree, offset: int) -> ColoredTree:
        kids = []
        off = offset + 1
        for child in tree.children:
            kids.append(rebuild(child, off))
            off += child.size
        kids.extend(scion for _ in range(per_vertex.get(offset, 0)))
        return ColoredTree(tree.color, tuple(kids))

    comps = []
    for tree, off in zip(base.components, base.component_offsets()):
        comps.append(rebuild(tree, off))
    comps.extend(scion for _ in range(free))
    return ColoredForest(tuple(comps))


def _extension_candidates(
    M: ColoredForest, N: ColoredForest, family: FamilySpec
) -> list[ColoredForest]:
    """Forests that can carry an ideal of class M with complement of class N.

    Components of M are placed class by class, each below some vertex of
    the partial forest or as a free component.  Partial results that leave
    the family are pruned: a partial placement is a convex subposet of any
    completion, and the family is closed under convex subposets.
    """
    classes: dict[str, tuple[ColoredTree, int]] = {}
    for comp in M.components:
        tree, count = classes.get(comp.key, (comp, 0))
        classes[comp.key] = (tree, count + 1)
    pool: dict[str, ColoredForest] = {N.key: N}
    for key in sorted(classes):
        scion, mult = classes[key]
        next_pool: dict[str, ColoredForest] = {}
        for partial in pool.values():
            spots: list[int | None] = [None]
            spots.extend(range(partial.size))
            for targets in combinations_with_replacement(spots, mult):
                candidate = _attach(partial, scion, targets)
                if candidate.key not in next_pool and family.contains(candidate):
                    next_pool[candidate.key] = candidate
        pool = next_pool
    return list(pool.values())


def _delta_mul(family: FamilySpec, m_key: str, n_key: str) -> dict[str, int]:
    cache_key = (family.name, m_key, n_key)
    cached = _DELTA_MUL_CACHE.get(cache_key)
    if cached is not None:
        return cached
    M = forest_from_key(m_key)
    N = forest_from_key(n_key)
    terms: dict[str, int] = {}
    for Q in _extension_candidates(M, N, family):
        count = grouped_ideal_splits(Q).get((m_key, n_key), 0)
        if count:
            terms[Q.key] = count
    _DELTA_MUL_CACHE[cache_key] = terms
    return terms


def hall_mul(f: HallElement, g: HallElement) -> HallElement:
    """Convolution product, extended bilinearly from the delta basis."""
    _check_same_family(f, g)
    out: dict[str, Coeff] = {}
    for mk, mc in f.terms.items():
        for nk, nc in g.terms.items():
            scale = mc * nc
            for qk, count in _delta_mul(f.family, mk, nk).items():
                out[qk] = out.get(qk, 0) + scale * count
    return HallElement(f.family, out)


def count_extensions(
    M: ColoredForest | ColoredTree,
    N: ColoredForest | ColoredTree,
    Q: ColoredForest | ColoredTree,
    family: FamilySpec,
) -> int:
    """Number of short exact sequences embedding M into Q with quotient N.

    Equals the ideal-split count of Q for the pair (M, N) times the two
    automorphism group orders, matching the exact-sequence enumeration of
    the incidence category.
    """
    M = M.as_forest() if isinstance(M, ColoredTree) else M
    N = N.as_forest() if isinstance(N, ColoredTree) else N
    Q = Q.as_forest() if isinstance(Q, ColoredTree) else Q
    for f in (M, N, Q):
        if not family.contains(f):
            raise ValueError(f"forest {f.key!r} is not in family {family.name}")
    splits = grouped_ideal_splits(Q).get((M.key, N.key), 0)
    return splits * aut_order(M) * aut_order(N)


# ---------------------------------------------------------------------------
# Coproduct, counit, antipode, gradings


def _component_splits(key: str) -> list[tuple[str, str]]:
    """Ordered pairs of component sub-multisets, each distinct pair once."""
    forest = forest_from_key(key)
    groups: list[tuple[str, int]] = []
    for t in forest.components:
        if groups and groups[-1][0] == t.key:
            groups[-1] = (t.key, groups[-1][1] + 1)
        else:
            groups.append((t.key, 1))
    picks: list[tuple[list[str], list[str]]] = [([], [])]
    for comp_key, mult in groups:
        new_picks = []
        for left, right in picks:
            for take in range(mult + 1):
                new_picks.append(
                    (left + [comp_key] * take, right + [comp_key] * (mult - take))
                )
        picks = new_picks
    out = []
    for left, right in picks:
        lk = "+".join(sorted(left)) if left else EMPTY_KEY
        rk = "+".join(sorted(right)) if right else EMPTY_KEY
        out.append((lk, rk))
    return out


def coproduct(f: HallElement) -> TensorElement:
    """Each forest splits into all ordered pairs of complementary sub-multisets."""
    out: dict[tuple[str, str], Coeff] = {}
    for key, c in f.terms.items():
        for pair in _component_splits(key):
            out[pair] = out.get(pair, 0) + c
    return TensorElement(f.family, out)


def counit(f: HallElement) -> Coeff:
    """Coefficient of the empty forest."""
    return f.coefficient(EMPTY_KEY)


_ANTIPODE_CACHE: dict[tuple[str, str], dict[str, int]] = {}


def _antipode_delta(family: FamilySpec, key: str) -> dict[str, int]:
    if key == EMPTY_KEY:
        return {EMPTY_KEY: 1}
    cache_key = (family.name, key)
    cached = _ANTIPODE_CACHE.get(cache_key)
    if cached is not None:
        return cached
    terms: dict[str, int] = {key: -1}
    for left, right in _component_splits(key):
        if left == EMPTY_KEY or right == EMPTY_KEY:
            continue
        inner = _antipode_delta(family, left)
        for ik, ic in inner.items():
            for qk, count in _delta_mul(family, ik, right).items():
                terms[qk] = terms.get(qk, 0) - ic * count
    terms = {k: v for k, v in terms.items() if v}
    _ANTIPODE_CACHE[cache_key] = terms
    return terms


def antipode(f: HallElement) -> HallElement:
    """Convolution inverse of the identity, by the connected-graded recursion.

    Satisfies mul (S tensor id) coproduct = unit counit; on a connected
    nonempty class it is plain negation.
    """
    out: dict[str, Coeff] = {}
    for key, c in f.terms.items():
        for k, v in _antipode_delta(f.family, key).items():
            out[k] = out.get(k, 0) + c * v
    return HallElement(f.family, out)


def degree_split(
    f: HallElement, by: str = "size"
) -> dict[int, HallElement] | dict[tuple[tuple[str, int], ...], HallElement]:
    """Partition the terms by vertex count (``by="size"``) or color counts
    (``by="k0"``, keyed by sorted (color, count) tuples)."""
    buckets: dict = {}
    for key, c in f.terms.items():
        forest = forest_from_key(key)
        if by == "size":
            deg = forest.size
        elif by == "k0":
            deg = tuple(sorted(color_counts(forest).items()))
        else:
            raise ValueError("by must be 'size' or 'k0'")
        buckets.setdefault(deg, {})[key] = c
    return {deg: HallElement(f.family, terms) for deg, terms in buckets.items()}
