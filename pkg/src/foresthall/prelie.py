"""The pre-Lie algebra on primitive elements of the Hall algebra.

Primitive elements are integer combinations of connected family members.
The product of two connected classes sums, over trees obtained by grafting
the root of the first onto a vertex of the second and lying in the family,
the number of edges of the result that reproduce the pair when removed:

    delta_a |> delta_b = sum over t of n(a, b, t) delta_t
    n(a, b, t) = #{edges e of t with the part below e equal to a
                   and the part containing the root equal to b}

The edge count is the honest coefficient: distinct grafting vertices can
yield one tree class whose extra symmetry inflates the count (grafting a
leaf onto the two-vertex chain gives the cherry once, but the cherry has
two qualifying edges).  The same numbers fall out of the Hall convolution
after removing the split extension, which ``prelie_via_hall`` cross-checks.
"""

from __future__ import annotations

from typing import Iterator, Mapping

from .families import FamilySpec
from .forests import (
    ColoredForest,
    ColoredTree,
    forest_from_key,
    graft,
    restrict,
    structure_constant,
)
from .hall import HallElement, delta, hall_mul

__all__ = [
    "PrimitiveElement",
    "ConsistencyError",
    "primitive_delta",
    "prelie",
    "prelie_apply",
    "bracket",
    "prelie_residual",
    "two_edge_cut_count",
    "project_to_family",
    "prelie_via_hall",
]


class ConsistencyError(RuntimeError):
    """An internal cross-check failed; indicates a library bug."""


class PrimitiveElement:
    """Integer combination of connected family members."""

    __slots__ = ("family", "terms")

    def __init__(self, family: FamilySpec, terms: Mapping[str, int]):
        clean: dict[str, int] = {}
        for key, coeff in terms.items():
            if coeff == 0:
                continue
            if int(coeff) != coeff:
                raise ValueError(f"non-integer coefficient {coeff!r} on {key!r}")
            forest = forest_from_key(key)
            if not forest.is_connected:
                raise ValueError(f"key {key!r} is not connected")
            if not family.contains_tree(forest.as_tree()):
                raise ValueError(f"key {key!r} is not in family {family.name}")
            clean[key] = int(coeff)
        self.family = family
        self.terms = clean

    def coefficient(self, key: str) -> int:
        return self.terms.get(key, 0)

    def support(self) -> list[str]:
        return sorted(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def items(self) -> Iterator[tuple[str, int]]:
        return iter(sorted(self.terms.items()))

    def __add__(self, other: "PrimitiveElement") -> "PrimitiveElement":
        _same_family(self, other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return PrimitiveElement(self.family, out)

    def __sub__(self, other: "PrimitiveElement") -> "PrimitiveElement":
        return self + (-1) * other

    def __neg__(self) -> "PrimitiveElement":
        return (-1) * self

    def __rmul__(self, scalar: int) -> "PrimitiveElement":
        return PrimitiveElement(
            self.family, {k: scalar * v for k, v in self.terms.items()}
        )

    def __mul__(self, scalar: int) -> "PrimitiveElement":
        return self.__rmul__(scalar)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, PrimitiveElement)
            and self.family.name == other.family.name
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.family.name, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"PrimitiveElement({self.family.name!r}, {self.pretty()!r})"

    def pretty(self) -> str:
        if not self.terms:
            return "0 (zero element)"
        return " + ".join(f"{c}*{k}" for k, c in sorted(self.terms.items()))

    def to_hall(self) -> HallElement:
        return HallElement(self.family, dict(self.terms))

    def to_json(self) -> dict:
        return {
            "family": self.family.name,
            "connected": True,
            "terms": [
                {"forest": k, "coeff": str(c)} for k, c in sorted(self.terms.items())
            ],
        }


def _same_family(a, b) -> None:
    if a.family.name != b.family.name:
        raise ValueError(f"mixed families: {a.family.name!r} versus {b.family.name!r}")


def primitive_delta(t: ColoredTree, family: FamilySpec) -> PrimitiveElement:
    """Basis element for a connected family member."""
    if not family.contains_tree(t):
        raise ValueError(f"tree {t.key!r} is not in family {family.name}")
    return PrimitiveElement(family, {t.key: 1})


_PRELIE_CACHE: dict[tuple[str, str, str], dict[str, int]] = {}


def _prelie_delta(family: FamilySpec, a_key: str, b_key: str) -> dict[str, int]:
    cache_key = (family.name, a_key, b_key)
    cached = _PRELIE_CACHE.get(cache_key)
    if cached is not None:
        return cached
    a = forest_from_key(a_key).as_tree()
    b = forest_from_key(b_key).as_tree()
    candidates: dict[str, ColoredTree] = {}
    for v in range(b.size):
        t = graft(a, b, v)
        candidates.setdefault(t.key, t)
    terms: dict[str, int] = {}
    for key, t in candidates.items():
        if family.contains_tree(t):
            terms[key] = structure_constant(a, b, t)
    _PRELIE_CACHE[cache_key] = terms
    return terms


def prelie(a: ColoredTree, b: ColoredTree, family: FamilySpec) -> PrimitiveElement:
    """Grafting product of two connected family members."""
    for t in (a, b):
        if not family.contains_tree(t):
            raise ValueError(f"tree {t.key!r} is not in family {family.name}")
    return PrimitiveElement(family, _prelie_delta(family, a.key, b.key))


def prelie_apply(x: PrimitiveElement, y: PrimitiveElement) -> PrimitiveElement:
    """Bilinear extension of the grafting product."""
    _same_family(x, y)
    out: dict[str, int] = {}
    for ak, ac in x.terms.items():
        for bk, bc in y.terms.items():
            scale = ac * bc
            for k, v in _prelie_delta(x.family, ak, bk).items():
                out[k] = out.get(k, 0) + scale * v
    return PrimitiveElement(x.family, out)


def bracket(x: PrimitiveElement, y: PrimitiveElement) -> PrimitiveElement:
    """Lie bracket obtained by antisymmetrizing the grafting product."""
    return prelie_apply(x, y) - prelie_apply(y, x)


def prelie_residual(
    a: ColoredTree, b: ColoredTree, c: ColoredTree, family: FamilySpec
) -> PrimitiveElement:
    """Left-associator difference; the zero element exactly when the
    pre-Lie identity holds on the triple."""
    da = primitive_delta(a, family)
    db = primitive_delta(b, family)
    dc = primitive_delta(c, family)
    ab_c = prelie_apply(prelie_apply(da, db), dc)
    a_bc = prelie_apply(da, prelie_apply(db, dc))
    ba_c = prelie_apply(prelie_apply(db, da), dc)
    b_ac = prelie_apply(db, prelie_apply(da, dc))
    return ab_c - a_bc - ba_c + b_ac


def two_edge_cut_count(
    a: ColoredTree, b: ColoredTree, c: ColoredTree, s: ColoredTree
) -> int:
    """Admissible two-edge cuts of ``s`` leaving components (a, b, c).

    Counts ordered edge pairs: the part below the first edge must match
    ``a``, below the second ``b``, and the piece containing the root
    ``c``.  Ordered counting is what the associator difference of the
    grafting product produces (a cut with two equal pendants is hit by
    both orders).
    """
    if a.size + b.size + c.size != s.size:
        return 0
    n = s.size
    count = 0
    allv = frozenset(range(n))
    subtree_sizes = [s.subtree_at(v).size for v in range(n)]
    for v1 in range(1, n):
        span1 = range(v1, v1 + subtree_sizes[v1])
        below1 = s.subtree_at(v1)
        if below1.key != a.key:
            continue
        for v2 in range(1, n):
            if v2 == v1:
                continue
            span2 = range(v2, v2 + subtree_sizes[v2])
            # admissible: neither edge lies below the other
            if v1 in span2 or v2 in span1:
                continue
            below2 = s.subtree_at(v2)
            if below2.key != b.key:
                continue
            rest = allv - frozenset(span1) - frozenset(span2)
            if restrict(s, rest)[0].key == c.key:
                count += 1
    return count


def project_to_family(
    x: PrimitiveElement, family: FamilySpec
) -> PrimitiveElement:
    """Drop the terms whose class is not a connected member of the family."""
    kept = {
        k: v
        for k, v in x.terms.items()
        if family.contains_tree(forest_from_key(k).as_tree())
    }
    return PrimitiveElement(family, kept)


def prelie_via_hall(
    a: ColoredTree, b: ColoredTree, family: FamilySpec
) -> PrimitiveElement:
    """Grafting product recovered from the Hall convolution.

    Computes delta_a * delta_b and removes the full coefficient of the
    split extension a (+) b, which is 2 rather than 1 when a and b are
    isomorphic; subtracting it entirely is what leaves a primitive
    element.  Any remaining disconnected support is a library bug and
    raises :class:`ConsistencyError`.
    """
    for t in (a, b):
        if not family.contains_tree(t):
            raise ValueError(f"tree {t.key!r} is not in family {family.name}")
    h = hall_mul(delta(a, family), delta(b, family))
    split = a.as_forest().oplus(b.as_forest())
    leftover = dict(h.terms)
    leftover.pop(split.key, None)
    for key in leftover:
        if not forest_from_key(key).is_connected:
            raise ConsistencyError(
                f"disconnected class {key!r} in the convolution of "
                f"{a.key!r} and {b.key!r}"
            )
    return PrimitiveElement(family, leftover)
