"""The incidence category of a forest family, with explicit morphisms.

A morphism P1 -> P2 is a triple (I1, I2, f): an order ideal I1 of the
source (the kernel), an order ideal I2 of the target (the image), and a
color-and-order preserving bijection f from P1 minus I1 onto I2.  All
data lives on concrete vertex indices, so composition, kernels,
cokernels and exact-sequence counts are computed rather than asserted.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .forests import (
    ColoredForest,
    ColoredTree,
    forest_from_key,
    forest_isomorphisms,
    ideal_vertex_sets,
    restrict,
)

__all__ = [
    "Morphism",
    "identity",
    "zero_morphism",
    "hom_set",
    "compose",
    "kernel",
    "cokernel",
    "exact_sequences",
]


def _as_forest(f: ColoredForest | ColoredTree) -> ColoredForest:
    return f.as_forest() if isinstance(f, ColoredTree) else f


def _is_ideal(f: ColoredForest, vertices: frozenset[int]) -> bool:
    kids = f.children_indices()
    return all(c in vertices for v in vertices for c in kids[v])


@dataclass(frozen=True)
class Morphism:
    """Triple (kernel ideal, image ideal, vertex bijection).

    ``mapping`` pairs source indices outside the kernel with image
    indices, sorted by source index.
    """

    source: ColoredForest
    target: ColoredForest
    kernel_ideal: frozenset[int]
    image_ideal: frozenset[int]
    mapping: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if not _is_ideal(self.source, self.kernel_ideal):
            raise ValueError("kernel vertex set is not downward closed")
        if not _is_ideal(self.target, self.image_ideal):
            raise ValueError("image vertex set is not downward closed")
        m = dict(self.mapping)
        domain = frozenset(range(self.source.size)) - self.kernel_ideal
        if frozenset(m) != domain or frozenset(m.values()) != self.image_ideal:
            raise ValueError("mapping is not a bijection onto the image ideal")
        src_colors = self.source.vertex_colors()
        dst_colors = self.target.vertex_colors()
        src_parents = self.source.parent_indices()
        dst_parents = self.target.parent_indices()
        for v, w in m.items():
            if src_colors[v] != dst_colors[w]:
                raise ValueError("mapping does not preserve colors")
            p = src_parents[v]
            q = dst_parents[w]
            if p in m:
                if m[p] != q:
                    raise ValueError("mapping does not preserve the order")
            elif q in self.image_ideal:
                # v is a root of the complement but its image has a parent
                # inside the image ideal, so covers do not correspond
                raise ValueError("mapping does not preserve the order")

    @cached_property
    def map_dict(self) -> dict[int, int]:
        return dict(self.mapping)

    @property
    def is_mono(self) -> bool:
        return not self.kernel_ideal

    @property
    def is_epi(self) -> bool:
        return len(self.image_ideal) == self.target.size

    @property
    def is_zero(self) -> bool:
        return not self.mapping and len(self.kernel_ideal) == self.source.size

    def to_json(self) -> dict:
        return {
            "source": self.source.key,
            "target": self.target.key,
            "I1": sorted(self.kernel_ideal),
            "I2": sorted(self.image_ideal),
            "map": [list(p) for p in self.mapping],
        }

    @classmethod
    def from_json(cls, payload: dict) -> "Morphism":
        return cls(
            source=forest_from_key(payload["source"]),
            target=forest_from_key(payload["target"]),
            kernel_ideal=frozenset(payload["I1"]),
            image_ideal=frozenset(payload["I2"]),
            mapping=tuple(sorted((int(a), int(b)) for a, b in payload["map"])),
        )


def _make(source, target, kernel_vs, image_vs, mapping: dict[int, int]) -> Morphism:
    return Morphism(
        source=source,
        target=target,
        kernel_ideal=frozenset(kernel_vs),
        image_ideal=frozenset(image_vs),
        mapping=tuple(sorted(mapping.items())),
    )


def identity(P: ColoredForest | ColoredTree) -> Morphism:
    P = _as_forest(P)
    return _make(P, P, frozenset(), frozenset(range(P.size)), {v: v for v in range(P.size)})


def zero_morphism(P: ColoredForest | ColoredTree, Q: ColoredForest | ColoredTree) -> Morphism:
    P, Q = _as_forest(P), _as_forest(Q)
    return _make(P, Q, frozenset(range(P.size)), frozenset(), {})


def hom_set(P1: ColoredForest | ColoredTree, P2: ColoredForest | ColoredTree) -> list[Morphism]:
    """Every morphism: an ideal on each side plus an isomorphism between
    the source complement and the image."""
    P1, P2 = _as_forest(P1), _as_forest(P2)
    out: list[Morphism] = []
    ideals2 = [
        (i2, *restrict(P2, i2)) for i2 in ideal_vertex_sets(P2)
    ]
    allv1 = frozenset(range(P1.size))
    for i1 in ideal_vertex_sets(P1):
        complement, comp_map = restrict(P1, allv1 - i1)
        for i2, image, image_map in ideals2:
            if image.key != complement.key:
                continue
            for iso in forest_isomorphisms(complement, image):
                mapping = {comp_map[v]: image_map[w] for v, w in iso.items()}
                out.append(_make(P1, P2, i1, i2, mapping))
    return out


def compose(m1: Morphism, m2: Morphism) -> Morphism:
    """Composite of P1 -> P2 after P2 -> P3, in diagram order.

    The kernel grows by whatever the first map sends into the second
    kernel; the image is the second map's view of what survives of the
    first image; the bijection is the chain of the two.
    """
    if m1.target.key != m2.source.key:
        raise ValueError("morphisms are not composable")
    f = m1.map_dict
    g = m2.map_dict
    b1 = m2.kernel_ideal
    k1 = set(m1.kernel_ideal)
    for v, w in f.items():
        if w in b1:
            k1.add(v)
    k3 = {g[w] for w in m1.image_ideal if w not in b1}
    h = {v: g[f[v]] for v in f if f[v] not in b1}
    return _make(m1.source, m2.target, frozenset(k1), frozenset(k3), h)


def kernel(m: Morphism) -> Morphism:
    """Inclusion of the kernel ideal into the source."""
    sub, mapping = restrict(m.source, m.kernel_ideal)
    return _make(
        sub,
        m.source,
        frozenset(),
        m.kernel_ideal,
        {v: mapping[v] for v in range(sub.size)},
    )


def cokernel(m: Morphism) -> Morphism:
    """Projection of the target onto the complement of the image ideal."""
    rest = frozenset(range(m.target.size)) - m.image_ideal
    quotient, mapping = restrict(m.target, rest)
    inverse = {old: new for new, old in enumerate(mapping)}
    return _make(
        m.target,
        quotient,
        m.image_ideal,
        frozenset(range(quotient.size)),
        inverse,
    )


def exact_sequences(
    M: ColoredForest | ColoredTree,
    N: ColoredForest | ColoredTree,
    Q: ColoredForest | ColoredTree,
) -> list[tuple[Morphism, Morphism]]:
    """All pairs (mono M -> Q, epi Q -> N) with matching ideal.

    The image ideal of the mono equals the kernel ideal of the epi, so
    the pair is a short exact sequence; the count equals the extension
    number used by the Hall product.
    """
    M, N, Q = _as_forest(M), _as_forest(N), _as_forest(Q)
    out = []
    allq = frozenset(range(Q.size))
    for ideal_vs in ideal_vertex_sets(Q):
        ideal, ideal_map = restrict(Q, ideal_vs)
        if ideal.key != M.key:
            continue
        rest, rest_map = restrict(Q, allq - ideal_vs)
        if rest.key != N.key:
            continue
        monos = [
            _make(M, Q, frozenset(), ideal_vs, {v: ideal_map[w] for v, w in iso.items()})
            for iso in forest_isomorphisms(M, ideal)
        ]
        epis = [
            _make(
                Q,
                N,
                ideal_vs,
                frozenset(range(N.size)),
                {rest_map[v]: w for v, w in iso.items()},
            )
            for iso in forest_isomorphisms(rest, N)
        ]
        for i in monos:
            for p in epis:
                out.append((i, p))
    return out
