"""Concrete comparison Lie algebras and basis maps onto them.

Three targets: strictly upper-triangular integer matrices, the positive
part of the loop algebra of 2x2 matrices, and the free associative
algebra on an alphabet viewed as a Lie algebra.  Each comes with the
linear map from the matching ladder family plus a harness checking that
the map intertwines brackets and is a graded bijection onto the stated
basis.

Ladder reading conventions differ per map and are fixed explicitly:
the matrix and loop maps read ladder colors root to leaf, the word map
reads them leaf to root.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as cartesian
from typing import Callable, Iterable, Mapping

from .families import FamilySpec
from .forests import ColoredTree, forest_from_key
from .prelie import PrimitiveElement, bracket, primitive_delta

__all__ = [
    "MatrixElement",
    "LoopElement",
    "WordElement",
    "matrix_unit",
    "loop_basis",
    "word",
    "matrix_bracket",
    "loop_bracket",
    "word_bracket",
    "to_upper_triangular",
    "to_loop_gl2",
    "to_words",
    "HomReport",
    "verify_homomorphism",
    "ORACLE_MAPS",
]


def _merge(a: Mapping, b: Mapping, sign: int = 1) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + sign * v
    return {k: v for k, v in out.items() if v != 0}


@dataclass(frozen=True)
class MatrixElement:
    """Strictly upper-triangular integer matrix, stored sparsely.

    Entries are keyed by 1-based (row, column) with row < column.
    """

    size: int
    entries: tuple[tuple[tuple[int, int], int], ...]

    @classmethod
    def make(cls, size: int, entries: Mapping[tuple[int, int], int]) -> "MatrixElement":
        clean = {}
        for (i, j), v in entries.items():
            if not (1 <= i < j <= size):
                raise ValueError(f"entry ({i},{j}) is not strictly upper in size {size}")
            if v != 0:
                clean[(i, j)] = int(v)
        return cls(size, tuple(sorted(clean.items())))

    @property
    def terms(self) -> dict[tuple[int, int], int]:
        return dict(self.entries)

    @property
    def is_zero(self) -> bool:
        return not self.entries

    def __add__(self, other: "MatrixElement") -> "MatrixElement":
        if self.size != other.size:
            raise ValueError("matrix size mismatch")
        return MatrixElement.make(self.size, _merge(self.terms, other.terms))

    def __sub__(self, other: "MatrixElement") -> "MatrixElement":
        if self.size != other.size:
            raise ValueError("matrix size mismatch")
        return MatrixElement.make(self.size, _merge(self.terms, other.terms, -1))

    def __rmul__(self, scalar: int) -> "MatrixElement":
        return MatrixElement.make(
            self.size, {k: scalar * v for k, v in self.entries}
        )


def matrix_unit(size: int, i: int, j: int) -> MatrixElement:
    return MatrixElement.make(size, {(i, j): 1})


def matrix_bracket(x: MatrixElement, y: MatrixElement) -> MatrixElement:
    """Commutator of the associative matrix product, exactly."""
    if x.size != y.size:
        raise ValueError("matrix size mismatch")
    out: dict[tuple[int, int], int] = {}
    for (i, j), a in x.entries:
        for (k, l), b in y.entries:
            if j == k:
                out[(i, l)] = out.get((i, l), 0) + a * b
            if l == i:
                out[(k, j)] = out.get((k, j), 0) - a * b
    return MatrixElement.make(x.size, out)


# Basis of 2x2 matrices used by the loop algebra: e (upper), f (lower),
# h1 and h2 (diagonal units).
_GL2 = {
    "e": ((0, 1), (0, 0)),
    "f": ((0, 0), (1, 0)),
    "h1": ((1, 0), (0, 0)),
    "h2": ((0, 0), (0, 1)),
}
_MIN_POWER = {"e": 0, "f": 1, "h1": 1, "h2": 1}


@dataclass(frozen=True)
class LoopElement:
    """Element of the positive loop algebra of 2x2 matrices.

    Basis symbols pair with powers of the loop variable: e from power 0,
    while f, h1, h2 start at power 1 (the degree-graded positive part).
    """

    terms: tuple[tuple[tuple[str, int], int], ...]

    @classmethod
    def make(cls, terms: Mapping[tuple[str, int], int]) -> "LoopElement":
        clean = {}
        for (sym, power), v in terms.items():
            if sym not in _GL2:
                raise ValueError(f"unknown loop symbol {sym!r}")
            if power < _MIN_POWER[sym]:
                raise ValueError(
                    f"{sym} requires loop power >= {_MIN_POWER[sym]}, got {power}"
                )
            if v != 0:
                clean[(sym, power)] = int(v)
        return cls(tuple(sorted(clean.items())))

    @property
    def as_dict(self) -> dict[tuple[str, int], int]:
        return dict(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "LoopElement") -> "LoopElement":
        return LoopElement.make(_merge(self.as_dict, other.as_dict))

    def __sub__(self, other: "LoopElement") -> "LoopElement":
        return LoopElement.make(_merge(self.as_dict, other.as_dict, -1))

    def __rmul__(self, scalar: int) -> "LoopElement":
        return LoopElement.make({k: scalar * v for k, v in self.terms})


def loop_basis(symbol: str, power: int) -> LoopElement:
    return LoopElement.make({(symbol, power): 1})


def _gl2_bracket(a: str, b: str) -> dict[str, int]:
    ma, mb = _GL2[a], _GL2[b]

    def mul(x, y):
        return tuple(
            tuple(sum(x[i][k] * y[k][j] for k in range(2)) for j in range(2))
            for i in range(2)
        )

    comm = [
        [mul(ma, mb)[i][j] - mul(mb, ma)[i][j] for j in range(2)]
        for i in range(2)
    ]
    return {
        sym: coeff
        for sym, coeff in (
            ("h1", comm[0][0]),
            ("e", comm[0][1]),
            ("f", comm[1][0]),
            ("h2", comm[1][1]),
        )
        if coeff
    }


def loop_bracket(x: LoopElement, y: LoopElement) -> LoopElement:
    """Bracket of loop elements: matrix bracket with added loop powers."""
    out: dict[tuple[str, int], int] = {}
    for (sa, pa), ca in x.terms:
        for (sb, pb), cb in y.terms:
            for sym, coeff in _gl2_bracket(sa, sb).items():
                key = (sym, pa + pb)
                out[key] = out.get(key, 0) + ca * cb * coeff
    return LoopElement.make(out)


@dataclass(frozen=True)
class WordElement:
    """Integer combination of finite words over a color alphabet."""

    terms: tuple[tuple[tuple[str, ...], int], ...]

    @classmethod
    def make(cls, terms: Mapping[tuple[str, ...], int]) -> "WordElement":
        return cls(tuple(sorted((k, int(v)) for k, v in terms.items() if v != 0)))

    @property
    def as_dict(self) -> dict[tuple[str, ...], int]:
        return dict(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "WordElement") -> "WordElement":
        return WordElement.make(_merge(self.as_dict, other.as_dict))

    def __sub__(self, other: "WordElement") -> "WordElement":
        return WordElement.make(_merge(self.as_dict, other.as_dict, -1))

    def __rmul__(self, scalar: int) -> "WordElement":
        return WordElement.make({k: scalar * v for k, v in self.terms})


def word(letters: Iterable[str]) -> WordElement:
    return WordElement.make({tuple(letters): 1})


def word_concat(x: WordElement, y: WordElement) -> WordElement:
    out: dict[tuple[str, ...], int] = {}
    for wa, ca in x.terms:
        for wb, cb in y.terms:
            key = wa + wb
            out[key] = out.get(key, 0) + ca * cb
    return WordElement.make(out)


def word_bracket(x: WordElement, y: WordElement) -> WordElement:
    """Commutator of concatenation."""
    return word_concat(x, y) - word_concat(y, x)


# ---------------------------------------------------------------------------
# Maps from ladder families


def _chain_colors_checked(key: str, family_name: str) -> list[str]:
    tree = forest_from_key(key).as_tree()
    out = [tree.color]
    node = tree
    while node.children:
        if len(node.children) > 1:
            raise ValueError(f"term {key!r} of a {family_name} element is not a ladder")
        node = node.children[0]
        out.append(node.color)
    return out


def to_upper_triangular(x: PrimitiveElement) -> MatrixElement:
    """Interval ladders to matrix units: the ladder colored k..k+m
    root-to-leaf goes to minus the (k, k+m+1) unit."""
    if not x.family.name.startswith("interval-ladders:"):
        raise ValueError("element must live in an interval-ladders family")
    n = x.family.params[0]
    out: dict[tuple[int, int], int] = {}
    for key, coeff in x.terms.items():
        colors = _chain_colors_checked(key, x.family.name)
        k = int(colors[0])
        top = int(colors[-1])
        entry = (k, top + 1)
        out[entry] = out.get(entry, 0) - coeff
    return MatrixElement.make(n + 1, out)


def to_loop_gl2(x: PrimitiveElement) -> LoopElement:
    """Alternating ladders to the positive loop algebra, keyed on root
    color and parity of the length:

        root 1, length 2k+1  ->  e  at power k
        root 2, length 2k+1  ->  f  at power k+1
        root 1, length 2k    ->  -h1 at power k
        root 2, length 2k    ->  -h2 at power k
    """
    if x.family.name != "alt-ladders":
        raise ValueError("element must live in the alt-ladders family")
    out: dict[tuple[str, int], int] = {}
    for key, coeff in x.terms.items():
        colors = _chain_colors_checked(key, x.family.name)
        if any(a == b for a, b in zip(colors, colors[1:])):
            raise ValueError(f"term {key!r} is not an alternating ladder")
        root = colors[0]
        length = len(colors)
        if length % 2 == 1:
            k = (length - 1) // 2
            target = ("e", k) if root == "1" else ("f", k + 1)
            sign = 1
        else:
            k = length // 2
            target = ("h1", k) if root == "1" else ("h2", k)
            sign = -1
        out[target] = out.get(target, 0) + sign * coeff
    return LoopElement.make(out)


def to_words(x: PrimitiveElement) -> WordElement:
    """Ladders to words, letters read from the leaf."""
    if not x.family.name.startswith("ladders:"):
        raise ValueError("element must live in a ladders family")
    out: dict[tuple[str, ...], int] = {}
    for key, coeff in x.terms.items():
        colors = _chain_colors_checked(key, x.family.name)
        w = tuple(reversed(colors))
        out[w] = out.get(w, 0) + coeff
    return WordElement.make(out)


# ---------------------------------------------------------------------------
# Homomorphism verification harness


@dataclass(frozen=True)
class HomReport:
    """Outcome of checking one basis map against brackets and dimensions."""

    map_name: str
    family: str
    max_degree: int
    checked_pairs: int
    failures: tuple[str, ...]
    degree_dimensions: tuple[tuple[int, int, int], ...]

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "map": self.map_name,
            "family": self.family,
            "max_degree": self.max_degree,
            "checked_pairs": self.checked_pairs,
            "failures": list(self.failures),
            "degree_dimensions": [
                {"degree": d, "family": a, "target": b}
                for d, a, b in self.degree_dimensions
            ],
            "passed": self.passed,
        }


def _upper_target_basis(family: FamilySpec, degree: int):
    n = family.params[0]
    return [(("E", k, k + degree)) for k in range(1, n - degree + 2)]


def _loop_target_basis(_family: FamilySpec, degree: int):
    if degree % 2 == 1:
        k = (degree - 1) // 2
        return [("e", k), ("f", k + 1)]
    k = degree // 2
    return [("h1", k), ("h2", k)]


def _word_target_basis(family: FamilySpec, degree: int):
    return list(cartesian(family.alphabet, repeat=degree))


def _matrix_signature(m: MatrixElement):
    return [(("E",) + entry, coeff) for entry, coeff in m.entries]


def _loop_signature(l: LoopElement):
    return list(l.terms)


def _word_signature(w: WordElement):
    return list(w.terms)


ORACLE_MAPS: dict[str, dict] = {
    "upper-triangular": {
        "map": to_upper_triangular,
        "bracket": matrix_bracket,
        "target_basis": _upper_target_basis,
        "signature": _matrix_signature,
        "family_prefix": "interval-ladders:",
    },
    "loop-gl2": {
        "map": to_loop_gl2,
        "bracket": loop_bracket,
        "target_basis": _loop_target_basis,
        "signature": _loop_signature,
        "family_prefix": "alt-ladders",
    },
    "words": {
        "map": to_words,
        "bracket": word_bracket,
        "target_basis": _word_target_basis,
        "signature": _word_signature,
        "family_prefix": "ladders:",
    },
}


def verify_homomorphism(
    map_name: str, family: FamilySpec, max_degree: int
) -> HomReport:
    """Check bracket compatibility and graded bijectivity of a basis map.

    For every ordered pair of basis trees up to the degree bound, the map
    of the bracket must equal the bracket of the maps.  Per degree, each
    basis tree must land on a distinct signed target basis vector and the
    target basis must be exhausted.
    """
    spec = ORACLE_MAPS.get(map_name)
    if spec is None:
        raise ValueError(f"unknown map {map_name!r}; expected one of {sorted(ORACLE_MAPS)}")
    if not family.name.startswith(spec["family_prefix"]):
        raise ValueError(
            f"map {map_name!r} expects a {spec['family_prefix']}* family, got {family.name}"
        )
    phi: Callable[[PrimitiveElement], object] = spec["map"]
    target_bracket = spec["bracket"]
    signature = spec["signature"]
    failures: list[str] = []
    dims: list[tuple[int, int, int]] = []
    basis: list[ColoredTree] = []
    for degree in range(1, max_degree + 1):
        members = family.enumerate_connected(degree)
        basis.extend(members)
        images = [signature(phi(primitive_delta(t, family))) for t in members]
        target = spec["target_basis"](family, degree)
        dims.append((degree, len(members), len(target)))
        hit = {}
        for t, sig in zip(members, images):
            if len(sig) != 1 or abs(sig[0][1]) != 1:
                failures.append(
                    f"degree {degree}: image of {t.key} is not a signed basis vector"
                )
                continue
            vec = sig[0][0]
            if vec in hit:
                failures.append(
                    f"degree {degree}: {t.key} and {hit[vec]} collide on {vec}"
                )
            hit[vec] = t.key
        missing = [v for v in target if v not in hit]
        extra = [v for v in hit if v not in target]
        if missing:
            failures.append(f"degree {degree}: target basis not covered: {missing}")
        if extra:
            failures.append(f"degree {degree}: image leaves the stated basis: {extra}")
    checked = 0
    for t1 in basis:
        d1 = primitive_delta(t1, family)
        for t2 in basis:
            d2 = primitive_delta(t2, family)
            checked += 1
            left = phi(bracket(d1, d2))
            right = target_bracket(phi(d1), phi(d2))
            if signature(left) != signature(right):
                failures.append(
                    f"bracket mismatch on ({t1.key}, {t2.key}): "
                    f"{signature(left)} vs {signature(right)}"
                )
    return HomReport(
        map_name=map_name,
        family=family.name,
        max_degree=max_degree,
        checked_pairs=checked,
        failures=tuple(failures),
        degree_dimensions=tuple(dims),
    )
