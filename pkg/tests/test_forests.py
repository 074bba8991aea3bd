"""Core forest machinery against brute-force oracles and worked examples."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import bruteforce as bf
from foresthall.forests import (
    ColoredForest,
    ColoredTree,
    ForestSyntaxError,
    admissible_cuts,
    aut_order,
    canonical_form,
    chain,
    color_counts,
    convex_subposets,
    corolla,
    empty_forest,
    forest_from_key,
    forest_isomorphisms,
    graft,
    grouped_ideal_splits,
    ideal_vertex_sets,
    order_ideals,
    parse_forest,
    parse_tree,
    restrict,
    single_edge_cuts,
    singleton,
    structure_constant,
)


def tree_from_parents(parents, colors) -> ColoredTree:
    kids = bf.children_lists(parents)
    (root,) = bf.roots_of(parents)

    def build(v):
        return ColoredTree(colors[v], tuple(build(c) for c in kids[v]))

    return build(root)


def all_colored_trees(n: int, colors: tuple[str, ...]) -> list[ColoredTree]:
    """Every iso-class of n-vertex trees over the alphabet, via shapes."""
    seen: dict[str, ColoredTree] = {}
    for seq in bf.level_sequences(n):
        parents = bf.levelseq_to_parents(seq)
        for coloring in product(colors, repeat=n):
            t = tree_from_parents(parents, coloring)
            seen.setdefault(t.key, t)
    return sorted(seen.values(), key=lambda t: t.key)


TWO = ("a", "b")


# ---------------------------------------------------------------------------
# Parsing and canonical forms


def test_parse_examples():
    assert parse_forest("a(b,b)").size == 3
    assert parse_forest("0").is_empty
    assert parse_forest(" 0 ").is_empty
    assert parse_forest("a (b , b)").key == "a(b,b)"


def test_sibling_order_is_immaterial():
    assert parse_forest("a(b,a)").key == parse_forest("a(a,b)").key
    assert canonical_form(parse_tree("a(b,a)")) == "a(a,b)"


def test_single_vertex_key():
    assert canonical_form(parse_forest("a")) == "a"


def test_component_order_is_immaterial():
    assert parse_forest("b+a(b)").key == parse_forest("a(b)+b").key == "a(b)+b"


@pytest.mark.parametrize(
    "text,offset",
    [
        ("a(", 2),
        ("", 0),
        ("a(b", 3),
        ("a(b,", 4),
        ("a)", 1),
        ("a+", 2),
        ("(a)", 0),
        ("a b", 2),
    ],
)
def test_syntax_errors_carry_offsets(text, offset):
    with pytest.raises(ForestSyntaxError) as err:
        parse_forest(text)
    assert err.value.offset == offset


def test_color_zero_is_reserved():
    for text in ["0(a)", "0+a", "a(0)", "a+0"]:
        with pytest.raises(ForestSyntaxError):
            parse_forest(text)
    # multi-character tokens containing 0 are ordinary colors
    assert parse_forest("00").key == "00"
    assert parse_forest("x0(a_1)").size == 2


def test_canonical_form_reparses_and_is_idempotent():
    pool = [t for n in range(1, 6) for t in all_colored_trees(n, TWO)]
    for t in pool:
        again = parse_forest(t.key)
        assert again.key == t.key
    # forests made of up to three components
    for t1, t2 in combinations(pool[:40], 2):
        f = ColoredForest((t1, t2))
        assert parse_forest(f.key).key == f.key


def test_key_equality_matches_bruteforce_isomorphism():
    # all pairs of <=5 vertex 2-colored trees, grouped to keep it honest
    for n in range(1, 6):
        trees = all_colored_trees(n, TWO)
        raws = [(t.parent_indices(), t.vertex_colors()) for t in trees]
        for i, j in combinations(range(len(trees)), 2):
            iso = bf.raw_isomorphic(*raws[i], *raws[j])
            assert iso == (trees[i].key == trees[j].key)
            assert not iso  # distinct canonical keys are non-isomorphic
        for i in range(len(trees)):
            assert bf.raw_isomorphic(*raws[i], *raws[i])


@st.composite
def random_tree_data(draw):
    n = draw(st.integers(min_value=1, max_value=8))
    parents = [-1]
    for v in range(1, n):
        parents.append(draw(st.integers(min_value=0, max_value=v - 1)))
    colors = tuple(draw(st.sampled_from("abc")) for _ in range(n))
    return tuple(parents), colors


@given(random_tree_data(), st.randoms())
@settings(max_examples=60, deadline=None)
def test_relabelling_preserves_key(data, rng):
    parents, colors = data
    t = tree_from_parents(parents, colors)
    n = len(parents)
    perm = list(range(n))
    rng.shuffle(perm)
    new_parents = [-1] * n
    new_colors = [""] * n
    for v in range(n):
        new_parents[perm[v]] = -1 if parents[v] < 0 else perm[parents[v]]
        new_colors[perm[v]] = colors[v]
    t2 = tree_from_parents(tuple(new_parents), tuple(new_colors))
    assert t.key == t2.key
    assert parse_forest(t.key).key == t.key


# ---------------------------------------------------------------------------
# Automorphisms


def test_aut_examples():
    assert aut_order(singleton("a")) == 1
    assert aut_order(parse_tree("a(b,b)")) == 2
    twin = parse_forest("a(b,b,b)+a(b,b,b)")
    assert aut_order(twin) == 72


def test_aut_matches_bruteforce_up_to_six_vertices():
    for n in range(1, 7):
        for t in all_colored_trees(n, TWO):
            expected = bf.brute_automorphism_count(
                t.parent_indices(), t.vertex_colors()
            )
            assert aut_order(t) == expected


def test_forest_isomorphisms_count_automorphisms():
    f = parse_forest("a(b,b)+a(b,b)")
    isos = forest_isomorphisms(f, f)
    assert len(isos) == aut_order(f) == 8
    parents = f.parent_indices()
    colors = f.vertex_colors()
    for m in isos:
        assert sorted(m) == sorted(m.values()) == list(range(f.size))
        for v, w in m.items():
            assert colors[v] == colors[w]
            pv, pw = parents[v], parents[w]
            assert (pv < 0) == (pw < 0)
            if pv >= 0:
                assert m[pv] == pw


# ---------------------------------------------------------------------------
# Order ideals


def test_ideal_counts_examples():
    assert len(ideal_vertex_sets(singleton("a"))) == 2
    assert len(ideal_vertex_sets(chain(["1", "1", "1"]))) == 4
    assert len(ideal_vertex_sets(parse_tree("b(b,a(b))"))) == 7


def test_order_ideals_match_bruteforce_subsets():
    pool = [t for n in range(1, 6) for t in all_colored_trees(n, TWO)]
    pool += [t.as_forest().oplus(t.as_forest()).components[0].as_forest() for t in []]
    for t in pool:
        got = set(ideal_vertex_sets(t))
        assert got == bf.brute_ideal_sets(t.parent_indices())
        assert len(got) == len(ideal_vertex_sets(t))  # no duplicates
    f = parse_forest("a(b)+b+a")
    assert set(ideal_vertex_sets(f)) == bf.brute_ideal_sets(f.parent_indices())


def test_order_ideals_split_sizes():
    f = parse_forest("b(b,a(b))")
    for split in order_ideals(f):
        assert split.ideal.size + split.complement.size == f.size
        assert len(split.ideal_vertices) == split.ideal.size


def test_grouped_splits_agree_with_order_ideals():
    for text in ["a", "a(b,b)", "b(b,a(b))", "a(b)+b", "a+a+b"]:
        f = parse_forest(text)
        raw: dict[tuple[str, str], int] = {}
        for split in order_ideals(f):
            pair = (split.ideal.key, split.complement.key)
            raw[pair] = raw.get(pair, 0) + 1
        assert grouped_ideal_splits(f) == raw


# ---------------------------------------------------------------------------
# Cuts


def test_single_vertex_has_only_the_empty_cut():
    cuts = admissible_cuts(singleton("a"))
    assert len(cuts) == 1
    assert cuts[0].edges == frozenset()
    assert cuts[0].lower.is_empty
    assert cuts[0].upper.key == "a"


def test_two_edge_cut_of_worked_tree():
    t = parse_tree("b(b,a(b))")
    cuts = admissible_cuts(t)
    assert len(cuts) == 6  # 7 ideals minus the total split
    assert any(
        c.lower.key == "b+b" and c.upper.key == "b(a)" and len(c.edges) == 2
        for c in cuts
    )


def test_cut_admissibility_no_two_edges_on_a_root_leaf_path():
    for n in range(1, 7):
        for t in all_colored_trees(n, ("a",)):
            parents = t.parent_indices()

            def ancestors(v):
                out = set()
                while parents[v] >= 0:
                    v = parents[v]
                    out.add(v)
                return out

            for cut in admissible_cuts(t):
                for v, w in combinations(sorted(cut.edges), 2):
                    assert v not in ancestors(w) and w not in ancestors(v)
                assert len(cut.lower.components) == len(cut.edges)
                assert cut.lower.size + cut.upper.size == t.size


def test_ideal_count_is_cut_count_plus_one():
    for n in range(1, 8):
        for t in all_colored_trees(n, ("a",)):
            assert len(ideal_vertex_sets(t)) == len(admissible_cuts(t)) + 1
    for n in range(1, 6):
        for t in all_colored_trees(n, TWO):
            assert len(ideal_vertex_sets(t)) == len(admissible_cuts(t)) + 1


def test_single_edge_cut_examples():
    assert [(p.key, r.key) for p, r in single_edge_cuts(parse_tree("a(b)"))] == [
        ("b", "a")
    ]
    assert [(p.key, r.key) for p, r in single_edge_cuts(parse_tree("a(b,b)"))] == [
        ("b", "a(b)"),
        ("b", "a(b)"),
    ]
    assert sorted((p.key, r.key) for p, r in single_edge_cuts(parse_tree("b(a(b))"))) == [
        ("a(b)", "b"),
        ("b", "b(a)"),
    ]


# ---------------------------------------------------------------------------
# Grafting and structure constants


def test_graft_examples():
    b, a = singleton("b"), singleton("a")
    assert graft(b, a, 0).key == "a(b)"
    ab = parse_tree("a(b)")
    assert graft(b, ab, 0).key == "a(b,b)"
    assert graft(b, ab, 1).key == "a(b(b))"
    assert graft(b, ab, 0).size == 3


def test_graft_bad_vertex_raises():
    with pytest.raises(IndexError):
        graft(singleton("a"), singleton("b"), 1)


def test_structure_constant_worked_product():
    b = singleton("b")
    ab = parse_tree("a(b)")
    assert structure_constant(b, ab, parse_tree("a(b,b)")) == 2
    assert structure_constant(b, ab, parse_tree("a(b(b))")) == 1
    assert structure_constant(b, ab, parse_tree("a(a,b)")) == 0


def test_structure_constant_grading():
    b = singleton("b")
    ab = parse_tree("a(b)")
    assert structure_constant(b, ab, parse_tree("a(b)")) == 0
    assert structure_constant(b, ab, parse_tree("a(b,b,b)")) == 0


def test_every_edge_cut_reassembles_by_grafting():
    for n in range(2, 6):
        for s in all_colored_trees(n, TWO):
            parents = s.parent_indices()
            for v in range(1, s.size):
                below = s.subtree_at(v)
                above_vertices = frozenset(range(s.size)) - frozenset(
                    range(v, v + below.size)
                )
                above, mapping = restrict(s, above_vertices)
                attach = mapping.index(parents[v])
                assert graft(below, above.as_tree(), attach).key == s.key


def test_graft_totals_and_weighted_edge_counts():
    # each vertex of the stock yields one graft; edge counts recover the
    # total after weighting by automorphisms
    pool = [t for n in range(1, 5) for t in all_colored_trees(n, TWO)]
    for t1, t2 in product(pool, repeat=2):
        if t1.size + t2.size > 5:
            continue
        candidates: dict[str, ColoredTree] = {}
        for v in range(t2.size):
            s = graft(t1, t2, v)
            candidates.setdefault(s.key, s)
        raw_total = sum(
            1
            for v in range(t2.size)
            for key in [graft(t1, t2, v).key]
        )
        assert raw_total == t2.size
        weighted = sum(
            Fraction(
                structure_constant(t1, t2, s) * aut_order(t1) * aut_order(t2),
                aut_order(s),
            )
            for s in candidates.values()
        )
        assert weighted == t2.size


# ---------------------------------------------------------------------------
# Convex subposets


def test_convex_examples():
    assert convex_subposets(singleton("a")) == {"0", "a"}
    assert convex_subposets(parse_tree("a(b)")) == {"0", "a", "b", "a(b)"}


def test_convex_interval_ladder():
    t = chain(["1", "2", "3"])
    expected = {
        "0",
        "1",
        "2",
        "3",
        chain(["1", "2"]).key,
        chain(["2", "3"]).key,
        chain(["1", "2", "3"]).key,
    }
    assert convex_subposets(t) == expected
    assert len(expected) == 7


def test_convex_closed_under_convex():
    for n in range(1, 5):
        for t in all_colored_trees(n, TWO):
            outer = convex_subposets(t)
            for key in outer:
                inner = convex_subposets(forest_from_key(key))
                assert inner <= outer


# ---------------------------------------------------------------------------
# Color counts


def test_color_counts_examples():
    assert color_counts(parse_tree("a(b,b)")) == {"a": 1, "b": 2}
    assert color_counts(empty_forest()) == {}


def test_color_counts_additive_under_disjoint_union():
    pool = [t for n in range(1, 5) for t in all_colored_trees(n, TWO)][:25]
    for t1, t2 in product(pool, repeat=2):
        f = t1.as_forest().oplus(t2.as_forest())
        combined = color_counts(t1)
        for c, k in color_counts(t2).items():
            combined[c] = combined.get(c, 0) + k
        assert color_counts(f) == combined


def test_restrict_returns_consistent_mapping():
    f = parse_forest("b(b,a(b))+a")
    for ids in ideal_vertex_sets(f):
        sub, mapping = restrict(f, ids)
        assert sorted(mapping) == sorted(ids)
        colors = f.vertex_colors()
        assert tuple(colors[v] for v in mapping) == sub.vertex_colors()
        sub_parents = sub.parent_indices()
        parents = f.parent_indices()
        for new, old in enumerate(mapping):
            p = sub_parents[new]
            if p >= 0:
                assert mapping[p] == parents[old]
            else:
                assert parents[old] not in ids
