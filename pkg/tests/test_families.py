"""Built-in families: membership, closure, enumeration."""

from __future__ import annotations

import pytest

import bruteforce as bf
from foresthall.families import (
    EnumerationBudgetError,
    FamilySpec,
    all_forests,
    alternating_ladders,
    antichains,
    builtin,
    closure,
    colored_ladders,
    corollas,
    enumerate_connected,
    headtail_ladders,
    interval_ladders,
    one_color_ladders,
    parse_family,
    periodic_ladders,
    verify_closed,
)
from foresthall.forests import chain, parse_forest, parse_tree, singleton


def suite_families() -> list[FamilySpec]:
    return [
        all_forests(("a",)),
        all_forests(("a", "b")),
        one_color_ladders(),
        colored_ladders(("1", "2")),
        antichains(("1", "2")),
        interval_ladders(4),
        alternating_ladders(),
        periodic_ladders(3),
        headtail_ladders(),
        corollas(("1", "2")),
    ]


# ---------------------------------------------------------------------------
# Membership


def test_interval_ladder_membership():
    fam = interval_ladders(4)
    assert fam.contains(chain(["2", "3", "4"]))
    assert not fam.contains(chain(["2", "4"]))
    assert not fam.contains(chain(["4", "3"]))
    assert not fam.contains(chain(["4", "5"]))
    assert fam.contains(parse_forest("0"))


def test_alternating_ladder_membership():
    fam = alternating_ladders()
    assert fam.contains(chain(["1", "2", "1"]))
    assert not fam.contains(chain(["1", "1"]))
    assert fam.contains(chain(["2", "1"]))
    assert not fam.contains(parse_tree("1(2,2)"))


def test_membership_is_componentwise():
    fam = headtail_ladders()
    good = chain(["1", "2"]).as_forest().oplus(chain(["1"]).as_forest())
    bad = chain(["2", "1"]).as_forest().oplus(chain(["1"]).as_forest())
    assert fam.contains(good)
    assert not fam.contains(bad)


def test_corolla_membership():
    fam = corollas(("1", "2"))
    assert fam.contains(parse_tree("1(1,2,2)"))
    assert fam.contains(singleton("2"))
    assert not fam.contains(parse_tree("1(2(1))"))


def test_headtail_membership():
    fam = headtail_ladders()
    assert fam.contains(chain(["1", "1", "2", "2", "2"]))
    assert not fam.contains(chain(["2", "1"]))
    assert fam.contains(chain(["2", "2"]))


def test_periodic_membership():
    fam = periodic_ladders(3)
    assert fam.contains(chain(["2", "3", "1", "2"]))
    assert not fam.contains(chain(["2", "1"]))
    assert not fam.contains(chain(["3", "4"]))


# ---------------------------------------------------------------------------
# builtin() and parse_family()


def test_builtin_dispatch():
    assert builtin("ALL_FORESTS", ("a", "b")).name == "all:a,b"
    assert builtin("INTERVAL_LADDERS", 4).name == "interval-ladders:4"
    with pytest.raises(ValueError):
        builtin("NOT_A_FAMILY")


@pytest.mark.parametrize(
    "text,name",
    [
        ("all:a,b", "all:a,b"),
        ("ladders1", "ladders1"),
        ("antichains:1,2,3", "antichains:1,2,3"),
        ("ladders:1,2", "ladders:1,2"),
        ("interval-ladders:4", "interval-ladders:4"),
        ("alt-ladders", "alt-ladders"),
        ("periodic-ladders:3", "periodic-ladders:3"),
        ("headtail-ladders", "headtail-ladders"),
        ("corollas:1,2,3", "corollas:1,2,3"),
    ],
)
def test_parse_family_round_trip(text, name):
    assert parse_family(text).name == name


def test_parse_family_errors():
    for bad in ["nope", "interval-ladders", "interval-ladders:x", "all", "alt-ladders:2"]:
        with pytest.raises(ValueError):
            parse_family(bad)


# ---------------------------------------------------------------------------
# Closure


def test_closure_of_interval_ladder():
    got = closure([chain(["1", "2", "3"])], 3)
    expected = {
        chain(["1"]).key,
        chain(["2"]).key,
        chain(["3"]).key,
        chain(["1", "2"]).key,
        chain(["2", "3"]).key,
        chain(["1", "2", "3"]).key,
    }
    assert got == expected
    assert len(got) == 6


def test_closure_of_singleton():
    assert closure([singleton("a")], 3) == {"a"}


def test_closure_of_two_chain():
    assert closure([parse_tree("a(b)")], 2) == {"a", "b", "a(b)"}


def test_closure_monotone_and_idempotent():
    gens = [parse_tree("a(b,b)"), parse_tree("b(a(b))")]
    small = closure(gens[:1], 3)
    big = closure(gens, 3)
    assert small <= big
    assert closure(gens, 2) <= closure(gens, 3)
    again = closure([parse_forest(k) for k in big], 3)
    assert again == big


def test_closure_truncates_by_size():
    got = closure([chain(["1", "2", "3", "4"])], 2)
    assert got == {"1", "2", "3", "4", "1(2)", "2(3)", "3(4)"}


# ---------------------------------------------------------------------------
# verify_closed


def test_all_builtin_families_are_closed_to_six():
    for fam in suite_families():
        report = verify_closed(fam, 6)
        assert report.passed, (fam.name, report.counterexamples)


def test_universal_family_is_closed_to_seven():
    assert verify_closed(all_forests(("a",)), 7).passed


def test_even_chains_are_not_closed():
    fam = FamilySpec(
        name="even-chains",
        alphabet=("1",),
        contains_tree=lambda t: t.size % 2 == 0
        and all(len(c.children) <= 1 for c in [t])
        and _is_chain_like(t),
        enumerator=lambda size: [chain(["1"] * size)] if size % 2 == 0 else [],
    )
    report = verify_closed(fam, 4)
    assert not report.passed
    member, escapee = report.counterexamples[0]
    assert parse_forest(member).size % 2 == 0
    assert any(t.size % 2 == 1 for t in parse_forest(escapee).components)


def _is_chain_like(t):
    while t.children:
        if len(t.children) > 1:
            return False
        t = t.children[0]
    return True


# ---------------------------------------------------------------------------
# Enumeration


def test_one_color_tree_counts_match_level_sequence_oracle():
    fam = all_forests(("a",))
    expected = [bf.rooted_tree_count(n) for n in range(1, 8)]
    assert expected == [1, 1, 2, 4, 9, 20, 48]
    got = [len(fam.enumerate_connected(n)) for n in range(1, 8)]
    assert got == expected


def test_two_color_tree_counts_match_coloring_oracle():
    fam = all_forests(("a", "b"))
    for n in range(1, 7):
        assert len(fam.enumerate_connected(n)) == bf.colored_tree_count(n, ("a", "b"))


def test_alternating_ladders_two_per_size():
    fam = alternating_ladders()
    for n in range(1, 9):
        trees = fam.enumerate_connected(n)
        assert len(trees) == 2
        assert {t.color for t in trees} == {"1", "2"}


def test_interval_ladder_total_count():
    n = 5
    fam = interval_ladders(n)
    total = sum(len(fam.enumerate_connected(s)) for s in range(1, n + 1))
    assert total == n * (n + 1) // 2
    assert fam.enumerate_connected(n + 1) == ()


def test_enumeration_is_deduplicated_and_members_only():
    for fam in suite_families():
        for size in range(1, 6):
            trees = fam.enumerate_connected(size)
            keys = [t.key for t in trees]
            assert len(keys) == len(set(keys))
            assert keys == sorted(keys)
            for t in trees:
                assert fam.contains(t)
                assert t.size == size


def test_generic_growth_agrees_with_direct_enumerators():
    for fam in suite_families():
        generic = FamilySpec(
            name=fam.name + ":generic",
            alphabet=fam.alphabet,
            contains_tree=fam.contains_tree,
        )
        for size in range(1, 6):
            want = [t.key for t in fam.enumerate_connected(size)]
            got = [t.key for t in generic.enumerate_connected(size)]
            assert got == want, (fam.name, size)


def test_enumeration_closure_cross_check():
    # all members up to the bound regenerate exactly themselves under closure
    bound = 5
    for fam in suite_families():
        members = [
            t for s in range(1, bound + 1) for t in fam.enumerate_connected(s)
        ]
        expected = {t.key for t in members}
        assert closure(members, bound) == expected


def test_ladder_families_regenerate_from_largest_members():
    bound = 5
    for fam in [
        one_color_ladders(),
        interval_ladders(5),
        alternating_ladders(),
        headtail_ladders(),
        periodic_ladders(3),
        colored_ladders(("1", "2")),
    ]:
        gens = fam.enumerate_connected(min(bound, max(p for p in [bound])))
        expected = {
            t.key
            for s in range(1, bound + 1)
            for t in fam.enumerate_connected(s)
        }
        assert closure(gens, bound) == expected


def test_enumeration_budget():
    fam = all_forests(("a",))
    fam.enumeration_limit = 6
    with pytest.raises(EnumerationBudgetError):
        fam.enumerate_connected(7)
    with pytest.raises(ValueError):
        fam.enumerate_connected(0)
    assert enumerate_connected(all_forests(("a",)), 3) == all_forests(
        ("a",)
    ).enumerate_connected(3)


def test_enumerate_forests_counts():
    fam = all_forests(("a",))
    # forests of size n over one color: 1, 2, 4, 9 for n = 1..4
    assert [len(fam.enumerate_forests(n)) for n in range(0, 5)] == [1, 1, 2, 4, 9]
