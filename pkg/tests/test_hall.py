"""Hall algebra: convolution, coproduct, antipode, gradings."""

from __future__ import annotations

from fractions import Fraction
from itertools import product

import pytest

import bruteforce as bf
from foresthall.families import (
    all_forests,
    antichains,
    one_color_ladders,
)
from foresthall.forests import (
    ColoredForest,
    chain,
    color_counts,
    empty_forest,
    forest_from_key,
    parse_forest,
    parse_tree,
    singleton,
)
from foresthall.hall import (
    HallElement,
    antipode,
    coproduct,
    counit,
    count_extensions,
    degree_split,
    delta,
    hall_mul,
    unit,
)

LADDERS = one_color_ladders()
ALL2 = all_forests(("a", "b"))


def L(n: int) -> ColoredForest:
    return chain(["1"] * n).as_forest()


def X(*counts: int) -> ColoredForest:
    chips = []
    for i, m in enumerate(counts, start=1):
        chips.extend(singleton(str(i)) for _ in range(m))
    return ColoredForest(tuple(chips))


# ---------------------------------------------------------------------------
# Delta and unit


def test_delta_of_empty_is_unit():
    assert delta(empty_forest(), LADDERS) == unit(LADDERS)


def test_delta_single_term():
    d = delta(singleton("a"), ALL2)
    assert d.terms == {"a": 1}


def test_delta_outside_family_raises():
    with pytest.raises(ValueError):
        delta(parse_tree("1(1,1)"), LADDERS)


def test_unit_laws():
    f = delta(L(2), LADDERS) + 3 * delta(L(1), LADDERS)
    assert hall_mul(unit(LADDERS), f) == f
    assert hall_mul(f, unit(LADDERS)) == f


# ---------------------------------------------------------------------------
# Ladder products


def test_ladder_product_distinct_lengths():
    got = hall_mul(delta(L(1), LADDERS), delta(L(2), LADDERS))
    expected = HallElement(
        LADDERS, {L(3).key: 1, L(1).oplus(L(2)).key: 1}
    )
    assert got == expected


def test_ladder_product_equal_lengths_has_coefficient_two():
    # direct convolution: the split extension of L1 by L1 is counted twice
    got = hall_mul(delta(L(1), LADDERS), delta(L(1), LADDERS))
    expected = HallElement(LADDERS, {L(2).key: 1, L(1).oplus(L(1)).key: 2})
    assert got == expected


@pytest.mark.parametrize("n,m", [(1, 2), (1, 3), (2, 3), (2, 5), (4, 5)])
def test_ladder_law_for_distinct_lengths(n, m):
    got = hall_mul(delta(L(n), LADDERS), delta(L(m), LADDERS))
    expected = HallElement(LADDERS, {L(n + m).key: 1, L(n).oplus(L(m)).key: 1})
    assert got == expected


# ---------------------------------------------------------------------------
# Antichain products


def test_antichain_square():
    fam = antichains(("1", "2"))
    got = hall_mul(delta(X(1, 0), fam), delta(X(1, 0), fam))
    assert got == HallElement(fam, {X(2, 0).key: 2})


def _binomial(n: int, k: int) -> int:
    from math import comb

    return comb(n, k)


@pytest.mark.parametrize(
    "m,mp",
    [((1, 0), (0, 1)), ((2, 1), (1, 1)), ((3, 0), (2, 2)), ((1, 1), (1, 1))],
)
def test_antichain_binomial_law(m, mp):
    fam = antichains(("1", "2"))
    got = hall_mul(delta(X(*m), fam), delta(X(*mp), fam))
    coeff = 1
    for a, b in zip(m, mp):
        coeff *= _binomial(a + b, a)
    total = tuple(a + b for a, b in zip(m, mp))
    assert got == HallElement(fam, {X(*total).key: coeff})


# ---------------------------------------------------------------------------
# Extension counts


def test_count_extensions_examples():
    assert count_extensions(L(1), L(1), L(2), LADDERS) == 1
    assert count_extensions(L(1), L(1), L(1).oplus(L(1)), LADDERS) == 2
    assert count_extensions(L(1), L(2), L(1), LADDERS) == 0  # grading mismatch


def test_count_extensions_zero_when_color_counts_mismatch():
    fam = ALL2
    a, b = singleton("a").as_forest(), singleton("b").as_forest()
    q = parse_forest("a(a)")
    assert count_extensions(a, b, q, fam) == 0


def test_product_coefficient_is_extension_count_over_automorphisms():
    fam = ALL2
    pool = [t.as_forest() for n in (1, 2) for t in fam.enumerate_connected(n)]
    pool.append(parse_forest("a+a"))
    from foresthall.forests import aut_order

    for M, N in product(pool, repeat=2):
        got = hall_mul(delta(M, fam), delta(N, fam))
        for key, coeff in got.terms.items():
            Q = forest_from_key(key)
            f_q = count_extensions(M, N, Q, fam)
            assert coeff == Fraction(f_q, aut_order(M) * aut_order(N))


# ---------------------------------------------------------------------------
# Convolution against a brute-force ideal-count oracle


def _raw_restrict(parents, colors, subset):
    order = sorted(subset)
    pos = {v: i for i, v in enumerate(order)}
    new_parents = tuple(
        pos[parents[v]] if parents[v] in subset else -1 for v in order
    )
    new_colors = tuple(colors[v] for v in order)
    return new_parents, new_colors


def test_products_match_bruteforce_ideal_counts():
    fam = ALL2
    smalls = [t.as_forest() for n in (1, 2) for t in fam.enumerate_connected(n)]
    smalls.append(parse_forest("a+b"))
    for M, N in product(smalls, repeat=2):
        if M.size + N.size > 4:
            continue
        got = hall_mul(delta(M, fam), delta(N, fam))
        m_raw = (M.parent_indices(), M.vertex_colors())
        n_raw = (N.parent_indices(), N.vertex_colors())
        for Q in fam.enumerate_forests(M.size + N.size):
            parents, colors = Q.parent_indices(), Q.vertex_colors()
            allv = frozenset(range(Q.size))
            count = 0
            for s in bf.brute_ideal_sets(parents):
                ideal_raw = _raw_restrict(parents, colors, s)
                rest_raw = _raw_restrict(parents, colors, allv - s)
                if bf.raw_isomorphic(*ideal_raw, *m_raw) and bf.raw_isomorphic(
                    *rest_raw, *n_raw
                ):
                    count += 1
            assert got.coefficient(Q.key) == count


# ---------------------------------------------------------------------------
# Coproduct


def test_coproduct_of_connected_is_primitive():
    for m in (1, 2, 3):
        got = coproduct(delta(L(m), LADDERS))
        assert got.terms == {
            (L(m).key, "0"): 1,
            ("0", L(m).key): 1,
        }


def test_coproduct_of_empty():
    got = coproduct(unit(LADDERS))
    assert got.terms == {("0", "0"): 1}


def test_coproduct_of_two_distinct_components_has_four_terms():
    fam = ALL2
    f = parse_forest("a+b(a)")
    got = coproduct(delta(f, fam))
    assert len(got.terms) == 4
    assert all(c == 1 for c in got.terms.values())
    assert got.coefficient("a", "b(a)") == 1


def test_coproduct_of_repeated_component_counts_each_submultiset_once():
    f = L(1).oplus(L(1))
    got = coproduct(delta(f, LADDERS))
    assert got.terms == {
        (f.key, "0"): 1,
        (L(1).key, L(1).key): 1,
        ("0", f.key): 1,
    }


def test_coproduct_is_cocommutative_small():
    for key in ["1", "1(1)+1", "1(1)+1+1"]:
        t = coproduct(delta(parse_forest(key), LADDERS))
        assert t == t.swap()


# ---------------------------------------------------------------------------
# Antipode, counit, gradings


def test_antipode_negates_connected_classes():
    assert antipode(delta(L(3), LADDERS)) == -1 * delta(L(3), LADDERS)
    assert antipode(unit(LADDERS)) == unit(LADDERS)


def test_antipode_of_split_pair():
    f = L(1).oplus(L(1))
    got = antipode(delta(f, LADDERS))
    assert got == HallElement(LADDERS, {L(2).key: 1, f.key: 1})


def _convolution_check(fam, forest):
    x = delta(forest, fam)
    t = coproduct(x)
    acc = HallElement(fam, {})
    for (lk, rk), c in t.terms.items():
        left = antipode(HallElement(fam, {lk: 1}))
        acc = acc + c * hall_mul(left, HallElement(fam, {rk: 1}))
    expected = counit(x) * unit(fam)
    assert acc == expected


def test_antipode_is_convolution_inverse_spot():
    _convolution_check(LADDERS, L(1).oplus(L(1)))
    _convolution_check(LADDERS, L(1).oplus(L(2)))
    _convolution_check(ALL2, parse_forest("a(b)+a+b"))
    _convolution_check(ALL2, parse_forest("a+a+a"))


def test_counit():
    assert counit(unit(LADDERS)) == 1
    assert counit(delta(L(2), LADDERS)) == 0


def test_degree_split_by_size():
    f = delta(L(3), LADDERS) + 2 * delta(L(1), LADDERS)
    parts = degree_split(f)
    assert set(parts) == {1, 3}
    assert parts[3] == delta(L(3), LADDERS)


def test_degree_split_by_color_counts():
    fam = ALL2
    f = delta(parse_tree("a(b)"), fam) + delta(parse_tree("a(a)"), fam)
    parts = degree_split(f, by="k0")
    assert set(parts) == {(("a", 1), ("b", 1)), (("a", 2),)}


def test_product_respects_color_grading():
    fam = ALL2
    pool = [t.as_forest() for n in (1, 2, 3) for t in fam.enumerate_connected(n)]
    for M, N in product(pool[:10], repeat=2):
        got = hall_mul(delta(M, fam), delta(N, fam))
        want = color_counts(M)
        for c, k in color_counts(N).items():
            want[c] = want.get(c, 0) + k
        for key in got.terms:
            assert color_counts(forest_from_key(key)) == want


def test_size_grading_additive():
    fam = ALL2
    pool = [t.as_forest() for n in (1, 2) for t in fam.enumerate_connected(n)]
    for M, N in product(pool, repeat=2):
        got = hall_mul(delta(M, fam), delta(N, fam))
        for key in got.terms:
            assert forest_from_key(key).size == M.size + N.size


def test_structure_constants_are_nonnegative_integers():
    fam = ALL2
    pool = [t.as_forest() for n in (1, 2, 3) for t in fam.enumerate_connected(n)]
    for M, N in product(pool[:12], repeat=2):
        got = hall_mul(delta(M, fam), delta(N, fam))
        for c in got.terms.values():
            assert isinstance(c, int) and c > 0


# ---------------------------------------------------------------------------
# Associativity and compatibility spot checks (full sweeps live in checks)


def test_associativity_spot():
    fam = ALL2
    a = delta(parse_tree("a"), fam)
    b = delta(parse_tree("b(a)"), fam)
    c = delta(parse_tree("a(b)"), fam)
    assert hall_mul(hall_mul(a, b), c) == hall_mul(a, hall_mul(b, c))


def test_bialgebra_compatibility_spot():
    fam = ALL2
    f = delta(parse_forest("a+b"), fam)
    g = delta(parse_tree("a"), fam)
    assert coproduct(hall_mul(f, g)) == coproduct(f).star(coproduct(g))


# ---------------------------------------------------------------------------
# JSON round trip


def test_element_json_round_trip():
    f = 2 * delta(L(2), LADDERS) - Fraction(1, 3) * delta(L(1), LADDERS)
    payload = f.to_json()
    assert payload["family"] == "ladders1"
    back = HallElement.from_json(payload, LADDERS)
    assert back == f
    coeffs = {item["forest"]: item["coeff"] for item in payload["terms"]}
    assert coeffs[L(1).key] == "-1/3"
    assert coeffs[L(2).key] == "2"
