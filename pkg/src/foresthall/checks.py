"""Exhaustive verification suites over bounded instance spaces.

Each suite sweeps every instance inside its bound, compares exact values,
and returns a report with the instance count and the first failures.  The
command line exposes these under ``check``; the test suite drives the
same functions, so a green CLI run and a green pytest run mean the same
thing.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from itertools import product as cartesian
from math import comb

from .families import FamilySpec, all_forests, verify_closed
from .forests import (
    ColoredForest,
    ColoredTree,
    aut_order,
    chain,
    color_counts,
    corolla,
    forest_from_key,
    ideal_vertex_sets,
    restrict,
    singleton,
)
from .hall import (
    HallElement,
    _component_splits,
    antipode,
    coproduct,
    counit,
    count_extensions,
    delta,
    hall_mul,
    unit,
)
from .incidence import (
    compose,
    exact_sequences,
    hom_set,
    identity,
    kernel,
    zero_morphism,
)
from .oracles import verify_homomorphism
from .prelie import (
    bracket,
    prelie,
    prelie_apply,
    prelie_residual,
    prelie_via_hall,
    primitive_delta,
    two_edge_cut_count,
)

__all__ = ["CheckReport", "SUITES", "run_suite", "ONE_COLOR_TREE_COUNTS"]

# Connected one-color classes per degree, frozen from the independent
# level-sequence enumeration in the test suite.
ONE_COLOR_TREE_COUNTS = (1, 1, 2, 4, 9, 20, 48)

MAX_FAILURES = 5


@dataclass
class CheckReport:
    suite: str
    family: str | None
    params: dict
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, message: str) -> bool:
        """Record a failure; returns False once the cap is reached."""
        if len(self.failures) < MAX_FAILURES:
            self.failures.append(message)
        return len(self.failures) < MAX_FAILURES

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "family": self.family,
            "params": self.params,
            "checked": self.checked,
            "failures": self.failures,
            "passed": self.passed,
            "elapsed_seconds": round(self.elapsed, 3),
        }

    def summary(self) -> str:
        status = "pass" if self.passed else "FAIL"
        scope = f" family={self.family}" if self.family else ""
        return (
            f"{self.suite}{scope}: {status} "
            f"({self.checked} checks in {self.elapsed:.2f}s)"
        )


def _members_up_to(family: FamilySpec, max_size: int) -> list[ColoredTree]:
    out: list[ColoredTree] = []
    for size in range(1, max_size + 1):
        out.extend(family.enumerate_connected(size))
    return out


def _forests_up_to(family: FamilySpec, max_size: int) -> list[ColoredForest]:
    out = [ColoredForest(())]
    for size in range(1, max_size + 1):
        out.extend(family.enumerate_forests(size))
    return out


# ---------------------------------------------------------------------------
# Pre-Lie identity


def check_prelie_identity(family: FamilySpec, max_total: int = 7) -> CheckReport:
    """Associator symmetry on every connected triple within the size bound."""
    report = CheckReport("prelie-identity", family.name, {"max_total": max_total})
    start = time.perf_counter()
    members = _members_up_to(family, max_total - 2)
    for a in members:
        for b in members:
            if a.size + b.size + 1 > max_total:
                continue
            for c in members:
                if a.size + b.size + c.size > max_total:
                    continue
                report.checked += 1
                residual = prelie_residual(a, b, c, family)
                if not residual.is_zero:
                    if not report.fail(
                        f"residual nonzero on ({a.key}, {b.key}, {c.key}): "
                        f"{residual.pretty()}"
                    ):
                        report.elapsed = time.perf_counter() - start
                        return report
    report.elapsed = time.perf_counter() - start
    return report


# ---------------------------------------------------------------------------
# Two-edge-cut mechanism


def check_two_edge_cuts(family: FamilySpec, max_s: int = 6) -> CheckReport:
    """Associator coefficients count admissible two-edge cuts, symmetrically."""
    report = CheckReport("two-edge-cuts", family.name, {"max_s": max_s})
    start = time.perf_counter()
    members = _members_up_to(family, max_s - 2)
    trees_by_size = {n: family.enumerate_connected(n) for n in range(3, max_s + 1)}
    # ordered two-edge-cut tables per target size
    tables: dict[int, dict[tuple[str, str, str], dict[str, int]]] = {}
    for n, trees in trees_by_size.items():
        table: dict[tuple[str, str, str], dict[str, int]] = {}
        for s in trees:
            sizes = [s.subtree_at(v).size for v in range(s.size)]
            allv = frozenset(range(s.size))
            for v1 in range(1, s.size):
                span1 = frozenset(range(v1, v1 + sizes[v1]))
                for v2 in range(1, s.size):
                    if v2 == v1 or v2 in span1 or v1 in range(v2, v2 + sizes[v2]):
                        continue
                    span2 = frozenset(range(v2, v2 + sizes[v2]))
                    a_key = s.subtree_at(v1).key
                    b_key = s.subtree_at(v2).key
                    c_key = restrict(s, allv - span1 - span2)[0].key
                    slot = table.setdefault((a_key, b_key, c_key), {})
                    slot[s.key] = slot.get(s.key, 0) + 1
        tables[n] = table
    for a in members:
        da = primitive_delta(a, family)
        for b in members:
            if a.size + b.size + 1 > max_s:
                continue
            db = primitive_delta(b, family)
            for c in members:
                total = a.size + b.size + c.size
                if total > max_s:
                    continue
                report.checked += 1
                dc = primitive_delta(c, family)
                diff = prelie_apply(da, prelie_apply(db, dc)) - prelie_apply(
                    prelie_apply(da, db), dc
                )
                expected = tables[total].get((a.key, b.key, c.key), {})
                swapped = tables[total].get((b.key, a.key, c.key), {})
                if diff.terms != expected:
                    if not report.fail(
                        f"associator vs cuts mismatch on ({a.key}, {b.key}, {c.key})"
                    ):
                        break
                if expected != swapped:
                    if not report.fail(
                        f"cut count not symmetric on ({a.key}, {b.key}, {c.key})"
                    ):
                        break
                # spot-validate the direct counter against the table
                if diff.terms:
                    some_key = next(iter(diff.terms))
                    s = forest_from_key(some_key).as_tree()
                    if two_edge_cut_count(a, b, c, s) != diff.terms[some_key]:
                        report.fail(
                            f"two_edge_cut_count disagrees on ({a.key}, {b.key}, "
                            f"{c.key}) at {some_key}"
                        )
    report.elapsed = time.perf_counter() - start
    return report


# ---------------------------------------------------------------------------
# Hopf axioms


def _triple_left(key: str) -> dict[tuple[str, str, str], int]:
    out: dict[tuple[str, str, str], int] = {}
    for a, b in _component_splits(key):
        for a1, a2 in _component_splits(a):
            k = (a1, a2, b)
            out[k] = out.get(k, 0) + 1
    return out


def _triple_right(key: str) -> dict[tuple[str, str, str], int]:
    out: dict[tuple[str, str, str], int] = {}
    for a, b in _component_splits(key):
        for b1, b2 in _component_splits(b):
            k = (a, b1, b2)
            out[k] = out.get(k, 0) + 1
    return out


def check_hopf(
    family: FamilySpec,
    assoc_max: int = 7,
    coassoc_max: int = 7,
    compat_max: int = 6,
    antipode_max: int = 5,
) -> CheckReport:
    """Associativity, coassociativity, compatibility, antipode inverse."""
    report = CheckReport(
        "hopf",
        family.name,
        {
            "assoc_max": assoc_max,
            "coassoc_max": coassoc_max,
            "compat_max": compat_max,
            "antipode_max": antipode_max,
        },
    )
    start = time.perf_counter()
    deltas: dict[str, HallElement] = {}

    def dlt(key: str) -> HallElement:
        el = deltas.get(key)
        if el is None:
            el = HallElement(family, {key: 1})
            deltas[key] = el
        return el

    # product associativity on connected classes
    members = _members_up_to(family, assoc_max - 2)
    for a in members:
        for b in members:
            if a.size + b.size + 1 > assoc_max:
                continue
            ab = hall_mul(dlt(a.key), dlt(b.key))
            for c in members:
                if a.size + b.size + c.size > assoc_max:
                    continue
                report.checked += 1
                lhs = hall_mul(ab, dlt(c.key))
                rhs = hall_mul(dlt(a.key), hall_mul(dlt(b.key), dlt(c.key)))
                if lhs != rhs:
                    if not report.fail(
                        f"associativity fails on ({a.key}, {b.key}, {c.key})"
                    ):
                        report.elapsed = time.perf_counter() - start
                        return report
                if not all(
                    isinstance(v, int) or v.denominator == 1
                    for v in lhs.terms.values()
                ):
                    report.fail(f"non-integer product coefficient at ({a.key}, {b.key}, {c.key})")

    # coassociativity and cocommutativity on all classes
    for f in _forests_up_to(family, coassoc_max):
        report.checked += 1
        splits = _component_splits(f.key)
        counts: dict[tuple[str, str], int] = {}
        for pair in splits:
            counts[pair] = counts.get(pair, 0) + 1
        if any(v != 1 for v in counts.values()):
            report.fail(f"coproduct of {f.key} has a repeated split")
        swapped = {(b, a): v for (a, b), v in counts.items()}
        if counts != swapped:
            report.fail(f"coproduct of {f.key} is not cocommutative")
        if _triple_left(f.key) != _triple_right(f.key):
            report.fail(f"coproduct of {f.key} is not coassociative")

    # bialgebra compatibility and gradings on pairs of classes
    forests = _forests_up_to(family, compat_max)
    for M in forests:
        dM = dlt(M.key)
        for N in forests:
            if M.size + N.size > compat_max:
                continue
            report.checked += 1
            dN = dlt(N.key)
            prod = hall_mul(dM, dN)
            if coproduct(prod) != coproduct(dM).star(coproduct(dN)):
                if not report.fail(
                    f"coproduct incompatible with product on ({M.key}, {N.key})"
                ):
                    report.elapsed = time.perf_counter() - start
                    return report
            graded = color_counts(M)
            for color, k in color_counts(N).items():
                graded[color] = graded.get(color, 0) + k
            for key in prod.terms:
                if color_counts(forest_from_key(key)) != graded:
                    report.fail(f"color grading broken on ({M.key}, {N.key})")
                    break

    # antipode as convolution inverse
    for f in _forests_up_to(family, antipode_max):
        report.checked += 1
        x = dlt(f.key)
        acc = HallElement(family, {})
        for (lk, rk), c in coproduct(x).terms.items():
            acc = acc + c * hall_mul(antipode(dlt(lk)), dlt(rk))
        if acc != counit(x) * unit(family):
            report.fail(f"antipode identity fails on {f.key}")
        if not all(
            isinstance(v, int) or v.denominator == 1
            for v in antipode(x).terms.values()
        ):
            report.fail(f"antipode of {f.key} has non-integer coefficients")
    report.elapsed = time.perf_counter() - start
    return report


# ---------------------------------------------------------------------------
# Family closure and enumeration


def check_closure(family: FamilySpec, max_size: int = 6) -> CheckReport:
    report = CheckReport("closure", family.name, {"max_size": max_size})
    start = time.perf_counter()
    result = verify_closed(family, max_size)
    report.checked = result.checked
    for member, escapee in result.counterexamples:
        report.fail(f"convex subposet {escapee} of member {member} left the family")
    report.elapsed = time.perf_counter() - start
    return report


def _expected_connected_count(family: FamilySpec, size: int) -> int | None:
    name = family.name
    if name == "all:a" or (name.startswith("all:") and len(family.alphabet) == 1):
        return (
            ONE_COLOR_TREE_COUNTS[size - 1]
            if size <= len(ONE_COLOR_TREE_COUNTS)
            else None
        )
    if name.startswith("ladders1"):
        return 1
    if name == "alt-ladders":
        return 2
    if name == "headtail-ladders":
        return size + 1
    if name.startswith("antichains:"):
        return len(family.alphabet) if size == 1 else 0
    if name.startswith("interval-ladders:"):
        return max(0, family.params[0] - size + 1)
    if name.startswith("periodic-ladders:"):
        n = family.params[0]
        return n if size > 1 or n > 1 else 1
    if name.startswith("ladders:"):
        return len(family.alphabet) ** size
    if name.startswith("corollas:"):
        k = len(family.alphabet)
        return k if size == 1 else k * comb(k + size - 2, size - 1)
    return None


def check_enumeration(family: FamilySpec, max_size: int = 6) -> CheckReport:
    """Deduplication, membership, and closed-form counts where known."""
    report = CheckReport("enumeration", family.name, {"max_size": max_size})
    start = time.perf_counter()
    for size in range(1, max_size + 1):
        trees = family.enumerate_connected(size)
        report.checked += 1
        keys = [t.key for t in trees]
        if len(set(keys)) != len(keys):
            report.fail(f"duplicate classes at size {size}")
        if keys != sorted(keys):
            report.fail(f"enumeration at size {size} is not sorted")
        for t in trees:
            if t.size != size or not family.contains_tree(t):
                report.fail(f"non-member or wrong size in enumeration: {t.key}")
                break
        expected = _expected_connected_count(family, size)
        if expected is not None and len(trees) != expected:
            report.fail(
                f"size {size}: expected {expected} classes, found {len(trees)}"
            )
    report.elapsed = time.perf_counter() - start
    return report


# ---------------------------------------------------------------------------
# Incidence category


def check_incidence(
    colors: tuple[str, ...] = ("a", "b"),
    assoc_max: int = 3,
    exact_max: int = 4,
    torsor_max: int = 4,
    subobject_max: int = 4,
) -> CheckReport:
    report = CheckReport(
        "incidence",
        "all:" + ",".join(colors),
        {
            "assoc_max": assoc_max,
            "exact_max": exact_max,
            "torsor_max": torsor_max,
            "subobject_max": subobject_max,
        },
    )
    start = time.perf_counter()
    fam = all_forests(colors)
    objects = _forests_up_to(fam, assoc_max)

    homs: dict[tuple[str, str], list] = {}
    for p in objects:
        for q in objects:
            homs[(p.key, q.key)] = hom_set(p, q)

    # identities, zeros, kernel exactness on every morphism
    for p in objects:
        for q in objects:
            for m in homs[(p.key, q.key)]:
                report.checked += 1
                if compose(identity(p), m) != m or compose(m, identity(q)) != m:
                    report.fail(f"identity law fails for {m.to_json()}")
                k = kernel(m)
                if compose(k, m) != zero_morphism(k.source, q):
                    report.fail(f"kernel composite not zero for {m.to_json()}")

    # associativity over all composable triples, via a full composition
    # table: every composite of table entries is again a table entry, so
    # the triple sweep reduces to integer-id lookups
    all_morphisms: list = []
    morph_id: dict = {}
    for hs in homs.values():
        for m in hs:
            morph_id[m] = len(all_morphisms)
            all_morphisms.append(m)
    into: dict[str, list] = {p.key: [] for p in objects}
    outof: dict[str, list] = {p.key: [] for p in objects}
    for (pk, qk), hs in homs.items():
        for m in hs:
            into[qk].append(m)
            outof[pk].append(m)
    table: dict[tuple[int, int], int] = {}
    for (pk, qk), hs in homs.items():
        for m2 in hs:
            id2 = morph_id[m2]
            for m1 in into[pk]:
                composite = compose(m1, m2)
                table[(morph_id[m1], id2)] = morph_id[composite]
    for q in objects:
        for r in objects:
            for m2 in homs[(q.key, r.key)]:
                id2 = morph_id[m2]
                firsts = [
                    (morph_id[m1], table[(morph_id[m1], id2)]) for m1 in into[q.key]
                ]
                for m3 in outof[r.key]:
                    id3 = morph_id[m3]
                    c23 = table[(id2, id3)]
                    for id1, c12 in firsts:
                        report.checked += 1
                        if table[(c12, id3)] != table[(id1, c23)]:
                            report.fail(
                                "associativity fails on morphism triple "
                                f"{all_morphisms[id1].to_json()}, {m2.to_json()}, "
                                f"{m3.to_json()}"
                            )
                            report.elapsed = time.perf_counter() - start
                            return report

    # exact-sequence counts match extension counts
    small = _forests_up_to(fam, exact_max)
    by_size: dict[int, list[ColoredForest]] = {}
    for f in small:
        by_size.setdefault(f.size, []).append(f)
    for q in small:
        for m_size in range(0, q.size + 1):
            for M in by_size.get(m_size, []):
                for N in by_size.get(q.size - m_size, []):
                    report.checked += 1
                    got = len(exact_sequences(M, N, q))
                    want = count_extensions(M, N, q, fam)
                    if got != want:
                        report.fail(
                            f"exact sequences {got} != extension count {want} "
                            f"for ({M.key}, {N.key}, {q.key})"
                        )

    # monomorphism torsor per image ideal
    for p in _forests_up_to(fam, torsor_max):
        for ideal_vs in ideal_vertex_sets(p):
            report.checked += 1
            sub, _ = restrict(p, ideal_vs)
            monos = [
                m
                for m in hom_set(sub, p)
                if m.is_mono and m.image_ideal == ideal_vs
            ]
            if len(monos) != aut_order(sub):
                report.fail(
                    f"monos onto {sorted(ideal_vs)} in {p.key}: "
                    f"{len(monos)} != {aut_order(sub)}"
                )

    # subobject/quotient bijection
    for p in _forests_up_to(fam, subobject_max):
        allp = frozenset(range(p.size))
        ideals_p = set(ideal_vertex_sets(p))
        for i_vs in ideals_p:
            report.checked += 1
            quotient, q_map = restrict(p, allp - i_vs)
            inverse = {old: new for new, old in enumerate(q_map)}
            translated = {
                frozenset(inverse[v] for v in j - i_vs)
                for j in ideals_p
                if i_vs <= j
            }
            if translated != set(ideal_vertex_sets(quotient)):
                report.fail(f"subobject bijection fails for {p.key} at {sorted(i_vs)}")
    report.elapsed = time.perf_counter() - start
    return report


# ---------------------------------------------------------------------------
# Grafting vs Hall cross-check


def check_prelie_hall(family: FamilySpec, max_total: int = 6) -> CheckReport:
    report = CheckReport("prelie-hall", family.name, {"max_total": max_total})
    start = time.perf_counter()
    members = _members_up_to(family, max_total - 1)
    for a in members:
        for b in members:
            if a.size + b.size > max_total:
                continue
            report.checked += 1
            if prelie_via_hall(a, b, family) != prelie(a, b, family):
                report.fail(f"hall route disagrees on ({a.key}, {b.key})")
            if a.key == b.key:
                h = hall_mul(delta(a, family), delta(b, family))
                split = a.as_forest().oplus(b.as_forest())
                if h.coefficient(split.key) != 2:
                    report.fail(
                        f"split extension of ({a.key}, {a.key}) has coefficient "
                        f"{h.coefficient(split.key)}, not 2"
                    )
    report.elapsed = time.perf_counter() - start
    return report


# ---------------------------------------------------------------------------
# Seeded random spot checks beyond the exhaustive bounds


def _random_member(
    family: FamilySpec, size: int, rng: random.Random
) -> ColoredTree | None:
    """A random connected member grown by random single-vertex grafts."""
    from .forests import graft, singleton as make_singleton

    for _ in range(200):
        seeds = [
            make_singleton(c)
            for c in family.alphabet
            if family.contains_tree(make_singleton(c))
        ]
        if not seeds:
            return None
        t = rng.choice(seeds)
        dead = False
        while t.size < size:
            options = [
                (c, v) for c in family.alphabet for v in range(t.size)
            ]
            rng.shuffle(options)
            for c, v in options:
                grown = graft(make_singleton(c), t, v)
                if family.contains_tree(grown):
                    t = grown
                    break
            else:
                dead = True
                break
        if not dead:
            return t
    return None


def check_random_spots(
    family: FamilySpec, max_size: int = 9, seed: int | None = None, samples: int = 40
) -> CheckReport:
    """Sampled pre-Lie and Hall checks on instances past the sweep bounds."""
    report = CheckReport(
        "random-spots",
        family.name,
        {"max_size": max_size, "seed": seed if seed is not None else 0, "samples": samples},
    )
    start = time.perf_counter()
    rng = random.Random(seed if seed is not None else 0)
    for _ in range(samples):
        sizes = [rng.randint(1, max(1, max_size // 3)) for _ in range(3)]
        while sum(sizes) > max_size:
            sizes[rng.randrange(3)] = 1
        picks = [_random_member(family, s, rng) for s in sizes]
        if any(p is None for p in picks):
            continue
        a, b, c = picks
        report.checked += 1
        if not prelie_residual(a, b, c, family).is_zero:
            report.fail(f"sampled residual nonzero on ({a.key}, {b.key}, {c.key})")
        if prelie_via_hall(a, b, family) != prelie(a, b, family):
            report.fail(f"sampled hall route disagrees on ({a.key}, {b.key})")
    report.elapsed = time.perf_counter() - start
    return report


# ---------------------------------------------------------------------------
# Worked family relations


def _expect(report: CheckReport, got, want, label: str) -> None:
    report.checked += 1
    if got != want:
        report.fail(f"{label}: got {got!r}, want {want!r}")


def _check_ladder_relations(family: FamilySpec, report: CheckReport) -> None:
    color = family.params[0] if family.params else "1"

    def L(n: int) -> ColoredTree:
        return chain([color] * n)

    for n in range(1, 6):
        for m in range(1, 6):
            got = prelie(L(n), L(m), family)
            _expect(
                report,
                got,
                primitive_delta(L(n + m), family),
                f"ladder grafting ({n}, {m})",
            )
            star = hall_mul(delta(L(n), family), delta(L(m), family))
            split_coeff = 2 if n == m else 1
            want = HallElement(
                family,
                {
                    L(n + m).key: 1,
                    L(n).as_forest().oplus(L(m).as_forest()).key: split_coeff,
                },
            )
            _expect(report, star, want, f"ladder convolution ({n}, {m})")
    for m in range(1, 6):
        got = coproduct(delta(L(m), family))
        want_terms = {(L(m).key, "0"): 1, ("0", L(m).key): 1}
        _expect(report, got.terms, want_terms, f"ladder coproduct ({m})")


def _check_antichain_relations(family: FamilySpec, report: CheckReport) -> None:
    colors = family.alphabet

    def X(vec: tuple[int, ...]) -> ColoredForest:
        parts = []
        for color, count in zip(colors, vec):
            parts.extend(singleton(color) for _ in range(count))
        return ColoredForest(tuple(parts))

    vectors = [
        vec
        for vec in cartesian(range(4), repeat=len(colors))
        if any(vec)
    ]
    for m in vectors:
        for mp in vectors:
            total = tuple(a + b for a, b in zip(m, mp))
            coeff = 1
            for a, b in zip(m, mp):
                coeff *= comb(a + b, a)
            got = hall_mul(delta(X(m), family), delta(X(mp), family))
            _expect(
                report,
                got,
                HallElement(family, {X(total).key: coeff}),
                f"antichain binomial {m} x {mp}",
            )
    for c1 in colors:
        for c2 in colors:
            got = prelie(singleton(c1), singleton(c2), family)
            _expect(report, got.is_zero, True, f"antichain grafting {c1} |> {c2}")


def _check_interval_relations(family: FamilySpec, report: CheckReport) -> None:
    n = family.params[0]

    def L(k: int, m: int) -> ColoredTree:
        return chain([str(k + i) for i in range(m + 1)])

    ladders = [(k, m) for k in range(1, n + 1) for m in range(0, n - k + 1)]
    for (p, r) in ladders:
        for (k, m) in ladders:
            got = bracket(
                primitive_delta(L(p, r), family), primitive_delta(L(k, m), family)
            )
            if k + m + 1 == p:
                want = primitive_delta(L(k, p + r - k), family)
            elif p + r + 1 == k:
                want = -1 * primitive_delta(L(p, k + m - p), family)
            else:
                want = 0 * primitive_delta(L(1, 0), family)
            _expect(report, got, want, f"interval bracket ({p},{r}) ({k},{m})")


def _check_alternating_relations(family: FamilySpec, report: CheckReport) -> None:
    def alt(i: int, length: int) -> ColoredTree:
        other = 3 - i
        return chain([str(i) if p % 2 == 0 else str(other) for p in range(length)])

    zero = 0 * primitive_delta(alt(1, 1), family)
    for i, j in cartesian((1, 2), repeat=2):
        for k, l in cartesian(range(1, 4), repeat=2):
            got = bracket(
                primitive_delta(alt(i, 2 * k), family),
                primitive_delta(alt(j, 2 * l), family),
            )
            _expect(report, got, zero, f"even-even bracket i={i} j={j} k={k} l={l}")
        for k, l in cartesian(range(1, 4), range(0, 4)):
            got = bracket(
                primitive_delta(alt(i, 2 * k), family),
                primitive_delta(alt(j, 2 * l + 1), family),
            )
            sign = -1 if i == j else 1
            want = sign * primitive_delta(alt(j, 2 * (k + l) + 1), family)
            _expect(report, got, want, f"even-odd bracket i={i} j={j} k={k} l={l}")
        for k, l in cartesian(range(0, 4), repeat=2):
            got = bracket(
                primitive_delta(alt(i, 2 * k + 1), family),
                primitive_delta(alt(j, 2 * l + 1), family),
            )
            want = primitive_delta(alt(j, 2 * (k + l + 1)), family) - primitive_delta(
                alt(i, 2 * (k + l + 1)), family
            )
            _expect(report, got, want, f"odd-odd bracket i={i} j={j} k={k} l={l}")


def _headtail_product(i: int, j: int, m: int, n: int) -> tuple[int, int] | None:
    """Product table for head-tail ladders: (i, j) grafted below (m, n).

    The first ladder hangs under the leaf of the second, so the result
    reads (m ones, n twos, i ones, j twos) root to leaf and survives only
    when that is again ones-then-twos.
    """
    if i > 0 and j > 0 and m > 0 and n > 0:
        return None
    if j == 0:
        return (i + m, 0) if n == 0 else None
    if i == 0:
        return (m, n + j)
    if n == 0:
        return (i + m, j)
    return None


def _check_headtail_relations(family: FamilySpec, report: CheckReport) -> None:
    def L(i: int, j: int) -> ColoredTree:
        return chain(["1"] * i + ["2"] * j)

    def delta_or_zero(spec: tuple[int, int] | None, sign: int):
        if spec is None:
            return 0 * primitive_delta(L(1, 0), family)
        return sign * primitive_delta(L(*spec), family)

    pairs = [(i, j) for i in range(0, 6) for j in range(0, 6) if i + j >= 1]
    for (i, j) in pairs:
        for (m, n) in pairs:
            got = bracket(
                primitive_delta(L(i, j), family), primitive_delta(L(m, n), family)
            )
            want = delta_or_zero(_headtail_product(i, j, m, n), 1) + delta_or_zero(
                _headtail_product(m, n, i, j), -1
            )
            _expect(report, got, want, f"headtail bracket ({i},{j}) ({m},{n})")
    # the three displayed nonzero commutator schemas, in their stated form
    for i in range(1, 6):
        for n in range(1, 6):
            got = bracket(
                primitive_delta(L(i, 0), family), primitive_delta(L(0, n), family)
            )
            _expect(
                report,
                got,
                -1 * primitive_delta(L(i, n), family),
                f"headtail schema one ({i}, {n})",
            )
    for i in range(1, 4):
        for m in range(1, 4):
            for n in range(1, 4):
                got = bracket(
                    primitive_delta(L(i, 0), family),
                    primitive_delta(L(m, n), family),
                )
                _expect(
                    report,
                    got,
                    -1 * primitive_delta(L(m + i, n), family),
                    f"headtail schema two ({i}, {m}, {n})",
                )
    for j in range(1, 4):
        for m in range(1, 4):
            for n in range(0, 4):
                got = bracket(
                    primitive_delta(L(0, j), family),
                    primitive_delta(L(m, n), family),
                )
                _expect(
                    report,
                    got,
                    primitive_delta(L(m, n + j), family),
                    f"headtail schema three ({j}, {m}, {n})",
                )


def _check_corolla_relations(family: FamilySpec, report: CheckReport) -> None:
    colors = family.alphabet

    def Y(root: str, vec: tuple[int, ...]) -> ColoredTree:
        leaves = []
        for color, count in zip(colors, vec):
            leaves.extend([color] * count)
        return corolla(root, leaves)

    vectors = [
        vec for vec in cartesian(range(5), repeat=len(colors)) if 1 <= sum(vec) <= 4
    ]
    for i, ci in enumerate(colors):
        for k, ck in enumerate(colors):
            got = bracket(
                primitive_delta(singleton(ci), family),
                primitive_delta(singleton(ck), family),
            )
            ei = tuple(1 if t == i else 0 for t in range(len(colors)))
            ek = tuple(1 if t == k else 0 for t in range(len(colors)))
            want = primitive_delta(Y(ck, ei), family) - primitive_delta(
                Y(ci, ek), family
            )
            _expect(report, got, want, f"corolla bracket X({ci}) X({ck})")
        for k, ck in enumerate(colors):
            for vec in vectors:
                got = bracket(
                    primitive_delta(singleton(ci), family),
                    primitive_delta(Y(ck, vec), family),
                )
                bumped = tuple(v + (1 if t == i else 0) for t, v in enumerate(vec))
                # the leaf count inflates the coefficient: vec[i] + 1 edges
                # of the bumped corolla reproduce the pair
                want = (vec[i] + 1) * primitive_delta(Y(ck, bumped), family)
                _expect(report, got, want, f"corolla bracket X({ci}) Y({ck},{vec})")
    zero = 0 * primitive_delta(singleton(colors[0]), family)
    for ck in colors:
        for vec in vectors:
            x = primitive_delta(Y(ck, vec), family)
            for ci in colors:
                _expect(
                    report,
                    prelie_apply(x, primitive_delta(singleton(ci), family)),
                    zero,
                    f"corolla product Y({ck},{vec}) X({ci})",
                )
            for ckp in colors:
                for vecp in vectors:
                    got = bracket(x, primitive_delta(Y(ckp, vecp), family))
                    _expect(
                        report, got, zero, f"corolla bracket Y({ck},{vec}) Y({ckp},{vecp})"
                    )


def _check_word_relations(family: FamilySpec, report: CheckReport) -> None:
    from .oracles import to_words, word_concat

    colors = family.alphabet
    seqs = [
        seq
        for length in range(1, 4)
        for seq in cartesian(colors, repeat=length)
    ]
    for sa in seqs:
        for sb in seqs:
            if len(sa) + len(sb) > 6:
                continue
            a, b = chain(sa), chain(sb)
            got = prelie(a, b, family)
            want = primitive_delta(chain(list(sb) + list(sa)), family)
            _expect(report, got, want, f"ladder concatenation {sa} onto {sb}")
            _expect(
                report,
                to_words(got),
                word_concat(
                    to_words(primitive_delta(a, family)),
                    to_words(primitive_delta(b, family)),
                ),
                f"word image of {sa} |> {sb}",
            )


def _check_periodic_relations(family: FamilySpec, report: CheckReport) -> None:
    n = family.params[0]

    def ladder(start: int, length: int) -> ColoredTree:
        seq = []
        c = start
        for _ in range(length):
            seq.append(str(c))
            c = c % n + 1
        return chain(seq)

    for s1, l1 in cartesian(range(1, n + 1), range(1, 5)):
        for s2, l2 in cartesian(range(1, n + 1), range(1, 5)):
            a, b = ladder(s1, l1), ladder(s2, l2)
            got = prelie(a, b, family)
            end_b = int(_last_color(b))
            if s1 == end_b % n + 1:
                want = primitive_delta(ladder(s2, l1 + l2), family)
            else:
                want = 0 * primitive_delta(ladder(1, 1), family)
            _expect(report, got, want, f"periodic grafting ({s1},{l1}) onto ({s2},{l2})")


def _last_color(t: ColoredTree) -> str:
    while t.children:
        t = t.children[0]
    return t.color


def _check_universal_relations(family: FamilySpec, report: CheckReport) -> None:
    if set(family.alphabet) >= {"a", "b"}:
        got = prelie(singleton("b"), chain(["a", "b"]), family)
        want_terms = {"a(b,b)": 2, "a(b(b))": 1}
        _expect(report, got.terms, want_terms, "leaf onto two-chain product")
    if len(family.alphabet) == 1:
        for size, count in enumerate(ONE_COLOR_TREE_COUNTS, start=1):
            _expect(
                report,
                len(family.enumerate_connected(size)),
                count,
                f"one-color dimension at degree {size}",
            )


def check_family_relations(family: FamilySpec) -> CheckReport:
    """Worked product and bracket tables for the named family."""
    report = CheckReport("family-relations", family.name, {})
    start = time.perf_counter()
    name = family.name
    if name.startswith("ladders1"):
        _check_ladder_relations(family, report)
    elif name.startswith("antichains:"):
        _check_antichain_relations(family, report)
    elif name.startswith("interval-ladders:"):
        _check_interval_relations(family, report)
    elif name == "alt-ladders":
        _check_alternating_relations(family, report)
    elif name == "headtail-ladders":
        _check_headtail_relations(family, report)
    elif name.startswith("corollas:"):
        _check_corolla_relations(family, report)
    elif name.startswith("ladders:"):
        _check_word_relations(family, report)
    elif name.startswith("periodic-ladders:"):
        _check_periodic_relations(family, report)
    elif name.startswith("all:"):
        _check_universal_relations(family, report)
    else:
        report.fail(f"no relation table known for family {name}")
    report.elapsed = time.perf_counter() - start
    return report


# ---------------------------------------------------------------------------
# Suite registry


SUITES = {
    "prelie-identity": lambda family, max_size, seed: check_prelie_identity(
        family, max_total=max_size
    ),
    "two-edge-cuts": lambda family, max_size, seed: check_two_edge_cuts(
        family, max_s=min(max_size, 6)
    ),
    "hopf": lambda family, max_size, seed: check_hopf(
        family,
        assoc_max=max_size,
        coassoc_max=max_size,
        compat_max=min(max_size, 6),
        antipode_max=min(max_size, 5),
    ),
    "closure": lambda family, max_size, seed: check_closure(family, max_size=max_size),
    "enumeration": lambda family, max_size, seed: check_enumeration(
        family, max_size=max_size
    ),
    "incidence": lambda family, max_size, seed: check_incidence(
        colors=family.alphabet,
        assoc_max=min(max_size, 3),
        exact_max=min(max_size, 4),
        torsor_max=min(max_size, 4),
        subobject_max=min(max_size, 4),
    ),
    "prelie-hall": lambda family, max_size, seed: check_prelie_hall(
        family, max_total=min(max_size, 6)
    ),
    "family-relations": lambda family, max_size, seed: check_family_relations(family),
    "random-spots": lambda family, max_size, seed: check_random_spots(
        family, max_size=max(max_size, 8), seed=seed
    ),
}


def run_suite(
    name: str, family: FamilySpec | None, max_size: int = 7, seed: int | None = None
) -> list[CheckReport]:
    """Run one named suite, or all of them for ``all``."""
    if name == "all":
        reports = []
        for suite_name in SUITES:
            reports.extend(run_suite(suite_name, family, max_size, seed))
        return reports
    runner = SUITES.get(name)
    if runner is None:
        raise ValueError(f"unknown suite {name!r}; expected one of {sorted(SUITES) + ['all']}")
    if family is None:
        family = all_forests(("a", "b"))
    return [runner(family, max_size, seed)]
