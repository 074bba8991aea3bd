"""Command-line surface: parse, compute, enumerate, verify.

Every command is deterministic given its flags and input.  Output is
human-oriented text by default; ``--json`` switches to the schema format
(see :mod:`foresthall.schemas`).  Exit codes: 0 on success, 1 when a
requested verification fails, 2 on malformed input or usage.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import checks
from .families import closure, parse_family
from .forests import (
    ForestSyntaxError,
    admissible_cuts,
    aut_order,
    canonical_form,
    convex_subposets,
    order_ideals,
    parse_forest,
)
from .hall import antipode, coproduct, delta, hall_mul
from .incidence import Morphism, cokernel, compose, hom_set, kernel
from .oracles import verify_homomorphism
from .prelie import bracket, prelie, primitive_delta

USAGE_ERROR = 2
CHECK_FAILED = 1


class CliError(Exception):
    pass


def _emit(payload, as_json: bool, text: str) -> None:
    if as_json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _forest_args(args) -> list[str]:
    """Forest text from positional arguments, else stdin (one per line)."""
    if args.forests:
        return list(args.forests)
    lines = [line.strip() for line in sys.stdin]
    out = [line for line in lines if line]
    if not out:
        raise CliError("no forests given on the command line or stdin")
    return out


def _need(args, count: int) -> list[str]:
    texts = _forest_args(args)
    if len(texts) != count:
        raise CliError(f"expected exactly {count} forests, got {len(texts)}")
    return texts


def _family(args):
    if args.family is None:
        raise CliError("this command needs --family <name:params>")
    return parse_family(args.family)


def _element_text(element) -> str:
    return element.pretty()


def _print_reports(reports, as_json: bool) -> int:
    if as_json:
        print(json.dumps([r.to_json() for r in reports], indent=2))
    else:
        for r in reports:
            print(r.summary())
            for failure in r.failures:
                print(f"  counterexample: {failure}")
    return 0 if all(r.passed for r in reports) else CHECK_FAILED


# ---------------------------------------------------------------------------
# Command implementations


def _cmd_canon(args) -> int:
    keys = [canonical_form(parse_forest(text)) for text in _forest_args(args)]
    _emit({"results": keys}, args.json, "\n".join(keys))
    return 0


def _cmd_aut(args) -> int:
    rows = []
    for text in _forest_args(args):
        f = parse_forest(text)
        rows.append({"forest": f.key, "aut": aut_order(f)})
    text = "\n".join(f"{r['forest']}: {r['aut']}" for r in rows)
    _emit({"results": rows}, args.json, text)
    return 0


def _cmd_ideals(args) -> int:
    (text,) = _need(args, 1)
    f = parse_forest(text)
    splits = order_ideals(f)
    grouped: dict[tuple[str, str], int] = {}
    for s in splits:
        pair = (s.ideal.key, s.complement.key)
        grouped[pair] = grouped.get(pair, 0) + 1
    payload = {
        "forest": f.key,
        "ideals": [
            {
                "ideal": s.ideal.key,
                "complement": s.complement.key,
                "vertices": sorted(s.ideal_vertices),
            }
            for s in splits
        ],
        "grouped": [
            {"ideal": i, "complement": c, "count": n}
            for (i, c), n in sorted(grouped.items())
        ],
    }
    lines = [f"{f.key}: {len(splits)} order ideals"]
    for s in splits:
        lines.append(
            f"  ideal={s.ideal.key}  complement={s.complement.key}  "
            f"vertices={sorted(s.ideal_vertices)}"
        )
    lines.append("grouped by class pair:")
    for (i, c), n in sorted(grouped.items()):
        lines.append(f"  {i} | {c}: {n}")
    _emit(payload, args.json, "\n".join(lines))
    return 0


def _cmd_cuts(args) -> int:
    (text,) = _need(args, 1)
    t = parse_forest(text).as_tree()
    parents = t.parent_indices()
    cuts = admissible_cuts(t)
    payload = {
        "tree": t.key,
        "cuts": [
            {
                "edges": [[v, parents[v]] for v in sorted(c.edges)],
                "lower": c.lower.key,
                "upper": c.upper.key,
            }
            for c in cuts
        ],
    }
    lines = [f"{t.key}: {len(cuts)} admissible cuts"]
    for c in cuts:
        edges = ", ".join(f"{v}<-{parents[v]}" for v in sorted(c.edges)) or "(empty)"
        lines.append(f"  edges [{edges}]  lower={c.lower.key}  upper={c.upper.key}")
    _emit(payload, args.json, "\n".join(lines))
    return 0


def _cmd_convex(args) -> int:
    (text,) = _need(args, 1)
    keys = sorted(convex_subposets(parse_forest(text)))
    _emit({"results": keys}, args.json, "\n".join(keys))
    return 0


def _cmd_hall_mul(args) -> int:
    fam = _family(args)
    a, b = (parse_forest(t) for t in _need(args, 2))
    result = hall_mul(delta(a, fam), delta(b, fam))
    _emit(result.to_json(), args.json, _element_text(result))
    return 0


def _cmd_coprod(args) -> int:
    fam = _family(args)
    (text,) = _need(args, 1)
    result = coproduct(delta(parse_forest(text), fam))
    lines = [
        f"{_coeff(c)}*({l}) (x) ({r})" for (l, r), c in sorted(result.terms.items())
    ]
    _emit(result.to_json(), args.json, " + ".join(lines) or "0 (zero element)")
    return 0


def _coeff(c) -> str:
    from .hall import coefficient_string

    return coefficient_string(c)


def _cmd_antipode(args) -> int:
    fam = _family(args)
    (text,) = _need(args, 1)
    result = antipode(delta(parse_forest(text), fam))
    _emit(result.to_json(), args.json, _element_text(result))
    return 0


def _cmd_prelie(args) -> int:
    fam = _family(args)
    a, b = (parse_forest(t).as_tree() for t in _need(args, 2))
    result = prelie(a, b, fam)
    _emit(result.to_json(), args.json, result.pretty())
    return 0


def _cmd_bracket(args) -> int:
    fam = _family(args)
    a, b = (parse_forest(t).as_tree() for t in _need(args, 2))
    result = bracket(primitive_delta(a, fam), primitive_delta(b, fam))
    _emit(result.to_json(), args.json, result.pretty())
    return 0


def _cmd_enumerate(args) -> int:
    fam = _family(args)
    if args.size is not None:
        sizes = [args.size]
    else:
        sizes = list(range(1, args.max_size + 1))
    keys = []
    for size in sizes:
        keys.extend(t.key for t in fam.enumerate_connected(size))
    _emit({"results": keys}, args.json, "\n".join(keys) or "(none)")
    return 0


def _cmd_closure(args) -> int:
    generators = [parse_forest(t) for t in _forest_args(args)]
    keys = sorted(closure(generators, args.max_size))
    _emit({"results": keys}, args.json, "\n".join(keys) or "(none)")
    return 0


def _cmd_hom(args) -> int:
    a, b = (parse_forest(t) for t in _need(args, 2))
    morphisms = hom_set(a, b)
    payload = {
        "source": a.key,
        "target": b.key,
        "count": len(morphisms),
        "morphisms": [m.to_json() for m in morphisms],
    }
    lines = [f"{len(morphisms)} morphisms {a.key} -> {b.key}"]
    for m in morphisms:
        lines.append(
            f"  I1={sorted(m.kernel_ideal)} I2={sorted(m.image_ideal)} "
            f"map={list(m.mapping)}"
        )
    _emit(payload, args.json, "\n".join(lines))
    return 0


def _morphism_args(args, count: int) -> list[Morphism]:
    texts = args.morphisms or [line.strip() for line in sys.stdin if line.strip()]
    if len(texts) != count:
        raise CliError(f"expected {count} morphism JSON objects, got {len(texts)}")
    out = []
    for text in texts:
        try:
            out.append(Morphism.from_json(json.loads(text)))
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as err:
            raise CliError(f"bad morphism JSON: {err}") from err
    return out


def _cmd_compose(args) -> int:
    m1, m2 = _morphism_args(args, 2)
    result = compose(m1, m2)
    _emit(result.to_json(), args.json, json.dumps(result.to_json()))
    return 0


def _cmd_kernel(args) -> int:
    (m,) = _morphism_args(args, 1)
    result = kernel(m)
    _emit(result.to_json(), args.json, json.dumps(result.to_json()))
    return 0


def _cmd_cokernel(args) -> int:
    (m,) = _morphism_args(args, 1)
    result = cokernel(m)
    _emit(result.to_json(), args.json, json.dumps(result.to_json()))
    return 0


def _cmd_check(args) -> int:
    family = parse_family(args.family) if args.family else None
    reports = checks.run_suite(args.suite, family, args.max_size, args.seed)
    return _print_reports(reports, args.json)


def _cmd_verify_iso(args) -> int:
    fam = _family(args)
    report = verify_homomorphism(args.map, fam, args.max_size)
    if args.json:
        print(json.dumps(report.to_json(), indent=2))
    else:
        status = "pass" if report.passed else "FAIL"
        print(
            f"verify-iso {report.map_name} family={report.family} "
            f"degree<={report.max_degree}: {status} "
            f"({report.checked_pairs} bracket pairs)"
        )
        for failure in report.failures:
            print(f"  {failure}")
    return 0 if report.passed else CHECK_FAILED


# ---------------------------------------------------------------------------
# Parser wiring


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="foresthall",
        description=(
            "Hall-algebra and pre-Lie computations on colored rooted forests. "
            "Forests are written as color(children,...) joined by +, e.g. "
            "'a(b,b)+b'; 0 is the empty forest."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text, *, family=False, forests=True, morphisms=False):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(fn=fn)
        p.add_argument("--json", action="store_true", help="emit schema JSON")
        if family:
            p.add_argument("--family", help="family, e.g. all:a,b or interval-ladders:4")
        if morphisms:
            p.add_argument(
                "morphisms", nargs="*", help="morphism JSON objects (or stdin lines)"
            )
        elif forests:
            p.add_argument(
                "forests", nargs="*", help="forest expressions (or stdin lines)"
            )
        return p

    add("canon", _cmd_canon, "canonical form of each input forest")
    add("aut", _cmd_aut, "automorphism group order of each input forest")
    add("ideals", _cmd_ideals, "all order-ideal splits of a forest")
    add("cuts", _cmd_cuts, "all admissible cuts of a tree")
    add("convex", _cmd_convex, "canonical keys of all convex subposets")
    add("hall-mul", _cmd_hall_mul, "convolution product of two class deltas", family=True)
    add("coprod", _cmd_coprod, "coproduct of a class delta", family=True)
    add("antipode", _cmd_antipode, "antipode of a class delta", family=True)
    add("prelie", _cmd_prelie, "grafting product of two connected classes", family=True)
    add("bracket", _cmd_bracket, "Lie bracket of two connected classes", family=True)

    p = add("enumerate", _cmd_enumerate, "connected family members by size", family=True, forests=False)
    p.add_argument("--size", type=int, help="exact vertex count")
    p.add_argument("--max-size", type=int, default=7, help="list all sizes up to this")

    p = add("closure", _cmd_closure, "connected closure of generator forests")
    p.add_argument("--max-size", type=int, default=7, help="truncate members to this size")

    add("hom", _cmd_hom, "all morphisms between two forests")
    add("compose", _cmd_compose, "compose two morphisms (JSON)", morphisms=True)
    add("kernel", _cmd_kernel, "kernel of a morphism (JSON)", morphisms=True)
    add("cokernel", _cmd_cokernel, "cokernel of a morphism (JSON)", morphisms=True)

    p = sub.add_parser("check", help="run a verification suite")
    p.set_defaults(fn=_cmd_check)
    p.add_argument("suite", choices=sorted(checks.SUITES) + ["all"])
    p.add_argument("--family", help="family, e.g. all:a,b (default all:a,b)")
    p.add_argument("--max-size", type=int, default=7)
    p.add_argument("--seed", type=int, default=None, help="seed for sampled checks")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("verify-iso", help="verify a basis map onto a comparison Lie algebra")
    p.set_defaults(fn=_cmd_verify_iso)
    p.add_argument("map", choices=["upper-triangular", "loop-gl2", "words"])
    p.add_argument("--family", help="matching ladder family")
    p.add_argument("--max-size", type=int, default=6, help="degree bound")
    p.add_argument("--json", action="store_true")

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ForestSyntaxError as err:
        print(f"error: {err}", file=sys.stderr)
        return USAGE_ERROR
    except (CliError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
