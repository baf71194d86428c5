"""Command-line interface.

Commands::

    prodquot classify [--max-order N] [--format md|json] [--jobs K]
    prodquot verify-examples [--id K]
    prodquot homology --in FILE
    prodquot signatures --group SPEC

Exit codes: 0 success, 1 verification failure, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from dataclasses import dataclass

from . import __version__
from .classify import classify_abelian_up_to, order_cap
from .errors import ProdquotError
from .fixtures import FIXTURES
from .groups import mask_of, parse_group_spec, subgroup_closure
from .homology import (
    attach_homology,
    h1_of_surface,
    orbifold_abelianization,
    surface_invariants,
)
from .intlinalg import order_of
from .sgs import SphericalSystem, UnmixedStructure, stabilizer_set
from .signatures import (
    admissible_signature_pairs,
    admissible_signatures,
    format_signature,
    genus_from,
)

SCHEMA = 1

log = logging.getLogger("prodquot")


class UsageError(ProdquotError):
    pass


def make_report(command: str, inputs: dict, result: dict) -> dict:
    report = {
        "schema": SCHEMA,
        "tool": "prodquot",
        "version": __version__,
        "command": command,
        "input": inputs,
        "result": result,
    }
    return report


def group_name(factors) -> str:
    if factors is None:
        return "?"
    if not factors:
        return "1"
    parts = []
    i = 0
    while i < len(factors):
        j = i
        while j < len(factors) and factors[j] == factors[i]:
            j += 1
        k = j - i
        parts.append(f"(Z/{factors[i]})^{k}" if k > 1 else f"Z/{factors[i]}")
        i = j
    return " + ".join(parts)


# -- classify -----------------------------------------------------------------

def cmd_classify(
    max_order: int = 60,
    abelian_only: bool = True,
    *,
    jobs: int = 1,
    identify_swap: bool = False,
    check_classes: bool = True,
) -> dict:
    if not abelian_only:
        raise UsageError("non-abelian sweeps are not supported; run single groups from Python")
    cap = order_cap()
    if max_order > cap:
        raise UsageError(f"--max-order {max_order} exceeds the cap {cap} (set PRODQUOT_CAP to raise it)")
    table = classify_abelian_up_to(max_order, jobs=jobs, cap=cap, identify_swap=identify_swap)
    attach_homology(table, check_classes=check_classes)
    groups = []
    for rec in table.groups:
        data = rec.to_json()
        data["name"] = group_name(rec.group.factors)
        data["signature_pairs"] = [p for p in data["signature_pairs"] if p["free_structures"]]
        groups.append(data)
    result = {
        "max_order": max_order,
        "abelian_only": True,
        "identify_swap": identify_swap,
        "groups_scanned": table.scanned,
        "groups": groups,
    }
    return make_report("classify", {"max_order": max_order, "identify_swap": identify_swap}, result)


def render_classify_md(report: dict) -> str:
    res = report["result"]
    lines = [
        f"# Abelian groups of order <= {res['max_order']} with p_g = q = 0 product-quotient surfaces",
        "",
        f"Groups scanned: {res['groups_scanned']}; groups with surfaces: {len(res['groups'])}.",
        "",
        "| G | order | signatures | genera | free structures | classes | dimension | orbit sizes | H1 |",
        "|---|---|---|---|---|---|---|---|---|",
    ]
    for g in res["groups"]:
        for pair in g["signature_pairs"]:
            sig = tuple(map(tuple, pair["signatures"]))
            cls = [c for c in g["classes"] if tuple(map(tuple, c["signatures"])) == sig]
            dims = sorted({c["dimension"] for c in cls})
            h1s = sorted({group_name(c["h1"]) for c in cls})
            lines.append(
                "| {} | {} | {} | {} | {} | {} | {} | {} | {} |".format(
                    g["name"],
                    g["order"],
                    " / ".join(format_signature(s) for s in sig),
                    ", ".join(map(str, pair["genera"])),
                    pair["free_structures"],
                    len(cls),
                    ", ".join(map(str, dims)),
                    ", ".join(str(c["orbit_size"]) for c in cls),
                    ", ".join(h1s),
                )
            )
    return "\n".join(lines) + "\n"


# -- verify-examples ----------------------------------------------------------

@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"check": self.name, "passed": self.passed, "detail": self.detail}


def verify_example(fid: int) -> dict:
    """Run the fixture checks in order; every check is reported."""
    if fid not in FIXTURES:
        raise UsageError(f"unknown example id {fid}; choose from {sorted(FIXTURES)}")
    fx = FIXTURES[fid]
    G = fx.group()
    tuples = fx.entries(G)
    checks: list[Check] = []

    got = [tuple(G.orders[a] for a in t) for t in tuples]
    want = [tuple(s) for s in fx.signatures]
    ok = [tuple(sorted(o)) == w for o, w in zip(got, want)]
    checks.append(Check("orders", all(ok), f"orders {got}, signatures {want}"))

    prod_detail = []
    prod_ok = True
    for i, t in enumerate(tuples, 1):
        if G.product(t) != 0:
            prod_ok = False
            msg = f"system {i}: product is {G.labels[G.product(t)]}"
            if G.product(reversed(t)) == 0:
                msg += " (the reversed tuple does multiply to the identity)"
            prod_detail.append(msg)
    checks.append(Check("product", prod_ok, "; ".join(prod_detail) or "both products are the identity"))

    gen_ok = [subgroup_closure(G, mask_of(t)) == G.full_mask for t in tuples]
    checks.append(Check("generation", all(gen_ok), f"generates: {gen_ok}"))

    systems = [SphericalSystem(G, t) for t in tuples]
    common = stabilizer_set(systems[0]) & stabilizer_set(systems[1])
    checks.append(
        Check("freeness", common == 1, f"{bin(common).count('1') - 1} shared non-identity stabilizer elements")
    )

    try:
        genera = sorted(genus_from(tuple(sorted(o)), G.order) for o in got)
        genus_ok = set(genera) == set(fx.expected_genera) and len(genera) == 2
        detail = f"genera {genera}, expected {sorted(fx.expected_genera)}"
    except ProdquotError as exc:
        genera, genus_ok, detail = [], False, str(exc)
    checks.append(Check("genera", genus_ok, detail))

    inv_ok = False
    inv = None
    if genus_ok:
        g1, g2 = genera
        num = (g1 - 1) * (g2 - 1)
        inv_ok = num == G.order
        if inv_ok:
            st = UnmixedStructure(G, systems[0], systems[1], (g1, g2))
            inv = surface_invariants(st).to_json()
            inv_ok = inv["K2"] == 8 and inv["chi"] == 1
    checks.append(Check("invariants", inv_ok, f"K2 = 8, chi = 1: {inv}"))

    first_failure = next((c.name for c in checks if not c.passed), None)
    return {
        "id": fid,
        "group": fx.group_spec,
        "order": G.order,
        "tuples": [[G.labels[a] for a in t] for t in tuples],
        "note": fx.note,
        "passed": first_failure is None,
        "first_failure": first_failure,
        "genera": genera,
        "invariants": inv,
        "checks": [c.to_json() for c in checks],
    }


def cmd_verify_examples(ids=None) -> dict:
    ids = sorted(FIXTURES) if ids is None else list(ids)
    results = [verify_example(i) for i in ids]
    return make_report(
        "verify-examples",
        {"ids": ids},
        {"all_passed": all(r["passed"] for r in results), "examples": results},
    )


def render_verify_md(report: dict) -> str:
    lines = ["# Example verification", ""]
    for ex in report["result"]["examples"]:
        status = "PASS" if ex["passed"] else f"FAIL ({ex['first_failure']})"
        lines.append(f"## Example {ex['id']}: {status}")
        lines.append(f"group `{ex['group']}`, genera {ex['genera']}")
        if ex["note"]:
            lines.append(f"note: {ex['note']}")
        lines.append("")
        for c in ex["checks"]:
            mark = "pass" if c["passed"] else "FAIL"
            lines.append(f"- {c['check']}: {mark} ({c['detail']})")
        lines.append("")
    return "\n".join(lines)


# -- homology -------------------------------------------------------------------

def load_structure(data: dict) -> UnmixedStructure:
    if not isinstance(data, dict):
        raise UsageError("structure JSON must be an object")
    if "representative" in data:
        data = data["representative"]
    if "group" not in data or "systems" not in data:
        raise UsageError("structure JSON needs 'group' and 'systems'")
    systems = data["systems"]
    if not isinstance(systems, list) or len(systems) != 2:
        raise UsageError("'systems' must list exactly two systems")
    for s in systems:
        if not isinstance(s, dict) or not isinstance(s.get("tuple"), list):
            raise UsageError("each system needs a 'tuple' list")
    return UnmixedStructure.from_json(data)


def cmd_homology(data: dict) -> dict:
    st = load_structure(data)
    h1 = h1_of_surface(st)
    G1 = orbifold_abelianization(st.first).structure()
    G2 = orbifold_abelianization(st.second).structure()
    result = {
        "group": st.group.spec,
        "signatures": [list(s) for s in st.signatures],
        "genera": list(st.genera),
        "orbifold_abelianizations": [G1, G2],
        "h1": h1,
        "h1_order": order_of(h1),
        "invariants": surface_invariants(st).to_json(),
    }
    return make_report("homology", {"structure": st.to_json()}, result)


def render_homology_md(report: dict) -> str:
    r = report["result"]
    return (
        f"# H1 for `{r['group']}`\n\n"
        f"- signatures: {' / '.join(format_signature(tuple(s)) for s in r['signatures'])}\n"
        f"- genera: {r['genera']}\n"
        f"- G1, G2: {group_name(r['orbifold_abelianizations'][0])}, "
        f"{group_name(r['orbifold_abelianizations'][1])}\n"
        f"- H1(S, Z) = {group_name(r['h1'])}  {r['h1']}\n"
        f"- invariants: {r['invariants']}\n"
    )


# -- signatures -----------------------------------------------------------------

def cmd_signatures(spec: str) -> dict:
    G = parse_group_spec(spec)
    sigs = admissible_signatures(G)
    pairs = admissible_signature_pairs(G)
    result = {
        "group": G.spec,
        "order": G.order,
        "signatures": [{"signature": list(s), "genus": genus_from(s, G.order)} for s in sigs],
        "pairs": [
            {
                "signatures": [list(a), list(b)],
                "genera": [genus_from(a, G.order), genus_from(b, G.order)],
            }
            for a, b in pairs
        ],
    }
    return make_report("signatures", {"group": spec}, result)


def render_signatures_md(report: dict) -> str:
    r = report["result"]
    lines = [f"# Admissible signatures for `{r['group']}` (order {r['order']})", ""]
    lines.append(f"{len(r['signatures'])} signatures, {len(r['pairs'])} pairs.")
    lines += ["", "| signatures | genera |", "|---|---|"]
    for p in r["pairs"]:
        sig = " / ".join(format_signature(tuple(s)) for s in p["signatures"])
        lines.append(f"| {sig} | {', '.join(map(str, p['genera']))} |")
    return "\n".join(lines) + "\n"


# -- entry point ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="prodquot", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("md", "json"), default="md")
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--timing", action="store_true", help="include wall-clock timing in the report")

    p = sub.add_parser("classify", help="classify abelian groups up to a given order")
    p.add_argument("--max-order", type=int, default=60)
    p.add_argument("--abelian-only", dest="abelian_only", action="store_true", default=True)
    p.add_argument("--no-abelian-only", dest="abelian_only", action="store_false")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument(
        "--identify-swap",
        action="store_true",
        help="also identify (A, B) with (B, A) when both signatures agree",
    )
    p.add_argument(
        "--no-class-check",
        dest="check_classes",
        action="store_false",
        help="compute H1 on class representatives only",
    )
    common(p)

    p = sub.add_parser("verify-examples", help="check the non-abelian example fixtures")
    p.add_argument("--id", type=int, action="append", dest="ids")
    common(p)

    p = sub.add_parser("homology", help="H1 of a structure given as JSON")
    p.add_argument("--in", dest="infile", required=True)
    common(p)

    p = sub.add_parser("signatures", help="admissible signatures of a group")
    p.add_argument("--group", required=True)
    common(p)
    return parser


def _emit(report: dict, fmt: str, renderer, out: str | None) -> None:
    if fmt == "json":
        text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    else:
        text = renderer(report)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(message)s")
    start = time.perf_counter()
    try:
        if args.command == "classify":
            if args.jobs < 1:
                raise UsageError("--jobs must be >= 1")
            report = cmd_classify(
                args.max_order,
                args.abelian_only,
                jobs=args.jobs,
                identify_swap=args.identify_swap,
                check_classes=args.check_classes,
            )
            renderer, status = render_classify_md, 0
        elif args.command == "verify-examples":
            report = cmd_verify_examples(args.ids)
            renderer = render_verify_md
            status = 0 if report["result"]["all_passed"] else 1
        elif args.command == "homology":
            try:
                with open(args.infile, encoding="utf-8") as fh:
                    data = json.load(fh)
            except (OSError, json.JSONDecodeError) as exc:
                raise UsageError(f"cannot read {args.infile}: {exc}") from None
            report = cmd_homology(data)
            renderer, status = render_homology_md, 0
        else:
            report = cmd_signatures(args.group)
            renderer, status = render_signatures_md, 0
    except (ProdquotError, KeyError, TypeError, ValueError) as exc:
        print(f"prodquot: error: {exc}", file=sys.stderr)
        return 2
    if args.timing:
        report["timing"] = {"seconds": round(time.perf_counter() - start, 3)}
    _emit(report, args.format, renderer, args.out)
    if status == 1:
        failed = [e for e in report["result"]["examples"] if not e["passed"]]
        for e in failed:
            print(f"prodquot: example {e['id']} failed at check '{e['first_failure']}'", file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
