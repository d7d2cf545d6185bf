"""Command-line front end.

Exit codes: 0 valid or all checks passed, 1 refuted or unequal, 2 usage or
input error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from . import __version__
from .algebra import build_bn, upset_brouwer_algebra, with_carrier
from .degrees import (
    WitnessConfig,
    build_main_witness,
    check_main_equation,
    check_relativized_equation,
    degree_structure_from_presentation,
    is_strong_antichain,
    muchnik_algebra,
    parse_presentation_text,
    verify_usl_embedding,
)
from .errors import BrouwerError, CarrierTooLarge, FormulaSyntaxError, InputFormatError
from .formula import parse_formula, to_text
from .kripke import KripkeCountermodel, kripke_ipc_oracle
from .medvedev import check_free_algebra, refute_in_columns_factor
from .poset import parse_poset_text
from .semantics import (
    Countermodel,
    countermodel_search,
    evaluate,
    factor_algebra,
    first_refutation,
)

VALID, FINDING, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _formula(text: str):
    try:
        return parse_formula(text)
    except FormulaSyntaxError as exc:
        raise UsageError(f"FORMULA: {exc}") from None


def _load_algebra(spec: str):
    kind, _, arg = spec.partition(":")
    if kind == "bn":
        if not arg.isdigit():
            raise UsageError(f"--algebra: expected bn:N, got {spec!r}")
        return build_bn(int(arg)), int(arg)
    if kind in ("poset", "degrees"):
        try:
            text = Path(arg).read_text()
        except OSError as exc:
            raise UsageError(f"--algebra: cannot read {arg!r}: {exc.strerror}") from None
        if kind == "poset":
            return upset_brouwer_algebra(parse_poset_text(text), name=spec), None
        d = degree_structure_from_presentation(parse_presentation_text(text))
        alg = muchnik_algebra(d)
        return with_carrier(alg, alg.elements, name=spec), None
    raise UsageError(f"--algebra: unknown kind {kind!r} (use bn:N, poset:FILE or degrees:FILE)")


def _element(alg, text: str) -> int:
    """``U<i>`` (carrier position) or world names separated by ';' (empty for 1)."""
    m = re.fullmatch(r"U(\d+)", text)
    if m:
        i = int(m.group(1))
        if i >= len(alg):
            raise UsageError(f"--factor: {text} is outside a carrier of size {len(alg)}")
        return alg.elements[i]
    names = [t.strip() for t in text.split(";") if t.strip()]
    try:
        mask = alg.space.mask_of(names)
    except KeyError as exc:
        raise UsageError(f"--factor: unknown point {exc.args[0]!r}") from None
    if mask not in alg:
        raise UsageError(f"--factor: {text!r} is not an up-set")
    return mask


# -- subcommands ------------------------------------------------------------------------

def cmd_bn(args) -> tuple[int, dict]:
    if args.N < 1:
        raise UsageError("N: must be at least 1")
    alg = build_bn(args.N)
    return VALID, {
        "status": "ok",
        "algebra": alg.name,
        "carrier_size": len(alg),
        "points": list(alg.space.elements),
        "bottom": alg.label(alg.bottom),
        "top": alg.label(alg.top),
    }


def cmd_check(args) -> tuple[int, dict]:
    phi = _formula(args.formula)
    alg, n = _load_algebra(args.algebra)
    x = None
    if args.factor is not None:
        x = _element(alg, args.factor)
        alg = factor_algebra(alg, x)
    v = first_refutation(alg, phi, args.budget)
    report = {"algebra": alg.name, "carrier_size": len(alg), "formula": to_text(phi)}
    if v is None:
        return VALID, {"status": "valid", **report}
    value = evaluate(alg, phi, v)
    assert value != alg.bottom
    report["countermodel"] = {
        "n": n,
        "x": alg.world_set(x) if x is not None else None,
        "valuation": {k: alg.world_set(m) for k, m in sorted(v.items())},
        "value": alg.world_set(value),
    }
    return FINDING, {"status": "refuted", **report}


def cmd_countermodel(args) -> tuple[int, dict]:
    phi = _formula(args.formula)
    res = countermodel_search(phi, args.max_n, args.budget)
    base = {"formula": to_text(phi), "max_n": args.max_n}
    if isinstance(res, Countermodel):
        assert res.verify()
        rep = res.report()
        return FINDING, {"status": "refuted", "algebra": f"bn:{res.n}/x",
                         "carrier_size": len(res.factor()), "countermodel": rep, **base}
    return VALID, {"status": "not_found_up_to_bound", "note": res.note, **base}


def cmd_oracle(args) -> tuple[int, dict]:
    phi = _formula(args.formula)
    res = kripke_ipc_oracle(phi, args.max_worlds, args.budget)
    base = {"formula": to_text(phi), "max_worlds": args.max_worlds}
    if isinstance(res, KripkeCountermodel):
        return FINDING, {"status": "refuted", "kripke_countermodel": res.report(), **base}
    return VALID, {"status": "valid_up_to_bound", **base}


_X_FLAG = re.compile(r"--X(\d+)$")


def _parse_columns(extra: list[str], k: int) -> list[list[int]]:
    cols: dict[int, list[int]] = {}
    current = None
    for tok in extra:
        m = _X_FLAG.match(tok)
        if m:
            current = int(m.group(1))
            if current in cols:
                raise UsageError(f"--X{current}: given twice")
            cols[current] = []
            continue
        if current is None or tok.startswith("--"):
            raise UsageError(f"{tok}: unrecognized argument")
        for part in tok.split(","):
            if part.strip():
                if not part.strip().isdigit():
                    raise UsageError(f"--X{current}: {part!r} is not a positive integer")
                cols[current].append(int(part))
    for j in cols:
        if not 1 <= j <= k:
            raise UsageError(f"--X{j}: index outside 1..{k}")
    for j in range(1, k + 1):
        if j not in cols:
            raise UsageError(f"--X{j}: missing (give an empty value for the empty set)")
    return [cols[j] for j in range(1, k + 1)]


def cmd_witness(args, extra: list[str]) -> tuple[int, dict]:
    if args.k < 1:
        raise UsageError("--k: must be at least 1")
    try:
        cfg = WitnessConfig.of(args.n, *_parse_columns(extra, args.k))
    except BrouwerError as exc:
        raise UsageError(f"--X: {exc}") from None
    m = args.relativized or 0
    w = build_main_witness(cfg, m=m)
    d = w.structure
    alpha = w.alpha()
    I = frozenset(range(1, cfg.n + 1))
    emb = verify_usl_embedding(alpha, d.ops, (alpha[I], alpha[frozenset()]))
    free = check_free_algebra(w)
    eq = check_relativized_equation(w) if m else check_main_equation(w)
    try:
        carrier_size = len(muchnik_algebra(d))
    except CarrierTooLarge:
        carrier_size = None
    report = {
        "algebra": "muchnik",
        "carrier_size": carrier_size,
        "degrees": len(d.degrees),
        "config": {"n": cfg.n, "k": cfg.k, "X": [sorted(X) for X in cfg.X], "relativized": m},
        "strong_antichain": is_strong_antichain(d, w.ambient, list(w.D)),
        "embedding": emb.flags(),
        "canonical": free.canonical.ok if free.canonical else None,
        "generated_size": free.generated_size,
        "isomorphic_to_bn": free.isomorphism_found if free.canonical else None,
        "equation_equal": eq.equal,
        "equation_diff": eq.diff,
    }
    if free.note:
        report["free_algebra_note"] = free.note
    free_ok = free.ok or free.canonical is None
    finding = not (report["strong_antichain"] and emb.ok and free_ok and eq.equal)
    status = "checked" if not finding else "unequal"
    if args.formula is not None:
        phi = _formula(args.formula)
        tr = refute_in_columns_factor(w, phi)
        if tr is None:
            report["formula_status"] = "valid_in_factor"
        else:
            assert tr.refuted
            report["formula_status"] = "refuted"
            report["countermodel"] = {
                "n": cfg.n,
                "x": report["config"]["X"],
                "factor_valuation": tr.factor_valuation,
                "valuation": tr.valuation,
                "gamma_ok": bool(tr.gamma and tr.gamma.ok),
            }
            finding = True
            status = "refuted"
    return (FINDING if finding else VALID), {"status": status, **report}


def cmd_suite(args) -> tuple[int, dict]:
    from .acceptance import run_all

    results = run_all()
    report = {
        "status": "pass" if all(r.ok for r in results) else "fail",
        "criteria": [
            {"number": r.number, "title": r.title, "passed": r.passed,
             "within_time_limit": r.seconds <= r.limit, "detail": r.detail}
            for r in results
        ],
    }
    if not args.json:
        for r in results:
            print(r.line())
    return (VALID if report["status"] == "pass" else FINDING), report


# -- wiring ------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="emit the structured report")
    parser = argparse.ArgumentParser(prog="brouwerlab", parents=[common],
                                     description="Finite Brouwer algebras and countermodels.")
    parser.add_argument("--version", action="version", version=f"brouwerlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bn", parents=[common], help="summarise B_N")
    p.add_argument("N", type=int)

    p = sub.add_parser("check", parents=[common], help="check a formula in an algebra")
    p.add_argument("formula")
    p.add_argument("--algebra", required=True, help="bn:N, poset:FILE or degrees:FILE")
    p.add_argument("--factor", help="factor by U<i> or by ';'-separated point names")
    p.add_argument("--budget", type=int, default=10**7)

    p = sub.add_parser("countermodel", parents=[common], help="search the factors of B_n")
    p.add_argument("formula")
    p.add_argument("--max-n", type=int, default=3)
    p.add_argument("--budget", type=int, default=10**7)

    p = sub.add_parser("oracle", parents=[common], help="Kripke countermodel search")
    p.add_argument("formula")
    p.add_argument("--max-worlds", type=int, default=5)
    p.add_argument("--budget", type=int, default=10**7)

    p = sub.add_parser("witness", parents=[common], help="build and check a witness structure",
                       epilog="columns are given as --X1 1,2 --X2 3 ...")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--formula")
    p.add_argument("--relativized", type=int, metavar="M")

    sub.add_parser("suite", parents=[common], help="run every acceptance check")
    return parser


def _render_text(report: dict) -> str:
    lines = []
    for key, value in report.items():
        if isinstance(value, (dict, list)):
            value = json.dumps(value, sort_keys=True)
        lines.append(f"{key}: {value}")
    return "\n".join(lines)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    args, extra = parser.parse_known_args(argv)
    args.json = getattr(args, "json", False)
    if extra and args.command != "witness":
        parser.error(f"unrecognized arguments: {' '.join(extra)}")
    handlers = {
        "bn": cmd_bn,
        "check": cmd_check,
        "countermodel": cmd_countermodel,
        "oracle": cmd_oracle,
        "suite": cmd_suite,
    }
    try:
        if args.command == "witness":
            code, report = cmd_witness(args, extra)
        else:
            code, report = handlers[args.command](args)
    except UsageError as exc:
        print(f"brouwerlab {args.command}: error: {exc}", file=sys.stderr)
        return USAGE
    except (BrouwerError, InputFormatError) as exc:
        print(f"brouwerlab {args.command}: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return USAGE
    if args.json:
        print(json.dumps(report, sort_keys=True, indent=2))
    elif args.command != "suite":
        print(_render_text(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
