"""Command-line front end.

Maps are given inline as JSON, as a path to a JSON file, or as ``-`` for
standard input.  Reports are JSON with sorted keys, so identical invocations
produce identical bytes.

Exit status: 0 on success, 1 when an ``oracle`` sweep finds a failure,
2 when an operation's precondition fails, 3 when an input does not parse.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import analysis, constructions, oracle, quotient
from .errors import PreconditionError, TotalityError
from .maps import (
    SelfMap,
    canonicalize,
    compose,
    disagreement,
    evaluate,
    identity,
    pair_swap,
    stability_window,
    successor,
)
from .sampling import random_near_bijection

EXIT_OK = 0
EXIT_ORACLE_FAILURE = 1
EXIT_PRECONDITION = 2
EXIT_PARSE = 3


class ParseError(Exception):
    pass


def _load_json(text: str):
    if text == "-":
        raw = sys.stdin.read()
    elif text.lstrip().startswith(("{", "[")):
        raw = text
    else:
        try:
            raw = Path(text).read_text()
        except OSError as exc:
            raise ParseError("cannot read %s: %s" % (text, exc)) from exc
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ParseError("invalid JSON: %s" % exc) from exc


def parse_map(text: str) -> SelfMap:
    data = _load_json(text)
    try:
        return canonicalize(SelfMap.from_dict(data))
    except TotalityError as exc:
        raise ParseError(str(exc)) from exc
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError("invalid map %r: %s" % (text, exc)) from exc


def parse_finite_map(text: str) -> oracle.FiniteSelfMap:
    data = _load_json(text)
    try:
        return oracle.FiniteSelfMap.from_dict(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError("invalid finite map %r: %s" % (text, exc)) from exc


def _finiteness_json(result) -> dict:
    if result.is_finite:
        return {"finite": True, "elements": list(result.elements)}
    return {"finite": False, "witness": result.witness_json(), "description": result.describe()}


# -- verbs -----------------------------------------------------------------

def cmd_eval(args):
    if args.n < 0:
        raise PreconditionError("argument must be a natural, got %d" % args.n)
    return {"value": evaluate(parse_map(args.map), args.n)}


def cmd_classify(args):
    f = parse_map(args.map)
    report = {
        "classification": analysis.classify(f).to_dict(),
        "profile": analysis.profile(f).to_dict(),
    }
    if analysis.is_near_bijective(f):
        bound = args.window_multiplier * stability_window(f)
        scan = oracle.window_scan_profile(f, bound)
        prof = analysis.profile(f)
        report["window_check"] = {
            "bound": bound,
            "agrees": scan.monoset_complement == prof.monoset_complement.as_set()
            and scan.range_complement == prof.range_complement.as_set(),
        }
    return report


def cmd_index(args):
    return {"index": analysis.index(parse_map(args.map))}


def cmd_compose(args):
    return {"map": compose(parse_map(args.g), parse_map(args.f)).to_dict()}


def cmd_invert(args):
    f = parse_map(args.map)
    g = constructions.class_inverse(f)
    return {
        "inverse": g.to_dict(),
        "disagreement_g_f": _finiteness_json(disagreement(compose(g, f), identity())),
        "disagreement_f_g": _finiteness_json(disagreement(compose(f, g), identity())),
    }


def cmd_repair(args):
    f = parse_map(args.map)
    g = constructions.repair_to_bijection(f)
    d = disagreement(f, g)
    c = analysis.classify(g)
    rng = analysis.range_complement(f)
    return {
        "bijection": g.to_dict(),
        "disagreement": list(d.elements),
        "range_complement_size": len(rng),
        "checks": {
            "bijective": c.injective and c.surjective,
            "almost_equal": d.is_finite,
            "disagreement_size_matches": len(d) == len(rng),
        },
    }


def cmd_reduce(args):
    f = parse_map(args.map)
    if args.to == "injection":
        g = constructions.reduce_to_injection(f)
    else:
        g = constructions.reduce_to_surjection(f)
    return {
        "map": g.to_dict(),
        "target": args.to,
        "profile": analysis.profile(g).to_dict(),
        "disagreement": list(disagreement(f, g).elements),
    }


def cmd_synth(args):
    cert = constructions.synthesize_lambda_rho(parse_map(args.f), parse_map(args.g))
    out = cert.to_dict()
    out["verified"] = cert.verified
    return out


def cmd_fibers(args):
    f = parse_map(args.map)
    fibers = analysis.fiber_decomposition(f)
    report = {"fibers": {str(k): sorted(v) for k, v in fibers.items()}}
    if args.other is not None:
        g = parse_map(args.other)
        match = constructions.fibers_match(f, g)
        report["other_fibers"] = {
            str(k): sorted(v) for k, v in analysis.fiber_decomposition(g).items()
        }
        report["match"] = match
        if match:
            report["rho"] = constructions.synthesize_rho_exact(f, g).to_dict()
    return report


def cmd_disagreement(args):
    return {"disagreement": _finiteness_json(disagreement(parse_map(args.f), parse_map(args.g)))}


def cmd_class(args):
    return {"class": quotient.class_of(parse_map(args.map)).to_dict()}


def cmd_ind(args):
    return {"Ind": quotient.Ind(quotient.class_of(parse_map(args.map)))}


def cmd_split(args):
    a = quotient.splitting(args.n)
    return {"class": a.to_dict(), "Ind": quotient.Ind(a)}


def cmd_demo_noncentral(args):
    result = quotient.noncentrality_demo()
    swap, shift = pair_swap(), successor()
    left, right = compose(swap, shift), compose(shift, swap)
    sample = range(2 * args.sample)
    if result.is_finite:
        message = "Finite disagreement"
    elif result.covers_all_residues():
        message = "Infinite disagreement; witness: all n"
    else:
        message = "Infinite disagreement; %s" % result.describe()
    return {
        "message": message,
        "disagreement": _finiteness_json(result),
        "swap_after_shift_fixes": [n for n in sample if left(n) == n],
        "shift_after_swap_fixes": [n for n in sample if right(n) == n],
    }


def cmd_oracle(args):
    rng = random.Random(args.seed)
    results = {}

    def tally(name, outcomes):
        outcomes = list(outcomes)
        results[name] = {"passed": sum(outcomes), "failed": len(outcomes) - sum(outcomes)}

    if args.map is not None:
        m = parse_finite_map(args.map)
        return {
            "profile": oracle.oracle_profile(m).to_dict(),
            "finite_identity": oracle.check_finite_identity(m),
            "comp_identity": oracle.check_comp_identity(m),
            "inj_iff_surj": oracle.check_inj_iff_surj(m),
        }

    exhaustive = [m for n in range(1, args.exhaustive + 1) for m in oracle.all_maps(n)]
    randoms = [oracle.random_map(rng) for _ in range(args.random)]
    tally("finite_identity", map(oracle.check_finite_identity, exhaustive + randoms))
    tally("comp_identity", map(oracle.check_comp_identity, exhaustive + randoms))
    tally("inj_iff_surj", map(oracle.check_inj_iff_surj, exhaustive + randoms))
    tally("edit_invariance", (
        oracle.check_edit_invariance(m, p, v)
        for m in exhaustive for p in range(m.size) for v in range(m.size)
    ))
    perms = [m for m in exhaustive if not oracle.oracle_profile(m).range_complement]
    tally("left_right_permutation", (
        oracle.check_left_right(m, pi)
        for m in exhaustive for pi in perms if pi.size == m.size
    ))
    window = []
    for _ in range(args.windows):
        f = random_near_bijection(rng)
        prof = analysis.profile(f)
        scan = oracle.window_scan_profile(f, args.window_multiplier * stability_window(f))
        window.append(
            scan.monoset_complement == prof.monoset_complement.as_set()
            and scan.range_complement == prof.range_complement.as_set()
        )
    tally("window_agreement", window)
    return {"suites": results, "all_passed": all(r["failed"] == 0 for r in results.values())}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cofinite", description=__doc__.splitlines()[0])
    parser.add_argument("-o", "--output", help="write the report here instead of stdout")
    parser.add_argument("--window-multiplier", type=int, default=4)
    sub = parser.add_subparsers(dest="verb", required=True)

    def verb(name, func, *maps):
        p = sub.add_parser(name)
        for m in maps:
            p.add_argument(m)
        p.set_defaults(func=func)
        return p

    verb("eval", cmd_eval, "map").add_argument("n", type=int)
    verb("classify", cmd_classify, "map")
    verb("index", cmd_index, "map")
    verb("compose", cmd_compose, "g", "f")
    verb("invert", cmd_invert, "map")
    verb("repair", cmd_repair, "map")
    verb("reduce", cmd_reduce, "map").add_argument(
        "--to", choices=("injection", "surjection"), required=True)
    verb("synth", cmd_synth, "f", "g")
    verb("fibers", cmd_fibers, "map").add_argument("other", nargs="?")
    verb("disagreement", cmd_disagreement, "f", "g")
    verb("class", cmd_class, "map")
    verb("ind", cmd_ind, "map")
    verb("split", cmd_split).add_argument("n", type=int)
    verb("demo-noncentral", cmd_demo_noncentral).add_argument("--sample", type=int, default=10)
    p = verb("oracle", cmd_oracle)
    p.add_argument("map", nargs="?", help="check a single finite map instead of sweeping")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--exhaustive", type=int, default=4)
    p.add_argument("--random", type=int, default=10000)
    p.add_argument("--windows", type=int, default=500)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.func(args)
    except ParseError as exc:
        print("parse error: %s" % exc, file=sys.stderr)
        return EXIT_PARSE
    except PreconditionError as exc:
        print("precondition failed: %s" % exc, file=sys.stderr)
        return EXIT_PRECONDITION
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    if args.verb == "oracle" and report.get("all_passed") is False:
        return EXIT_ORACLE_FAILURE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
