"""``cbr`` command line.

Exit status: 0 when the command succeeds and every check passes, 1 when an
axiom, verification or sweep check fails, 2 for bad input or usage.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import axioms as ax
from . import oracle
from .choice import ChoiceFunction, load
from .errors import AxiomFailure, ChoiceDataError, InternalInvariantBreach, NotRepresentable, SizeCapExceeded
from .identification import DEFAULT_CAP, identify
from .representation import synthesize_cbr, synthesize_tcbr, verify
from .reversals import Mode, check_exclusivity, check_smp, find_reversals, reversal_summary, revealed_r

COMMANDS = ("validate", "axioms", "reversals", "represent", "identify", "classify", "oracle", "sweep")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cbr", description="Analyse choice data under choice-by-rejection models.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("file", nargs="?", help="choice-data JSON document")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--transitive-p", action="store_true", help="use the linear-second-rationale variant")
    p.add_argument("--oracle", action="store_true", help="cross-check against exhaustive search (at most 4 alternatives)")
    p.add_argument("--n", type=int, default=3, help="universe size for sweeps")
    p.add_argument("--check", help="sweep id, e.g. theorem1")
    p.add_argument("--seed", type=int, default=0, help="seed for sampled sweeps (default 0)")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--cap", type=int, default=None, help="limit on listed relations or representations")
    return p


def _pairs(rel):
    return " ".join(f"{a}>{b}" for a, b in rel.pairs()) or "(none)"


def _emit(args, payload, text_lines):
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(text_lines))


# -- commands -----------------------------------------------------------------


def _validate(args, C: ChoiceFunction) -> int:
    u = C.universe
    payload = {"valid": True, "alternatives": list(u.labels), "menus": len(C.table) - 1}
    _emit(args, payload, [f"valid: {u.size} alternatives, {len(C.table) - 1} menus"])
    return 0


def _axioms(args, C) -> int:
    rep = ax.report(C)
    target = ax.TCBR_AXIOMS if args.transitive_p else ax.CBR_AXIOMS
    ok = all(rep.verdicts[a].passed for a in target)
    lines = []
    for a, v in rep.verdicts.items():
        mark = "*" if a in target else " "
        lines.append(f"{mark} {a.value:<20} {'PASS' if v.passed else 'FAIL'}")
        if not v.passed:
            lines.append(f"    witness: {json.dumps(v.witness)}")
    lines.append(f"{'T-CBR' if args.transitive_p else 'CBR'} representable: {'yes' if ok else 'no'}")
    _emit(args, rep.to_dict(), lines)
    return 0 if ok else 1


def _reversals(args, C) -> int:
    u = C.universe
    revs = find_reversals(C)
    smp, excl = check_smp(C), check_exclusivity(C)
    payload = {
        "reversals": [r.to_dict(u) for r in revs],
        "summary": reversal_summary(C),
        "revealed": {m.value: [list(p) for p in revealed_r(C, m).pairs()] for m in Mode},
        "smp": {"passed": smp.passed, "witness": smp.witness},
        "exclusivity": {"passed": excl.passed, "witness": excl.witness},
    }
    lines = [r.describe(u) for r in revs] or ["no reversals"]
    lines.append(f"revealed (all menus):   {_pairs(revealed_r(C, Mode.FULL_MENU))}")
    lines.append(f"revealed (small menus): {_pairs(revealed_r(C, Mode.SMALL_MENU))}")
    lines.append(f"SMP: {'PASS' if smp.passed else 'FAIL'}   Exclusivity: {'PASS' if excl.passed else 'FAIL'}")
    _emit(args, payload, lines)
    return 0


def _represent(args, C) -> int:
    build = synthesize_tcbr if args.transitive_p else synthesize_cbr
    try:
        rep = build(C)
    except AxiomFailure as e:
        v = e.verdict
        _emit(args, {"error": "axiom", "axiom": v.axiom.value, "verdict": v.to_dict()},
              [f"not representable: {v.axiom.value} fails", f"witness: {json.dumps(v.witness)}"])
        return 1
    except InternalInvariantBreach as e:
        _emit(args, {"error": "invariant", "message": str(e)}, [f"internal invariant breach: {e}"])
        return 1
    check = verify(C, rep)
    payload = rep.to_dict()
    payload["verified"] = check.ok
    payload["mismatches"] = list(check.mismatches)
    lines = [f"R: {_pairs(rep.first)}", f"P: {_pairs(rep.second)}", f"verified: {'yes' if check.ok else 'no'}"]
    lines += [f"  mismatch {m}" for m in check.mismatches]
    ok = check.ok
    if args.oracle:
        flavor = oracle.ModelFlavor.TCBR if args.transitive_p else oracle.ModelFlavor.CBR
        found = oracle.representations(C, flavor, cap=None)
        listed = any(p.first == rep.first and p.second == rep.second for p in found.pairs)
        payload["oracle"] = {"count": found.count, "contains_synthesized": listed}
        lines.append(f"oracle: {found.count} representations; synthesized pair among them: {'yes' if listed else 'no'}")
        ok = ok and listed
    _emit(args, payload, lines)
    return 0 if ok else 1


def _identify(args, C) -> int:
    try:
        rep = identify(C, args.cap or DEFAULT_CAP)
    except NotRepresentable as e:
        v = e.verdict
        _emit(args, {"error": "axiom", "axiom": v.axiom.value, "verdict": v.to_dict()}, [f"not representable: {v.axiom.value} fails"])
        return 1
    lines = [
        f"R^c (minimal first rationale): {_pairs(rep.r_min)}",
        f"P^c (second-rationale floor):  {_pairs(rep.p_min)}",
        f"excluded from every R:         {_pairs(rep.q_hat)}",
        "maximal first rationales:",
    ]
    lines += [f"  {_pairs(r)}" for r in rep.r_max]
    if rep.truncated:
        lines.append(f"  ... truncated at {len(rep.r_max)}")
    _emit(args, rep.to_dict(), lines)
    return 0


def _classify(args, C) -> int:
    prof = oracle.classify(C)
    lines = [f"{f.value:<14} {'yes' if v else 'no':<4} ({prof.methods[f]})" for f, v in prof.flags.items()]
    s = prof.reversals
    lines.append(f"reversals: {s['weak']} weak, {s['strong']} strong; double-reversal pairs: {s['double_reversal_pairs']}")
    for d in prof.disagreements:
        lines.append(f"DISAGREEMENT: {d}")
    _emit(args, prof.to_dict(), lines)
    return 1 if prof.disagreements else 0


def _oracle(args, C) -> int:
    flavor = oracle.ModelFlavor.TCBR if args.transitive_p else oracle.ModelFlavor.CBR
    found = oracle.representations(C, flavor, cap=args.cap if args.cap is not None else 64)
    payload = {
        "flavor": flavor.value,
        "count": found.count,
        "capped": found.capped,
        "representations": [p.to_dict() for p in found.pairs],
    }
    lines = [f"{found.count} {flavor.value} representation(s)"]
    lines += [f"  R: {_pairs(p.first)}  |  P: {_pairs(p.second)}" for p in found.pairs]
    if found.capped:
        lines.append(f"  ... showing {len(found.pairs)}")
    _emit(args, payload, lines)
    return 0 if found.count else 1


def _sweep(args) -> int:
    if not args.check:
        raise UsageError("sweep needs --check ID")
    try:
        check = oracle.SweepId(args.check.upper())
    except ValueError:
        raise UsageError(f"unknown sweep {args.check!r}; one of {', '.join(s.value.lower() for s in oracle.SweepId)}")
    rep = oracle.sweep(args.n, check, threads=args.threads, seed=args.seed)
    lines = [
        f"{rep.sweep} at n={rep.n}: population {rep.population}, "
        f"{rep.counts.get('counterexamples', 0)} counterexample(s), {rep.runtime_ms} ms",
    ]
    lines += [f"  {k}: {v}" for k, v in sorted(rep.counts.items())]
    lines += [f"  counterexample: {json.dumps(c)}" for c in rep.counterexamples[:5]]
    _emit(args, rep.to_dict(), lines)
    return 0 if rep.ok else 1


_HANDLERS = {
    "validate": _validate,
    "axioms": _axioms,
    "reversals": _reversals,
    "represent": _represent,
    "identify": _identify,
    "classify": _classify,
    "oracle": _oracle,
}


def run(argv) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command == "sweep":
            return _sweep(args)
        if not args.file:
            raise UsageError(f"{args.command} needs a FILE")
        C = load(args.file)
        return _HANDLERS[args.command](args, C)
    except UsageError as e:
        print(f"cbr: usage error: {e}", file=sys.stderr)
        return 2
    except (ChoiceDataError, OSError) as e:
        print(f"cbr: input error: {e}", file=sys.stderr)
        return 2
    except SizeCapExceeded as e:
        print(f"cbr: size limit: {e}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
