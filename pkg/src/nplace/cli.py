"""Command-line front end.

Exit codes: 0 pass, 1 negative verdict (a witness is in the report), 2 input error.
Reports are JSON on standard output and carry ``"schema": 1``.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field

from . import io
from .algebra import Selector, eval_sequence, mu_star
from .census import census, make_algebra, oracle_representable
from .core_types import Carrier, all_functions
from .determining_pairs import MIXED, SYMMETRIC, decompose, validate_determining_pair
from .errors import NotAssociative, NPlaceError
from .mann_ops import IDENTITIES, verify_identity
from .quasi_order import QuasiOrderInput, build_projection_representation, check_projection_system
from .representability import (
    ClosureAutomaton,
    check_unitary,
    closure,
    extension_from_total,
    faithful_representation,
    totalize,
    unitary_closure,
    verify_representation,
)

PASS, NEGATIVE, INPUT_ERROR = 0, 1, 2


@dataclass
class RunReport:
    command: str
    inputs: dict
    verdicts: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)
    timing: dict = field(default_factory=dict)
    schema: int = io.SCHEMA

    def as_dict(self):
        return asdict(self)


class UsageError(Exception):
    pass


# --- subcommands ----------------------------------------------------------------

def cmd_validate_algebra(args, report):
    doc = io.read_json(args.algebra)
    try:
        G = io.algebra_from_doc(doc)
    except NotAssociative as exc:
        report.verdicts["valid"] = False
        report.witnesses["not_associative"] = {
            "operation": exc.op_index, "triple": [exc.x, exc.y, exc.z]
        }
        return NEGATIVE
    report.verdicts.update(valid=True, n=G.n, size=G.size)
    return PASS


def cmd_check_identities(args, report):
    if args.exhaustive:
        if args.carrier_size is None or args.arity is None:
            raise UsageError("--exhaustive needs --carrier-size and --arity")
        carrier = Carrier(tuple(str(k) for k in range(args.carrier_size)))
        functions = list(all_functions(carrier, args.arity))
        mode = "exhaustive"
    elif args.functions:
        _, _, functions = io.load_functions(args.functions)
        mode = args.mode
    else:
        raise UsageError("give --functions FILE or --exhaustive")
    ids = args.identity or list(IDENTITIES)
    results = []
    for ident in ids:
        r = verify_identity(ident, functions, mode=mode, samples=args.samples, seed=args.seed,
                            max_len=args.max_len)
        results.append(r.as_dict())
    report.inputs.update(mode=mode, identities=ids, sample_functions=len(functions))
    report.verdicts["identities"] = [
        {k: r[k] for k in ("identity", "samples_checked", "passed")} for r in results
    ]
    failed = [r for r in results if not r["passed"]]
    if failed:
        report.witnesses["failures"] = {r["identity"]: r["failures"][:10] for r in failed}
        return NEGATIVE
    return PASS


def _replay(G, violation):
    """Recompute a violation from scratch; True when it is a genuine counterexample."""
    u, v = list(violation.seq_u), list(violation.seq_v)
    return (
        mu_star(G, u) == mu_star(G, v) == violation.tuple
        and eval_sequence(G, violation.g, u) != eval_sequence(G, violation.g, v)
    )


def cmd_check_representable(args, report):
    G = io.load_algebra(args.algebra)
    result = closure(G, cap=args.cap)
    ok = isinstance(result, ClosureAutomaton)
    report.verdicts["representable"] = ok
    if ok:
        report.verdicts["states"] = len(result)
        return PASS
    report.verdicts["states"] = result.states_seen
    report.witnesses["violation"] = result.describe(G)
    if args.witness:
        report.witnesses["violation"]["verified"] = _replay(G, result)
    return NEGATIVE


def cmd_build_representation(args, report):
    G = io.load_algebra(args.algebra)
    result = closure(G, cap=args.cap)
    if not isinstance(result, ClosureAutomaton):
        report.verdicts["representable"] = False
        report.witnesses["violation"] = result.describe(G)
        return NEGATIVE
    R = faithful_representation(G, result)
    ok, _ = verify_representation(R)
    report.verdicts.update(representable=True, homomorphism=ok, injective=R.is_injective(),
                           carrier_size=len(R.carrier), domain_size=len(R(0)))
    _write(args, io.representation_to_doc(R))
    return PASS if ok else NEGATIVE


def cmd_totalize(args, report):
    R = io.load_representation(args.representation)
    T = totalize(R)
    ok, _ = verify_representation(T)
    report.verdicts.update(homomorphism=ok, total=all(f.is_total for f in T.assignment),
                           injective=T.is_injective(), injective_before=R.is_injective())
    _write(args, io.representation_to_doc(T))
    return PASS if ok else NEGATIVE


def cmd_extend_unitary(args, report):
    doc = io.read_json(args.functions)
    _, _, functions = io.functions_from_doc(doc)
    partial = [name for name, f in functions.items() if not f.is_total]
    if partial:
        raise UsageError(f"functions {partial} are partial; run 'totalize' first")
    items, _ = unitary_closure(list(functions.values()), cap=args.cap)
    report.verdicts.update(size=len(items), base_functions=len(functions))
    if "algebra" in doc:
        R = io.representation_from_doc(doc)
        if not R.is_injective():
            report.verdicts["unitary"] = False
            report.witnesses["reason"] = "the representation is not injective"
            return NEGATIVE
        ext = extension_from_total(R.algebra, R, cap=args.cap)
        ok, reason = check_unitary(ext)
        report.verdicts["unitary"] = ok
        if not ok:
            report.witnesses["reason"] = reason
        _write(args, io.extension_to_doc(ext))
        return PASS if ok else NEGATIVE
    return PASS


def cmd_check_determining_pair(args, report):
    G = io.load_algebra(args.algebra)
    dp = io.pair_from_doc(io.read_json(args.pair), G)
    result = validate_determining_pair(G, dp, axiom4=args.axiom4)
    d = result.as_dict()
    report.verdicts["ok"] = d["ok"]
    report.verdicts["axiom4_reading"] = d["axiom4_reading"]
    report.verdicts["axioms"] = {k: v["ok"] for k, v in d["axioms"].items()}
    report.witnesses.update({k: v["witness"] for k, v in d["axioms"].items() if not v["ok"]})
    return PASS if result.ok else NEGATIVE


def cmd_decompose(args, report):
    G = io.load_algebra(args.algebra) if args.algebra else None
    R = io.load_representation(args.representation, G)
    dec = decompose(R, cap=args.cap)
    names = io.point_names(R.carrier)
    points = []
    for m in dec.members:
        points.append({
            "point": [names[x] for x in m.point],
            "classes": len(m.pair.E.classes),
            "W_size": len(m.pair.W),
            "pair_ok": m.report.ok,
        })
    all_pairs = all(p["pair_ok"] for p in points)
    report.verdicts.update(union_equals_P=dec.holds, pairs_valid=all_pairs,
                           members=len(points), extension_size=dec.extension.algebra.size)
    report.witnesses["points"] = points
    if dec.failures:
        report.witnesses["union_failures"] = dec.failures
    return PASS if dec.holds and all_pairs else NEGATIVE


def _load_q(args):
    G = io.load_algebra(args.algebra)
    chi = io.relation_from_doc(io.read_json(args.relation), G)
    return QuasiOrderInput(G, chi)


def cmd_check_chi(args, report):
    Q = _load_q(args)
    r = check_projection_system(Q).as_dict()
    report.verdicts["ok"] = r.pop("ok")
    report.verdicts.update({k: v["ok"] for k, v in r.items()})
    report.witnesses.update({k: v["witness"] for k, v in r.items() if not v["ok"]})
    return PASS if report.verdicts["ok"] else NEGATIVE


def cmd_build_projection_rep(args, report):
    Q = _load_q(args)
    r = check_projection_system(Q)
    if not r.ok:
        d = r.as_dict()
        report.verdicts["system_ok"] = False
        report.witnesses.update({k: v["witness"] for k, v in d.items() if k != "ok" and not v["ok"]})
        return NEGATIVE
    res = build_projection_representation(Q)
    report.verdicts.update(system_ok=True, homomorphism=res.homomorphism,
                           chi_matches=res.chi_matches, faithful=res.faithful,
                           carrier_size=len(res.representation.carrier))
    _write(args, io.representation_to_doc(res.representation))
    return PASS if res.ok else NEGATIVE


def cmd_census(args, report):
    records = list(census(args.n, args.order, dedup=args.dedup, workers=args.workers, cap=args.cap))
    report.inputs.update(n=args.n, order=args.order, dedup=args.dedup)
    report.verdicts.update(algebras=len(records),
                           representable=sum(r.representable for r in records))
    if args.oracle:
        disagree = [r.algebra_id for r in records
                    if oracle_representable(make_algebra(r.tables), args.oracle_len) != r.representable]
        report.verdicts["oracle_agrees"] = not disagree
        if disagree:
            report.witnesses["oracle_disagreements"] = disagree
    if args.records:
        report.witnesses["records"] = [r.as_dict() for r in records]
    return NEGATIVE if args.oracle and not report.verdicts["oracle_agrees"] else PASS


def _write(args, doc):
    if getattr(args, "output", None):
        io.write_json(doc, args.output)


# --- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="JSON report on stdout (the default)")
    common.add_argument("--quiet", action="store_true", help="print nothing; exit code only")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--cap", type=int, default=10**6, help="state / function budget")
    common.add_argument("--oracle", action="store_true", help="cross-check with brute force")

    p = argparse.ArgumentParser(prog="nplace", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help):
        sp = sub.add_parser(name, parents=[common], help=help)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("validate-algebra", cmd_validate_algebra, "check table shape and associativity")
    sp.add_argument("algebra")

    sp = add("check-identities", cmd_check_identities, "verify the composition identities")
    sp.add_argument("--functions")
    sp.add_argument("--exhaustive", action="store_true")
    sp.add_argument("--carrier-size", type=int)
    sp.add_argument("--arity", type=int)
    sp.add_argument("--identity", action="append", choices=IDENTITIES)
    sp.add_argument("--mode", choices=("exhaustive", "random"), default="random")
    sp.add_argument("--samples", type=int, default=1000)
    sp.add_argument("--max-len", type=int, default=3)

    sp = add("check-representable", cmd_check_representable, "decide representability")
    sp.add_argument("algebra")
    sp.add_argument("--witness", action="store_true", help="replay the violation from scratch")

    sp = add("build-representation", cmd_build_representation, "faithful representation")
    sp.add_argument("algebra")
    sp.add_argument("-o", "--output")

    sp = add("totalize", cmd_totalize, "extend a representation to full functions")
    sp.add_argument("representation")
    sp.add_argument("-o", "--output")

    sp = add("extend-unitary", cmd_extend_unitary, "close full functions with the projectors")
    sp.add_argument("functions")
    sp.add_argument("-o", "--output")

    sp = add("check-determining-pair", cmd_check_determining_pair, "check a determining pair")
    sp.add_argument("algebra")
    sp.add_argument("pair")
    sp.add_argument("--axiom4", choices=(SYMMETRIC, MIXED), default=SYMMETRIC,
                    help="second sequence over G (symmetric) or over the extension (mixed)")

    sp = add("decompose", cmd_decompose, "split a representation into simplest ones")
    sp.add_argument("representation")
    sp.add_argument("--algebra")

    sp = add("check-chi", cmd_check_chi, "check a candidate projection quasi-order")
    sp.add_argument("algebra")
    sp.add_argument("relation")

    sp = add("build-projection-rep", cmd_build_projection_rep, "realise a projection quasi-order")
    sp.add_argument("algebra")
    sp.add_argument("relation")
    sp.add_argument("-o", "--output")

    sp = add("census", cmd_census, "classify all small (2,n)-semigroups")
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--order", type=int, default=2)
    sp.add_argument("--dedup", action="store_true")
    sp.add_argument("--workers", type=int, default=0)
    sp.add_argument("--records", action="store_true", help="include every record in the report")
    sp.add_argument("--oracle-len", type=int, default=4)
    return p


def _jsonable(x):
    if isinstance(x, Selector):
        return repr(x)
    return str(x)


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INPUT_ERROR if exc.code else PASS
    inputs = {k: v for k, v in vars(args).items() if k not in ("fn", "json", "quiet", "command")}
    report = RunReport(args.command, inputs)
    t0 = time.perf_counter()
    try:
        code = args.fn(args, report)
    except (UsageError, NPlaceError) as exc:
        report.verdicts["error"] = f"{type(exc).__name__}: {exc}"
        code = INPUT_ERROR
        if not args.quiet:
            print(f"error: {exc}", file=sys.stderr)
    report.timing["seconds"] = round(time.perf_counter() - t0, 6)
    report.verdicts["exit_code"] = code
    if not args.quiet:
        print(json.dumps(report.as_dict(), indent=2, default=_jsonable), file=stdout)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
