"""Command-line front end.

Every command reads JSON object files (see ``grcat.serialize``), prints a
deterministic human-readable report, or with ``--json`` a canonical JSON
document. Exit codes: 0 success, 1 validation or mathematical failure,
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Callable

from . import cohomology as coh
from .abelian import FiniteAbelianGroup
from .catalog import identify, load_catalog
from .cochains import Cochain, cocycle_check
from .errors import GrcatError, ParseError
from .extension import AbstractKernel, build_extension, kernel_obstruction, kernel_search, verify_strictification
from .functors import (FunctorData, automorphisms, check_monoidal, classify, congruent, obstruction, realizable,
                       validate_pair)
from .groups import FiniteGroup
from .grtype import GrType, validate_gr_type
from .modules import PiModule
from .report import Report
from .serialize import Workspace, cochain_values, to_data
from .strict import aut_gr_category, reduce_strict, reduced_type_of_group, validate_strict


class Outcome:
    """What a command produced: text lines, a JSON payload and an exit code."""

    def __init__(self):
        self.lines: list[str] = []
        self.data: dict = {}
        self.code = 0

    def say(self, line: str = ""):
        self.lines.append(line)

    def fail(self):
        self.code = 1


def _fmt_cochain(c: Cochain, indent: str = "    ") -> list[str]:
    items = list(c.items())
    if not items:
        return [f"{indent}0"]
    return [f"{indent}({','.join(map(str, a))}) -> {list(v)}" for a, v in items]


def _fmt_group(h: coh.CohomologyGroup) -> str:
    if not h.invariant_factors:
        return "0"
    return " + ".join(f"Z/{d}" for d in h.invariant_factors)


def _report_out(out: Outcome, rep: Report):
    out.lines.extend(rep.render().splitlines())
    out.data["report"] = rep.to_json()
    if not rep.ok:
        out.fail()


# commands -------------------------------------------------------------------------

def cmd_validate(ws: Workspace, args, out: Outcome):
    obj = ws.load(args.path)
    kind = type(obj).__name__
    out.data["kind"] = kind
    if isinstance(obj, FiniteGroup):
        out.say(f"group of order {obj.order}: valid")
    elif isinstance(obj, FiniteAbelianGroup):
        out.say(f"abelian group {obj}: valid")
    elif isinstance(obj, PiModule):
        out.say(f"module over a group of order {obj.group.order} with carrier {obj.carrier}: valid")
    elif isinstance(obj, Cochain):
        rep = Report(f"degree-{obj.degree} cochain")
        rep.add("normalized", obj.normalization_failures())
        _report_out(out, rep)
        if obj.degree <= 3:
            bad, _ = cocycle_check(obj, seed=args.seed)
            out.say(f"cocycle: {'yes' if not bad else 'no'}")
            out.data["is_cocycle"] = not bad
    elif isinstance(obj, GrType):
        _report_out(out, validate_gr_type(obj))
    elif isinstance(obj, FunctorData):
        rep = validate_pair(obj.phi, obj.f, obj.source, obj.target)
        if rep.ok and obj.g is not None:
            for c in check_monoidal(obj).checks:
                rep.checks.append(c)
        _report_out(out, rep)
    elif isinstance(obj, AbstractKernel):
        out.say(f"abstract kernel: |Pi| = {obj.pi.order}, |G| = {obj.g.order}, psi valid")
    out.data["valid"] = out.code == 0


def cmd_cohomology(ws: Workspace, args, out: Outcome):
    m = ws.load(args.module, "module")
    n = args.degree
    methods = ["snf", "brute_force"] if args.method == "both" else [args.method]
    groups = {meth: coh.cohomology_group(m, n, meth, bound=args.bound) for meth in methods}
    h = groups[methods[0]]
    if len(groups) == 2:
        agree = groups["snf"].invariant_factors == groups["brute_force"].invariant_factors
        out.data["methods_agree"] = agree
        if not agree:
            out.say(f"methods disagree: snf {_fmt_group(groups['snf'])}, "
                    f"brute_force {_fmt_group(groups['brute_force'])}")
            out.fail()
            return
    out.say(f"H^{n} ≅ {_fmt_group(h)}")
    out.data.update({"degree": n, "invariant_factors": list(h.invariant_factors), "order": h.order,
                     "methods": methods,
                     "representatives": [cochain_values(r) for r in h.representatives]})
    for i, rep in enumerate(h.representatives):
        out.say(f"  generator {i} (order {h.invariant_factors[i]}):")
        out.lines.extend(_fmt_cochain(rep))


def cmd_obstruction(ws: Workspace, args, out: Outcome):
    F = ws.load(args.functor, "functor")
    k = obstruction(F)
    coords = coh.class_coordinates(k)
    g = realizable(F)
    zero = not any(coords)
    out.say("obstruction cochain k:")
    out.lines.extend(_fmt_cochain(k))
    out.say(f"obstruction class: {0 if zero else list(coords)}; realizable: {'yes' if g is not None else 'no'}")
    if g is not None:
        out.say("monoidal structure g with dg = k:")
        out.lines.extend(_fmt_cochain(g))
    out.data.update({"obstruction": cochain_values(k), "class": list(coords), "class_zero": zero,
                     "realizable": g is not None, "g": cochain_values(g) if g is not None else None})


def cmd_classify(ws: Workspace, args, out: Outcome):
    F = ws.load(args.functor, "functor")
    reps = classify(F.source, F.target, F.phi, F.f)
    if not reps:
        out.say("0 congruence classes (obstruction class is nonzero)")
    else:
        out.say(f"{len(reps)} congruence class{'es' if len(reps) != 1 else ''}")
    for i, R in enumerate(reps):
        out.say(f"  class {i}: g =")
        out.lines.extend(_fmt_cochain(R.g, "      "))
    out.data.update({"count": len(reps), "representatives": [cochain_values(R.g) for R in reps]})


def cmd_congruent(ws: Workspace, args, out: Outcome):
    F1 = ws.load(args.first, "functor")
    F2 = ws.load(args.second, "functor")
    monoidal = []
    for label, F in (("first", F1), ("second", F2)):
        # a functor without g stands for its first realizing structure
        F = F if F.g is not None else F.with_g(realizable(F))
        if F.g is None or not check_monoidal(F).ok:
            out.say(f"{label} functor has no valid monoidal structure")
            out.fail()
            return
        monoidal.append(F)
    F1, F2 = monoidal
    alpha = congruent(F1, F2)
    out.say(f"congruent: {'yes' if alpha is not None else 'no'}")
    if alpha is not None:
        out.say("natural transformation alpha with g - g' = d alpha:")
        out.lines.extend(_fmt_cochain(alpha))
    out.data.update({"congruent": alpha is not None, "alpha": cochain_values(alpha) if alpha is not None else None})


def cmd_automorphisms(ws: Workspace, args, out: Outcome):
    F = ws.load(args.functor, "functor")
    auts = automorphisms(F)
    out.say(f"{len(auts)} monoidal automorphisms (normalized 1-cocycles)")
    for i, a in enumerate(auts):
        out.say(f"  alpha {i}:")
        out.lines.extend(_fmt_cochain(a, "      "))
    out.data.update({"count": len(auts), "automorphisms": [cochain_values(a) for a in auts]})


def _describe_type(T: GrType, out: Outcome, label: str):
    h3 = coh.class_coordinates(T.xi)
    out.say(f"{label}: |Pi| = {T.pi.order}, A = {T.carrier}, "
            f"action {'trivial' if T.module.is_trivial_action else 'nontrivial'}, "
            f"xi class {0 if not any(h3) else list(h3)}")


def cmd_reduce(ws: Workspace, args, out: Outcome):
    G = ws.load(args.group, "group")
    T = reduced_type_of_group(G)
    _describe_type(T, out, "reduced type (Out(G), Z(G), xi')")
    out.data["reduced_type"] = to_data(T)
    red = reduce_strict(aut_gr_category(G), random.Random(args.seed) if args.random_stick else None)
    S = red.gr_type
    same = S.module.same_structure(T.module)
    witness = coh.cohomologous(S.xi.over(T.module), T.xi) if same else None
    out.say(f"reduction of A_G through a stick: same (Pi, A, action): {'yes' if same else 'no'}; "
            f"xi cohomologous: {'yes' if witness is not None else 'no'}")
    if witness is not None:
        out.say("coboundary witness b with db = xi_stick - xi':")
        out.lines.extend(_fmt_cochain(witness))
    else:
        out.fail()
    out.data.update({"stick_agrees": witness is not None,
                     "witness": cochain_values(witness) if witness is not None else None})


def cmd_aut_category(ws: Workspace, args, out: Outcome):
    G = ws.load(args.group, "group")
    C = aut_gr_category(G)
    listing = C.listing()
    out.say(f"A_G: {listing['object_count']} objects, {listing['arrow_count']} arrows")
    rep = validate_strict(C, seed=args.seed)
    _report_out(out, rep)
    out.data["listing"] = listing


def cmd_strictify(ws: Workspace, args, out: Outcome):
    K = ws.load(args.kernel, "kernel")
    rep = verify_strictification(K, seed=args.seed)
    good, total = rep.tally("strictification")
    out.say(f"strictification checks: {'PASS' if good == total else 'FAIL'} ({good}/{total})")
    _report_out(out, rep)


def cmd_extension(ws: Workspace, args, out: Outcome):
    K = ws.load(args.kernel, "kernel")
    k = kernel_obstruction(K)
    coords = coh.class_coordinates(k)
    if any(coords):
        out.say(f"kernel obstruction class {list(coords)} is nonzero: no extension")
        out.data.update({"obstruction_class": list(coords), "extension": None})
        out.fail()
        return
    E = build_extension(K)
    names = identify(E) if E.order <= 16 else []
    out.say(f"extension of order {E.order}" + (f", isomorphic to {', '.join(names)}" if names else ""))
    out.data.update({"obstruction_class": list(coords), "extension": to_data(E), "identified_as": names})


def cmd_kernel_search(ws: Workspace, args, out: Outcome):
    T = ws.load(args.grtype, "grtype")
    res = kernel_search(T, load_catalog(args.max_order))
    if not res.realizations:
        out.say(f"no realization in catalog (groups of order <= {args.max_order})")
    else:
        out.say(f"{len(res.realizations)} realization{'s' if len(res.realizations) != 1 else ''}:")
    for r in res.realizations:
        out.say(f"  G = {r.kernel.name} (order {r.kernel.g.order}), psi = {list(r.kernel.psi.image)}")
    for name, why in res.skipped:
        out.say(f"  skipped {name}: {why}")
    out.data.update({"realizations": [{"g": r.kernel.name, "order": r.kernel.g.order,
                                       "psi": list(r.kernel.psi.image),
                                       "theta": [list(v) for v in r.theta.images]} for r in res.realizations],
                     "skipped": [list(s) for s in res.skipped]})


COMMANDS: dict[str, Callable] = {
    "validate": cmd_validate,
    "cohomology": cmd_cohomology,
    "obstruction": cmd_obstruction,
    "classify": cmd_classify,
    "congruent": cmd_congruent,
    "automorphisms": cmd_automorphisms,
    "reduce": cmd_reduce,
    "aut-category": cmd_aut_category,
    "strictify": cmd_strictify,
    "extension": cmd_extension,
    "kernel-search": cmd_kernel_search,
}


def _global_flags(suppress: bool) -> argparse.ArgumentParser:
    # subcommands repeat the flags with suppressed defaults, so a flag given
    # before the command name is not reset by the subparser
    def default(v):
        return argparse.SUPPRESS if suppress else v

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=default(False),
                        help="print a machine-readable JSON report")
    common.add_argument("--seed", type=int, default=default(0), help="seed for randomized checks")
    common.add_argument("--bound", type=int, default=default(coh.DEFAULT_BOUND), help="brute-force enumeration cutoff")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags(suppress=True)
    p = argparse.ArgumentParser(prog="grcat", parents=[_global_flags(suppress=False)],
                                description="Obstruction theory for Gr-functors on small finite groups.")
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    s = sub.add_parser("validate", parents=[common], help="load and validate any object file")
    s.add_argument("path")
    s = sub.add_parser("cohomology", parents=[common], help="H^n of a module")
    s.add_argument("module")
    s.add_argument("degree", type=int, choices=range(4))
    s.add_argument("--method", choices=["snf", "brute_force", "both"], default="snf")
    for name, helptext in (("obstruction", "obstruction class of a functor of type (phi, f)"),
                           ("classify", "congruence classes of monoidal structures"),
                           ("automorphisms", "monoidal automorphisms of a functor")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("functor")
    s = sub.add_parser("congruent", parents=[common], help="decide congruence of two monoidal functors")
    s.add_argument("first")
    s.add_argument("second")
    s = sub.add_parser("reduce", parents=[common], help="reduced type of A_G, directly and through a stick")
    s.add_argument("group")
    s.add_argument("--random-stick", action="store_true", help="choose the stick at random (uses --seed)")
    s = sub.add_parser("aut-category", parents=[common], help="build and check A_G")
    s.add_argument("group")
    s = sub.add_parser("strictify", parents=[common], help="strictify a kernel and verify the reduction")
    s.add_argument("kernel")
    s = sub.add_parser("extension", parents=[common], help="crossed-product extension of a kernel")
    s.add_argument("kernel")
    s = sub.add_parser("kernel-search", parents=[common], help="kernels in the catalog realizing a type")
    s.add_argument("grtype")
    s.add_argument("--max-order", type=int, default=16)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out = Outcome()
    try:
        COMMANDS[args.command](Workspace(), args, out)
    except ParseError as exc:
        out.lines = [f"error: {exc}"]
        out.data = {"error": type(exc).__name__, "message": str(exc)}
        out.code = 1
    except GrcatError as exc:
        out.lines.append(f"error: {type(exc).__name__}: {exc}")
        out.data.update({"error": type(exc).__name__, "message": str(exc)})
        out.code = 1
    if args.json:
        payload = {"command": args.command, "exit_code": out.code, **out.data}
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write("\n".join(out.lines) + "\n")
    return out.code


if __name__ == "__main__":
    sys.exit(main())
