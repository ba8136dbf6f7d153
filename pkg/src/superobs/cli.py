"""Command-line front end.

Every subcommand reads JSON descriptors (file paths, or inline JSON text)
and writes canonical JSON to stdout; ``--human`` renders an indented view.
Exit status: 0 computed (or assertion held), 1 assertion failed,
2 input / parse / precondition error.
"""

import argparse
import json
import os
import sys

from .cochain import QZ_COEFF, cocycle_violation, cohomology_invariants, triviality_finite, triviality_qz
from .fermact import (
    FermionData,
    as_z2_cochain,
    find_fermions,
    gamma_tilde,
    verify_bosonic_action,
    verify_fermionic_action,
)
from .lyndon import DENSE_LIMIT, ProductSplit, alt_alt_certificate, component_class, lyndon_normalize
from .obstruct import (
    alpha_lifting_exists,
    anomaly_verdict,
    o3_fermionic,
    o4_general,
    o4_twisted_identity,
    rank_four_setup,
)
from .qzlin import QZ
from .scenarios import (
    SCENARIOS,
    action_from_json,
    run_scenario,
    scenario_inputs,
    target_from_json,
    twist_from_json,
)
from .serialize import (
    canonical_dumps,
    cochain_from_json,
    cochain_to_json,
    group_from_json,
    module_from_json,
    to_jsonable,
)

EXIT_OK, EXIT_ASSERT, EXIT_ERROR = 0, 1, 2


class InputError(ValueError):
    pass


def _load(text):
    """Parse a file path or an inline JSON string."""
    if text is None:
        raise InputError("missing input")
    if text == "-":
        raw = sys.stdin.read()
    elif os.path.exists(text):
        with open(text) as fh:
            raw = fh.read()
    else:
        raw = text
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {text[:60]!r}: {exc}") from None


def _emit(obj, args, stream=None):
    stream = stream or sys.stdout
    if getattr(args, "human", False):
        stream.write(_render(to_jsonable(obj)) + "\n")
    else:
        stream.write(canonical_dumps(obj) + "\n")


def _render(obj, indent=0):
    pad = "  " * indent
    if isinstance(obj, dict):
        if set(obj) == {"num", "den"}:
            return f"{obj['num']}/{obj['den']}" if obj["den"] != 1 else str(obj["num"])
        lines = []
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v and not (isinstance(v, dict) and set(v) == {"num", "den"}):
                if isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v):
                    lines.append(f"{pad}{k}: {v}")
                else:
                    lines.append(f"{pad}{k}:")
                    lines.append(_render(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_render(v, 0)}")
        return "\n".join(lines)
    if isinstance(obj, list):
        if all(isinstance(x, dict) and set(x) == {"num", "den"} for x in obj) and obj:
            return "[" + ", ".join(_render(x) for x in obj) + "]"
        return "\n".join(f"{pad}- " + _render(x, indent + 1).lstrip() for x in obj)
    return str(obj)


# -- subcommands ---------------------------------------------------------------------

def cmd_cohomology(args):
    G = group_from_json(_load(args.group))
    module = module_from_json(G, _load(args.module))
    invs = cohomology_invariants(G, module, args.degree)
    order = 1
    for d in invs:
        order *= d
    _emit({"degree": args.degree, "invariants": invs, "order": order}, args)
    return EXIT_OK


def _check_assert(args, trivial):
    if args.assert_trivial and not trivial:
        return EXIT_ASSERT
    if args.assert_nontrivial and trivial:
        return EXIT_ASSERT
    return EXIT_OK


def cmd_trivial(args):
    f = cochain_from_json(_load(args.cochain))
    bad = cocycle_violation(f)
    if bad is not None:
        raise InputError(f"input is not a cocycle (violation at {list(bad)})")
    verdict = triviality_qz(f) if f.coeff == QZ_COEFF else triviality_finite(f)
    if args.witness and verdict.witness is not None:
        with open(args.witness, "w") as fh:
            fh.write(canonical_dumps(cochain_to_json(verdict.witness)) + "\n")
    _emit(verdict, args)
    return _check_assert(args, verdict.is_trivial)


def cmd_lyndon(args):
    data = _load(args.input)
    f = cochain_from_json(data["cochain"])
    split = ProductSplit.from_json(f.G, data["split"])
    nf = lyndon_normalize(f, split)
    out = {"strategy": nf.strategy}
    k = args.k if args.k is not None else data.get("k")
    if k is not None:
        cc = component_class(nf, int(k))
        out["component"] = {"k": cc.k, "inner_invariants": cc.inner_invariants,
                            "status": cc.verdict.status}
    if args.alt or data.get("alt"):
        cert = alt_alt_certificate(nf)
        out["alt_certificate"] = {"nontrivial": cert["nontrivial"],
                                  "values": {"|".join(map(str, key)): v
                                             for key, v in cert["nonzero"].items()}}
    _emit(out, args)
    if "component" in out:
        return _check_assert(args, out["component"]["status"] == "trivial")
    return EXIT_OK


def cmd_fermions(args):
    data = _load(args.input)
    target = target_from_json(data)
    fermions = find_fermions(target, condition_c=args.condition_c)
    _emit({"count": len(fermions), "condition_c": args.condition_c,
           "fermions": [fd.to_json() for fd in fermions]}, args)
    return EXIT_OK


def _fermion_for(action, data):
    fam = action.target
    if "fermion" in data:
        fd = data["fermion"]
        return FermionData(fam, int(fd["f"]), [QZ.coerce(v) for v in fd["eta"]])
    if hasattr(fam, "f"):
        return FermionData(fam, fam.f, [fam.cocycle.c(a, fam.f) for a in range(fam.A.order)])
    raise InputError("no fermion given and the target has no distinguished f")


def cmd_verify_action(args):
    data = _load(args.input)
    action = action_from_json(data)
    rep = verify_bosonic_action(action)
    out = {"bosonic": rep.to_json()}
    ok = rep.valid
    if rep.valid:
        fermion = _fermion_for(action, data)
        alpha = as_z2_cochain(action.G, _alpha(action.G, data.get("alpha")))
        fv = verify_fermionic_action(action, fermion, alpha)
        out["fermionic"] = fv.to_json()
        ok = fv.valid
    out["valid"] = ok
    _emit(out, args)
    return EXIT_ASSERT if args.assert_valid and not ok else EXIT_OK


def _alpha(G, table):
    if table is None:
        return None
    if isinstance(table, dict) and "degree" in table:
        return cochain_from_json(table, G)
    vals = {tuple(int(t) for t in k.split("|")): int(v) for k, v in table.items()}
    return lambda g, h: vals.get((g, h), 0)


def cmd_o3(args):
    data = _load(args.input)
    G = group_from_json(data["group"])
    setup = rank_four_setup(data["variant"], G, data["rho"], QZ.coerce(data.get("k", 0))
                            if "k" in data else None)
    theta = (as_z2_cochain(G, _alpha(G, data["theta"])) if "theta" in data
             else gamma_tilde(setup.action, setup.fermion))
    alpha = as_z2_cochain(G, _alpha(G, data.get("alpha")))
    rep = o3_fermionic(theta, alpha, setup.r)
    rep.scenario = data
    lift = alpha_lifting_exists(theta, alpha, setup.r)
    out = {"o3": rep.to_json(), "alpha_lifting": lift.to_json(),
           "criteria_agree": rep.is_trivial == lift.exists}
    _emit(out, args)
    return _check_assert(args, rep.is_trivial)


def cmd_o4(args):
    data = _load(args.input)
    G = group_from_json(data["group"])
    if "action" in data:
        action = action_from_json(data["action"])
        mu = twist_from_json(G, action.A, data["twist"], action.star)
        o4 = o4_general(action, mu, literal=bool(data.get("literal", False)),
                        dense_cap=args.dense_cap)
    else:
        ac = target_from_json(data["target"])
        ac = getattr(ac, "cocycle", ac)
        mu = twist_from_json(G, ac.A, data["twist"])
        o4 = o4_twisted_identity(ac, G, mu, dense_cap=args.dense_cap)
    split = ProductSplit.from_json(G, data["split"]) if "split" in data else None
    rep = anomaly_verdict(o4, args.strategy, split=split, k=args.k, dense_cap=args.dense_cap)
    rep.scenario = data
    _emit(rep.to_json(include_obstruction=args.strategy == "dense"), args)
    return _check_assert(args, rep.is_trivial)


def cmd_paper(args):
    if args.input:
        datas = [_load(args.input)]
    else:
        names = SCENARIOS if args.scenario == "all" else [args.scenario]
        datas = []
        for name in names:
            params = {}
            if name == "odd_m":
                params = {"m": args.m, "n": args.n}
            elif name == "z2n":
                params = {"n": args.n if args.scenario == "z2n" else 2}
            datas.append(scenario_inputs(name, **params))
    if args.emit_inputs:
        _emit(datas[0] if len(datas) == 1 else {"scenarios": datas}, args)
        return EXIT_OK
    reports = [run_scenario(d, dense_cap=args.dense_cap) for d in datas]
    _emit(reports[0] if len(reports) == 1 else {"reports": reports}, args)
    if args.assert_expected and not all(r["passed"] for r in reports):
        return EXIT_ASSERT
    return EXIT_OK


# -- parser ----------------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="superobs", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--human", action="store_true", help="render an indented view")
    common.add_argument("--dense-cap", type=int, default=DENSE_LIMIT,
                        help="refuse dense O4 decisions above (|G|-1)^4 > cap")
    asserts = argparse.ArgumentParser(add_help=False)
    g = asserts.add_mutually_exclusive_group()
    g.add_argument("--assert-trivial", action="store_true")
    g.add_argument("--assert-nontrivial", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("cohomology", parents=[common], help="invariant factors of H^n(G, M)")
    s.add_argument("--group", required=True, help='group JSON, e.g. \'{"invariants":[2]}\'')
    s.add_argument("--module", required=True, help='module JSON, e.g. \'{"invariants":[2]}\'')
    s.add_argument("--degree", type=int, required=True)
    s.set_defaults(func=cmd_cohomology)

    s = sub.add_parser("trivial", parents=[common, asserts], help="decide a cocycle's class")
    s.add_argument("cochain", help="cochain JSON file")
    s.add_argument("--witness", help="write the witness cochain here when trivial")
    s.set_defaults(func=cmd_trivial)

    s = sub.add_parser("lyndon", parents=[common, asserts], help="normalize along A x B")
    s.add_argument("input", help='{"cochain": ..., "split": {"a_coords": [...]}}')
    s.add_argument("--k", type=int)
    s.add_argument("--alt", action="store_true", help="evaluate the double alternation")
    s.set_defaults(func=cmd_lyndon)

    s = sub.add_parser("fermions", parents=[common], help="enumerate fermions")
    s.add_argument("input", help='target JSON: {"variant","k"} or {"group","omega","c"}')
    s.add_argument("--condition-c", choices=["literal", "alternative"], default="literal")
    s.set_defaults(func=cmd_fermions)

    s = sub.add_parser("verify-action", parents=[common], help="bosonic + fermionic checks")
    s.add_argument("input", help="action JSON (optionally with alpha and fermion)")
    s.add_argument("--assert-valid", action="store_true")
    s.set_defaults(func=cmd_verify_action)

    s = sub.add_parser("o3", parents=[common, asserts], help="fermionic lifting obstruction")
    s.add_argument("input", help='{"group","variant","k","rho","alpha"[,"theta"]}')
    s.set_defaults(func=cmd_o3)

    s = sub.add_parser("o4", parents=[common, asserts], help="O4 obstruction and verdict")
    s.add_argument("input", help='{"group","target","twist"[,"split","action"]}')
    s.add_argument("--strategy", choices=["dense", "filtration", "alt_certificate"],
                   default="dense")
    s.add_argument("--k", type=int, default=1)
    s.set_defaults(func=cmd_o4)

    s = sub.add_parser("paper", parents=[common], help="run built-in scenarios")
    s.add_argument("scenario", choices=list(SCENARIOS) + ["all"])
    s.add_argument("--m", type=int, default=3)
    s.add_argument("--n", type=int, default=2)
    s.add_argument("--emit-inputs", action="store_true", help="print the scenario descriptor")
    s.add_argument("--input", help="run a (modified) descriptor instead of the built-in one")
    s.add_argument("--assert-expected", action="store_true")
    s.set_defaults(func=cmd_paper)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (ValueError, KeyError, TypeError, OSError) as exc:
        sys.stderr.write(f"superobs {args.command}: error: {exc}\n")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
