"""Command-line entry point: JSON in, JSON report out.

Every subcommand is a thin binding over the library; reports are
deterministic (sorted keys) and carry a digest of their inputs.  Exit codes:
0 ok, 2 validation error, 3 not-supported.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from fractions import Fraction
from typing import Optional

from . import exactnum, groups, lparams, reps, springer, tga
from .examples_runner import run_examples
from .springer import NotSupportedError


def _digest(payload) -> str:
    return hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()[:16]


def _report(command: str, inputs, result, pretty: bool) -> str:
    doc = {
        "command": command,
        "inputs_digest": _digest(inputs),
        "exact": True,
        "result": result,
    }
    if pretty:
        return json.dumps(doc, indent=2, sort_keys=True)
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def _load_json(path: Optional[str]):
    if path is None or path == "-":
        return json.load(sys.stdin)
    with open(path) as fh:
        return json.load(fh)


class CliError(Exception):
    exit_code = 2


# -- subcommand implementations -------------------------------------------------


def cmd_group(args) -> tuple:
    obj = _load_json(args.infile)
    G = groups.group_from_json(obj)
    classes = G.conjugacy_classes()
    result = {
        "order": G.order,
        "abelian": G.is_abelian(),
        "exponent": G.exponent(),
        "center_order": G.center().order,
        "class_sizes": [len(c) for c in classes],
    }
    if args.table:
        result["table"] = G.table.tolist()
    return obj, result


def cmd_reps(args) -> tuple:
    obj = _load_json(args.infile)
    G = groups.group_from_json(obj)
    table = reps.character_table(G)
    result = {
        "degrees": [int(c.degree) for c in table],
        "classes": [list(c) for c in G.conjugacy_classes()],
        "characters": [[v.to_text() for v in c.values] for c in table],
    }
    return obj, result


def cmd_tga(args) -> tuple:
    obj = _load_json(args.infile)
    G = groups.group_from_json(obj["group"])
    nat = tga.cocycle_from_json(G, obj["cocycle"])
    data = tga.twisted_character_data(G, nat)
    result = {
        "m": nat.m,
        "trivial_class": tga.is_trivial_class(nat),
        "irreducibles": [{"dim": d, "traces": [t.to_text() for t in tr]}
                         for d, tr in data],
        "dimension_sum_check": sum(d * d for d, _ in data) == G.order,
    }
    return obj, result


def cmd_clifford(args) -> tuple:
    from .clifford import clifford_bijection
    gobj = _load_json(args.group)
    nobj = _load_json(args.normal)
    G = groups.group_from_json(gobj)
    N = G.subgroup(nobj["elements"])
    nat = None
    cobj = None
    if args.cocycle:
        cobj = _load_json(args.cocycle)
        GQ, _ = groups.quotient(G, N)
        nat = tga.cocycle_from_json(GQ, cobj)
    pairs, target = clifford_bijection(G, N, nat)
    result = {
        "orbits": sorted({(p.pi_character_degree, p.orbit_size) for p in pairs}),
        "pairs": [{
            "pi_degree": p.pi_character_degree,
            "orbit_size": p.orbit_size,
            "kappa_class_trivial": p.kappa_class_trivial,
            "tau_dim": p.tau_dimension,
            "module_dim": p.module_dimension,
        } for p in pairs],
        "irreducible_count": len(target),
        "dimension_check": sum(p.module_dimension ** 2 for p in pairs) == G.order,
    }
    result["orbits"] = [list(t) for t in result["orbits"]]
    return {"group": gobj, "normal": nobj, "cocycle": cobj}, result


def cmd_extquot(args) -> tuple:
    from .extquot import ActionDatum, build_extended_quotient
    obj = _load_json(args.infile)
    G = groups.group_from_json(obj["group"])
    table = obj["action"]  # action[gamma][x] = gamma . x

    def action(g, x):
        return table[g][x]

    labels = obj.get("labels", list(range(len(table[0]))))
    cocycles = obj.get("cocycles", {})

    def factory(x, sx):
        key = str(x)
        if key in cocycles:
            return tga.cocycle_from_json(sx, cocycles[key])
        return tga.trivial_cocycle(sx)

    datum = ActionDatum(labels, G, action, cocycle_factory=factory if cocycles else None)
    eq = build_extended_quotient(datum)
    result = {
        "size": eq.size(),
        "points": [{
            "x": pt.x_label, "dim": pt.dimension, "orbit_size": pt.orbit_size,
        } for pt in eq.points],
        "fiber_sizes": {str(k): v for k, v in eq.fiber_sizes().items()},
    }
    return obj, result


def cmd_springer(args) -> tuple:
    if args.springer_cmd == "census":
        type_map = {"A": "GL", "C": "Sp", "B": "SO_odd"}
        gtype = type_map.get(args.type, args.type)
        N = args.rank if gtype == "GL" else (
            2 * args.rank if gtype == "Sp" else 2 * args.rank + 1)
        rep = springer.census(gtype, N)
        result = {
            "type": gtype, "N": N, "lhs": rep.lhs, "rhs": rep.rhs,
            "balanced": rep.balanced,
            "class_terms": [{"partition": list(p), "count": c}
                            for p, c in rep.lhs_detail],
            "support_terms": [{"staircase_depth": d, "k": k, "count": c}
                              for d, k, c in rep.rhs_detail],
        }
        return {"type": args.type, "rank": args.rank}, result
    if args.springer_cmd == "cuspidal":
        type_map = {"A": "GL", "C": "Sp", "B": "SO_odd", "D": "SO_even"}
        gtype = type_map.get(args.type, args.type)
        pairs = springer.cuspidal_pairs(gtype, args.rank,
                                        modulus=args.modulus)
        result = {
            "count": len(pairs),
            "pairs": [{"partition": list(p.partition),
                       "signs": [list(s) for s in p.signs],
                       "character_order": p.character_order} for p in pairs],
        }
        return {"type": args.type, "rank": args.rank}, result
    if args.springer_cmd == "cocycle":
        obj = _load_json(args.section)
        G = groups.group_from_json(obj["ambient"])
        N = G.subgroup(obj["neutral"])
        sub, _ = N.as_group()
        eps_values = obj["epsilon"]
        eps = None
        for rho in reps.irreps_matrices(sub):
            vals = [rho.character().value_at(i).to_text() for i in range(sub.order)]
            if vals == eps_values:
                eps = rho
                break
        if eps is None:
            raise CliError("no irreducible of the neutral subgroup matches 'epsilon'")
        section = {int(k): int(v) for k, v in obj["section"].items()}
        datum = springer.SectionDatum(G, N, eps, section)
        nat = springer.cocycle_from_section(datum)
        ver = springer.verify_intertwiner_vs_section(datum)
        result = {
            "m": nat.m,
            "cocycle": nat.to_json(),
            "trivial_class": tga.is_trivial_class(nat),
            "kappa_matches_inverse": ver.cohomologous_ok,
        }
        return obj, result
    raise CliError(f"unknown springer subcommand {args.springer_cmd!r}")


def classify_parameter(obj: dict, with_support: bool) -> dict:
    phi, rho = lparams.parameter_from_json(obj)
    result: dict = {
        "group": phi.gd.to_json(),
        "valid": True,
        "discrete": lparams.is_discrete(phi),
        "bounded": lparams.is_bounded(phi),
        "s_group_order": lparams.s_group(phi).s_group.order,
    }
    if rho is not None:
        result["cuspidal"] = lparams.is_cuspidal(phi, rho)
        result["central_character"] = rho.central_character().to_json()
        if with_support:
            try:
                cd = lparams.cuspidal_support(phi, rho)
                result["cuspidal_support"] = {
                    "gl_factors": [dict(f.label.to_json(), a=f.a)
                                   for f in cd.gl_factors],
                    "tail": [dict(t.label.to_json(), a=t.a, sign=t.sign)
                             for t in cd.tail],
                    "chunk_order": cd.chunk_order,
                }
                ic = lparams.inertial_class(cd)
                result["component_symmetry_order"] = ic.symmetry.order
            except NotSupportedError as err:
                result["cuspidal_support"] = {"not_supported": str(err)}
    else:
        result["cuspidal"] = False
    return result


def cmd_examples(args) -> tuple:
    report = run_examples(args.case)
    return {"case": args.case}, report


SCHEMAS = {
    "group": {"kind": "perm|monomial|table", "generators": "...", "table": "..."},
    "cocycle": {"m": "modulus", "values": [["i", "j", "exponent"]]},
    "lparam": {
        "group": {"type": "GLinner|Sp|SOodd|SOeven|U", "n": "int", "d": "int?"},
        "blocks": [{"core": "id", "dim": "int", "duality":
                    "orth|symp|conj-orth|conj-symp|none",
                    "twist": {"s": "p/q", "zeta": ["m", "k"]},
                    "a": "int", "mult": "int"}],
        "enhancement": {"signs": {"z:<core>:<a>": "+-1"}, "cyc": ["m", "k"]},
    },
    "extquot": {"group": "...", "labels": ["..."], "action": "[gamma][x] -> x",
                "cocycles": {"x": "cocycle"}},
    "section": {"ambient": "group", "neutral": ["indices"],
                "epsilon": ["character values"], "section": {"coset": "element"}},
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="cuspex",
        description="Exact twisted-group-algebra / cuspidal-parameter calculator")
    ap.add_argument("--pretty", action="store_true", help="indented JSON output")
    ap.add_argument("--schema", action="store_true",
                    help="print the JSON schemas and exit")
    sub = ap.add_subparsers(dest="cmd")

    g = sub.add_parser("group", help="analyze a finite group")
    g.add_argument("--in", dest="infile", default=None)
    g.add_argument("--table", action="store_true", help="include the full table")

    r = sub.add_parser("reps", help="character table of a finite group")
    r.add_argument("--in", dest="infile", default=None)

    t = sub.add_parser("tga", help="twisted group algebra irreducibles")
    t.add_argument("--in", dest="infile", default=None)

    c = sub.add_parser("clifford", help="orbit/cocycle/matching analysis")
    c.add_argument("--group", required=True)
    c.add_argument("--normal", required=True)
    c.add_argument("--cocycle", default=None)

    e = sub.add_parser("extquot", help="build a twisted extended quotient")
    e.add_argument("--in", dest="infile", default=None)

    s = sub.add_parser("springer", help="classical-group combinatorics")
    ssub = s.add_subparsers(dest="springer_cmd")
    s1 = ssub.add_parser("census")
    s1.add_argument("--type", required=True, help="A|B|C or GL|SO_odd|Sp")
    s1.add_argument("--rank", type=int, required=True)
    s2 = ssub.add_parser("cuspidal")
    s2.add_argument("--type", required=True)
    s2.add_argument("--rank", type=int, required=True)
    s2.add_argument("--modulus", type=int, default=None)
    s3 = ssub.add_parser("cocycle")
    s3.add_argument("--section", required=True)

    l = sub.add_parser("lparam", help="classify an enhanced L-parameter")
    lsub = l.add_subparsers(dest="lparam_cmd")
    l1 = lsub.add_parser("classify")
    l1.add_argument("--in", dest="infile", default=None)
    l1.add_argument("--support", action="store_true")
    l1.add_argument("--jobs", type=int, default=1,
                    help="parallel batch classification (list input)")

    x = sub.add_parser("examples", help="run the built-in example suite")
    x.add_argument("--case", default="all",
                   help="A | B | cusp3 | unitary | census | all")
    return ap


DISPATCH = {
    "group": cmd_group,
    "reps": cmd_reps,
    "tga": cmd_tga,
    "clifford": cmd_clifford,
    "extquot": cmd_extquot,
    "springer": cmd_springer,
    "examples": cmd_examples,
}


def main(argv: Optional[list[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.schema:
        print(json.dumps(SCHEMAS, indent=2, sort_keys=True))
        return 0
    if not args.cmd:
        ap.print_help()
        return 2
    try:
        if args.cmd == "lparam":
            if args.lparam_cmd != "classify":
                raise CliError("lparam supports the 'classify' subcommand")
            obj = _load_json(args.infile)
            if isinstance(obj, list):
                results = _classify_batch(obj, args.support, args.jobs)
            else:
                results = classify_parameter(obj, args.support)
            print(_report("lparam classify", obj, results, args.pretty))
            return 0
        inputs, result = DISPATCH[args.cmd](args)
        command = args.cmd
        if args.cmd == "springer":
            command = f"springer {args.springer_cmd}"
        elif args.cmd == "examples":
            command = f"examples {args.case}"
        print(_report(command, inputs, result, args.pretty))
        if args.cmd == "examples" and not result.get("pass", True):
            return 1
        return 0
    except NotSupportedError as err:
        print(json.dumps({"error": "not_supported", "message": str(err)},
                         sort_keys=True), file=sys.stderr)
        return 3
    except (ValueError, KeyError, OSError) as err:
        print(json.dumps({"error": "validation", "message": str(err)},
                         sort_keys=True), file=sys.stderr)
        return 2


def _classify_batch(objs: list, with_support: bool, jobs: int) -> list:
    """Batch classification; output order always matches input order."""
    if jobs <= 1:
        return [classify_parameter(o, with_support) for o in objs]
    from concurrent.futures import ThreadPoolExecutor
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(classify_parameter, o, with_support) for o in objs]
        return [f.result() for f in futures]


if __name__ == "__main__":
    sys.exit(main())
