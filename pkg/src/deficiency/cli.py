"""Command-line interface: ``deficiency <subcommand> ...``."""
import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .alexander import cover_module_presentation, fox_module
from .certificates import (hw_family_violation, hw_inequality,
                           obstruction_certificate, paper_pipeline, replay)
from .cosets import kernel_coset_table, todd_coxeter
from .errors import DeficiencyError
from .laurent import rank_over_fraction_field
from .presentation import (abelian_invariants, abelianization_matrix,
                           deficiency_of_presentation, format_abelian_group,
                           format_presentation, is_perfect, parse_presentation,
                           parse_word)
from .presets import PRESETS, get_preset
from .rewriting import (finite_index_deficiency_bound, schreier_transversal,
                        subgroup_presentation)
from .smith import invariant_factors
from .structured import (StructuredModule, abelian_group_description,
                         classify_structured, ext2_structured, fiber_dimension,
                         format_module,
                         ideal_equal, min_generators_lower_bound,
                         module_deficiency_bounds, module_rank, mv_assembly,
                         parse_module)

DEFAULT_GRID = (0, 120, 481, 1000, 10000)


class UsageError(DeficiencyError):
    pass


# ---------------------------------------------------------------------------
# argument helpers
# ---------------------------------------------------------------------------

def _int_list(text):
    return [int(x) for x in text.split(",") if x.strip()]


def _points(text):
    out = []
    for item in text.split(","):
        p, _, c = item.partition(":")
        if not _:
            raise argparse.ArgumentTypeError(f"expected p:c, got {item!r}")
        out.append((int(p), int(c)))
    return out


def _load(args):
    """Presentation and preset (or None) from FILE / --preset."""
    if bool(args.file) == bool(args.preset):
        raise UsageError("give exactly one of FILE or --preset")
    if args.preset:
        preset = get_preset(args.preset)
        return preset.presentation, preset
    return parse_presentation(Path(args.file).read_text(encoding="utf-8")), None


def _subgroup_table(args, P, preset):
    if args.kernel:
        if preset is None or not preset.has_kernel:
            raise UsageError("--kernel needs a preset with a bundled homomorphism (DxD)")
        return kernel_coset_table(P, preset.kernel_images()), []
    words = [parse_word(w, P.generators) for w in (args.subgroup or "").split(",")
             if w.strip()]
    return todd_coxeter(P, words, args.max_cosets), words


def _emit(args, data, lines):
    if args.json:
        print(json.dumps(data, sort_keys=True))
    else:
        print("\n".join(lines))


def _abelian_dict(P):
    free, torsion = abelian_invariants(P)
    return {"free_rank": free, "torsion": torsion,
            "group": format_abelian_group(free, torsion)}


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_parse(args):
    P, _ = _load(args)
    data = {"presentation": format_presentation(P), "generators": list(P.generators),
            "relators": [P.format_word(r) for r in P.relators],
            "deficiency": deficiency_of_presentation(P)}
    _emit(args, data, [data["presentation"],
                       f"generators: {P.ngens}  relators: {P.nrels}  "
                       f"deficiency: {data['deficiency']}"])
    return 0


def cmd_abelianize(args):
    P, _ = _load(args)
    M = abelianization_matrix(P)
    ab = _abelian_dict(P)
    data = {"matrix": [[int(x) for x in row] for row in M],
            "invariant_factors": invariant_factors(M) if M.size else [],
            "perfect": is_perfect(P), **ab}
    _emit(args, data, [f"abelianization: {ab['group']}",
                       f"invariant factors: {data['invariant_factors']}",
                       f"perfect: {data['perfect']}"])
    return 0


def cmd_cosets(args):
    P, preset = _load(args)
    T, _ = _subgroup_table(args, P, preset)
    lines = [f"index: {T.index}"]
    if not args.quiet:
        lines += [f"{c}: " + " ".join(map(str, row)) for c, row in enumerate(T.table.tolist())]
    _emit(args, T.to_dict(), lines)
    return 0


def cmd_subgroup(args):
    P, preset = _load(args)
    T, _ = _subgroup_table(args, P, preset)
    H = subgroup_presentation(P, T, schreier_transversal(T, args.transversal),
                              simplify=args.simplify)
    bound = finite_index_deficiency_bound(deficiency_of_presentation(P), T.index)
    ab = _abelian_dict(H)
    data = {"index": T.index, "generators": H.ngens, "relators": H.nrels,
            "deficiency": deficiency_of_presentation(H), "bound": bound,
            "abelianization": ab}
    if args.full:
        data["presentation"] = format_presentation(H)
    lines = [f"index: {T.index}",
             f"subgroup presentation: {H.ngens} generators, {H.nrels} relators",
             f"deficiency: {data['deficiency']}  (bound n*def(G) - n + 1 = {bound})",
             f"abelianization: {ab['group']}"]
    if args.full:
        lines.append(data["presentation"])
    _emit(args, data, lines)
    return 0


def cmd_alexander(args):
    P, preset = _load(args)
    if args.phi is not None:
        phi = _int_list(args.phi)
    elif preset is not None and preset.phi is not None:
        phi = list(preset.phi)
    else:
        raise UsageError("--phi is required for this input")
    if args.direct:
        L = fox_module(P, phi)
    else:
        L = cover_module_presentation(P, phi, winding=args.winding)
    reason = None
    try:
        module = format_module(classify_structured(L))
    except DeficiencyError as exc:
        module, reason = None, str(exc)
    relation_rank = rank_over_fraction_field(L.relations) if L.relations.rows else 0
    data = {"generators": L.generators,
            "relations": [[str(x) for x in row] for row in L.relations.entries],
            "moves": list(L.moves), "module": module,
            "rank": L.generators - relation_rank}
    lines = [f"generators: {L.generators}  relations: {L.relations.rows}"]
    lines += ["  [" + ", ".join(row) + "]" for row in data["relations"]]
    lines.append(f"rank over Q(t): {data['rank']}")
    lines.append(module if module is not None else f"not structured: {reason}")
    _emit(args, data, lines)
    return 0


def cmd_ext2(args):
    M = parse_module(args.module)
    E = ext2_structured(M)
    data = {"module": format_module(M), "ext2": format_module(E),
            "abelian_group": abelian_group_description(E)}
    _emit(args, data, [data["ext2"], f"as abelian group: {data['abelian_group']}"])
    return 0


def cmd_def_bound(args):
    M = parse_module(args.module)
    lower, upper = module_deficiency_bounds(M, args.points)
    data = {"module": format_module(M), "rank": module_rank(M),
            "ext2": format_module(ext2_structured(M)),
            "ext2_generators_lb": min_generators_lower_bound(ext2_structured(M), args.points),
            "lower": lower, "upper": upper}
    _emit(args, data, [f"{lower} <= def({data['module']}) <= {upper}"])
    return 0


def cmd_assemble(args):
    base = parse_module(args.base)
    extra = parse_module(args.extra) if args.extra else None
    M = mv_assembly(base, _int_list(args.windings), extra)
    data = {"module": format_module(M)}
    _emit(args, data, [data["module"]])
    return 0


def cmd_certify(args):
    extra = parse_module(args.extra) if args.extra else None
    cert = paper_pipeline(args.k, args.N, args.n, args.points, extra)
    replay(cert)
    lines = [f"{s.rule}: {s.inputs} -> {s.outputs}\n    [{s.cite}]" for s in cert.steps]
    lines.append(f"{cert.quantity} {cert.relation} {cert.value}")
    _emit(args, cert.to_dict(), lines)
    return 0


def cmd_hw_check(args):
    if args.beta1_coeffs or args.beta2_coeffs:
        if not (args.beta1_coeffs and args.beta2_coeffs):
            raise UsageError("give both --beta1-coeffs and --beta2-coeffs")
        a = _int_list(args.beta1_coeffs)
        b = _int_list(args.beta2_coeffs)
        if len(a) != 2 or len(b) != 3:
            raise UsageError("--beta1-coeffs takes a0,a1 and --beta2-coeffs b0,b1,b2")
        cert = obstruction_certificate(a, b, args.index)
        replay(cert)
        k = hw_family_violation(a, b, args.index)
        data = {"first_violating_k": k, "certificate": cert.to_dict()}
        _emit(args, data, [f"first violating k: {k}" if k is not None
                           else "no violation below the search cap"])
        return 0
    if args.beta1 is None or args.beta2 is None:
        raise UsageError("give --beta1 and --beta2, or the coefficient forms")
    holds = hw_inequality(args.beta1, args.beta2, args.index)
    lhs = 2 + args.beta2 - 2 * args.beta1
    data = {"lhs": lhs, "rhs": 2 * args.index, "holds": holds}
    _emit(args, data, [f"2 + b2 - 2*b1 = {lhs} {'<=' if holds else '>'} {2 * args.index}"
                       f"  ({'no obstruction' if holds else 'obstructed'})"])
    return 0


def _repro_rows(k_grid, N):
    """Rows ``(stage, quantity, expected, computed, note)`` for repro-paper."""
    t1 = StructuredModule.cyc(3, "t+1")
    rows = []
    for text, expect in (("free(1)", (1, 1)), ("cyc(3)", (0, 0)), ("cyc(3,t+1)", (-1, -1))):
        got = module_deficiency_bounds(parse_module(text), [(3, -1)])
        rows.append(("module deficiency", f"def({text})", list(expect), list(got),
                     "deficiencies 1, 0, -1"))
    E = ext2_structured(t1)
    rows.append(("ext2", "Ext^2(cyc(3,t+1))", "cyc(3, t+1)", format_module(E),
                 "Koszul dual <t+1, -3>"))
    rows.append(("ext2", "<t+1,-3> == <3,t+1>", True, ideal_equal(("t+1", -3), (3, "t+1")),
                 "same ideal"))
    rows.append(("ext2", "fiber dimension at (3,-1)", 1, fiber_dimension(E, 3, -1),
                 "one generator over F_3"))
    rows.append(("ext2", "abelian group", "Z_3", abelian_group_description(E), "Z/3"))
    trefoil = PRESETS["twist-spun-trefoil"]
    for d in (1, 2, 3):
        L = cover_module_presentation(trefoil.presentation, trefoil.phi, winding=d)
        rows.append(("trefoil cover", f"H_1(E~_{d})", f"cyc(3, t^{d}+1)" if d > 1 else "cyc(3, t+1)",
                     format_module(classify_structured(L)), "Λ/<3, t^d + 1>"))
    D = PRESETS["binary-icosahedral"].presentation
    rows.append(("binary icosahedral", "order", 120, todd_coxeter(D).index, "order 120"))
    rows.append(("binary icosahedral", "perfect", True, is_perfect(D), "perfect"))
    rows.append(("binary icosahedral", "presentation deficiency", 0,
                 deficiency_of_presentation(D), "deficiency 0"))
    DD = PRESETS["DxD"]
    K = kernel_coset_table(DD.presentation, DD.kernel_images())
    H = subgroup_presentation(DD.presentation, K)
    rows.append(("D*D kernel", "index", 120, K.index, "index 120 kernel"))
    rows.append(("D*D kernel", "generators", 361, H.ngens, "n*g - n + 1"))
    rows.append(("D*D kernel", "relators", 480, H.nrels, "n*r"))
    rows.append(("D*D kernel", "abelianization", "Z^119",
                 _abelian_dict(H)["group"], "rank 119 free abelian"))
    for k in k_grid:
        cert = paper_pipeline(k, N)
        ok = replay(cert)
        rows.append(("final bound", f"def(pi1(Y_k)), k={k}, N={N}",
                     (N + 120 - k) // 120, cert.value if ok else None,
                     "floor((N + 120 - k)/120)"))
    return rows


def cmd_repro_paper(args):
    grid = [k for k in DEFAULT_GRID if k != args.k]
    if args.k is not None:
        grid.append(args.k)
    rows = _repro_rows(grid, args.N)
    results = [{"stage": s, "quantity": q, "expected": e, "computed": c, "match": e == c,
                "note": n} for s, q, e, c, n in rows]
    ok = all(r["match"] for r in results)
    if args.json:
        print(json.dumps({"rows": results, "all_match": ok}, sort_keys=True))
    else:
        header = ("stage", "quantity", "expected", "computed", "ok", "basis")
        body = [(r["stage"], r["quantity"], str(r["expected"]), str(r["computed"]),
                 "yes" if r["match"] else "NO", r["note"]) for r in results]
        widths = [max(len(x[i]) for x in [header] + body) for i in range(len(header))]
        for line in [header] + body:
            print("  ".join(x.ljust(w) for x, w in zip(line, widths)).rstrip())
        print("all match" if ok else "MISMATCH")
    if not ok:
        bad = [r["quantity"] for r in results if not r["match"]]
        print(json.dumps({"error": "Mismatch", "message": "computed values differ",
                          "quantities": bad}), file=sys.stderr)
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(
        prog="deficiency",
        description="Deficiency bounds for finitely presented groups and Z[t,t^-1]-modules.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, grouped=True):
        p.add_argument("--json", action="store_true", help="machine-readable output")
        if grouped:
            p.add_argument("file", nargs="?", help="presentation file")
            p.add_argument("--preset", choices=sorted(PRESETS))

    def subgroup_opts(p):
        p.add_argument("--subgroup", help="comma-separated subgroup generators")
        p.add_argument("--kernel", action="store_true",
                       help="kernel of the preset's bundled homomorphism")
        p.add_argument("--max-cosets", type=int, default=100000)

    p = sub.add_parser("parse", help="parse and normalize a presentation")
    common(p)
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("abelianize", help="abelian invariants via Smith normal form")
    common(p)
    p.set_defaults(func=cmd_abelianize)

    p = sub.add_parser("cosets", help="coset table of a finite-index subgroup")
    common(p)
    subgroup_opts(p)
    p.add_argument("--quiet", action="store_true", help="print only the index")
    p.set_defaults(func=cmd_cosets)

    p = sub.add_parser("subgroup", help="Reidemeister-Schreier subgroup presentation")
    common(p)
    subgroup_opts(p)
    p.add_argument("--transversal", choices=("bfs", "dfs"), default="bfs")
    p.add_argument("--simplify", action="store_true")
    p.add_argument("--full", action="store_true", help="print the presentation")
    p.set_defaults(func=cmd_subgroup)

    p = sub.add_parser("alexander", help="H_1 of an infinite cyclic cover as a module")
    common(p)
    p.add_argument("--phi", help="values of phi on the generators, e.g. 1,0")
    p.add_argument("--winding", type=int, default=1)
    p.add_argument("--direct", action="store_true",
                   help="use phi as given (any gcd) instead of substituting t -> t^d")
    p.set_defaults(func=cmd_alexander)

    p = sub.add_parser("ext2", help="Ext^2(M, Λ) of a structured module")
    common(p, grouped=False)
    p.add_argument("--module", required=True)
    p.set_defaults(func=cmd_ext2)

    p = sub.add_parser("def-bound", help="deficiency bounds for a structured module")
    common(p, grouped=False)
    p.add_argument("--module", required=True)
    p.add_argument("--points", type=_points, default=[(3, -1)])
    p.set_defaults(func=cmd_def_bound)

    p = sub.add_parser("assemble", help="Mayer-Vietoris assembly of trefoil pieces")
    common(p, grouped=False)
    p.add_argument("--base", default="0")
    p.add_argument("--windings", default="")
    p.add_argument("--extra")
    p.set_defaults(func=cmd_assemble)

    p = sub.add_parser("certify", help="certificate for the final deficiency bound")
    common(p, grouped=False)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--N", type=int, default=360)
    p.add_argument("--n", type=int, default=120)
    p.add_argument("--points", type=_points, default=[(3, -1)])
    p.add_argument("--extra")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("hw-check", help="Betti-number obstruction")
    common(p, grouped=False)
    p.add_argument("--beta1", type=int)
    p.add_argument("--beta2", type=int)
    p.add_argument("--beta1-coeffs")
    p.add_argument("--beta2-coeffs")
    p.add_argument("--index", "--k", dest="index", type=int, required=True)
    p.set_defaults(func=cmd_hw_check)

    p = sub.add_parser("repro-paper", help="recompute every worked value")
    common(p, grouped=False)
    p.add_argument("--k", type=int)
    p.add_argument("--N", type=int, default=360)
    p.set_defaults(func=cmd_repro_paper)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DeficiencyError, ValueError, OSError) as exc:
        record = {"error": type(exc).__name__, "message": str(exc)}
        print(json.dumps(record), file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
