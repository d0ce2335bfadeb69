"""Command-line interface: ``transversal-lab <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import theorems as th
from .catalog import catalog_listing
from .errors import HypothesisViolated, TransversalLabError
from .formats import load_group, loop_from_json, loop_to_json, parse_indices, parse_subgroup, relation_to_json
from .groups import all_subgroups, is_core_free, is_normal
from .rightloop import sigma, torsion
from .survey import RunConfig, dumps_csv, dumps_jsonl, survey
from .transversal import (
    Transversal,
    enumerate_transversals,
    find_generating_transversal,
    induced_loop,
    is_generating,
    transversal_count,
)

EXIT_PASS, EXIT_FAIL, EXIT_HYPOTHESIS, EXIT_BAD_INPUT = 0, 1, 2, 3
LOOP_CLAIMS = ("prop1", "thm_norm", "thm2")


def _emit(args, payload, text):
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _format_table(table) -> str:
    return "\n".join(" ".join(f"{v:>2}" for v in row) for row in table)


def _resolve(args, need_transversal=True, generating=False):
    G = load_group(args.group)
    H = parse_subgroup(G, args.subgroup or "")
    S = None
    if need_transversal:
        if args.transversal:
            S = Transversal(G, H, tuple(parse_indices(args.transversal, G.order)))
        elif generating:
            S = find_generating_transversal(G, H)
            if S is None:
                raise HypothesisViolated("no generating transversal")
        else:
            S = next(enumerate_transversals(G, H))
    return G, H, S


def cmd_catalog(args) -> int:
    entries = catalog_listing(args.max_order)
    payload = [{"ref": e.ref, "order": e.order, "same_as": e.same_as} for e in entries]
    lines = [f"{e.ref:<14} order {e.order:>3}" + (f"   (isomorphic to {e.same_as})" if e.same_as else "") for e in entries]
    _emit(args, payload, "\n".join(lines))
    return EXIT_PASS


def cmd_subgroups(args) -> int:
    G = load_group(args.group)
    subs = all_subgroups(G)
    payload = [{"elements": list(H.elements), "order": H.order, "core_free": is_core_free(G, H),
                "normal": is_normal(G, H)} for H in subs]
    lines = [f"{G.name}: {len(subs)} subgroups"]
    for d in payload:
        flags = ",".join(f for f in ("core_free", "normal") if d[f])
        lines.append(f"  order {d['order']:>3}  {d['elements']}  {flags}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_PASS


def cmd_transversals(args) -> int:
    G, H, _ = _resolve(args, need_transversal=False)
    total = transversal_count(G, H)
    rows = [{"reps": list(S.reps), "generating": is_generating(G, S)}
            for S in enumerate_transversals(G, H, args.max_transversals, args.seed)]
    lines = [f"{total} transversals of {list(H.elements)} in {G.name}; showing {len(rows)}"]
    lines += [f"  {r['reps']}" + ("  generating" if r["generating"] else "") for r in rows]
    _emit(args, {"total": total, "transversals": rows}, "\n".join(lines))
    return EXIT_PASS


def _loop_summary(loop):
    T = torsion(loop)
    sig = sigma(T)
    return T, {
        "loop": loop_to_json(loop),
        "GS_order": T.GS.order,
        "GSS_order": T.GSS.order,
        "sigma": relation_to_json(sig),
        "sigma_1": list(sig.block(0)),
    }


def _load_loop(path):
    with open(path) as fh:
        return loop_from_json(json.load(fh))


def cmd_loop(args) -> int:
    if args.loop:
        loop, header = _load_loop(args.loop), args.loop
    else:
        G, H, S = _resolve(args)
        loop = induced_loop(G, H, S)
        header = f"{G.name}, H = {list(H.elements)}, S = {list(S.reps)}"
    _, info = _loop_summary(loop)
    if args.format == "json" and args.command == "loop":
        print(json.dumps(loop_to_json(loop) if args.table_only else info, sort_keys=True))
        return EXIT_PASS
    text = "\n".join([
        header,
        _format_table(loop.table),
        f"|G_S| = {info['GS_order']}   |G_SS| = {info['GSS_order']}",
        f"sigma blocks: {info['sigma']['classes']}",
        f"sigma class of 1: {info['sigma_1']}",
    ])
    _emit(args, info, text)
    return EXIT_PASS


def cmd_verify(args) -> int:
    claim = args.claim
    try:
        if claim in LOOP_CLAIMS:
            if args.loop:
                loop = _load_loop(args.loop)
                ctx = {"loop": args.loop}
            else:
                G, H, S = _resolve(args)
                loop = induced_loop(G, H, S)
                ctx = th.context_for(G, H, S)
            T = torsion(loop)
            if claim == "prop1":
                rec = th.verify_prop1(T, ctx)
            elif claim == "thm_norm":
                rec = th.verify_thm_normalizer(T, ctx)
            else:
                rec = th.verify_thm2(loop, T, ctx)
        elif claim in ("cor_norm", "embed_gss"):
            G, H, S = _resolve(args, generating=True)
            fn = th.verify_cor_normalizer if claim == "cor_norm" else th.verify_embed_gss
            rec = fn(G, H, S, context=th.context_for(G, H, S))
        elif claim == "cor_elem_ab":
            G, H, _ = _resolve(args, need_transversal=False)
            if not args.normal:
                raise HypothesisViolated("cor_elem_ab needs --normal")
            N = parse_subgroup(G, args.normal)
            rec = th.verify_cor_elem_ab(G, H, N)
        elif claim == "cameron":
            G, H, _ = _resolve(args, need_transversal=False)
            rec = th.verify_cameron(G, H)
        elif claim == "iso3_soft":
            G, H, _ = _resolve(args, need_transversal=False)
            rec = th.verify_iso3_soft(G, H)
        else:
            G, H, S = _resolve(args)
            rec = th.verify_oracle(G, H, S)
    except HypothesisViolated as e:
        print(f"{claim}: hypothesis violated: {e}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    payload = rec.to_json()
    text = f"{claim}: {rec.status.upper()}\n  context: {rec.context}\n  details: {rec.details}"
    if rec.witness is not None:
        text += f"\n  witness: {rec.witness}"
    _emit(args, payload, text)
    return EXIT_FAIL if rec.status == th.FAIL else EXIT_PASS


def cmd_survey(args) -> int:
    config = RunConfig(
        max_group_order=args.max_order,
        max_transversals_per_pair=args.max_transversals,
        sample_size=args.sample_size,
        sample_seed=args.seed,
        congruence_cap=args.congruence_cap,
        output_format=args.format,
        output_path=args.out,
        jobs=args.jobs,
        groups=tuple(args.groups.split(",")) if args.groups is not None else None,
    )
    records, summary = survey(config)
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        with open(os.path.join(args.out, "report.jsonl"), "w") as fh:
            fh.write(dumps_jsonl(summary, records))
        with open(os.path.join(args.out, "summary.json"), "w") as fh:
            json.dump(summary, fh, indent=2, sort_keys=True)
            fh.write("\n")
        with open(os.path.join(args.out, "summary.csv"), "w") as fh:
            fh.write(dumps_csv(summary))
    lines = [f"survey over {len(summary['catalog'])} groups (max order {config.max_group_order}, seed {config.sample_seed})"]
    lines.append(f"{'claim':<12}" + "".join(f"{s:>9}" for s in ("pass", "fail", "vacuous", "skipped", "warn")))
    for claim, row in summary["claims"].items():
        lines.append(f"{claim:<12}" + "".join(f"{v:>9}" for v in row.values()))
    lines.append(f"hard failures: {summary['hard_failures']}")
    for w in summary["warnings"]:
        lines.append(f"warning: {w['claim']} {w['context']} {w['details']}")
    _emit(args, summary, "\n".join(lines))
    return EXIT_PASS if summary["hard_failures"] == 0 else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="transversal-lab", description="Right transversals, right loops and their torsion.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, group=True, transversal=True):
        sp.add_argument("--format", choices=("text", "json"), default="text")
        if group:
            sp.add_argument("--group", required=False, help="catalog ref (D4, cyclic:4, C2*S3) or a group JSON file")
            sp.add_argument("--subgroup", default="", help="generators: cycle words or element indices")
        if transversal:
            sp.add_argument("--transversal", help="comma-separated element indices, identity first")

    sp = sub.add_parser("catalog", help="list built-in groups")
    sp.add_argument("--max-order", type=int, default=16)
    common(sp, group=False, transversal=False)
    sp.set_defaults(func=cmd_catalog)

    sp = sub.add_parser("subgroups", help="list the subgroups of a group")
    common(sp, transversal=False)
    sp.set_defaults(func=cmd_subgroups)

    sp = sub.add_parser("transversals", help="enumerate right transversals")
    common(sp, transversal=False)
    sp.add_argument("--max-transversals", type=int, default=256)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_transversals)

    for name in ("loop", "torsion"):
        sp = sub.add_parser(name, help="induced right loop and its torsion summary")
        common(sp)
        sp.add_argument("--loop", help="right loop JSON file instead of group/subgroup/transversal")
        if name == "loop":
            sp.add_argument("--table-only", action="store_true", help="with --format json, emit the RightLoop schema only")
        sp.set_defaults(func=cmd_loop, table_only=False)

    sp = sub.add_parser("verify", help="run one verifier")
    sp.add_argument("claim", choices=th.CLAIMS)
    common(sp)
    sp.add_argument("--normal", help="the normal subgroup N for cor_elem_ab")
    sp.add_argument("--loop", help="right loop JSON file (loop-level claims only)")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("survey", help="run every verifier over the catalog")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.add_argument("--max-order", type=int, default=16)
    sp.add_argument("--max-transversals", type=int, default=256)
    sp.add_argument("--sample-size", type=int, default=128)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--congruence-cap", type=int, default=12)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--groups", help="comma-separated catalog refs to restrict the sweep")
    sp.add_argument("--out", help="directory for report.jsonl, summary.json, summary.csv")
    sp.set_defaults(func=cmd_survey)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "group", "x") is None and not getattr(args, "loop", None):
        print("error: --group is required", file=sys.stderr)
        return EXIT_BAD_INPUT
    try:
        return args.func(args)
    except (TransversalLabError, ValueError, KeyError, OSError, json.JSONDecodeError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
