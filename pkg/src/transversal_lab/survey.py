"""Sweep every verifier over the catalog and summarise the verdicts."""

from __future__ import annotations

import csv
import io
import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

from . import theorems as th
from .catalog import CatalogEntry, catalog_hash, catalog_listing
from .errors import ClosureTooLarge, GroupTooLarge, HypothesisViolated, LoopTooLarge
from .groups import Subgroup, all_subgroups, is_core_free, is_normal
from .rightloop import DEFAULT_CONGRUENCE_CAP, torsion
from .transversal import enumerate_transversals, induced_loop, is_generating

SCHEMA_VERSION = 1
CAP_ERRORS = (ClosureTooLarge, GroupTooLarge, LoopTooLarge)


@dataclass
class RunConfig:
    max_group_order: int = 16
    max_transversals_per_pair: int = 256
    sample_size: int = 128
    sample_seed: int = 0
    congruence_cap: int = DEFAULT_CONGRUENCE_CAP
    # exhaustive congruence cross-check in the thm2 check for loops up to this order
    thm2_cross_check_order: int = 8
    output_format: str = "text"
    output_path: str | None = None
    jobs: int = 1
    groups: tuple | None = None

    def __post_init__(self):
        for name in ("max_group_order", "max_transversals_per_pair", "sample_size", "congruence_cap", "jobs"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")

    def entries(self) -> list[CatalogEntry]:
        listing = catalog_listing(self.max_group_order)
        if self.groups is not None:
            wanted = set(self.groups)
            return [e for e in listing if e.ref in wanted]
        return [e for e in listing if e.same_as is None]

    def header(self) -> dict:
        d = asdict(self)
        d.pop("output_path")
        d.pop("output_format")
        d.pop("jobs")
        d["groups"] = list(self.groups) if self.groups is not None else None
        return d


def _skip(claim, ctx, reason):
    return th.VerdictRecord(claim, dict(ctx), None, th.SKIPPED, {"reason": reason})


def _run(claim, ctx, fn, *args, **kw):
    """Run one verifier, turning errors into records instead of exceptions."""
    try:
        return fn(*args, context=dict(ctx), **kw)
    except HypothesisViolated as e:
        return _skip(claim, ctx, f"hypothesis violated: {e}")
    except CAP_ERRORS as e:
        return _skip(claim, ctx, f"cap exceeded: {e}")
    except Exception as e:  # an internal inconsistency is a failed check
        return th.VerdictRecord(claim, dict(ctx), False, th.FAIL, {"error": type(e).__name__}, str(e))


def survey_pair(config: RunConfig, entry_ref: str, h_elems: tuple) -> list[th.VerdictRecord]:
    """All verdicts for one (group, subgroup) pair."""
    G = CatalogEntry(entry_ref, 0).build()
    H = Subgroup(G, h_elems)
    base = th.context_for(G, H)
    loop_claims = ("oracle", "prop1", "thm_norm", "thm2")
    if H.order == G.order:
        return [_skip(c, base, "subgroup is not proper") for c in loop_claims]

    records = []
    cf = is_core_free(G, H)
    if cf:
        records.append(_run("cameron", base, th.verify_cameron, G, H))
        if H.order > 1 and H.index == 3:
            records.append(_run("iso3_soft", base, th.verify_iso3_soft, G, H))
        for N in all_subgroups(G):
            if N.order == 2 * H.order and set(H.elements) <= set(N.elements) and is_normal(G, N):
                records.append(_run("cor_elem_ab", dict(base, normal=list(N.elements)), th.verify_cor_elem_ab, G, H, N))

    cross = config.thm2_cross_check_order if config.thm2_cross_check_order <= config.congruence_cap else config.congruence_cap
    for S in enumerate_transversals(G, H, config.max_transversals_per_pair, config.sample_seed, config.sample_size):
        ctx = th.context_for(G, H, S)
        try:
            loop = induced_loop(G, H, S)
            T = torsion(loop)
        except CAP_ERRORS as e:
            records.extend(_skip(c, ctx, f"cap exceeded: {e}") for c in loop_claims)
            continue
        except Exception as e:
            records.append(th.VerdictRecord("oracle", ctx, False, th.FAIL, {"error": type(e).__name__}, str(e)))
            continue
        records.append(_run("oracle", ctx, th.verify_oracle, G, H, S, loop))
        records.append(_run("prop1", ctx, th.verify_prop1, T))
        records.append(_run("thm_norm", ctx, th.verify_thm_normalizer, T))
        records.append(_run("thm2", ctx, th.verify_thm2, loop, T, cross_check_cap=cross))
        if cf and is_generating(G, S):
            records.append(_run("cor_norm", ctx, th.verify_cor_normalizer, G, H, S))
            records.append(_run("embed_gss", ctx, th.verify_embed_gss, G, H, S, T))
    return records


def _sort_key(order_of, rec):
    c = rec.context
    return (order_of[c["group"]], c.get("subgroup", []), c.get("normal", []), c.get("reps", []), rec.claim)


def survey(config: RunConfig) -> tuple[list[th.VerdictRecord], dict]:
    entries = config.entries()
    tasks = []
    order_of = {}
    for i, e in enumerate(entries):
        G = e.build()
        order_of[G.name] = i
        for H in all_subgroups(G):
            tasks.append((e.ref, H.elements))
    if config.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            chunks = list(pool.map(survey_pair, [config] * len(tasks), *zip(*tasks)))
    else:
        chunks = [survey_pair(config, ref, h) for ref, h in tasks]
    records = [r for chunk in chunks for r in chunk]
    records.sort(key=lambda r: _sort_key(order_of, r))
    return records, summarize(config, entries, records)


def summarize(config: RunConfig, entries, records) -> dict:
    counts = {c: Counter() for c in th.CLAIMS}
    for r in records:
        counts[r.claim][r.status] += 1
    statuses = (th.PASS, th.FAIL, th.VACUOUS, th.SKIPPED, th.WARN)
    per_claim = {c: {s: counts[c][s] for s in statuses} for c in th.CLAIMS}
    thm_norm = [r for r in records if r.claim == "thm_norm" and r.status in (th.PASS, th.FAIL)]
    thm2 = [r for r in records if r.claim == "thm2" and r.status == th.PASS]
    return {
        "schema_version": SCHEMA_VERSION,
        "config": config.header(),
        "catalog": [e.ref for e in entries],
        "catalog_hash": catalog_hash(entries),
        "claims": per_claim,
        "hard_failures": sum(v[th.FAIL] for v in per_claim.values()),
        "warnings": [r.to_json() for r in records if r.status == th.WARN],
        "thm_norm_lhs_true": sum(1 for r in thm_norm if r.details.get("lhs")),
        "thm_norm_lhs_false": sum(1 for r in thm_norm if r.details.get("lhs") is False),
        "thm2_nonvacuous_nontrivial_GS": sum(1 for r in thm2 if r.details["GS_order"] > 1),
    }


def dumps_jsonl(summary: dict, records) -> str:
    header = {"kind": "header", "schema_version": SCHEMA_VERSION, "config": summary["config"],
              "catalog_hash": summary["catalog_hash"]}
    lines = [json.dumps(header, sort_keys=True)]
    lines += [json.dumps(r.to_json(), sort_keys=True) for r in records]
    return "\n".join(lines) + "\n"


def dumps_csv(summary: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    statuses = (th.PASS, th.FAIL, th.VACUOUS, th.SKIPPED, th.WARN)
    w.writerow(("claim",) + statuses)
    for claim, row in summary["claims"].items():
        w.writerow((claim,) + tuple(row[s] for s in statuses))
    return buf.getvalue()
