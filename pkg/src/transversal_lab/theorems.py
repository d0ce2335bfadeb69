"""Verifiers that check each claim by computing both of its sides.

Every verifier returns a :class:`VerdictRecord`.  A claim that is false on
the given input is a ``fail`` verdict carrying a replayable witness; it is
never raised.  Only unmet hypotheses raise :class:`HypothesisViolated`.

Group-side computations only use :mod:`groups` and :mod:`transversal`;
loop-side computations only use :mod:`rightloop`.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field

from .errors import HypothesisViolated
from .groups import (
    FiniteGroup,
    Permutation,
    Subgroup,
    is_core_free,
    is_elementary_abelian_2,
    is_normal,
    normalizer,
    perm_normalizer,
)
from .rightloop import (
    RightLoop,
    TorsionData,
    congruence_with_kernel,
    congruences,
    f_map_composite,
    f_map_definitional,
    invariant_subloops_of_order,
    is_associative,
    is_congruence,
    LoopRelation,
    loop_isomorphic,
    quotient,
    sigma,
    torsion,
)
from .transversal import (
    Transversal,
    enumerate_transversals,
    find_generating_transversal,
    induced_loop,
    is_generating,
    stab_H,
    theta_action,
)

CLAIMS = ("prop1", "thm_norm", "cor_norm", "thm2", "cor_elem_ab", "cameron", "embed_gss", "iso3_soft", "oracle")

PASS, FAIL, VACUOUS, SKIPPED, WARN = "pass", "fail", "vacuous", "skipped", "warn"


@dataclass
class VerdictRecord:
    claim: str
    context: dict
    holds: bool | None
    status: str
    details: dict = field(default_factory=dict)
    witness: object = None
    elapsed: float = 0.0

    def to_json(self, with_elapsed: bool = False) -> dict:
        out = {
            "claim": self.claim,
            "context": self.context,
            "holds": self.holds,
            "status": self.status,
            "details": self.details,
            "witness": self.witness,
        }
        if with_elapsed:
            out["elapsed"] = round(self.elapsed, 6)
        return out


def _verdict(claim, context, holds, details, witness, start, vacuous=False):
    status = VACUOUS if vacuous else (PASS if holds else FAIL)
    return VerdictRecord(claim, dict(context or {}), holds, status, details, witness, time.perf_counter() - start)


def context_for(G: FiniteGroup | None = None, H: Subgroup | None = None, S: Transversal | None = None, **extra) -> dict:
    ctx = {}
    if G is not None:
        ctx["group"] = G.name
    if H is not None:
        ctx["subgroup"] = list(H.elements)
    if S is not None:
        ctx["reps"] = list(S.reps)
    ctx.update(extra)
    return ctx


# ---------------------------------------------------------------------------
# loop-level claims
# ---------------------------------------------------------------------------


def _associator_witness(S: RightLoop, x: int):
    t, k = S.table, S.order
    for y in range(k):
        for z in range(k):
            if t[x][t[y][z]] != t[t[x][y]][z]:
                return (x, y, z)
    return None


def verify_prop1(T: TorsionData, context: dict | None = None) -> VerdictRecord:
    """Stability class of the identity = associating elements = R_x normalizing G_S."""
    start = time.perf_counter()
    S = T.loop
    by_sigma = set(sigma(T).block(0))
    by_triples = {x for x in range(S.order) if _associator_witness(S, x) is None}
    N = perm_normalizer(T.GSS, T.GS)
    by_normalizer = {x for x in range(S.order) if T.R[x] in N}
    holds = by_sigma == by_triples == by_normalizer
    witness = None
    if not holds:
        diff = sorted((by_sigma ^ by_triples) | (by_sigma ^ by_normalizer))
        x = diff[0]
        witness = {"x": x, "in_sigma_class": x in by_sigma, "associates": x in by_triples,
                   "normalizes": x in by_normalizer, "triple": _associator_witness(S, x)}
    details = {"sigma_class": sorted(by_sigma), "associating": sorted(by_triples),
               "normalizing": sorted(by_normalizer), "GS_order": T.GS.order, "GSS_order": T.GSS.order}
    return _verdict("prop1", context, holds, details, witness, start)


def verify_thm_normalizer(T: TorsionData, context: dict | None = None) -> VerdictRecord:
    """``N(N(G_S)) = G_SS`` in ``G_SS`` iff sigma is a congruence containing the theta pairs."""
    start = time.perf_counter()
    S = T.loop
    N1 = perm_normalizer(T.GSS, T.GS)
    N2 = perm_normalizer(T.GSS, N1)
    lhs = N2.element_set == T.GSS.element_set

    sig = sigma(T)
    cong = is_congruence(S, sig)
    theta_bad = None
    for (y, z), f in sorted(T.f_table.items()):
        for x in range(S.order):
            if not sig.related(x, f.image[x]):
                theta_bad = {"x": x, "y": y, "z": z, "image": f.image[x]}
                break
        if theta_bad:
            break
    theta_ok = theta_bad is None
    rhs = cong and theta_ok
    holds = lhs == rhs
    details = {"lhs": lhs, "rhs": rhs, "sigma_congruence": cong, "theta_pairs_in_sigma": theta_ok,
               "theta_reading": "for all y, z", "N1_order": N1.order, "N2_order": N2.order,
               "GS_order": T.GS.order, "GSS_order": T.GSS.order, "sigma": [list(c) for c in sig.classes]}
    witness = None
    if not holds:
        witness = {"theta_pair": theta_bad, "sigma": [list(c) for c in sig.classes]}
        if not cong:
            witness["congruence_break"] = _congruence_break(S, sig)
    return _verdict("thm_norm", context, holds, details, witness, start)


def _congruence_break(S: RightLoop, R: LoopRelation):
    t, d = S.table, S.divide
    for cls in R.classes:
        for a, b in itertools.combinations(cls, 2):
            for c in range(S.order):
                for op, u, v in (("o", t[a][c], t[b][c]), ("o_left", t[c][a], t[c][b]),
                                 ("/", d[a][c], d[b][c]), ("/_left", d[c][a], d[c][b])):
                    if not R.related(u, v):
                        return {"a": a, "b": b, "c": c, "op": op}
    return None


def qualifying_kernels(S: RightLoop) -> list[tuple[tuple, LoopRelation]]:
    """Order-2 invariant subloops whose quotient is a group."""
    return [(T, R) for T, R in invariant_subloops_of_order(S, 2) if is_associative(quotient(S, R))]


def verify_thm2(S: RightLoop, T: TorsionData | None = None, context: dict | None = None,
                cross_check_cap: int = 0) -> VerdictRecord:
    """Order-2 invariant subloop with group quotient forces elementary abelian 2 torsion.

    With ``cross_check_cap >= |S|`` the kernels found via their unique
    candidate congruence are compared against an exhaustive congruence scan.
    """
    start = time.perf_counter()
    T = T or torsion(S)
    kernels = qualifying_kernels(S)
    details = {"kernels": [list(k) for k, _ in kernels], "GS_order": T.GS.order}
    if cross_check_cap and S.order <= cross_check_cap:
        exhaustive = sorted(
            R.block(0) for R in congruences(S, cross_check_cap)
            if len(R.block(0)) == 2 and is_associative(quotient(S, R))
        )
        details["exhaustive_kernels_agree"] = exhaustive == [k for k, _ in kernels]
        if not details["exhaustive_kernels_agree"]:
            return _verdict("thm2", context, False, details, {"exhaustive": exhaustive}, start)
    if not kernels:
        return _verdict("thm2", context, True, details, None, start, vacuous=True)

    ea = is_elementary_abelian_2(T.GS)
    fmaps = sorted(set(T.f_table.values()))
    witness = None
    structural = True
    for (t_ker, _R) in kernels:
        t = t_ker[1]
        for (y, z), f in sorted(T.f_table.items()):
            for x in range(S.order):
                fx = f.image[x]
                if fx != x and fx != S.table[t][x]:
                    structural = False
                    witness = {"t": t, "y": y, "z": z, "x": x, "image": fx}
                    break
            if structural and not (f * f).is_identity():
                structural = False
                witness = {"t": t, "y": y, "z": z, "not_involution": list(f.image)}
            if not structural:
                break
        if not structural:
            break
    commute = all(p * q == q * p for p, q in itertools.combinations(fmaps, 2))
    if not commute and witness is None:
        p, q = next((p, q) for p, q in itertools.combinations(fmaps, 2) if p * q != q * p)
        witness = {"noncommuting": [list(p.image), list(q.image)]}
    holds = ea and structural and commute
    if not ea and witness is None:
        witness = {"GS_elements": [list(p.image) for p in T.GS.elements]}
    details.update({"elementary_abelian_2": ea, "disjoint_transpositions": structural, "generators_commute": commute})
    return _verdict("thm2", context, holds, details, witness, start)


# ---------------------------------------------------------------------------
# group-level claims
# ---------------------------------------------------------------------------


def _require(cond, msg):
    if not cond:
        raise HypothesisViolated(msg)


def verify_cor_normalizer(G: FiniteGroup, H: Subgroup, S: Transversal, context: dict | None = None) -> VerdictRecord:
    """``N_G(N_G(H)) = G`` iff equal H-stabilizers form a congruence holding the theta pairs."""
    _require(is_core_free(G, H), "not core-free")
    _require(is_generating(G, S), "not generating")
    start = time.perf_counter()
    context = context if context is not None else context_for(G, H, S)
    NH = normalizer(G, H)
    NNH = normalizer(G, NH)
    lhs = NNH.order == G.order

    k = S.size
    stabs = [stab_H(G, H, S, x).elements for x in range(k)]
    seen = {}
    X = LoopRelation.from_labels([seen.setdefault(s, len(seen)) for s in stabs])
    loop = induced_loop(G, H, S)
    cong = is_congruence(loop, X)
    orbit_bad = None
    for x in range(k):
        for h in H.elements:
            y = theta_action(G, H, S, x, h)
            if not X.related(x, y):
                orbit_bad = {"x": x, "h": h, "image": y}
                break
        if orbit_bad:
            break
    rhs = cong and orbit_bad is None
    holds = lhs == rhs
    details = {"lhs": lhs, "rhs": rhs, "X_congruence": cong, "theta_pairs_in_X": orbit_bad is None,
               "normalizer": list(NH.elements), "normalizer2_order": NNH.order,
               "X": [list(c) for c in X.classes],
               "stab_in_G_reading": _cor_norm_stab_in_G(G, H, S, loop, lhs)}
    witness = None
    if not holds:
        witness = {"theta_pair": orbit_bad, "X": [list(c) for c in X.classes],
                   "congruence_break": None if cong else _congruence_break(loop, X)}
    return _verdict("cor_norm", context, holds, details, witness, start)


def _cor_norm_stab_in_G(G, H, S, loop, lhs) -> dict:
    """The same test with stabilizers taken in ``G`` (of the coset ``H reps[x]``)."""
    k = S.size
    stabs = [tuple(g for g in G.elements if S.coset_of[G.table[S.reps[x]][g]] == x) for x in range(k)]
    seen = {}
    Y = LoopRelation.from_labels([seen.setdefault(s, len(seen)) for s in stabs])
    cong = is_congruence(loop, Y)
    inside = all(Y.related(x, theta_action(G, H, S, x, h)) for x in range(k) for h in H.elements)
    return {"relation": [list(c) for c in Y.classes], "rhs": cong and inside, "holds": lhs == (cong and inside)}


def verify_cor_elem_ab(G: FiniteGroup, H: Subgroup, N: Subgroup, context: dict | None = None) -> VerdictRecord:
    """Core-free ``H`` of index 2 in a normal ``N`` forces ``N`` elementary abelian 2."""
    _require(is_core_free(G, H), "H is not core-free")
    _require(is_normal(G, N), "N is not normal")
    _require(set(H.elements) <= set(N.elements), "H is not contained in N")
    _require(N.order == 2 * H.order, "[N:H] != 2")
    start = time.perf_counter()
    context = context if context is not None else context_for(G, H, normal=list(N.elements))
    ea = is_elementary_abelian_2(N)

    details = {"N_elementary_abelian_2": ea}
    witness = None
    S = find_generating_transversal(G, H)
    cross = S is not None
    if cross:
        context.setdefault("reps", list(S.reps))
        loop = induced_loop(G, H, S)
        kernel = tuple(i for i, r in enumerate(S.reps) if r in N.elements)
        R = congruence_with_kernel(loop, kernel)
        cross = len(kernel) == 2 and R is not None and is_associative(quotient(loop, R))
        thm2 = verify_thm2(loop) if cross else None
        cross = cross and thm2.status == PASS and list(kernel) in thm2.details["kernels"]
        details.update({"kernel": list(kernel), "kernel_is_congruence": R is not None,
                        "thm2_status": thm2.status if thm2 else None})
    else:
        details["generating_transversal"] = None
    details["loop_route"] = cross
    holds = ea and cross
    if not ea:
        witness = {"N": list(N.elements), "bad": [a for a in N.elements if G.table[a][a] != 0]}
    elif not cross:
        witness = {"kernel": details.get("kernel"), "reps": context.get("reps")}
    return _verdict("cor_elem_ab", context, holds, details, witness, start)


def verify_cameron(G: FiniteGroup, H: Subgroup, context: dict | None = None) -> VerdictRecord:
    _require(is_core_free(G, H), "not core-free")
    start = time.perf_counter()
    S = find_generating_transversal(G, H)
    details = {"reps": list(S.reps) if S else None}
    witness = None if S else {"subgroup": list(H.elements)}
    return _verdict("cameron", context if context is not None else context_for(G, H), S is not None,
                    details, witness, start)


def coset_action(G: FiniteGroup, S: Transversal, g: int) -> Permutation:
    """Position ``x`` goes to the rep of ``H reps[x] g``."""
    t, pos = G.table, S.coset_of
    return Permutation(pos[t[r][g]] for r in S.reps)


def verify_embed_gss(G: FiniteGroup, H: Subgroup, S: Transversal, T: TorsionData | None = None,
                     context: dict | None = None) -> VerdictRecord:
    """The right-coset action is an isomorphism of ``G`` onto ``G_SS`` taking ``H`` to ``G_S``."""
    _require(is_core_free(G, H), "not core-free")
    _require(is_generating(G, S), "not generating")
    start = time.perf_counter()
    context = context if context is not None else context_for(G, H, S)
    T = T or torsion(induced_loop(G, H, S))
    phi = [coset_action(G, S, g) for g in G.elements]
    hom_bad = None
    for a in G.elements:
        for b in G.elements:
            if phi[G.table[a][b]] != phi[a] * phi[b]:
                hom_bad = (a, b)
                break
        if hom_bad:
            break
    injective = len(set(phi)) == G.order
    image_ok = set(phi) == T.GSS.element_set
    h_ok = {phi[h] for h in H.elements} == T.GS.element_set
    holds = hom_bad is None and injective and image_ok and h_ok
    details = {"homomorphism": hom_bad is None, "injective": injective, "image_is_GSS": image_ok,
               "H_onto_GS": h_ok, "GSS_order": T.GSS.order, "GS_order": T.GS.order}
    return _verdict("embed_gss", context, holds, details, None if holds else {"hom_break": hom_bad}, start)


def verify_oracle(G: FiniteGroup, H: Subgroup, S: Transversal, loop: RightLoop | None = None,
                  context: dict | None = None) -> VerdictRecord:
    """Loop table against direct coset products; both f-map routes against each other."""
    start = time.perf_counter()
    loop = loop or induced_loop(G, H, S)
    reps = S.reps
    rep_set = {r: i for i, r in enumerate(reps)}
    table_bad = None
    for i, x in enumerate(reps):
        for j, y in enumerate(reps):
            xy = G.table[x][y]
            hits = [rep_set[c] for c in (G.table[h][xy] for h in H.elements) if c in rep_set]
            if hits != [loop.table[i][j]]:
                table_bad = {"x": i, "y": j, "oracle": hits, "table": loop.table[i][j]}
                break
        if table_bad:
            break
    f_bad = None
    for y in range(loop.order):
        for z in range(loop.order):
            a, b = f_map_definitional(loop, y, z), f_map_composite(loop, y, z)
            if a != b:
                f_bad = {"y": y, "z": z, "definitional": list(a.image), "composite": list(b.image)}
                break
        if f_bad:
            break
    holds = table_bad is None and f_bad is None
    witness = None if holds else {"table": table_bad, "f_map": f_bad}
    return _verdict("oracle", context if context is not None else context_for(G, H, S), holds,
                    {"loop_order": loop.order}, witness, start)


def iso_classes(loops: list[RightLoop]) -> list[list[int]]:
    """Partition loop indices into isomorphism classes (first-member order)."""
    classes: list[list[int]] = []
    for i, L in enumerate(loops):
        for cls in classes:
            if loop_isomorphic(loops[cls[0]], L):
                cls.append(i)
                break
        else:
            classes.append([i])
    return classes


def verify_iso3_soft(G: FiniteGroup, H: Subgroup, context: dict | None = None, expected: int = 3) -> VerdictRecord:
    """Count isomorphism classes of induced loops for an index-3 subgroup; warn on mismatch."""
    start = time.perf_counter()
    transversals = list(enumerate_transversals(G, H))
    loops = [induced_loop(G, H, S) for S in transversals]
    classes = iso_classes(loops)
    details = {"index": H.index, "transversals": len(loops), "classes": len(classes),
               "class_listing": [[list(transversals[i].reps) for i in cls] for cls in classes]}
    ok = len(classes) == expected
    rec = _verdict("iso3_soft", context if context is not None else context_for(G, H), ok, details,
                   None if ok else {"expected": expected, "found": len(classes)}, start)
    if not ok:
        rec.status = WARN
    return rec
