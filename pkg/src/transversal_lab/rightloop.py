"""Right loops: torsion, enveloping group, stability relation and congruences.

A right loop here is a table on ``0..k-1`` with two-sided identity ``0`` and
bijective right translations ``x -> x o y``.  Permutations compose as
"left factor first": ``(r*s)(x) == s(r(x))``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import (
    ColumnNotBijective,
    ConventionMismatch,
    IllDefined,
    LoopTooLarge,
    NoIdentity,
    NotACongruence,
    NotARightLoop,
    NotInGSS,
    TransversalLabError,
)
from .groups import PermGroup, Permutation, perm_group, stabilizer

DEFAULT_CONGRUENCE_CAP = 12
DEFAULT_ISO_CAP = 10


@dataclass(frozen=True)
class RightLoop:
    table: tuple
    label: str = "S"
    # divide[b][a] is the unique X with X o a = b
    divide: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        table = tuple(tuple(row) for row in self.table)
        object.__setattr__(self, "table", table)
        k = len(table)
        if k == 0 or any(len(row) != k for row in table):
            raise NotARightLoop("table must be square and non-empty")
        for row in table:
            for v in row:
                if not isinstance(v, int) or not 0 <= v < k:
                    raise NotARightLoop(f"entry {v!r} out of range")
        if any(table[0][y] != y for y in range(k)) or any(table[x][0] != x for x in range(k)):
            raise NoIdentity("element 0 is not a two-sided identity")
        div = [[0] * k for _ in range(k)]
        for a in range(k):
            col = [table[x][a] for x in range(k)]
            if len(set(col)) != k:
                raise ColumnNotBijective(a)
            for x, b in enumerate(col):
                div[b][a] = x
        object.__setattr__(self, "divide", tuple(map(tuple, div)))

    @property
    def order(self) -> int:
        return len(self.table)

    def op(self, x: int, y: int) -> int:
        return self.table[x][y]


def validate_right_loop(table, label: str = "S") -> RightLoop:
    return RightLoop(table, label)


def right_translation(S: RightLoop, u: int) -> Permutation:
    return Permutation(S.table[x][u] for x in range(S.order))


def right_divide(S: RightLoop, b: int, a: int) -> int:
    """The unique ``X`` with ``X o a = b``."""
    return S.divide[b][a]


def f_map_definitional(S: RightLoop, y: int, z: int) -> Permutation:
    t, yz = S.table, S.table[y][z]
    return Permutation(right_divide(S, t[t[x][y]][z], yz) for x in range(S.order))


def f_map_composite(S: RightLoop, y: int, z: int) -> Permutation:
    R = right_translation
    return R(S, y) * R(S, z) * R(S, S.table[y][z]).inverse()


def f_map(S: RightLoop, y: int, z: int) -> Permutation:
    """``x -> (x o y) o z`` divided on the right by ``y o z``.

    Computed both from the defining equation and as ``R_y R_z R_{yz}^-1``;
    raises :class:`ConventionMismatch` if they differ.
    """
    a = f_map_definitional(S, y, z)
    b = f_map_composite(S, y, z)
    if a != b:
        raise ConventionMismatch(f"f({y},{z}): {a.image} != {b.image}")
    return a


class TorsionInvariantError(TransversalLabError):
    pass


@dataclass(frozen=True)
class TorsionData:
    loop: RightLoop = field(repr=False)
    GS: PermGroup
    GSS: PermGroup
    R: tuple = field(repr=False)
    f_table: dict = field(repr=False, compare=False)


def torsion(S: RightLoop, cap: int | None = None) -> TorsionData:
    """Group torsion ``G_S`` and the group ``G_SS`` generated by translations."""
    k = S.order
    R = tuple(right_translation(S, u) for u in range(k))
    f_table = {(y, z): f_map(S, y, z) for y in range(k) for z in range(k)}
    GS = perm_group(list(f_table.values()), degree=k, cap=cap)
    GSS = perm_group(list(R), degree=k, cap=cap)
    for (y, z), f in f_table.items():
        if f.image[0] != 0:
            raise TorsionInvariantError(f"f({y},{z}) moves the identity")
    if not GS.element_set <= GSS.element_set:
        raise TorsionInvariantError("G_S is not contained in G_SS")
    if GSS.order != GS.order * k:
        raise TorsionInvariantError(f"|G_SS| = {GSS.order} != |G_S| * k = {GS.order * k}")
    return TorsionData(S, GS, GSS, R, f_table)


def theta(S: RightLoop, x: int, p: Permutation) -> int:
    return p.image[x]


def factorize(T: TorsionData, p: Permutation) -> tuple[Permutation, int]:
    """Split ``p`` in ``G_SS`` as ``h * R_x`` with ``h`` in ``G_S``."""
    if p not in T.GSS:
        raise NotInGSS(repr(p))
    x = p.image[0]
    h = p * T.R[x].inverse()
    if h not in T.GS:
        raise TorsionInvariantError(f"factor {h!r} of {p!r} is not in G_S")
    return h, x


def eta(T: TorsionData, x: int, f: Permutation) -> Permutation:
    """The ``G_S`` part of ``R_x * f``."""
    return factorize(T, T.R[x] * f)[0]


@dataclass(frozen=True)
class LoopRelation:
    """An equivalence relation on ``0..order-1`` given by its blocks.

    Blocks are stored sorted, and ordered by their least element.
    """

    order: int
    classes: tuple
    block_of: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        classes = tuple(sorted(tuple(sorted(c)) for c in self.classes))
        object.__setattr__(self, "classes", classes)
        block = [-1] * self.order
        for i, c in enumerate(classes):
            if not c:
                raise ValueError("empty block")
            for x in c:
                if not 0 <= x < self.order or block[x] != -1:
                    raise ValueError(f"element {x} out of range or in two blocks")
                block[x] = i
        if -1 in block:
            raise ValueError(f"element {block.index(-1)} is in no block")
        object.__setattr__(self, "block_of", tuple(block))

    @classmethod
    def from_labels(cls, labels) -> "LoopRelation":
        groups = {}
        for x, lab in enumerate(labels):
            groups.setdefault(lab, []).append(x)
        return cls(len(labels), tuple(groups.values()))

    def related(self, x: int, y: int) -> bool:
        return self.block_of[x] == self.block_of[y]

    def block(self, x: int) -> tuple:
        return self.classes[self.block_of[x]]


def diagonal(k: int) -> LoopRelation:
    return LoopRelation(k, tuple((x,) for x in range(k)))


def stabilizer_sets(T: TorsionData) -> list[frozenset]:
    return [stabilizer(T.GSS, x).element_set for x in range(T.loop.order)]


def sigma(T: TorsionData) -> LoopRelation:
    """Stability relation: equal stabilizers in ``G_SS`` (as element sets)."""
    stabs = stabilizer_sets(T)
    labels, seen = [], {}
    for s in stabs:
        labels.append(seen.setdefault(s, len(seen)))
    return LoopRelation.from_labels(labels)


def sigma_class_1(T: TorsionData) -> tuple:
    return sigma(T).block(0)


def is_congruence(S: RightLoop, R: LoopRelation) -> bool:
    """Whether ``R`` is a sub right loop of ``S x S``.

    Checked one coordinate at a time: for related ``a, b`` and any ``c`` the
    pairs ``(a o c, b o c)``, ``(c o a, c o b)``, ``(a/c, b/c)``, ``(c/a, c/b)``
    must be related; transitivity gives the componentwise statement.
    """
    if R.order != S.order:
        return False
    blk, t, d, k = R.block_of, S.table, S.divide, S.order
    for cls in R.classes:
        for a, b in itertools.combinations(cls, 2):
            ta, tb = t[a], t[b]
            for c in range(k):
                if blk[ta[c]] != blk[tb[c]] or blk[t[c][a]] != blk[t[c][b]]:
                    return False
                if blk[d[a][c]] != blk[d[b][c]] or blk[d[c][a]] != blk[d[c][b]]:
                    return False
    return True


def _partial_ok(S: RightLoop, labels: list, i: int) -> bool:
    """Constraints decidable once elements ``0..i`` are labelled."""
    t, d, k = S.table, S.divide, S.order
    li = labels[i]
    for b in range(i):
        if labels[b] != li:
            continue
        for c in range(k):
            for u, v in ((t[i][c], t[b][c]), (t[c][i], t[c][b]), (d[i][c], d[b][c]), (d[c][i], d[c][b])):
                if u <= i and v <= i and labels[u] != labels[v]:
                    return False
    # older related pairs whose images just became decidable through i
    for a in range(i):
        for b in range(a + 1, i):
            if labels[a] != labels[b]:
                continue
            ta, tb, da, db = t[a], t[b], d[a], d[b]
            for c in range(k):
                for u, v in ((ta[c], tb[c]), (t[c][a], t[c][b]), (da[c], db[c]), (d[c][a], d[c][b])):
                    if (u == i or v == i) and u <= i and v <= i and labels[u] != labels[v]:
                        return False
    return True


def congruences(S: RightLoop, cap: int = DEFAULT_CONGRUENCE_CAP) -> list[LoopRelation]:
    """All congruences, by a pruned scan over restricted-growth strings."""
    k = S.order
    if k > cap:
        raise LoopTooLarge(f"loop order {k} exceeds congruence cap {cap}")
    out = []
    labels = [0] * k

    def extend(i, nblocks):
        if i == k:
            R = LoopRelation.from_labels(labels)
            if is_congruence(S, R):
                out.append(R)
            return
        for lab in range(nblocks + 1):
            labels[i] = lab
            if _partial_ok(S, labels, i):
                extend(i + 1, max(nblocks, lab + 1))

    extend(1, 1)
    out.sort(key=lambda R: (len(R.classes), R.classes))
    return out


def congruence_with_kernel(S: RightLoop, T) -> LoopRelation | None:
    """The congruence whose identity class is ``T``, if there is one.

    Right division forces every class of such a congruence to be ``T o y``,
    so there is at most one candidate.
    """
    T = tuple(sorted(set(T)))
    if 0 not in T:
        return None
    t, k = S.table, S.order
    blocks = {frozenset(t[a][y] for a in T) for y in range(k)}
    if sum(len(b) for b in blocks) != k:
        return None
    R = LoopRelation(k, tuple(blocks))
    if R.block(0) != T or not is_congruence(S, R):
        return None
    return R


def invariant_subloops(S: RightLoop, cap: int = DEFAULT_CONGRUENCE_CAP) -> list[tuple[tuple, list[LoopRelation]]]:
    """Identity classes of all congruences, each with its witnessing congruences."""
    found = {}
    for R in congruences(S, cap):
        found.setdefault(R.block(0), []).append(R)
    return sorted(found.items(), key=lambda kv: (len(kv[0]), kv[0]))


def invariant_subloops_of_order(S: RightLoop, m: int) -> list[tuple[tuple, LoopRelation]]:
    """Invariant subloops with ``m`` elements, via :func:`congruence_with_kernel`."""
    out = []
    for rest in itertools.combinations(range(1, S.order), m - 1):
        R = congruence_with_kernel(S, (0,) + rest)
        if R is not None:
            out.append(((0,) + rest, R))
    return out


def quotient(S: RightLoop, R: LoopRelation) -> RightLoop:
    if not is_congruence(S, R):
        raise NotACongruence(repr(R.classes))
    blk = R.block_of
    m = len(R.classes)
    table = [[None] * m for _ in range(m)]
    for x in range(S.order):
        for y in range(S.order):
            v = blk[S.table[x][y]]
            cell = table[blk[x]][blk[y]]
            if cell is None:
                table[blk[x]][blk[y]] = v
            elif cell != v:
                raise IllDefined(f"blocks of {x} and {y} multiply to two blocks")
    return RightLoop(tuple(map(tuple, table)), label=f"{S.label}/R")


def is_associative(S: RightLoop) -> bool:
    t, k = S.table, S.order
    return all(t[t[x][y]][z] == t[x][t[y][z]] for x in range(k) for y in range(k) for z in range(k))


def loop_isomorphic(S1: RightLoop, S2: RightLoop, cap: int = DEFAULT_ISO_CAP) -> bool:
    """Identity-preserving isomorphism search with early pruning."""
    k = S1.order
    if k != S2.order:
        return False
    if k > cap:
        raise LoopTooLarge(f"loop order {k} exceeds isomorphism cap {cap}")
    t1, t2 = S1.table, S2.table
    phi = [-1] * k
    phi[0] = 0
    used = [False] * k
    used[0] = True

    def consistent(i):
        # every product among 0..i whose value is also mapped must agree
        for a in range(i + 1):
            for b in range(i + 1):
                if a != i and b != i:
                    continue
                c = t1[a][b]
                if phi[c] != -1 and phi[c] != t2[phi[a]][phi[b]]:
                    return False
        for a in range(i):
            for b in range(i):
                if t1[a][b] == i and t2[phi[a]][phi[b]] != phi[i]:
                    return False
        return True

    def extend(i):
        if i == k:
            return True
        for v in range(1, k):
            if used[v]:
                continue
            phi[i], used[v] = v, True
            if consistent(i) and extend(i + 1):
                return True
            phi[i], used[v] = -1, False
        return False

    return extend(1)
