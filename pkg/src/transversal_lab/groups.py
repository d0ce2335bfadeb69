"""Finite groups given by Cayley tables, permutations and permutation groups.

Conventions used throughout the package:

* group elements are the integers ``0..n-1`` and ``0`` is always the identity;
* a product ``xy`` of permutations means "apply ``x`` first, then ``y``",
  i.e. ``(x*y)(i) == y(x(i))``.  Cayley tables built from permutations
  inherit this, so ``table[i][j]`` is the element "``i`` then ``j``".
"""

from __future__ import annotations

import os
import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (
    ClosureTooLarge,
    GroupTooLarge,
    MalformedCycle,
    NotAGroup,
    NotASubgroup,
)

DEFAULT_CLOSURE_CAP = 20160
DEFAULT_SUBGROUP_CAP = 48
CAP_ENV = "TRANSVERSAL_LAB_CAP"


def closure_cap(cap: int | None = None) -> int:
    if cap is not None:
        return cap
    env = os.environ.get(CAP_ENV)
    return int(env) if env else DEFAULT_CLOSURE_CAP


# ---------------------------------------------------------------------------
# permutations
# ---------------------------------------------------------------------------


class Permutation:
    """A bijection of ``0..degree-1``, stored as its image tuple."""

    __slots__ = ("image", "_hash")

    def __init__(self, image: Iterable[int]):
        image = tuple(image)
        if sorted(image) != list(range(len(image))):
            raise ValueError(f"not a permutation: {image}")
        self.image = image
        self._hash = hash(image)

    @classmethod
    def _raw(cls, image: tuple) -> "Permutation":
        p = object.__new__(cls)
        p.image = image
        p._hash = hash(image)
        return p

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls._raw(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, word: str, degree: int) -> "Permutation":
        """Parse 1-based cycle notation such as ``"(1 2)(2 3)"``.

        Cycles in one word are composed left to right: the leftmost cycle is
        applied first.
        """
        word = word.strip()
        if not re.fullmatch(r"(\(\s*(\d+(\s+\d+)*)?\s*\)\s*)*", word):
            raise MalformedCycle(f"cannot parse cycle word {word!r}")
        result = cls.identity(degree)
        for body in re.findall(r"\(([^)]*)\)", word):
            points = [int(t) for t in body.split()]
            if len(set(points)) != len(points):
                raise MalformedCycle(f"repeated point in cycle ({body})")
            for pt in points:
                if not 1 <= pt <= degree:
                    raise MalformedCycle(f"point {pt} outside 1..{degree}")
            img = list(range(degree))
            for a, b in zip(points, points[1:] + points[:1]):
                img[a - 1] = b - 1
            result = result * cls._raw(tuple(img))
        return result

    @property
    def degree(self) -> int:
        return len(self.image)

    def __call__(self, x: int) -> int:
        return self.image[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        # apply self, then other
        img = other.image
        return Permutation._raw(tuple(img[i] for i in self.image))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.image)
        for i, v in enumerate(self.image):
            inv[v] = i
        return Permutation._raw(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self.image))

    def order(self) -> int:
        p, k = self, 1
        while not p.is_identity():
            p, k = p * self, k + 1
        return k

    def cycles(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for i in range(len(self.image)):
            if i in seen or self.image[i] == i:
                continue
            cyc = [i]
            seen.add(i)
            j = self.image[i]
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self.image[j]
            out.append(tuple(cyc))
        return out

    def cycle_string(self, one_based: bool = False) -> str:
        shift = 1 if one_based else 0
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(str(c + shift) for c in cy) + ")" for cy in cyc)

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.image == other.image

    def __lt__(self, other: "Permutation") -> bool:
        return self.image < other.image

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Permutation({self.cycle_string()}, degree={self.degree})"


# ---------------------------------------------------------------------------
# abstract finite groups
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A group on ``0..n-1`` with identity ``0``, validated on construction.

    ``perms`` optionally records a concrete permutation for every element
    (groups built from permutations keep them so subgroups can be named by
    cycle words).
    """

    table: tuple
    name: str = "G"
    perms: tuple | None = field(default=None, repr=False)
    inverse: tuple = field(init=False, repr=False)

    def __post_init__(self):
        table = tuple(tuple(row) for row in self.table)
        object.__setattr__(self, "table", table)
        _check_group_table(table, require_identity_at_zero=True)
        n = len(table)
        inv = [0] * n
        for i in range(n):
            inv[i] = table[i].index(0)
        object.__setattr__(self, "inverse", tuple(inv))

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def elements(self) -> range:
        return range(len(self.table))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x, k = self.table[x][a], k + 1
        return k

    def label(self, a: int) -> str:
        if self.perms is not None:
            return self.perms[a].cycle_string(one_based=True)
        return str(a)

    def __repr__(self):
        return f"FiniteGroup({self.name!r}, order={self.order})"


def _check_group_table(table, require_identity_at_zero: bool) -> int:
    """Validate group axioms; return the identity index."""
    n = len(table)
    if n == 0:
        raise NotAGroup("empty table")
    for i, row in enumerate(table):
        if len(row) != n:
            raise NotAGroup("table is not square", {"row": i})
        for v in row:
            if not isinstance(v, int) or not 0 <= v < n:
                raise NotAGroup("entry out of range", {"row": i, "value": v})
    ident = None
    for e in range(n):
        if all(table[e][j] == j for j in range(n)) and all(table[i][e] == i for i in range(n)):
            ident = e
            break
    if ident is None or (require_identity_at_zero and ident != 0):
        raise NotAGroup("no identity" if ident is None else "identity not at index 0")
    full = set(range(n))
    for i in range(n):
        if set(table[i]) != full:
            raise NotAGroup("non-bijective row", {"row": i})
        if {table[r][i] for r in range(n)} != full:
            raise NotAGroup("non-bijective column", {"column": i})
    for a in range(n):
        ta = table[a]
        for b in range(n):
            tab = table[ta[b]]
            tb = table[b]
            for c in range(n):
                if tab[c] != ta[tb[c]]:
                    raise NotAGroup("non-associative triple", (a, b, c))
    return ident


def make_group_from_table(table: Sequence[Sequence[int]], name: str = "G") -> FiniteGroup:
    """Validate a Cayley table, relabelling so that the identity sits at 0."""
    table = [list(row) for row in table]
    e = _check_group_table(table, require_identity_at_zero=False)
    if e != 0:
        swap = list(range(len(table)))
        swap[0], swap[e] = e, 0
        # relabel: new index i corresponds to old element swap[i]
        table = [[swap[table[swap[i]][swap[j]]] for j in range(len(table))] for i in range(len(table))]
    return FiniteGroup(tuple(map(tuple, table)), name)


def close_permutations(generators: Sequence[Permutation], degree: int, cap: int | None = None) -> list[Permutation]:
    """Breadth-first closure of ``generators``; sorted lexicographically."""
    cap = closure_cap(cap)
    gens = list(dict.fromkeys(generators))
    ident = Permutation.identity(degree)
    seen = {ident}
    queue = deque([ident])
    while queue:
        p = queue.popleft()
        for g in gens:
            q = p * g
            if q not in seen:
                seen.add(q)
                if len(seen) > cap:
                    raise ClosureTooLarge(f"closure exceeds cap {cap}")
                queue.append(q)
    return sorted(seen)


def group_from_permutation_list(perms: Sequence[Permutation], name: str) -> FiniteGroup:
    """Cayley table of an explicitly listed permutation group (identity first)."""
    index = {p: i for i, p in enumerate(perms)}
    if perms[0] != Permutation.identity(perms[0].degree):
        raise NotAGroup("identity must be listed first")
    table = []
    for p in perms:
        row = []
        for q in perms:
            r = p * q
            if r not in index:
                raise NotAGroup("permutation list is not closed", (p, q))
            row.append(index[r])
        table.append(tuple(row))
    return FiniteGroup(tuple(table), name, perms=tuple(perms))


def make_group_from_permutations(
    generators: Sequence[str], degree: int, name: str | None = None, cap: int | None = None
) -> FiniteGroup:
    """Close 1-based cycle words under composition; elements in lex order."""
    gens = [Permutation.from_cycles(w, degree) for w in generators]
    elems = close_permutations(gens, degree, cap)
    return group_from_permutation_list(elems, name or "<" + ", ".join(generators) + ">")


# ---------------------------------------------------------------------------
# subgroups
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup = field(compare=False, repr=False)
    elements: tuple

    def __post_init__(self):
        elems = tuple(sorted(set(self.elements)))
        object.__setattr__(self, "elements", elems)
        G = self.parent
        s = set(elems)
        if 0 not in s:
            raise NotASubgroup("subgroup must contain the identity")
        for a in elems:
            if G.inverse[a] not in s:
                raise NotASubgroup(f"not closed under inverse at {a}")
            for b in elems:
                if G.table[a][b] not in s:
                    raise NotASubgroup(f"not closed under product at ({a}, {b})")
        if G.order % len(elems):
            raise NotASubgroup("order does not divide the group order")

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def index(self) -> int:
        return self.parent.order // len(self.elements)

    def __contains__(self, a):
        return a in self.elements

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def whole_group(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, tuple(G.elements))


def trivial_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, (0,))


def _close(G: FiniteGroup, seed: Iterable[int]) -> frozenset:
    elems = {0} | set(seed)
    frontier = list(elems)
    gens = sorted(set(seed))
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                c = G.table[a][g]
                if c not in elems:
                    elems.add(c)
                    nxt.append(c)
        frontier = nxt
    return frozenset(elems)


def subgroup_generated(G: FiniteGroup, seed: Iterable[int]) -> Subgroup:
    """Smallest subgroup containing ``seed``."""
    seed = list(seed)
    for a in seed:
        if not 0 <= a < G.order:
            raise IndexError(f"element {a} out of range")
    # finite group: closure under right multiplication by generators suffices
    return Subgroup(G, tuple(_close(G, seed)))


def all_subgroups(G: FiniteGroup, cap: int = DEFAULT_SUBGROUP_CAP) -> list[Subgroup]:
    """Every subgroup of ``G``, sorted by (order, elements)."""
    if G.order > cap:
        raise GroupTooLarge(f"|G| = {G.order} exceeds subgroup cap {cap}")
    cyclic = {_close(G, [a]) for a in G.elements}
    found = set(cyclic)
    frontier = set(cyclic)
    while frontier:
        nxt = set()
        for A in frontier:
            for C in cyclic:
                if C <= A:
                    continue
                J = _close(G, A | C)
                if J not in found:
                    found.add(J)
                    nxt.add(J)
        frontier = nxt
    subs = [tuple(sorted(s)) for s in found]
    subs.sort(key=lambda s: (len(s), s))
    return [Subgroup(G, s) for s in subs]


def right_cosets(G: FiniteGroup, H: Subgroup) -> list[tuple[int, ...]]:
    """Right cosets ``Hx``; the first block is ``H``, blocks ordered by min."""
    seen = set()
    blocks = []
    for x in G.elements:
        if x in seen:
            continue
        block = tuple(sorted(G.table[h][x] for h in H.elements))
        seen.update(block)
        blocks.append(block)
    return blocks


def conjugate(G: FiniteGroup, H: Subgroup, g: int) -> frozenset:
    """The set ``g^-1 H g``."""
    gi = G.inverse[g]
    return frozenset(G.table[G.table[gi][h]][g] for h in H.elements)


def core(G: FiniteGroup, H: Subgroup) -> Subgroup:
    """Intersection of all conjugates of ``H``."""
    inter = set(H.elements)
    for g in G.elements:
        inter &= conjugate(G, H, g)
    return Subgroup(G, tuple(inter))


def is_core_free(G: FiniteGroup, H: Subgroup) -> bool:
    return core(G, H).elements == (0,)


def normalizer(G: FiniteGroup, H: Subgroup) -> Subgroup:
    hs = frozenset(H.elements)
    return Subgroup(G, tuple(g for g in G.elements if conjugate(G, H, g) == hs))


def is_normal(G: FiniteGroup, H: Subgroup) -> bool:
    hs = frozenset(H.elements)
    return all(conjugate(G, H, g) == hs for g in G.elements)


# ---------------------------------------------------------------------------
# permutation groups
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PermGroup:
    """A permutation group with its full (lexicographically sorted) element list."""

    degree: int
    generators: tuple
    elements: tuple
    _members: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_members", frozenset(self.elements))

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def element_set(self) -> frozenset:
        return self._members

    def __contains__(self, p):
        return p in self._members

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def orbit(self, point: int) -> list[int]:
        return sorted({p(point) for p in self.elements})


def perm_group(generators: Sequence[Permutation], degree: int | None = None, cap: int | None = None) -> PermGroup:
    gens = tuple(dict.fromkeys(generators))
    if degree is None:
        if not gens:
            raise ValueError("degree required when there are no generators")
        degree = gens[0].degree
    if any(g.degree != degree for g in gens):
        raise ValueError("generators must share a common degree")
    return PermGroup(degree, gens, tuple(close_permutations(gens, degree, cap)))


def _from_elements(degree: int, elems: Iterable[Permutation]) -> PermGroup:
    elems = tuple(sorted(elems))
    return PermGroup(degree, elems, elems)


def stabilizer(P: PermGroup, point: int) -> PermGroup:
    if not 0 <= point < P.degree:
        raise IndexError(f"point {point} out of range")
    return _from_elements(P.degree, (p for p in P.elements if p.image[point] == point))


def perm_normalizer(P: PermGroup, Q: PermGroup) -> PermGroup:
    """Elements ``p`` of ``P`` with ``p^-1 Q p = Q``, by direct scan."""
    qs = Q.element_set
    if not qs <= P.element_set:
        raise NotASubgroup("Q is not contained in P")
    qgens = Q.generators or Q.elements
    keep = []
    for p in P.elements:
        pi = p.inverse()
        # conjugation preserves order, so generators landing in Q suffice
        if all(pi * q * p in qs for q in qgens):
            keep.append(p)
    return _from_elements(P.degree, keep)


def is_elementary_abelian_2(X) -> bool:
    """True iff every element squares to the identity (and pairs commute).

    Accepts a :class:`FiniteGroup`, :class:`Subgroup` or :class:`PermGroup`.
    The trivial group counts.
    """
    if isinstance(X, PermGroup):
        elems = X.elements
        square_ok = all((p * p).is_identity() for p in elems)
        return square_ok and all(p * q == q * p for p in elems for q in elems)
    if isinstance(X, Subgroup):
        G, elems = X.parent, X.elements
    else:
        G, elems = X, tuple(X.elements)
    t = G.table
    if any(t[a][a] != 0 for a in elems):
        return False
    return all(t[a][b] == t[b][a] for a in elems for b in elems)
