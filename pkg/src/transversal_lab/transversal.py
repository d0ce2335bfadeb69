"""Right transversals of a subgroup and the right loop they induce."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator

from .errors import InvalidTransversal
from .groups import FiniteGroup, Subgroup, right_cosets, subgroup_generated
from .rightloop import RightLoop

MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class Transversal:
    """One representative per right coset ``Hx``; ``reps[0]`` is the identity.

    Loop elements are positions into ``reps``.
    """

    group: FiniteGroup = field(repr=False, compare=False)
    subgroup: Subgroup = field(repr=False, compare=False)
    reps: tuple
    # coset_of[g] = position of the representative of the coset Hg
    coset_of: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        reps = tuple(self.reps)
        object.__setattr__(self, "reps", reps)
        G, H = self.group, self.subgroup
        if not reps or reps[0] != 0:
            raise InvalidTransversal("reps[0] must be the identity")
        blocks = right_cosets(G, H)
        if len(reps) != len(blocks):
            raise InvalidTransversal(f"expected {len(blocks)} representatives, got {len(reps)}")
        owner = {}
        for bi, block in enumerate(blocks):
            for g in block:
                owner[g] = bi
        pos_of_block = {}
        for pos, r in enumerate(reps):
            if not 0 <= r < G.order:
                raise InvalidTransversal(f"element {r} out of range")
            b = owner[r]
            if b in pos_of_block:
                raise InvalidTransversal(f"two representatives of the coset of {r}")
            pos_of_block[b] = pos
        object.__setattr__(self, "coset_of", tuple(pos_of_block[owner[g]] for g in G.elements))

    @property
    def size(self) -> int:
        return len(self.reps)

    def position(self, g: int) -> int:
        """Position of the unique representative lying in ``Hg``."""
        return self.coset_of[g]


def transversal_count(G: FiniteGroup, H: Subgroup) -> int:
    return H.order ** (G.order // H.order - 1)


def splitmix64(state: int) -> Iterator[int]:
    while True:
        state = (state + 0x9E3779B97F4A7C15) & MASK64
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        yield z ^ (z >> 31)


def enumerate_transversals(
    G: FiniteGroup,
    H: Subgroup,
    limit: int | None = None,
    seed: int = 0,
    sample_size: int | None = None,
) -> Iterator[Transversal]:
    """Yield transversals of ``H`` in ``G``.

    All ``|H|^([G:H]-1)`` of them in lexicographic order of ``reps`` when the
    count is at most ``limit``; otherwise ``sample_size`` (default ``limit``)
    distinct ones chosen by a seeded splitmix64 stream, in draw order.
    """
    blocks = right_cosets(G, H)
    choices = [tuple(sorted(b)) for b in blocks[1:]]
    total = transversal_count(G, H)
    if limit is None or total <= limit:
        for combo in itertools.product(*choices):
            yield Transversal(G, H, (0,) + combo)
        return
    want = min(total, limit if sample_size is None else sample_size)
    rng = splitmix64(seed)
    seen = set()
    while len(seen) < want:
        reps = (0,) + tuple(c[next(rng) % len(c)] for c in choices)
        if reps in seen:
            continue
        seen.add(reps)
        yield Transversal(G, H, reps)


def induced_loop(G: FiniteGroup, H: Subgroup, S: Transversal) -> RightLoop:
    """The right loop on positions of ``S`` with ``x o y`` the rep of ``H x y``."""
    reps, pos, t = S.reps, S.coset_of, G.table
    table = tuple(tuple(pos[t[a][b]] for b in reps) for a in reps)
    return RightLoop(table, label=f"{G.name}/{list(H.elements)}/{list(reps)}")


def is_generating(G: FiniteGroup, S: Transversal) -> bool:
    return subgroup_generated(G, S.reps).order == G.order


def find_generating_transversal(G: FiniteGroup, H: Subgroup) -> Transversal | None:
    """First generating transversal in enumeration order, or ``None``."""
    for S in enumerate_transversals(G, H):
        if is_generating(G, S):
            return S
    return None


def theta_action(G: FiniteGroup, H: Subgroup, S: Transversal, x: int, h: int) -> int:
    """Right action of ``H`` on positions: the rep of ``H (reps[x] h)``."""
    if h not in H.elements:
        raise ValueError(f"{h} is not in the subgroup")
    return S.coset_of[G.table[S.reps[x]][h]]


def stab_H(G: FiniteGroup, H: Subgroup, S: Transversal, x: int) -> Subgroup:
    return Subgroup(G, tuple(h for h in H.elements if theta_action(G, H, S, x, h) == x))
