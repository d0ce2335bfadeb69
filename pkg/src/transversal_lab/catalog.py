"""Built-in small groups with fixed element numbering.

Numbering per family (index 0 is always the identity):

``cyclic(n)``        index ``i`` is ``r^i`` where ``r = (1 2 ... n)``.
``dihedral(n)``      order ``2n``; index ``i + n*j`` is ``r^i s^j`` with
                     ``r = (1 2 ... n)`` and ``s`` the reflection fixing 1.
``symmetric(n)``     all permutations of ``1..n``, lexicographic on images.
``alternating(n)``   even permutations, lexicographic on images.
``klein4``           index ``a + 2b`` is ``x^a y^b``; as permutations
                     ``1 = (1 2)(3 4)``, ``2 = (1 3)(2 4)``, ``3 = (1 4)(2 3)``.
``quaternion8``      ``1, i, j, k, -1, -i, -j, -k``.
``A*B``              direct product; index ``a*|B| + b`` is ``(a, b)``.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import re
from dataclasses import dataclass
from functools import lru_cache

from .errors import ParameterOutOfRange, UnknownFamily
from .groups import FiniteGroup, Permutation, group_from_permutation_list

FAMILIES = ("cyclic", "dihedral", "symmetric", "alternating", "quaternion8", "klein4", "direct_product")
_SHORT = {"C": "cyclic", "D": "dihedral", "S": "symmetric", "A": "alternating"}


def _cyclic(n):
    r = Permutation([(i + 1) % n for i in range(n)])
    perms = [Permutation.identity(n)]
    for _ in range(n - 1):
        perms.append(perms[-1] * r)
    return group_from_permutation_list(perms, f"C{n}")


def _dihedral(n):
    r = Permutation([(i + 1) % n for i in range(n)])
    s = Permutation([(-i) % n for i in range(n)])
    rots = [Permutation.identity(n)]
    for _ in range(n - 1):
        rots.append(rots[-1] * r)
    perms = rots + [p * s for p in rots]
    if n == 2:
        # r and s act identically on 2 points; use a faithful action on 4
        perms = [Permutation(p) for p in ((0, 1, 2, 3), (1, 0, 3, 2), (2, 3, 0, 1), (3, 2, 1, 0))]
    return group_from_permutation_list(perms, f"D{n}")


def _parity(img):
    inv = sum(1 for i in range(len(img)) for j in range(i + 1, len(img)) if img[i] > img[j])
    return inv % 2


def _symmetric(n, even_only=False):
    perms = [Permutation(p) for p in itertools.permutations(range(n)) if not even_only or _parity(p) == 0]
    return group_from_permutation_list(perms, f"{'A' if even_only else 'S'}{n}")


def _klein4():
    perms = [Permutation(p) for p in ((0, 1, 2, 3), (1, 0, 3, 2), (2, 3, 0, 1), (3, 2, 1, 0))]
    return group_from_permutation_list(perms, "K4")


def _quaternion8():
    # units 1, i, j, k as 0..3; unit product = (sign, unit)
    unit = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }
    table = []
    for a in range(8):
        row = []
        for b in range(8):
            sa, ua = (1, a) if a < 4 else (-1, a - 4)
            sb, ub = (1, b) if b < 4 else (-1, b - 4)
            s, u = unit[(ua, ub)]
            s *= sa * sb
            row.append(u if s == 1 else u + 4)
        table.append(tuple(row))
    return FiniteGroup(tuple(table), "Q8")


def direct_product(A: FiniteGroup, B: FiniteGroup) -> FiniteGroup:
    m = B.order
    table = tuple(
        tuple(A.table[a1][a2] * m + B.table[b1][b2] for a2 in A.elements for b2 in B.elements)
        for a1 in A.elements
        for b1 in B.elements
    )
    perms = None
    if A.perms is not None and B.perms is not None:
        da = A.perms[0].degree
        perms = tuple(
            Permutation(pa.image + tuple(da + v for v in pb.image)) for pa in A.perms for pb in B.perms
        )
    return FiniteGroup(table, f"{A.name}x{B.name}", perms=perms)


@lru_cache(maxsize=None)
def catalog(family: str, parameter=None) -> FiniteGroup:
    """Return the named group; ``direct_product`` takes a pair of groups."""
    if family == "cyclic":
        _need_int(parameter, 1, 5040)
        return _cyclic(parameter)
    if family == "dihedral":
        _need_int(parameter, 2, 2520)
        return _dihedral(parameter)
    if family == "symmetric":
        _need_int(parameter, 1, 7)
        return _symmetric(parameter)
    if family == "alternating":
        _need_int(parameter, 1, 7)
        return _symmetric(parameter, even_only=True)
    if family == "quaternion8":
        return _quaternion8()
    if family == "klein4":
        return _klein4()
    if family == "direct_product":
        if not (isinstance(parameter, tuple) and len(parameter) == 2):
            raise ParameterOutOfRange("direct_product takes a pair of groups")
        return direct_product(*parameter)
    raise UnknownFamily(family)


def _need_int(p, lo, hi):
    if not isinstance(p, int) or not lo <= p <= hi:
        raise ParameterOutOfRange(f"parameter {p!r} not in {lo}..{hi}")


def parse_group_ref(ref: str) -> FiniteGroup:
    """Parse ``family:param``, short names like ``D4``, and ``A*B`` products.

    ``C2xD4`` style names (as printed by the catalog) are accepted too.
    """
    ref = ref.strip()
    if "*" in ref:
        parts = [parse_group_ref(p) for p in ref.split("*")]
        g = parts[0]
        for h in parts[1:]:
            g = catalog("direct_product", (g, h))
        return g
    if ":" in ref:
        fam, _, param = ref.partition(":")
        if fam not in FAMILIES:
            raise UnknownFamily(fam)
        try:
            return catalog(fam, int(param))
        except ValueError:
            raise ParameterOutOfRange(f"bad parameter {param!r}") from None
    if ref in ("quaternion8", "Q8"):
        return catalog("quaternion8")
    if ref in ("klein4", "K4"):
        return catalog("klein4")
    if re.fullmatch(r"([CDSA]\d+|K4|Q8)(x([CDSA]\d+|K4|Q8))+", ref):
        return parse_group_ref("*".join(ref.split("x")))
    m = re.fullmatch(r"([CDSA])(\d+)", ref)
    if m:
        return catalog(_SHORT[m.group(1)], int(m.group(2)))
    raise UnknownFamily(ref)


@dataclass(frozen=True)
class CatalogEntry:
    ref: str
    order: int
    same_as: str | None = None

    def build(self) -> FiniteGroup:
        return parse_group_ref(self.ref)


_PRODUCTS = (
    ("C2*C2*C2", 8), ("C2*C4", 8), ("C3*C3", 9), ("C2*C6", 12), ("C2*S3", 12),
    ("C2*C8", 16), ("C4*C4", 16), ("C2*C2*C4", 16), ("C2*C2*C2*C2", 16),
    ("C2*D4", 16), ("C2*Q8", 16),
    ("C2*A4", 24), ("C3*Q8", 24), ("C4*S3", 24), ("C2*C2*S3", 24), ("C2*C12", 24), ("C2*C2*C6", 24),
    ("C3*S3", 18), ("C3*C6", 18),
    ("C5*C5", 25), ("C3*C9", 27), ("C3*C3*C3", 27),
)

# isomorphisms between listed entries, used only to annotate the listing
_KNOWN_SAME = {"D3": "S3", "C2*S3": "D6"}


def catalog_listing(max_order: int = 16) -> list[CatalogEntry]:
    """Catalog entries of order at most ``max_order`` in a fixed order."""
    out = []
    for n in range(1, max_order + 1):
        out.append(CatalogEntry(f"C{n}", n))
    out.append(CatalogEntry("K4", 4))
    out.append(CatalogEntry("Q8", 8))
    n = 3
    while 2 * n <= max_order:
        out.append(CatalogEntry(f"D{n}", 2 * n))
        n += 1
    # smaller symmetric/alternating groups are cyclic and already listed
    for n in range(3, 8):
        if _factorial(n) <= max_order:
            out.append(CatalogEntry(f"S{n}", _factorial(n)))
    for n in range(4, 8):
        if _factorial(n) // 2 <= max_order:
            out.append(CatalogEntry(f"A{n}", _factorial(n) // 2))
    for ref, o in _PRODUCTS:
        if o <= max_order:
            out.append(CatalogEntry(ref, o))
    out = [CatalogEntry(e.ref, e.order, _KNOWN_SAME.get(e.ref)) for e in out if e.order <= max_order]
    listed = {e.ref for e in out}
    out = [e if e.same_as in listed else CatalogEntry(e.ref, e.order) for e in out]
    return out


def _factorial(n):
    f = 1
    for i in range(2, n + 1):
        f *= i
    return f


def catalog_hash(entries) -> str:
    """Content hash of the catalog entries (names and Cayley tables)."""
    h = hashlib.sha256()
    for e in entries:
        G = e.build()
        h.update(json.dumps([e.ref, G.table], separators=(",", ":")).encode())
    return h.hexdigest()
