"""Filters and ultrafilters on finite Boolean algebras.

Members are stored as an int bitmask over element indices.  In a finite
algebra every ultrafilter is principal at an atom; :class:`Ultrafilter`
records that atom but keeps the subset form so the filter axioms can be
re-checked directly.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

from .bool_core import TWO, BoolHom, check_hom, iter_bits
from .errors import NotAHom, NotProper


@dataclass(frozen=True)
class Filter:
    algebra: object
    members: int

    def __contains__(self, a):
        return bool(self.members >> a & 1)

    def elements(self):
        return list(iter_bits(self.members))

    def __len__(self):
        return bin(self.members).count("1")

    @property
    def minimum(self) -> int:
        B = self.algebra
        return reduce(B.meet, self.elements(), B.one)


@dataclass(frozen=True)
class Ultrafilter(Filter):
    witness_atom: int = -1


def is_filter(B, members: int) -> bool:
    """Direct check of the three filter axioms on a member bitmask."""
    has = lambda a: bool(members >> a & 1)
    if not has(B.one) or has(B.zero):
        return False
    elems = list(iter_bits(members))
    for i, a in enumerate(elems):
        if B.upset(a) & ~members:
            return False
        for b in elems[i + 1:]:
            if not has(B.meet(a, b)):
                return False
    return True


def principal_filter(B, a) -> Filter:
    if a == B.zero:
        raise NotProper("the principal filter at 0 contains 0")
    return Filter(B, B.upset(a))


def filter_generated(B, seed) -> Filter:
    """Smallest filter containing ``seed``: the up-closure of its meet."""
    m = reduce(B.meet, [int(s) for s in seed], B.one)
    if m == B.zero:
        raise NotProper(f"seed {list(seed)} meets to 0")
    return Filter(B, B.upset(m))


def is_ultrafilter(F: Filter) -> bool:
    B = F.algebra
    return all((a in F) != (B.neg(a) in F) for a in B.elements())


def _principal_ultrafilter(B, atom) -> Ultrafilter:
    return Ultrafilter(B, B.upset(atom), atom)


def extend_to_ultrafilter(F: Filter) -> Ultrafilter:
    """Principal ultrafilter at the lowest-index atom below min(F)."""
    B = F.algebra
    if isinstance(F, Ultrafilter):
        return F
    low = F.minimum
    for t in B.atom_basis.atoms:
        if B.leq(t, low):
            return _principal_ultrafilter(B, t)
    raise NotProper("filter contains 0")


def enumerate_ultrafilters(B) -> list:
    return [_principal_ultrafilter(B, t) for t in B.atom_basis.atoms]


def ultrafilter_to_hom(U: Filter) -> BoolHom:
    B = U.algebra
    return BoolHom(B, TWO, [1 if a in U else 0 for a in B.elements()])


def hom_to_ultrafilter(v: BoolHom) -> Ultrafilter:
    if v.target.size != 2 or not check_hom(v):
        raise NotAHom("not a homomorphism into the two-element algebra")
    B = v.source
    members = sum(1 << a for a in B.elements() if v.table[a] == v.target.one)
    low = reduce(B.meet, iter_bits(members), B.one)
    return Ultrafilter(B, members, low)
