"""Clopens of Z_p as finite unions of balls ``a + p^n Z_p``.

A clopen is a set of residues mod p^level, kept at the smallest level that
can express it.  Structural equality of :class:`ZpClopen` is therefore
equality of subsets of Z_p.
"""
from __future__ import annotations

from dataclasses import dataclass

from .bool_core import BoolHom, powerset_algebra
from .errors import (
    InsufficientPrecision,
    MalformedInput,
    PrimeMismatch,
    SizeLimit,
)
from .profinite import _require_prime
from .stone import ContinuousMapFin, FiniteSpace

LEVEL_ALGEBRA_LIMIT = 1 << 16


def _is_saturated(p, level, members):
    """True iff ``members`` is a union of full fibres over level - 1."""
    step = p ** (level - 1)
    return all((r % step) + j * step in members for r in members for j in range(p))


def _normal_form(p, level, members):
    while level > 0 and _is_saturated(p, level, members):
        step = p ** (level - 1)
        members = frozenset(r % step for r in members)
        level -= 1
    if level == 0 and not members:
        return 0, frozenset()
    return level, members


@dataclass(frozen=True)
class ZpClopen:
    """Normalised on construction: ``ZpClopen(2, 2, {0, 2}) == ZpClopen(2, 1, {0})``."""

    p: int
    level: int
    members: frozenset

    def __post_init__(self):
        _require_prime(self.p)
        if self.level < 0:
            raise MalformedInput("level must be >= 0")
        members = frozenset(int(m) for m in self.members)
        bound = self.p ** self.level
        if any(not 0 <= m < bound for m in members):
            raise MalformedInput(f"members must be residues mod {self.p}^{self.level}")
        level, members = _normal_form(self.p, self.level, members)
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "members", members)

    def lift(self, n) -> frozenset:
        """The same set as residues mod p^n (n >= level)."""
        if n < self.level:
            raise MalformedInput(f"cannot express a level-{self.level} clopen at level {n}")
        step = self.p ** self.level
        return frozenset(r + j * step for r in self.members for j in range(self.p ** (n - self.level)))

    def is_empty(self):
        return not self.members

    def is_full(self):
        return self.level == 0 and bool(self.members)

    def balls(self):
        """(a, n) pairs for the balls a + p^n Z_p making up the set."""
        return [(a, self.level) for a in sorted(self.members)]

    def __str__(self):
        if self.is_empty():
            return "∅"
        if self.is_full():
            return "Z_%d" % self.p
        return " ∪ ".join(f"{a} + {self.p}^{n} Z_{self.p}" for a, n in self.balls())


def normalize(p, level, members) -> ZpClopen:
    return ZpClopen(p, level, frozenset(members))


def ball(p, a, n) -> ZpClopen:
    return ZpClopen(p, n, frozenset({a % p ** n}))


def full(p) -> ZpClopen:
    return ZpClopen(p, 0, frozenset({0}))


def empty(p) -> ZpClopen:
    return ZpClopen(p, 0, frozenset())


def _common(a, b):
    if a.p != b.p:
        raise PrimeMismatch(f"{a.p} != {b.p}")
    n = max(a.level, b.level)
    return n, a.lift(n), b.lift(n)


def clopen_union(a, b) -> ZpClopen:
    n, x, y = _common(a, b)
    return ZpClopen(a.p, n, x | y)


def clopen_intersection(a, b) -> ZpClopen:
    n, x, y = _common(a, b)
    return ZpClopen(a.p, n, x & y)


def clopen_difference(a, b) -> ZpClopen:
    n, x, y = _common(a, b)
    return ZpClopen(a.p, n, x - y)


def clopen_complement(a) -> ZpClopen:
    n = max(a.level, 1)
    return ZpClopen(a.p, n, frozenset(range(a.p ** n)) - a.lift(n))


def clopen_subset(a, b) -> bool:
    n, x, y = _common(a, b)
    return x <= y


def member(x, A: ZpClopen) -> bool:
    if x.p != A.p:
        raise PrimeMismatch(f"{x.p} != {A.p}")
    if A.level == 0:
        return bool(A.members)
    if x.precision < A.level:
        raise InsufficientPrecision(f"need precision {A.level}, have {x.precision}")
    return x.residues[A.level - 1] in A.members


@dataclass(frozen=True)
class LevelAlgebra:
    """The finite subalgebra of Clop(Z_p) generated by the balls of level n.

    Its atoms are the p^n balls ``a + p^n Z_p``; the element with bitmask m
    is the union of the balls whose residue bits are set in m.
    """

    p: int
    n: int

    @property
    def n_atoms(self):
        return self.p ** self.n

    def atoms(self):
        return [ball(self.p, a, self.n) for a in range(self.n_atoms)]

    @property
    def algebra(self):
        """The powerset algebra on residues mod p^n (at most 16 atoms)."""
        return powerset_algebra(range(self.n_atoms))

    def contains(self, E: ZpClopen) -> bool:
        return E.p == self.p and E.level <= self.n

    def element_of(self, E: ZpClopen) -> int:
        if not self.contains(E):
            raise MalformedInput("clopen is not a union of level-n balls")
        return sum(1 << r for r in E.lift(self.n))

    def clopen_of(self, mask: int) -> ZpClopen:
        return ZpClopen(self.p, self.n, frozenset(r for r in range(self.n_atoms) if mask >> r & 1))

    def stone_points(self) -> FiniteSpace:
        return FiniteSpace(range(self.n_atoms))


def level_algebra(p, n) -> LevelAlgebra:
    _require_prime(p)
    if n < 0:
        raise MalformedInput("level must be >= 0")
    if p ** n > LEVEL_ALGEBRA_LIMIT:
        raise SizeLimit(f"{p}^{n} atoms exceeds {LEVEL_ALGEBRA_LIMIT}")
    return LevelAlgebra(p, n)


def inclusion_hom(p, n) -> BoolHom:
    """Level n algebra -> level n+1 algebra, sending a clopen to itself."""
    lo, hi = level_algebra(p, n), level_algebra(p, n + 1)
    src = lo.algebra
    return BoolHom(src, hi.algebra, [hi.element_of(lo.clopen_of(m)) for m in src.elements()])


def reduction_map(p, n) -> ContinuousMapFin:
    """Z/p^{n+1} -> Z/p^n as a map between the level Stone spaces."""
    q = p ** n
    return ContinuousMapFin(FiniteSpace(range(q * p)), FiniteSpace(range(q)), [x % q for x in range(q * p)])


def granule_operator(B0: LevelAlgebra, E: ZpClopen) -> ZpClopen:
    """Union of the atoms of B0 that lie inside E.

    For clopen E the regular hull int(closure(E)) is E itself, so this is
    the largest union of level-n balls contained in E.
    """
    if B0.p != E.p:
        raise PrimeMismatch(f"{B0.p} != {E.p}")
    m = max(B0.n, E.level)
    inside = E.lift(m)
    q = B0.p ** B0.n
    per_ball = B0.p ** (m - B0.n)
    kept = [a for a in range(q) if all(a + j * q in inside for j in range(per_ball))]
    return ZpClopen(B0.p, B0.n, frozenset(kept))
