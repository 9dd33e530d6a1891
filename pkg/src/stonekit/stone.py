"""Finite Stone spaces, the duality functors and their natural isomorphisms.

Every finite Stone space is discrete, so spaces are bare point lists and
continuous maps are total index tables.  Isomorphisms are always returned as
explicit tables so they can be compared, never as existence flags.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .bool_core import BoolHom, bits_of, check_hom, powerset_algebra
from .errors import MalformedInput, NotAHom, NotSurjective, ShapeMismatch, StoneError
from .filters import enumerate_ultrafilters


@dataclass(frozen=True)
class FiniteSpace:
    points: tuple

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        if len(set(self.points)) != len(self.points):
            raise MalformedInput("point labels must be distinct")

    def __len__(self):
        return len(self.points)


@dataclass(frozen=True)
class StoneSpaceFin(FiniteSpace):
    """X_B: the ultrafilters of ``algebra`` in atom order."""

    algebra: object = None

    def index_of(self, members: int) -> int:
        """Point whose ultrafilter has exactly these members."""
        try:
            return self._by_members[members]
        except KeyError:
            raise StoneError("no ultrafilter with these members") from None

    @property
    def _by_members(self):
        cache = self.__dict__.get("_lookup")
        if cache is None:
            cache = {U.members: i for i, U in enumerate(self.points)}
            object.__setattr__(self, "_lookup", cache)
        return cache


@dataclass(frozen=True)
class ContinuousMapFin:
    source: FiniteSpace
    target: FiniteSpace
    assignment: tuple

    def __post_init__(self):
        object.__setattr__(self, "assignment", tuple(int(t) for t in self.assignment))
        if len(self.assignment) != len(self.source.points):
            raise MalformedInput("assignment must have one entry per source point")
        if any(not 0 <= t < len(self.target.points) for t in self.assignment):
            raise MalformedInput("assignment points outside the target")

    def __call__(self, i):
        return self.assignment[i]

    def is_bijective(self) -> bool:
        return (len(self.source.points) == len(self.target.points)
                and len(set(self.assignment)) == len(self.assignment))

    def is_surjective(self) -> bool:
        return len(set(self.assignment)) == len(self.target.points)


@dataclass(frozen=True)
class ClopenSetFin:
    space: FiniteSpace
    members: int

    def points(self):
        return [p for i, p in enumerate(self.space.points) if self.members >> i & 1]


def identity_map(X) -> ContinuousMapFin:
    return ContinuousMapFin(X, X, range(len(X.points)))


def compose_maps(g: ContinuousMapFin, f: ContinuousMapFin) -> ContinuousMapFin:
    """g ∘ f."""
    if f.target != g.source:
        raise ShapeMismatch("f.target is not g.source")
    return ContinuousMapFin(f.source, g.target, [g.assignment[x] for x in f.assignment])


@lru_cache(maxsize=256)
def stone_space(B) -> StoneSpaceFin:
    return StoneSpaceFin(tuple(enumerate_ultrafilters(B)), B)


def hat(B, a) -> ClopenSetFin:
    """The basic clopen {U in X_B : a in U}."""
    X = stone_space(B)
    return ClopenSetFin(X, sum(1 << i for i, U in enumerate(X.points) if a in U))


def clop(X):
    """Clop(X) of a finite discrete space: its full powerset algebra."""
    return powerset_algebra(X.points)


def eta(B) -> BoolHom:
    """a -> hat(a), as a hom B -> Clop(X_B)."""
    X = stone_space(B)
    return BoolHom(B, clop(X), [hat(B, a).members for a in B.elements()])


def phi(X) -> ContinuousMapFin:
    """x -> U_x = {C : x in C}, as a map X -> X_{Clop(X)}."""
    C = clop(X)
    XC = stone_space(C)
    idx = np.arange(C.size)
    return ContinuousMapFin(
        X, XC, [XC.index_of(bits_of((idx >> x) & 1)) for x in range(len(X.points))]
    )


def dual_map(h: BoolHom) -> ContinuousMapFin:
    """S(h) = h^*: X_C -> X_B, U -> h^{-1}(U)."""
    if not check_hom(h):
        raise NotAHom("dual_map needs a Boolean homomorphism")
    XB, XC = stone_space(h.source), stone_space(h.target)
    assignment = []
    for U in XC.points:
        members = sum(1 << b for b, hb in enumerate(h.table) if U.members >> hb & 1)
        assignment.append(XB.index_of(members))
    return ContinuousMapFin(XC, XB, assignment)


def clop_pullback(f: ContinuousMapFin) -> BoolHom:
    """C(f) = f^{-1}: Clop(Y) -> Clop(X)."""
    CY, CX = clop(f.target), clop(f.source)
    idx = np.arange(CY.size, dtype=np.int64)
    table = np.zeros(CY.size, dtype=np.int64)
    for x, y in enumerate(f.assignment):
        table |= ((idx >> y) & 1) << x
    return BoolHom(CY, CX, table.tolist())


@dataclass(frozen=True)
class NaturalityResult:
    ok: bool
    square: str = ""
    witness: object = None

    def __bool__(self):
        return self.ok


def _eta_square(h: BoolHom) -> NaturalityResult:
    # eta_C ∘ h  ==  C(S(h)) ∘ eta_B
    left = [eta(h.target).table[x] for x in h.table]
    back = clop_pullback(dual_map(h))
    right = [back.table[x] for x in eta(h.source).table]
    for a, (l, r) in enumerate(zip(left, right)):
        if l != r:
            return NaturalityResult(False, "eta", a)
    return NaturalityResult(True, "eta")


def _phi_square(f: ContinuousMapFin) -> NaturalityResult:
    # Phi_Y ∘ f  ==  S(C(f)) ∘ Phi_X
    left = [phi(f.target).assignment[y] for y in f.assignment]
    fwd = dual_map(clop_pullback(f))
    right = [fwd.assignment[u] for u in phi(f.source).assignment]
    for x, (l, r) in enumerate(zip(left, right)):
        if l != r:
            return NaturalityResult(False, "phi", x)
    return NaturalityResult(True, "phi")


def naturality_check(morphism) -> NaturalityResult:
    """Check both naturality squares for a hom or a finite map.

    A hom h is checked on the eta square and S(h) on the Phi square; a map
    f on the Phi square and C(f) on the eta square.  The first failing
    square is reported with the offending element or point.
    """
    if isinstance(morphism, BoolHom):
        first, second = _eta_square(morphism), lambda: _phi_square(dual_map(morphism))
    else:
        first, second = _phi_square(morphism), lambda: _eta_square(clop_pullback(morphism))
    return first if not first else second()


def beta_finite(S):
    """(beta S, iota) for a finite discrete S; iota is phi(S)."""
    iota = phi(S)
    return iota.target, iota


def beta_extend(S, f: ContinuousMapFin) -> ContinuousMapFin:
    """Extension of f: S -> K along iota, by ultrafilter convergence.

    In a finite discrete K the pushed-forward ultrafilter f_*(U) converges
    to the unique k whose fibre f^{-1}({k}) belongs to U.
    """
    betaS = stone_space(clop(S))
    assignment = []
    for U in betaS.points:
        hits = [k for k in range(len(f.target.points))
                if U.members >> sum(1 << x for x, y in enumerate(f.assignment) if y == k) & 1]
        assignment.append(hits[0])
    return ContinuousMapFin(betaS, f.target, assignment)


def gleason_lift(f: ContinuousMapFin, g: ContinuousMapFin) -> ContinuousMapFin:
    """h: P -> X with f ∘ h = g, choosing the lowest-index preimage."""
    if f.target != g.target:
        raise ShapeMismatch("f and g must share their target")
    first = {}
    for x, y in enumerate(f.assignment):
        first.setdefault(y, x)
    missing = [y for y in range(len(f.target.points)) if y not in first]
    if missing:
        raise NotSurjective(f"no preimage for target point {missing[0]}")
    return ContinuousMapFin(g.source, f.source, [first[y] for y in g.assignment])

