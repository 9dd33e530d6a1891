"""Finite topological spaces as Alexandrov spaces of posets.

Open sets are the UP-closed subsets, so closure is down-closure and the
interior of A is the largest up-set inside A.  Subsets are int bitmasks over
point indices; enumerations run in binary counting order, which fixes which
witness gets reported.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .bool_core import iter_bits, validate_algebra
from .errors import MalformedInput, NotOpen, NotRegularOpen, SizeLimit

MAX_POINTS = 16


@dataclass(frozen=True)
class FinitePoset:
    size: int
    leq: tuple

    def __post_init__(self):
        rel = tuple(tuple(bool(v) for v in row) for row in self.leq)
        object.__setattr__(self, "leq", rel)
        n = self.size
        if len(rel) != n or any(len(row) != n for row in rel):
            raise MalformedInput(f"leq must be {n}x{n}")
        for a in range(n):
            if not rel[a][a]:
                raise MalformedInput(f"not reflexive at {a}")
            for b in range(n):
                if a != b and rel[a][b] and rel[b][a]:
                    raise MalformedInput(f"not antisymmetric at ({a}, {b})")
                if rel[a][b]:
                    for c in range(n):
                        if rel[b][c] and not rel[a][c]:
                            raise MalformedInput(f"not transitive at ({a}, {b}, {c})")

    @classmethod
    def from_relations(cls, size, pairs):
        """Reflexive-transitive closure of the given ``a <= b`` pairs."""
        rel = [[a == b for b in range(size)] for a in range(size)]
        for a, b in pairs:
            rel[a][b] = True
        for k in range(size):
            for i in range(size):
                if rel[i][k]:
                    for j in range(size):
                        if rel[k][j]:
                            rel[i][j] = True
        return cls(size, rel)

    def covers(self):
        """Pairs (a, b) with a < b and nothing strictly between."""
        n, rel = self.size, self.leq
        return [(a, b) for a in range(n) for b in range(n)
                if a != b and rel[a][b]
                and not any(c not in (a, b) and rel[a][c] and rel[c][b] for c in range(n))]


class AlexandrovSpace:
    def __init__(self, poset: FinitePoset, labels=None):
        if labels is not None and len(labels) != poset.size:
            raise MalformedInput("one label per point is required")
        self.poset = poset
        self.labels = tuple(labels) if labels is not None else tuple(range(poset.size))
        n = poset.size
        self.up = tuple(sum(1 << b for b in range(n) if poset.leq[a][b]) for a in range(n))
        self.down = tuple(sum(1 << b for b in range(n) if poset.leq[b][a]) for a in range(n))
        self.full = (1 << n) - 1

    @property
    def size(self):
        return self.poset.size

    def __eq__(self, other):
        return isinstance(other, AlexandrovSpace) and (self.poset, self.labels) == (other.poset, other.labels)

    def __hash__(self):
        return hash((self.poset, self.labels))

    def __repr__(self):
        return f"AlexandrovSpace(size={self.size})"

    def _check(self, A):
        if not 0 <= A <= self.full:
            raise MalformedInput(f"subset {A} out of range")

    def closure(self, A: int) -> int:
        self._check(A)
        out = 0
        for a in iter_bits(A):
            out |= self.down[a]
        return out

    def interior(self, A: int) -> int:
        self._check(A)
        out = 0
        for a in iter_bits(A):
            if self.up[a] & ~A == 0:
                out |= 1 << a
        return out

    def is_open(self, A: int) -> bool:
        return all(self.up[a] & ~A == 0 for a in iter_bits(A))

    def is_closed(self, A: int) -> bool:
        return all(self.down[a] & ~A == 0 for a in iter_bits(A))

    def regularize(self, U: int) -> int:
        if not self.is_open(U):
            raise NotOpen(f"{self.format(U)} is not open")
        return self.interior(self.closure(U))

    def is_regular_open(self, U: int) -> bool:
        return self.is_open(U) and self.interior(self.closure(U)) == U

    def ro_complement(self, U: int) -> int:
        return self.interior(self.full & ~self.closure(U))

    @cached_property
    def opens(self) -> tuple:
        if self.size > MAX_POINTS:
            raise SizeLimit(f"{self.size} points exceeds {MAX_POINTS}")
        return tuple(A for A in range(self.full + 1) if self.is_open(A))

    @cached_property
    def regular_opens(self) -> tuple:
        return tuple(U for U in self.opens if self.interior(self.closure(U)) == U)

    @cached_property
    def clopen_sets(self) -> tuple:
        return tuple(U for U in self.opens if self.is_closed(U))

    def points_of(self, A: int):
        return [self.labels[i] for i in iter_bits(A)]

    def format(self, A: int) -> str:
        return "{" + ", ".join(str(x) for x in self.points_of(A)) + "}"


def closure(X: AlexandrovSpace, A: int) -> int:
    return X.closure(A)


def interior(X: AlexandrovSpace, A: int) -> int:
    return X.interior(A)


def regularize(X: AlexandrovSpace, U: int) -> int:
    return X.regularize(U)


def _algebra_on(X, carrier, join, comp):
    pos = {U: i for i, U in enumerate(carrier)}
    meet_t = [[pos[U & V] for V in carrier] for U in carrier]
    join_t = [[pos[join(U, V)] for V in carrier] for U in carrier]
    neg_t = [pos[comp(U)] for U in carrier]
    labels = [frozenset(X.points_of(U)) for U in carrier]
    return validate_algebra(meet_t, join_t, neg_t, pos[0], pos[X.full], labels=labels)


def ro_algebra(X: AlexandrovSpace):
    """RO(X) with meet = ∩, join = r(∪), U* = int(X \\ closure(U)).

    Returns ``(algebra, table)`` where ``table[i]`` is the regular open
    (bitmask) represented by element ``i``; elements ascend by bitmask.
    """
    carrier = X.regular_opens
    B = _algebra_on(X, carrier, lambda U, V: X.interior(X.closure(U | V)), X.ro_complement)
    return B, carrier


def clopens(X: AlexandrovSpace):
    """Clop(X): sets both up- and down-closed, i.e. unions of components."""
    carrier = X.clopen_sets
    B = _algebra_on(X, carrier, lambda U, V: U | V, lambda U: X.full & ~U)
    return B, carrier


def _require_regular(X, family):
    family = [int(U) for U in family]
    for U in family:
        if not X.is_regular_open(U):
            raise NotRegularOpen(X.format(U) if 0 <= U <= X.full else U)
    return family


def ro_inf(X: AlexandrovSpace, family) -> int:
    out = X.full
    for U in _require_regular(X, family):
        out &= U
    return out


def ro_sup(X: AlexandrovSpace, family) -> int:
    union = 0
    for U in _require_regular(X, family):
        union |= U
    return X.interior(X.closure(union))


def is_ED(X: AlexandrovSpace):
    """``(True, None)`` or ``(False, witness)``: first open whose closure is not open."""
    for U in X.opens:
        if not X.is_open(X.closure(U)):
            return False, U
    return True, None
