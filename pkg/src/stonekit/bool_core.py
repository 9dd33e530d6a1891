"""Finite Boolean algebras as dense index tables.

Elements are the integers ``0 .. size-1``.  A table-backed algebra stores
row-major ``meet``/``join`` tables and a ``neg`` vector; the powerset algebra
uses bit operations on the indices directly (index == subset bitmask) so it
scales to 16 atoms without materialising 2^32-entry tables.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import (
    AxiomViolation,
    DegenerateAlgebra,
    InvalidModulus,
    MalformedInput,
    ShapeMismatch,
    SizeLimit,
)

MAX_SIZE = 1 << 16
MAX_ATOMS = 16

# Order in which validate_algebra reports failures.
AXIOMS = (
    "commutativity",
    "associativity",
    "absorption",
    "distributivity",
    "complement",
    "bounds",
)

# Above this many elements check_hom switches from the exhaustive pairwise
# test to the (equivalent) partition-of-unity test on atoms.
EXHAUSTIVE_HOM_LIMIT = 1 << 12


def bits_of(flags) -> int:
    """Pack a boolean vector into an int bitmask (bit i <-> flags[i])."""
    flags = np.asarray(flags, dtype=bool)
    if flags.size == 0:
        return 0
    return int.from_bytes(np.packbits(flags, bitorder="little").tobytes(), "little")


def iter_bits(mask: int):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


class FiniteBoolAlgebra:
    """A validated finite Boolean algebra.

    Build instances with :func:`validate_algebra`, :func:`powerset_algebra`
    or :func:`idempotent_algebra`; the constructor itself trusts its input.
    """

    kind = "table"

    def __init__(self, meet, join, neg, zero, one, labels=None):
        self._meet = _frozen(meet)
        self._join = _frozen(join)
        self._neg = _frozen(neg)
        self.zero = int(zero)
        self.one = int(one)
        self.labels = None if labels is None else tuple(labels)

    @property
    def size(self) -> int:
        return len(self._neg)

    @property
    def meet_table(self):
        return self._meet

    @property
    def join_table(self):
        return self._join

    @property
    def neg_table(self):
        return self._neg

    def elements(self):
        return range(self.size)

    def label(self, a):
        return a if self.labels is None else self.labels[a]

    def meet(self, a, b) -> int:
        return int(self._meet[a, b])

    def join(self, a, b) -> int:
        return int(self._join[a, b])

    def neg(self, a) -> int:
        return int(self._neg[a])

    # vectorised forms, broadcasting over numpy index arrays
    def vmeet(self, a, b):
        return self._meet[a, b]

    def vjoin(self, a, b):
        return self._join[a, b]

    def vneg(self, a):
        return self._neg[a]

    def leq(self, a, b) -> bool:
        return self.meet(a, b) == a

    def upset(self, a) -> int:
        """Bitmask of ``{b : a <= b}``."""
        return bits_of(self._meet[a] == a)

    def downset(self, a) -> int:
        return bits_of(self._meet[:, a] == np.arange(self.size))

    @cached_property
    def atom_basis(self) -> AtomBasis:
        atom_list, masks = _atom_masks(self._meet, self.zero)
        return AtomBasis(self, tuple(atom_list), masks)

    def _key(self):
        return (self.kind, self.size, self.zero, self.one,
                self._meet.tobytes(), self._join.tobytes(), self._neg.tobytes())

    @cached_property
    def _hash(self):
        return hash(self._key())

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FiniteBoolAlgebra) or self.kind != other.kind:
            return NotImplemented
        return self._hash == other._hash and self._key() == other._key()

    def __repr__(self):
        return f"FiniteBoolAlgebra(size={self.size}, atoms={len(self.atom_basis.atoms)})"


class PowersetAlgebra(FiniteBoolAlgebra):
    """P(points) with element index equal to the subset bitmask."""

    kind = "powerset"

    def __init__(self, points):
        self.points = tuple(points)
        k = len(self.points)
        self.zero = 0
        self.one = (1 << k) - 1
        self.labels = None

    @property
    def size(self):
        return 1 << len(self.points)

    @cached_property
    def _meet(self):
        idx = np.arange(self.size)
        return _frozen(np.bitwise_and.outer(idx, idx))

    @cached_property
    def _join(self):
        idx = np.arange(self.size)
        return _frozen(np.bitwise_or.outer(idx, idx))

    @cached_property
    def _neg(self):
        return _frozen(self.one ^ np.arange(self.size))

    def label(self, a):
        return frozenset(self.points[i] for i in iter_bits(a))

    def meet(self, a, b):
        return int(a) & int(b)

    def join(self, a, b):
        return int(a) | int(b)

    def neg(self, a):
        return self.one ^ int(a)

    def vmeet(self, a, b):
        return np.bitwise_and(a, b)

    def vjoin(self, a, b):
        return np.bitwise_or(a, b)

    def vneg(self, a):
        return np.bitwise_xor(a, self.one)

    def leq(self, a, b):
        return int(a) & int(b) == int(a)

    def upset(self, a):
        idx = np.arange(self.size)
        return bits_of((idx & a) == a)

    def downset(self, a):
        idx = np.arange(self.size)
        return bits_of((idx & a) == idx)

    @cached_property
    def atom_basis(self):
        k = len(self.points)
        return AtomBasis(self, tuple(1 << i for i in range(k)), _frozen(np.arange(self.size)))

    def _key(self):
        return (self.kind, self.points)

    def __repr__(self):
        return f"PowersetAlgebra(points={self.points!r})"


@dataclass(frozen=True, eq=False)
class AtomBasis:
    """Atoms of an algebra with the isomorphism onto the powerset of atoms.

    ``mask_of(e)`` has bit ``i`` set iff ``atoms[i] <= e``.
    """

    algebra: FiniteBoolAlgebra
    atoms: tuple
    masks: np.ndarray

    def mask_of(self, e) -> int:
        return int(self.masks[e])

    @cached_property
    def _inverse(self):
        inv = np.empty(len(self.masks), dtype=np.int64)
        inv[self.masks] = np.arange(len(self.masks))
        return inv

    def element_of(self, mask) -> int:
        return int(self._inverse[mask])

    def atoms_below(self, e):
        return [self.atoms[i] for i in iter_bits(self.mask_of(e))]


@dataclass(frozen=True)
class BoolHom:
    source: FiniteBoolAlgebra
    target: FiniteBoolAlgebra
    table: tuple

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(int(t) for t in self.table))

    def __call__(self, a):
        return self.table[a]


def _frozen(arr):
    arr = np.array(arr, dtype=np.int64)
    arr.setflags(write=False)
    return arr


def _atom_masks(meet, zero):
    n = meet.shape[0]
    idx = np.arange(n)
    order = meet == idx[:, None]  # order[a, b] <=> a <= b
    below = order.sum(axis=0)
    atom_list = [int(a) for a in idx if a != zero and order[zero, a] and below[a] == 2]
    masks = np.zeros(n, dtype=np.int64)
    for j, t in enumerate(atom_list[:62]):
        masks |= order[t].astype(np.int64) << j
    return atom_list, _frozen(masks)


def _is_powerset_image(meet, join, neg, zero, one):
    """True iff the structure is isomorphic to P(atoms) via mask_of.

    Sound as a validity test: an isomorphism onto a powerset algebra forces
    every Boolean law, so the triple-wise checks are only needed to name the
    first failing axiom.
    """
    n = len(neg)
    atom_list, masks = _atom_masks(meet, zero)
    k = len(atom_list)
    if k > MAX_ATOMS or n != 1 << k:
        return False
    if len(np.unique(masks)) != n:
        return False
    full = (1 << k) - 1
    if masks[zero] != 0 or masks[one] != full:
        return False
    if not np.array_equal(masks[neg], full ^ masks):
        return False
    if not np.array_equal(masks[meet], masks[:, None] & masks[None, :]):
        return False
    return bool(np.array_equal(masks[join], masks[:, None] | masks[None, :]))


def _first_pair(bad):
    hits = np.argwhere(bad)
    return tuple(int(v) for v in hits[0]) if len(hits) else None


def _first_triple(n, block_bad):
    chunk = max(1, (1 << 22) // max(1, n * n))
    for start in range(0, n, chunk):
        rows = np.arange(start, min(n, start + chunk))
        bad = block_bad(rows)
        hits = np.argwhere(bad)
        if len(hits):
            i, b, c = hits[0]
            return int(rows[i]), int(b), int(c)
    return None


def first_violation(meet, join, neg, zero, one):
    """Return ``(axiom, witness)`` for the first failing law, or None."""
    meet = np.asarray(meet)
    join = np.asarray(join)
    neg = np.asarray(neg)
    n = len(neg)
    idx = np.arange(n)

    w = _first_pair((meet != meet.T) | (join != join.T))
    if w:
        return "commutativity", w

    def assoc(rows):
        # (a∘b)∘c against a∘(b∘c), indexed [a, b, c]
        lhs_m = meet[meet[rows][:, :, None], idx[None, None, :]]
        rhs_m = meet[rows][:, meet]
        lhs_j = join[join[rows][:, :, None], idx[None, None, :]]
        rhs_j = join[rows][:, join]
        return (lhs_m != rhs_m) | (lhs_j != rhs_j)

    w = _first_triple(n, assoc)
    if w:
        return "associativity", w

    rows = idx[:, None]
    w = _first_pair((meet[rows, join] != rows) | (join[rows, meet] != rows))
    if w:
        return "absorption", w

    def distrib(rows):
        ma = meet[rows]  # a∧b for each row a
        ja = join[rows]
        lhs_m = ma[:, join]
        rhs_m = join[ma[:, :, None], ma[:, None, :]]
        lhs_j = ja[:, meet]
        rhs_j = meet[ja[:, :, None], ja[:, None, :]]
        return (lhs_m != rhs_m) | (lhs_j != rhs_j)

    w = _first_triple(n, distrib)
    if w:
        return "distributivity", w

    bad = (meet[idx, neg] != zero) | (join[idx, neg] != one)
    if bad.any():
        return "complement", (int(np.argmax(bad)),)

    bad = (meet[idx, one] != idx) | (join[idx, zero] != idx)
    if bad.any():
        return "bounds", (int(np.argmax(bad)),)
    return None


def validate_algebra(meet, join, neg, zero, one, labels=None, *, max_size=MAX_SIZE):
    """Check the Boolean algebra axioms on raw tables and wrap them.

    Raises MalformedInput for ill-shaped tables, SizeLimit above
    ``max_size`` elements, DegenerateAlgebra when ``zero == one`` and
    AxiomViolation naming the first failing law in :data:`AXIOMS` order.
    """
    try:
        meet = np.asarray(meet, dtype=np.int64)
        join = np.asarray(join, dtype=np.int64)
        neg = np.asarray(neg, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise MalformedInput(f"tables are not integer arrays: {exc}") from None
    if neg.ndim != 1 or len(neg) == 0:
        raise MalformedInput("neg must be a non-empty vector")
    n = len(neg)
    if n > max_size:
        raise SizeLimit(f"{n} elements exceeds the limit of {max_size}")
    if meet.shape != (n, n) or join.shape != (n, n):
        raise MalformedInput(f"meet/join must be {n}x{n}")
    for name, arr in (("meet", meet), ("join", join), ("neg", neg)):
        if arr.min() < 0 or arr.max() >= n:
            raise MalformedInput(f"{name} has an index outside 0..{n - 1}")
    zero, one = int(zero), int(one)
    if not (0 <= zero < n and 0 <= one < n):
        raise MalformedInput("zero/one out of range")
    if labels is not None and len(labels) != n:
        raise MalformedInput("labels must have one entry per element")
    if zero == one:
        raise DegenerateAlgebra("zero equals one")
    if not _is_powerset_image(meet, join, neg, zero, one):
        found = first_violation(meet, join, neg, zero, one)
        if found is None:  # pragma: no cover - the laws imply the representation
            raise AxiomViolation("representation", ())
        raise AxiomViolation(*found)
    return FiniteBoolAlgebra(meet, join, neg, zero, one, labels)


def powerset_algebra(points) -> PowersetAlgebra:
    """P(points); an int ``k`` stands for the points ``1..k``."""
    if isinstance(points, int):
        points = range(1, points + 1)
    points = tuple(points)
    if len(set(points)) != len(points):
        raise MalformedInput("point labels must be distinct")
    if not points:
        raise DegenerateAlgebra("powerset of the empty set has zero == one")
    if len(points) > MAX_ATOMS:
        raise SizeLimit(f"{len(points)} points exceeds the limit of {MAX_ATOMS}")
    return PowersetAlgebra(points)


TWO = validate_algebra([[0, 0], [0, 1]], [[0, 1], [1, 1]], [1, 0], 0, 1, labels=(0, 1))


def leq(B, a, b) -> bool:
    return B.leq(a, b)


def atoms(B) -> AtomBasis:
    return B.atom_basis


def idempotent_algebra(n: int) -> FiniteBoolAlgebra:
    """E(Z/n): idempotents e = e^2 with ef, e + f - ef and 1 - e."""
    if n < 2:
        raise InvalidModulus(f"modulus must be >= 2, got {n}")
    e = np.arange(n, dtype=np.int64)
    carrier = np.nonzero((e * e) % n == e)[0]
    c = carrier
    prod = (c[:, None] * c[None, :]) % n
    summ = (c[:, None] + c[None, :] - prod) % n
    comp = (1 - c) % n
    pos = lambda v: np.searchsorted(carrier, np.asarray(v, dtype=np.int64))
    return validate_algebra(pos(prod), pos(summ), pos(comp), 0, 1,
                            labels=[int(x) for x in carrier])


def subalgebra_generated(B, gens):
    """Smallest subalgebra containing ``gens`` and its granules.

    Returns ``(sub, granules)``.  Elements of ``sub`` are labelled by their
    index in ``B``; ``granules`` are the atoms of ``sub`` as elements of
    ``B`` in ascending order.
    """
    current = {B.zero, B.one}
    for g in gens:
        if not 0 <= int(g) < B.size:
            raise MalformedInput(f"generator {g} is not an element")
        current.add(int(g))
    while True:
        arr = np.array(sorted(current), dtype=np.int64)
        grown = set(arr.tolist())
        grown.update(B.vneg(arr).tolist())
        grown.update(np.unique(B.vmeet(arr[:, None], arr[None, :])).tolist())
        grown.update(np.unique(B.vjoin(arr[:, None], arr[None, :])).tolist())
        if grown == current:
            break
        current = grown
    arr = np.array(sorted(current), dtype=np.int64)
    pos = lambda v: np.searchsorted(arr, v)
    sub = validate_algebra(
        pos(B.vmeet(arr[:, None], arr[None, :])),
        pos(B.vjoin(arr[:, None], arr[None, :])),
        pos(B.vneg(arr)),
        pos(B.zero), pos(B.one),
        labels=[int(x) for x in arr],
    )
    granules = sorted(sub.labels[t] for t in sub.atom_basis.atoms)
    return sub, granules


def _check_shape(h: BoolHom):
    if len(h.table) != h.source.size:
        raise ShapeMismatch(f"table has {len(h.table)} entries, source has {h.source.size} elements")
    if h.table and (min(h.table) < 0 or max(h.table) >= h.target.size):
        raise ShapeMismatch("table entry outside the target algebra")


def check_hom(h: BoolHom) -> bool:
    """True iff ``h`` preserves 0, 1, meet, join and complement."""
    _check_shape(h)
    src, tgt = h.source, h.target
    t = np.array(h.table, dtype=np.int64)
    if t[src.zero] != tgt.zero or t[src.one] != tgt.one:
        return False
    idx = np.arange(src.size)
    if not np.array_equal(t[src.vneg(idx)], tgt.vneg(t)):
        return False
    if src.size <= EXHAUSTIVE_HOM_LIMIT:
        a, b = idx[:, None], idx[None, :]
        ta, tb = t[:, None], t[None, :]
        return bool(np.array_equal(t[src.vmeet(a, b)], tgt.vmeet(ta, tb))
                    and np.array_equal(t[src.vjoin(a, b)], tgt.vjoin(ta, tb)))
    return _partition_of_unity(h, t)


def _partition_of_unity(h, t):
    # h is a hom iff the images of the atoms are pairwise disjoint, join to 1,
    # and every h(a) is the join of the images of the atoms below a.
    src, tgt = h.source, h.target
    basis = src.atom_basis
    images = [int(t[a]) for a in basis.atoms]
    acc = tgt.zero
    for i, x in enumerate(images):
        for y in images[i + 1:]:
            if tgt.meet(x, y) != tgt.zero:
                return False
        acc = tgt.join(acc, x)
    if acc != tgt.one:
        return False
    joins = {0: tgt.zero}
    for m in range(1, 1 << len(images)):
        low = m & -m
        joins[m] = tgt.join(joins[m ^ low], images[low.bit_length() - 1])
    return all(int(t[a]) == joins[basis.mask_of(a)] for a in range(src.size))


def identity_hom(B) -> BoolHom:
    return BoolHom(B, B, range(B.size))


def compose_homs(g: BoolHom, f: BoolHom) -> BoolHom:
    """g ∘ f."""
    if f.target != g.source:
        raise ShapeMismatch("f.target is not g.source")
    _check_shape(f)
    _check_shape(g)
    return BoolHom(f.source, g.target, [g.table[x] for x in f.table])


def is_isomorphism(h: BoolHom) -> bool:
    return check_hom(h) and len(set(h.table)) == h.source.size == h.target.size


def homs_to_two(B) -> list:
    """All homomorphisms B -> 2, ordered by the atom sent to 1."""
    return [BoolHom(B, TWO, [1 if B.leq(t, a) else 0 for a in B.elements()])
            for t in B.atom_basis.atoms]
