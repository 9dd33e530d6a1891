"""Instance generators for the law suite: relabelled algebras, homs, posets."""
from __future__ import annotations

import itertools
import random
from functools import lru_cache

import numpy as np

from .alexandrov_ro import AlexandrovSpace, FinitePoset
from .bool_core import BoolHom, FiniteBoolAlgebra, powerset_algebra, validate_algebra
from .clopen_zp import ZpClopen


def relabel(B, perm) -> FiniteBoolAlgebra:
    """Isomorphic table algebra in which old element i becomes perm[i]."""
    perm = np.asarray(perm, dtype=np.int64)
    inv = np.empty_like(perm)
    inv[perm] = np.arange(len(perm))
    meet = perm[B.meet_table[inv[:, None], inv[None, :]]]
    join = perm[B.join_table[inv[:, None], inv[None, :]]]
    neg = perm[B.neg_table[inv]]
    labels = [B.label(int(i)) for i in inv]
    return validate_algebra(meet, join, neg, perm[B.zero], perm[B.one], labels=labels)


def random_relabel(rng: random.Random, B):
    perm = list(range(B.size))
    rng.shuffle(perm)
    return relabel(B, perm)


def random_algebra(rng: random.Random, n_atoms: int):
    return random_relabel(rng, powerset_algebra(n_atoms))


def hom_from_atom_map(B, C, g) -> BoolHom:
    """The hom B -> C dual to g: atoms(C) -> atoms(B), given as atom positions."""
    bB, bC = B.atom_basis, C.atom_basis
    table = []
    for b in B.elements():
        mask = bB.mask_of(b)
        table.append(bC.element_of(sum(1 << j for j, i in enumerate(g) if mask >> i & 1)))
    return BoolHom(B, C, table)


def random_hom(rng: random.Random, B, C) -> BoolHom:
    kB, kC = len(B.atom_basis.atoms), len(C.atom_basis.atoms)
    return hom_from_atom_map(B, C, [rng.randrange(kB) for _ in range(kC)])


def _ups(n, up):
    """All up-closed subsets of a poset given by up-masks, in counting order."""
    return [A for A in range(1 << n) if all(up[a] & ~A == 0 for a in range(n) if A >> a & 1)]


@lru_cache(maxsize=None)
def _all_up_masks(n):
    if n == 0:
        return [()]
    out = []
    for up in _all_up_masks(n - 1):
        down = [sum(1 << b for b in range(n - 1) if up[b] >> a & 1) for a in range(n - 1)]
        opens = _ups(n - 1, up)
        closeds = _ups(n - 1, down)
        for D in closeds:
            for U in opens:
                if D & U:
                    continue
                if any(U & ~up[d] for d in range(n - 1) if D >> d & 1):
                    continue
                new = [m | (1 << (n - 1)) if D >> a & 1 else m for a, m in enumerate(up)]
                out.append(tuple(new) + (U | 1 << (n - 1),))
    return out


def _poset_from_up(up):
    n = len(up)
    return FinitePoset(n, [[bool(up[a] >> b & 1) for b in range(n)] for a in range(n)])


def all_posets(n):
    """Every labelled partial order on n points (4231 for n = 5)."""
    return [_poset_from_up(up) for up in _all_up_masks(n)]


def _canonical(up):
    n = len(up)
    best = None
    for perm in itertools.permutations(range(n)):
        key = tuple(sorted(
            (perm[a], sum(1 << perm[b] for b in range(n) if up[a] >> b & 1)) for a in range(n)
        ))
        if best is None or key < best:
            best = key
    return best


@lru_cache(maxsize=None)
def posets_up_to_iso(n):
    seen, out = set(), []
    for up in _all_up_masks(n):
        key = _canonical(up)
        if key not in seen:
            seen.add(key)
            out.append(_poset_from_up(up))
    return tuple(out)


def random_poset(rng: random.Random, n, density=0.35) -> FinitePoset:
    """Random order: a random DAG on a shuffled linear order, transitively closed."""
    order = list(range(n))
    rng.shuffle(order)
    pairs = [(order[i], order[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < density]
    return FinitePoset.from_relations(n, pairs)


def random_space(rng: random.Random, n, density=0.35) -> AlexandrovSpace:
    return AlexandrovSpace(random_poset(rng, n, density))


def random_clopen(rng: random.Random, p, max_level) -> ZpClopen:
    level = rng.randint(0, max_level)
    q = p ** level
    return ZpClopen(p, level, frozenset(r for r in range(q) if rng.random() < 0.5))
