"""Brute-force reference implementations used by the tests.

Nothing here imports stonekit; every answer is recomputed from the
definitions with plain loops (or numpy broadcasting) over small carriers.
"""
from __future__ import annotations

import itertools
from functools import lru_cache


# -- Boolean algebras from raw tables -------------------------------------

def table_leq(meet, a, b):
    return meet[a][b] == a


def is_boolean(meet, join, neg, zero, one):
    n = len(neg)
    if zero == one:
        return False
    el = range(n)
    for a in el:
        if meet[a][one] != a or join[a][zero] != a:
            return False
        if meet[a][neg[a]] != zero or join[a][neg[a]] != one:
            return False
        for b in el:
            if meet[a][b] != meet[b][a] or join[a][b] != join[b][a]:
                return False
            if meet[a][join[a][b]] != a or join[a][meet[a][b]] != a:
                return False
            for c in el:
                if meet[a][join[b][c]] != join[meet[a][b]][meet[a][c]]:
                    return False
                if meet[meet[a][b]][c] != meet[a][meet[b][c]]:
                    return False
                if join[join[a][b]][c] != join[a][join[b][c]]:
                    return False
    return True


def is_boolean_np(meet, join, neg, zero, one):
    """The same axioms as :func:`is_boolean`, checked over all triples at once."""
    import numpy as np

    M, J, N = (np.asarray(t, dtype=np.int64) for t in (meet, join, neg))
    a = np.arange(len(N))
    A3 = a[:, None, None]
    checks = (
        (M == M.T), (J == J.T),
        M[a, one] == a, J[a, zero] == a,
        M[a, N] == zero, J[a, N] == one,
        M[a[:, None], J] == a[:, None], J[a[:, None], M] == a[:, None],
        M[M] == M[A3, M[None]],
        J[J] == J[A3, J[None]],
        M[A3, J[None]] == J[M[:, :, None], M[:, None, :]],
    )
    return zero != one and all(bool(c.all()) for c in checks)


def table_atoms(meet, zero):
    n = len(meet)
    return [a for a in range(n) if a != zero
            and all(b in (zero, a) for b in range(n) if table_leq(meet, b, a))]


def all_homs_to_two(meet, join, neg, zero, one):
    """Every map into {0,1} preserving the operations, found by trying all 2^n maps."""
    n = len(neg)
    out = []
    for bits in itertools.product((0, 1), repeat=n):
        if bits[zero] != 0 or bits[one] != 1:
            continue
        if all(bits[neg[a]] == 1 - bits[a] for a in range(n)) and all(
            bits[meet[a][b]] == bits[a] & bits[b] and bits[join[a][b]] == bits[a] | bits[b]
            for a in range(n) for b in range(n)
        ):
            out.append(bits)
    return out


def all_ultrafilters(meet, neg, zero, one):
    """Subsets that are up-closed, meet-closed, proper, and decide every a."""
    n = len(neg)
    out = []
    for bits in range(1 << n):
        F = {a for a in range(n) if bits >> a & 1}
        if one not in F or zero in F:
            continue
        if any(table_leq(meet, a, b) and b not in F for a in F for b in range(n)):
            continue
        if any(meet[a][b] not in F for a in F for b in F):
            continue
        if all((a in F) != (neg[a] in F) for a in range(n)):
            out.append(frozenset(F))
    return out


def generated_subalgebra(meet, join, neg, zero, one, gens):
    S = {zero, one, *gens}
    while True:
        new = set(S)
        for a in S:
            new.add(neg[a])
            for b in S:
                new.add(meet[a][b])
                new.add(join[a][b])
        if new == S:
            return S
        S = new


# -- arithmetic ----------------------------------------------------------

@lru_cache(maxsize=None)
def spf_sieve(limit):
    spf = list(range(limit + 1))
    for i in range(2, int(limit ** 0.5) + 1):
        if spf[i] == i:
            for j in range(i * i, limit + 1, i):
                if spf[j] == j:
                    spf[j] = i
    return spf


def distinct_prime_factors(n, limit=10_000):
    spf = spf_sieve(max(limit, n))
    out = set()
    while n > 1:
        out.add(spf[n])
        n //= spf[n]
    return out


def idempotents(n):
    return [e for e in range(n) if e * e % n == e]


def residues(z, p, k):
    return tuple(z % p ** i for i in range(1, k + 1))


# -- finite topologies ---------------------------------------------------

def opens_of(n, leq):
    """Up-closed subsets of {0..n-1}, as frozensets."""
    out = []
    for bits in range(1 << n):
        A = {i for i in range(n) if bits >> i & 1}
        if all(j in A for i in A for j in range(n) if leq[i][j]):
            out.append(frozenset(A))
    return out


def closure_of(n, opens, A):
    full = frozenset(range(n))
    closeds = [full - U for U in opens]
    out = full
    for C in closeds:
        if A <= C:
            out &= C
    return out


def interior_of(opens, A):
    out = frozenset()
    for U in opens:
        if U <= A:
            out |= U
    return out


def regular_opens_of(n, leq):
    opens = opens_of(n, leq)
    return [U for U in opens if interior_of(opens, closure_of(n, opens, U)) == U]


def least_upper_bound(ros, fam):
    ubs = [V for V in ros if all(U <= V for U in fam)]
    least = [V for V in ubs if all(V <= W for W in ubs)]
    assert len(least) == 1
    return least[0]


def greatest_lower_bound(ros, fam):
    lbs = [V for V in ros if all(V <= U for U in fam)]
    great = [V for V in lbs if all(W <= V for W in lbs)]
    assert len(great) == 1
    return great[0]


def is_extremally_disconnected(n, leq):
    opens = opens_of(n, leq)
    oset = set(opens)
    return all(closure_of(n, opens, U) in oset for U in opens)


def posets(n):
    """Every partial order on n points, by filtering all reflexive relations."""
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    seen = []
    for bits in range(1 << len(pairs)):
        rel = [[i == j for j in range(n)] for i in range(n)]
        for k, (i, j) in enumerate(pairs):
            if bits >> k & 1:
                rel[i][j] = True
        ok = all(not (rel[i][j] and rel[j][i]) for i, j in pairs) and all(
            rel[i][k] or not (rel[i][j] and rel[j][k])
            for i in range(n) for j in range(n) for k in range(n))
        if ok:
            seen.append(rel)
    return seen


# -- maps between finite sets --------------------------------------------

def all_lifts(f, g, n_x):
    """Every h: P -> X with f(h(p)) = g(p)."""
    return [h for h in itertools.product(range(n_x), repeat=len(g))
            if all(f[h[p]] == g[p] for p in range(len(g)))]
