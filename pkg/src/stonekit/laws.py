"""Machine checks of the duality theorems at desk scale.

Each law is a function ``law(rng) -> str`` that raises ``LawFailure`` on
the first counterexample and otherwise returns a short summary of what it
covered.  :func:`run_laws` runs them all and reports per-law results.
"""
from __future__ import annotations

import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import alexandrov_ro as ro
from .bool_core import (
    TWO,
    check_hom,
    compose_homs,
    homs_to_two,
    idempotent_algebra,
    identity_hom,
    is_isomorphism,
    powerset_algebra,
    subalgebra_generated,
)
from .clopen_zp import ball, clopen_subset, clopen_union, granule_operator, level_algebra
from .filters import enumerate_ultrafilters, hom_to_ultrafilter, ultrafilter_to_hom
from .generators import (
    all_posets,
    posets_up_to_iso,
    random_algebra,
    random_clopen,
    random_hom,
    random_relabel,
    random_space,
)
from .profinite import (
    cantor_digits,
    digits_to_padic,
    moduli_closure,
    padic_add,
    padic_from_int,
    padic_mul,
    padic_neg,
    zhat_from_int,
    zhat_reduce,
)
from .stone import (
    ContinuousMapFin,
    FiniteSpace,
    beta_extend,
    beta_finite,
    clop,
    clop_pullback,
    compose_maps,
    dual_map,
    eta,
    gleason_lift,
    hat,
    identity_map,
    naturality_check,
    phi,
    stone_space,
)


class LawFailure(AssertionError):
    pass


def require(cond, message):
    if not cond:
        raise LawFailure(message)


def omega(n):
    """Number of distinct prime factors, by trial division."""
    count, d = 0, 2
    while d * d <= n:
        if n % d == 0:
            count += 1
            while n % d == 0:
                n //= d
        d += 1
    return count + (n > 1)


# -- instance sets ---------------------------------------------------------

def small_algebras(rng):
    """Algebras with at most 4 atoms, of every construction in the package."""
    out = [TWO]
    for k in range(1, 5):
        P = powerset_algebra(k)
        out.append(P)
        out.extend(random_relabel(rng, P) for _ in range(4))
    out.extend(idempotent_algebra(n) for n in range(2, 211) if omega(n) <= 4 and (n <= 60 or n == 210))
    for n in range(1, 5):
        for poset in posets_up_to_iso(n):
            out.append(ro.ro_algebra(ro.AlexandrovSpace(poset))[0])
    big = powerset_algebra(6)
    for _ in range(10):
        sub, granules = subalgebra_generated(big, [rng.randrange(big.size) for _ in range(2)])
        if len(granules) <= 4:
            out.append(sub)
    return out


def larger_algebras(rng, count=200):
    """Randomised algebras with 5 to 8 atoms."""
    wide = [n for n in range(2, 10001) if omega(n) == 5]
    out = []
    for i in range(count):
        kind = i % 4
        if kind == 0:
            out.append(random_algebra(rng, rng.randint(5, 8)))
        elif kind == 1:
            out.append(random_relabel(rng, idempotent_algebra(rng.choice(wide))))
        elif kind == 2:
            n = rng.randint(5, 7)
            out.append(ro.ro_algebra(random_space(rng, n, density=0.0))[0])
        else:
            sub, _ = subalgebra_generated(powerset_algebra(8), [rng.randrange(256) for _ in range(3)])
            out.append(sub if len(sub.atom_basis.atoms) >= 5 else random_algebra(rng, 5))
    return out


_CACHE = {}


def algebra_instances(rng):
    key = "algebras"
    if key not in _CACHE:
        _CACHE[key] = small_algebras(rng) + larger_algebras(rng)
    return _CACHE[key]


# -- laws ------------------------------------------------------------------

def law_stone_representation(rng):
    algebras = algebra_instances(rng)
    for B in algebras:
        e = eta(B)
        require(is_isomorphism(e), f"eta is not a Boolean isomorphism on {B!r}")
    return f"{len(algebras)} algebras"


def law_hat_identities(rng):
    algebras = algebra_instances(rng)
    for B in algebras:
        X = stone_space(B)
        full = (1 << len(X.points)) - 1
        h = np.array([hat(B, a).members for a in B.elements()], dtype=np.int64)
        require(h[B.zero] == 0, "hat(0) is not empty")
        require(h[B.one] == full, "hat(1) is not the whole space")
        idx = np.arange(B.size)
        a, b = idx[:, None], idx[None, :]
        require(np.array_equal(h[B.vmeet(a, b)], h[a] & h[b]), "hat(a∧b) != hat(a) ∩ hat(b)")
        require(np.array_equal(h[B.vjoin(a, b)], h[a] | h[b]), "hat(a∨b) != hat(a) ∪ hat(b)")
        require(np.array_equal(h[B.vneg(idx)], full ^ h), "hat(¬a) != complement of hat(a)")
    return f"{len(algebras)} algebras, all element pairs"


def law_phi_homeomorphism(rng):
    for k in range(1, 11):
        X = FiniteSpace([f"x{i}" for i in range(k)])
        f = phi(X)
        require(f.is_bijective(), f"Phi is not bijective for |X| = {k}")
        betaS, iota = beta_finite(X)
        require(len(betaS.points) == k and iota.is_bijective(), f"beta X != X for |X| = {k}")
        # every point of X_{Clop(X)} is some U_x
        require(sorted(f.assignment) == list(range(k)), "Phi misses an ultrafilter")
    return "1 <= |X| <= 10"


def law_duality_functors(rng, count=500):
    for _ in range(count):
        A, B, C = (random_algebra(rng, rng.randint(1, 3)) for _ in range(3))
        f, g = random_hom(rng, A, B), random_hom(rng, B, C)
        require(check_hom(f) and check_hom(g), "generated map is not a hom")
        gf = compose_homs(g, f)
        require(dual_map(gf) == compose_maps(dual_map(f), dual_map(g)), "S(g∘f) != S(f)∘S(g)")
        require(dual_map(identity_hom(A)) == identity_map(stone_space(A)), "S(id) != id")
        Sf, Sg = dual_map(f), dual_map(g)
        require(clop_pullback(compose_maps(Sf, Sg)) == compose_homs(clop_pullback(Sg), clop_pullback(Sf)),
                "C(f∘g) != C(g)∘C(f)")
        result = naturality_check(f)
        require(result.ok, f"{result.square} square fails at {result.witness}")
    return f"{count} random homs between <= 3-atom algebras"


def law_ultrafilter_hom_bijection(rng):
    algebras = algebra_instances(rng)
    for B in algebras:
        ufs = enumerate_ultrafilters(B)
        homs = homs_to_two(B)
        require(len(ufs) == len(homs) == len(B.atom_basis.atoms), "counts disagree")
        for U in ufs:
            require(hom_to_ultrafilter(ultrafilter_to_hom(U)) == U, "U -> v_U -> U is not the identity")
        for v in homs:
            require(ultrafilter_to_hom(hom_to_ultrafilter(v)).table == v.table, "v -> U_v -> v is not the identity")
    return f"{len(algebras)} algebras"


def law_idempotent_algebras(rng, limit=10000):
    for n in range(2, limit + 1):
        B = idempotent_algebra(n)
        require(len(B.atom_basis.atoms) == omega(n), f"|atoms E(Z/{n})| != omega({n})")
    return f"2 <= n <= {limit}"


def law_padic_arithmetic(rng, cases=10_000):
    for p in (2, 3, 5):
        for _ in range(cases):
            n1, n2 = rng.randint(1, 64), rng.randint(1, 64)
            bound = p ** 70
            a, b = rng.randrange(-bound, bound), rng.randrange(-bound, bound)
            x, y = padic_from_int(p, a, n1), padic_from_int(p, b, n2)
            n = min(n1, n2)
            s, m, ng = padic_add(x, y), padic_mul(x, y), padic_neg(x)
            require(s.precision == m.precision == n and ng.precision == n1, "precision rule broken")
            q = 1
            for k in range(n1):
                q *= p
                if k < n:
                    require(s.residues[k] == (a + b) % q, f"add mismatch at level {k + 1}")
                    require(m.residues[k] == (a * b) % q, f"mul mismatch at level {k + 1}")
                require(ng.residues[k] == (-a) % q, f"neg mismatch at level {k + 1}")
    for _ in range(cases):
        z = rng.getrandbits(40) - (1 << 39)
        x = padic_from_int(2, z, 32)
        require(digits_to_padic(cantor_digits(x)) == x, "digits ∘ encode is not the identity")
        bits = [rng.getrandbits(1) for _ in range(32)]
        require(list(cantor_digits(digits_to_padic(bits))) == bits, "encode ∘ digits is not the identity")
    return f"{cases} cases per prime, Cantor round trip at precision 32"


def law_zhat_embedding(rng):
    moduli = moduli_closure(range(1, 25))
    pairs = [(n, m) for n in moduli for m in moduli if n % m == 0]
    for z in range(-10_000, 10_001):
        r = dict(zip(moduli, zhat_from_int(z, moduli).residues))
        require(all(r[n] % m == r[m] for n, m in pairs), f"incompatible residues for z = {z}")
    for n in range(1, 51):
        e_hits = {zhat_reduce(zhat_from_int(z, moduli_closure([n])), n) for z in range(n)}
        require(e_hits == set(range(n)), f"level {n} is not hit by the integers")
    return "z in [-10^4, 10^4], levels n <= 50"


def _poset_instances(rng, random_count=500):
    spaces = [ro.AlexandrovSpace(P) for n in range(1, 6) for P in all_posets(n)]
    spaces += [random_space(rng, rng.randint(1, 7), density=rng.random()) for _ in range(random_count)]
    return spaces


def _check_bounds(X, fam, ros):
    union = 0
    inter = X.full
    for U in fam:
        union |= U
        inter &= U
    uppers = [W for W in ros if W & union == union]
    lowers = [W for W in ros if W & inter == W]
    least = [W for W in uppers if all(W & V == W for V in uppers)]
    greatest = [W for W in lowers if all(V & W == V for V in lowers)]
    require(least == [ro.ro_sup(X, fam)], "sup differs from the least upper bound")
    require(greatest == [ro.ro_inf(X, fam)], "inf differs from the greatest lower bound")


def law_ro_complete(rng):
    spaces = _poset_instances(rng)
    for X in spaces:
        ro.ro_algebra(X)  # validate_algebra raises on any failed law
    exhaustive = 0
    for n in range(1, 6):
        for P in posets_up_to_iso(n):
            X = ro.AlexandrovSpace(P)
            ros = X.regular_opens
            if len(ros) <= 12:
                families = ([U for i, U in enumerate(ros) if m >> i & 1] for m in range(1 << len(ros)))
                exhaustive += 1
            else:
                families = ([U for U in ros if rng.random() < 0.5] for _ in range(2000))
            for fam in families:
                _check_bounds(X, fam, ros)
    for X in spaces[-500:]:
        ros = X.regular_opens
        for _ in range(20):
            _check_bounds(X, [U for U in ros if rng.random() < 0.4], ros)
    return f"{len(spaces)} spaces, {exhaustive} with every family checked"


def law_ed_criterion(rng):
    spaces = _poset_instances(rng)
    for X in spaces:
        ed, _ = ro.is_ED(X)
        require(ed == (X.regular_opens == X.clopen_sets), "ED <=> RO = Clop fails")
        if ed:
            opens = X.opens
            for U in opens:
                for V in opens:
                    if U & V == 0:
                        require(X.closure(U) & X.closure(V) == 0, "disjoint opens with meeting closures")
    return f"{len(spaces)} spaces"


def law_gleason(rng, count=1000):
    for _ in range(count):
        nx, ny, npts = rng.randint(1, 5), rng.randint(1, 5), rng.randint(1, 5)
        if ny > nx:
            nx, ny = ny, nx
        X, Y, P = FiniteSpace(range(nx)), FiniteSpace(range(ny)), FiniteSpace(range(npts))
        assignment = list(range(ny)) + [rng.randrange(ny) for _ in range(nx - ny)]
        rng.shuffle(assignment)
        f = ContinuousMapFin(X, Y, assignment)
        g = ContinuousMapFin(P, Y, [rng.randrange(ny) for _ in range(npts)])
        h = gleason_lift(f, g)
        require(compose_maps(f, h) == g, "f ∘ h != g")
    return f"{count} sampled triples"


def law_granule_operator(rng, count=1000):
    for _ in range(count):
        p = rng.choice((2, 3))
        E = random_clopen(rng, p, 6)
        F = clopen_union(E, random_clopen(rng, p, 6))
        n = rng.randint(0, 5)
        B0, B1 = level_algebra(p, n), level_algebra(p, n + 1)
        gE, gF = granule_operator(B0, E), granule_operator(B0, F)
        require(clopen_subset(gE, gF), "granule operator is not monotone")
        require(clopen_subset(gE, E), "granule operator is not contained in its argument")
        require(clopen_subset(gE, granule_operator(B1, E)), "refining the level shrank the result")
        A = ball(p, rng.randrange(p ** n), n)
        require(granule_operator(B0, A) == A, "an atom is not fixed")
    return f"{count} random clopens, p in {{2, 3}}, levels <= 6"


LAWS = (
    ("stone-representation", "eta_B: B -> Clop(X_B) is a Boolean isomorphism", law_stone_representation),
    ("hat-identities", "hat preserves 0, 1, meet, join and complement", law_hat_identities),
    ("phi-homeomorphism", "Phi_X is a bijection and beta X = X for finite X", law_phi_homeomorphism),
    ("duality-functors", "S and C are contravariant functors; eta and Phi are natural", law_duality_functors),
    ("ultrafilter-hom", "ultrafilters correspond to homs into 2", law_ultrafilter_hom_bijection),
    ("idempotents", "E(Z/n) is Boolean with omega(n) atoms", law_idempotent_algebras),
    ("padic-arithmetic", "Z_p residue towers match big-integer arithmetic", law_padic_arithmetic),
    ("zhat-embedding", "Z embeds compatibly and densely in truncated Z-hat", law_zhat_embedding),
    ("ro-complete", "RO(X) is a Boolean algebra with closed-form sup and inf", law_ro_complete),
    ("ed-criterion", "X is ED iff RO(X) = Clop(X); ED separates closures", law_ed_criterion),
    ("gleason-lift", "finite discrete spaces lift through surjections", law_gleason),
    ("granule-operator", "granule operator is monotone, contracting and refines", law_granule_operator),
)


@dataclass
class LawResult:
    name: str
    statement: str
    ok: bool
    detail: str
    seconds: float


def _run_one(name, statement, fn, seed):
    rng = random.Random(f"{seed}:{name}")
    start = time.perf_counter()
    try:
        detail, ok = fn(rng), True
    except LawFailure as exc:
        detail, ok = str(exc), False
    return LawResult(name, statement, ok, detail, time.perf_counter() - start)


def run_laws(seed=0, names=None, jobs=1):
    selected = [law for law in LAWS if names is None or law[0] in names]
    if jobs > 1:
        with ThreadPoolExecutor(jobs) as pool:
            return list(pool.map(lambda law: _run_one(*law, seed), selected))
    return [_run_one(*law, seed) for law in selected]
