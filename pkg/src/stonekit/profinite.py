"""Inverse systems over N-chains, p-adic residue towers and truncated Z-hat.

A :class:`PadicInt` of precision n holds the residues ``x_k in Z/p^k`` for
``k = 1..n``; binary operations truncate to the smaller precision, the same
way an inverse limit projects onto a common level.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    IncompatibleTransitions,
    MalformedInput,
    ModuliNotClosed,
    NotPrime,
    PrecisionZero,
    PrimeMismatch,
    UnknownModulus,
    WrongPrime,
)


# -- inverse systems -------------------------------------------------------

@dataclass(frozen=True)
class InverseSystemFin:
    """Levels 1..N with transitions ``transitions[k]: level k+1 -> level k``.

    Levels are tuples of labels; transitions are index tables (0-based list
    positions, so ``transitions[0]`` maps ``levels[1]`` into ``levels[0]``).
    """

    levels: tuple
    transitions: tuple

    def project(self, k, i):
        """Composite index table phi_{ki}: level k -> level i (0-based, i <= k)."""
        table = list(range(len(self.levels[k])))
        for j in range(k - 1, i - 1, -1):
            step = self.transitions[j]
            table = [step[t] for t in table]
        return table


def make_system(levels, transitions) -> InverseSystemFin:
    levels = tuple(tuple(level) for level in levels)
    transitions = tuple(tuple(int(t) for t in tr) for tr in transitions)
    if len(transitions) != max(0, len(levels) - 1):
        raise IncompatibleTransitions(len(transitions), "need one transition per consecutive pair of levels")
    for k, tr in enumerate(transitions):
        if len(tr) != len(levels[k + 1]):
            raise IncompatibleTransitions(k, "transition is not total on its source level")
        if any(not 0 <= t < len(levels[k]) for t in tr):
            raise IncompatibleTransitions(k, "transition value outside its target level")
    system = InverseSystemFin(levels, transitions)
    # phi_ii = id and phi_ki = phi_ji ∘ phi_kj on the generated chain
    n = len(levels)
    for k in range(n):
        if system.project(k, k) != list(range(len(levels[k]))):
            raise IncompatibleTransitions(k, "phi_kk is not the identity")
        for j in range(k + 1):
            for i in range(j + 1):
                outer = system.project(j, i)
                if system.project(k, i) != [outer[t] for t in system.project(k, j)]:
                    raise IncompatibleTransitions(k, f"composite law fails for {k}>{j}>{i}")
    return system


def residue_chain(p, n) -> InverseSystemFin:
    """Z/p -> ... -> Z/p^n with reduction maps."""
    levels = [range(p ** k) for k in range(1, n + 1)]
    transitions = [[x % p ** k for x in range(p ** (k + 1))] for k in range(1, n)]
    return make_system(levels, transitions)


@dataclass(frozen=True)
class LimitPoint:
    system: InverseSystemFin
    coords: tuple


def check_point(pt: LimitPoint) -> bool:
    system, coords = pt.system, tuple(pt.coords)
    if len(coords) != len(system.levels):
        raise MalformedInput("one coordinate per level is required")
    if any(not 0 <= c < len(level) for c, level in zip(coords, system.levels)):
        return False
    return all(system.transitions[k][coords[k + 1]] == coords[k] for k in range(len(coords) - 1))


# -- p-adic integers -------------------------------------------------------

@lru_cache(maxsize=1024)
def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _require_prime(p):
    if not isinstance(p, int) or not is_prime(p):
        raise NotPrime(f"{p} is not prime")


@dataclass(frozen=True)
class PadicInt:
    p: int
    precision: int
    residues: tuple

    def __post_init__(self):
        _require_prime(self.p)
        if self.precision < 1:
            raise PrecisionZero("precision must be >= 1")
        res = tuple(int(r) for r in self.residues)
        object.__setattr__(self, "residues", res)
        if len(res) != self.precision:
            raise MalformedInput("one residue per level is required")
        q = 1
        for k, r in enumerate(res):
            q *= self.p
            if not 0 <= r < q:
                raise MalformedInput(f"residue {r} outside Z/{self.p}^{k + 1}")
            if k and r % (q // self.p) != res[k - 1]:
                raise MalformedInput(f"residues {k} and {k + 1} are not compatible")

    @classmethod
    def _trusted(cls, p, precision, residues):
        obj = object.__new__(cls)
        object.__setattr__(obj, "p", p)
        object.__setattr__(obj, "precision", precision)
        object.__setattr__(obj, "residues", tuple(residues))
        return obj

    def is_compatible(self) -> bool:
        q, res = 1, self.residues
        for k in range(1, len(res)):
            q *= self.p
            if res[k] % q != res[k - 1]:
                return False
        return True

    @property
    def value(self) -> int:
        """The top residue, i.e. the representative in [0, p^precision)."""
        return self.residues[-1]

    def truncate(self, n) -> PadicInt:
        return PadicInt(self.p, n, self.residues[:n])

    def __add__(self, other):
        return padic_add(self, other)

    def __mul__(self, other):
        return padic_mul(self, other)

    def __neg__(self):
        return padic_neg(self)

    def __sub__(self, other):
        return padic_add(self, padic_neg(other))


def _tower(p, z, n):
    out, q = [], 1
    for _ in range(n):
        q *= p
        out.append(z % q)
    return out


def padic_from_int(p, z, n) -> PadicInt:
    _require_prime(p)
    if n < 1:
        raise PrecisionZero("precision must be >= 1")
    return PadicInt(p, n, _tower(p, z, n))


def _binary(x, y, op):
    if x.p != y.p:
        raise PrimeMismatch(f"{x.p} != {y.p}")
    n = min(x.precision, y.precision)
    out, q = [], 1
    for k in range(n):
        q *= x.p
        out.append(op(x.residues[k], y.residues[k]) % q)
    return PadicInt._trusted(x.p, n, out)


def padic_add(x, y) -> PadicInt:
    return _binary(x, y, lambda a, b: a + b)


def padic_mul(x, y) -> PadicInt:
    return _binary(x, y, lambda a, b: a * b)


def padic_neg(x) -> PadicInt:
    return PadicInt._trusted(x.p, x.precision, _tower(x.p, -x.value, x.precision))


def cantor_digits(x: PadicInt) -> tuple:
    """Binary digits a_0..a_{n-1} with x_k = sum_{i<k} a_i 2^i."""
    if x.p != 2:
        raise WrongPrime("the Cantor encoding is defined for p = 2")
    return tuple(x.value >> i & 1 for i in range(x.precision))


def digits_to_padic(bits) -> PadicInt:
    bits = [int(b) for b in bits]
    if not bits:
        raise PrecisionZero("need at least one digit")
    if any(b not in (0, 1) for b in bits):
        raise MalformedInput("digits must be 0 or 1")
    residues, acc = [], 0
    for i, b in enumerate(bits):
        acc |= b << i
        residues.append(acc)
    return PadicInt(2, len(bits), residues)


# -- truncated profinite completion ----------------------------------------

@dataclass(frozen=True)
class ZhatElement:
    moduli: tuple
    residues: tuple

    def as_dict(self):
        return dict(zip(self.moduli, self.residues))


def divisors(n):
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def moduli_closure(ns):
    """Smallest divisibility-closed set containing ``ns``."""
    out = set()
    for n in ns:
        if n < 1:
            raise ModuliNotClosed(f"modulus {n} must be >= 1")
        out.update(divisors(n))
    return tuple(sorted(out))


def _check_closed(moduli):
    ms = set(moduli)
    for n in ms:
        if n < 1:
            raise ModuliNotClosed(f"modulus {n} must be >= 1")
        for d in divisors(n):
            if d not in ms:
                raise ModuliNotClosed(f"{d} divides {n} but is not listed")


def zhat_from_int(z, moduli) -> ZhatElement:
    moduli = tuple(sorted(set(int(m) for m in moduli)))
    _check_closed(moduli)
    return ZhatElement(moduli, tuple(z % n for n in moduli))


def zhat_reduce(e: ZhatElement, n) -> int:
    try:
        return e.residues[e.moduli.index(n)]
    except ValueError:
        raise UnknownModulus(f"modulus {n} is not represented") from None


def zhat_compatible(e: ZhatElement) -> bool:
    """m | n  =>  x_n ≡ x_m (mod m), over every listed pair."""
    r = e.as_dict()
    return all(r[n] % m == r[m] for n in e.moduli for m in e.moduli if n % m == 0)
