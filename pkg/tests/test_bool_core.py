import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from stonekit.bool_core import (
    TWO,
    BoolHom,
    atoms,
    check_hom,
    compose_homs,
    homs_to_two,
    idempotent_algebra,
    identity_hom,
    is_isomorphism,
    leq,
    powerset_algebra,
    subalgebra_generated,
    validate_algebra,
)
from stonekit.errors import (
    AxiomViolation,
    DegenerateAlgebra,
    InvalidModulus,
    MalformedInput,
    ShapeMismatch,
    SizeLimit,
)
from stonekit.generators import random_hom, random_relabel


def tables(B):
    return B.meet_table.tolist(), B.join_table.tolist(), B.neg_table.tolist(), B.zero, B.one


def P(*pts):
    return frozenset(pts)


# N5: 0 < a < c < 1, 0 < b < 1, with b incomparable to a and c.
N5_LEQ = {(0, x) for x in range(5)} | {(x, 4) for x in range(5)} | {(x, x) for x in range(5)} | {(1, 3)}


def lattice_tables(n, le):
    def meet(a, b):
        lows = [c for c in range(n) if (c, a) in le and (c, b) in le]
        return next(c for c in lows if all((d, c) in le for d in lows))

    def join(a, b):
        ups = [c for c in range(n) if (a, c) in le and (b, c) in le]
        return next(c for c in ups if all((c, d) in le for d in ups))

    return [[meet(a, b) for b in range(n)] for a in range(n)], [[join(a, b) for b in range(n)] for a in range(n)]


class TestValidate:
    def test_powerset_of_two_points(self):
        B = powerset_algebra([1, 2])
        V = validate_algebra(*tables(B))
        assert V.size == 4
        assert len(atoms(V).atoms) == 2

    @pytest.mark.parametrize("neg", [[4, 2, 1, 2, 0], [4, 3, 3, 2, 0], [4, 0, 0, 0, 0]])
    def test_n5_is_not_distributive(self, neg):
        meet, join = lattice_tables(5, N5_LEQ)
        with pytest.raises(AxiomViolation) as exc:
            validate_algebra(meet, join, neg, 0, 4)
        assert exc.value.axiom == "distributivity"
        a, b, c = exc.value.witness
        # the witness really breaks one of the two distributive laws
        assert (meet[a][join[b][c]] != join[meet[a][b]][meet[a][c]]
                or join[a][meet[b][c]] != meet[join[a][b]][join[a][c]])

    def test_degenerate(self):
        with pytest.raises(DegenerateAlgebra):
            validate_algebra([[0]], [[0]], [0], 0, 0)

    def test_malformed_shapes(self):
        with pytest.raises(MalformedInput):
            validate_algebra([[0, 0]], [[0, 1], [1, 1]], [1, 0], 0, 1)
        with pytest.raises(MalformedInput):
            validate_algebra([[0, 0], [0, 5]], [[0, 1], [1, 1]], [1, 0], 0, 1)

    def test_size_limit(self):
        B = powerset_algebra(3)
        with pytest.raises(SizeLimit):
            validate_algebra(*tables(B), max_size=4)
        with pytest.raises(SizeLimit):
            powerset_algebra(17)

    def test_wrong_complement_is_reported(self):
        meet, join, neg, zero, one = tables(powerset_algebra(2))
        neg = [3, 1, 2, 0]
        with pytest.raises(AxiomViolation) as exc:
            validate_algebra(meet, join, neg, zero, one)
        assert exc.value.axiom == "complement"

    def test_reported_order_matches_oracle_on_random_tables(self):
        rng = random.Random(5)
        for _ in range(200):
            n = rng.choice([2, 3, 4])
            meet = [[rng.randrange(n) for _ in range(n)] for _ in range(n)]
            join = [[rng.randrange(n) for _ in range(n)] for _ in range(n)]
            neg = [rng.randrange(n) for _ in range(n)]
            ok = oracles.is_boolean(meet, join, neg, 0, n - 1)
            try:
                validate_algebra(meet, join, neg, 0, n - 1)
            except AxiomViolation:
                assert not ok
            else:
                assert ok


class TestOrderAndAtoms:
    def test_bottom_below_everything(self):
        B = powerset_algebra(3)
        assert all(leq(B, 0, b) for b in B.elements())

    def test_set_inclusion(self):
        B = powerset_algebra([1, 2, 3])
        assert leq(B, 0b001, 0b011)
        assert not leq(B, 0b011, 0b001)

    def test_idempotents_order(self):
        E = idempotent_algebra(6)
        i = {E.label(a): a for a in E.elements()}
        assert leq(E, i[3], i[1])
        assert not leq(E, i[1], i[3])

    def test_atoms_of_powerset(self):
        B = powerset_algebra([1, 2, 3])
        assert [B.label(a) for a in atoms(B).atoms] == [P(1), P(2), P(3)]

    def test_atoms_of_e6(self):
        E = idempotent_algebra(6)
        assert sorted(E.label(a) for a in atoms(E).atoms) == [3, 4]

    def test_atoms_of_two(self):
        assert atoms(TWO).atoms == (1,)

    def test_every_element_is_join_of_its_atoms(self):
        rng = random.Random(1)
        for k in range(1, 5):
            B = random_relabel(rng, powerset_algebra(k))
            basis = atoms(B)
            for a in B.elements():
                acc = B.zero
                for t in basis.atoms_below(a):
                    acc = B.join(acc, t)
                assert acc == a
                assert basis.element_of(basis.mask_of(a)) == a


class TestIdempotents:
    def test_six(self):
        E = idempotent_algebra(6)
        assert sorted(E.labels) == [0, 1, 3, 4]
        assert len(atoms(E).atoms) == 2

    def test_prime(self):
        assert sorted(idempotent_algebra(7).labels) == [0, 1]

    @pytest.mark.parametrize("n", [1, 0, -3])
    def test_invalid(self, n):
        with pytest.raises(InvalidModulus):
            idempotent_algebra(n)

    @pytest.mark.parametrize("n", [2, 12, 30, 210, 360, 1001])
    def test_against_oracle(self, n):
        E = idempotent_algebra(n)
        assert sorted(E.labels) == oracles.idempotents(n)
        assert len(atoms(E).atoms) == len(oracles.distinct_prime_factors(n))
        assert oracles.is_boolean(*tables(E))


class TestSubalgebra:
    def test_empty_gens(self):
        B = powerset_algebra(3)
        sub, granules = subalgebra_generated(B, [])
        assert sub.size == 2
        assert granules == [B.one]

    def test_complement_pair(self):
        B = powerset_algebra([1, 2, 3, 4])
        _, granules = subalgebra_generated(B, [0b0011])
        assert [B.label(g) for g in granules] == [P(1, 2), P(3, 4)]

    def test_two_generators_separate_points(self):
        B = powerset_algebra([1, 2, 3, 4])
        _, granules = subalgebra_generated(B, [0b0011, 0b0110])
        assert [B.label(g) for g in granules] == [P(1), P(2), P(3), P(4)]

    def test_matches_closure_oracle(self):
        rng = random.Random(3)
        for _ in range(40):
            B = random_relabel(rng, powerset_algebra(rng.randint(1, 4)))
            gens = [rng.randrange(B.size) for _ in range(rng.randint(0, 3))]
            sub, granules = subalgebra_generated(B, gens)
            closed = oracles.generated_subalgebra(*tables(B), gens)
            assert sorted(sub.labels) == sorted(closed)
            assert sub.size == 2 ** len(granules)


class TestHoms:
    def test_identity(self):
        for B in (TWO, powerset_algebra(2), idempotent_algebra(30)):
            assert check_hom(identity_hom(B))

    def test_constant_one(self):
        B = powerset_algebra(2)
        assert not check_hom(BoolHom(B, B, [B.one] * 4))

    def test_preimage_hom(self):
        src, dst = powerset_algebra([1, 2]), powerset_algebra([1, 2, 3])
        g = {1: 1, 2: 1, 3: 2}
        table = []
        for a in src.elements():
            S = src.label(a)
            table.append(sum(1 << i for i, x in enumerate(dst.points) if g[x] in S))
        assert check_hom(BoolHom(src, dst, table))

    def test_check_hom_matches_oracle(self):
        rng = random.Random(9)
        B, C = powerset_algebra(2), powerset_algebra(2)
        for _ in range(300):
            table = [rng.randrange(4) for _ in range(4)]
            expected = all(
                table[a & b] == table[a] & table[b] and table[a | b] == table[a] | table[b]
                for a in range(4) for b in range(4)
            ) and table[3 ^ 0] == 3 and all(table[3 ^ a] == 3 ^ table[a] for a in range(4))
            assert check_hom(BoolHom(B, C, table)) == expected

    def test_compose_shape(self):
        f = identity_hom(powerset_algebra(1))
        g = identity_hom(powerset_algebra(2))
        with pytest.raises(ShapeMismatch):
            compose_homs(g, f)

    def test_isomorphism(self):
        B = powerset_algebra(3)
        assert is_isomorphism(identity_hom(B))
        rng = random.Random(0)
        C = random_relabel(rng, B)
        assert not is_isomorphism(random_hom(rng, B, powerset_algebra(2)))
        assert C == C and C != B

    def test_homs_to_two_counts(self):
        assert len(homs_to_two(TWO)) == 1
        assert homs_to_two(TWO)[0].table == (0, 1)
        assert len(homs_to_two(powerset_algebra([1, 2, 3]))) == 3
        E = idempotent_algebra(6)
        assert len(homs_to_two(E)) == 2
        assert len(oracles.all_homs_to_two(*tables(E))) == 2

    def test_homs_to_two_against_brute_force(self):
        rng = random.Random(2)
        for k in range(1, 4):
            B = random_relabel(rng, powerset_algebra(k))
            found = {h.table for h in homs_to_two(B)}
            assert found == set(oracles.all_homs_to_two(*tables(B)))
            # ascending order of the atom sent to 1
            firsts = [next(t for t in atoms(B).atoms if h.table[t]) for h in homs_to_two(B)]
            assert firsts == list(atoms(B).atoms)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.randoms(use_true_random=False))
def test_relabelled_powerset_is_boolean(k, rng):
    B = random_relabel(rng, powerset_algebra(k))
    assert oracles.is_boolean(*tables(B))
    assert len(atoms(B).atoms) == k
    assert sorted(oracles.table_atoms(B.meet_table.tolist(), B.zero)) == sorted(atoms(B).atoms)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3), st.integers(1, 3), st.integers(1, 3), st.randoms(use_true_random=False))
def test_composition_of_homs_is_hom(a, b, c, rng):
    A, B, C = (random_relabel(rng, powerset_algebra(k)) for k in (a, b, c))
    f, g = random_hom(rng, A, B), random_hom(rng, B, C)
    h = compose_homs(g, f)
    assert check_hom(h)
    assert all(h(x) == g(f(x)) for x in A.elements())


def test_large_powerset_uses_bit_operations():
    B = powerset_algebra(16)
    assert B.size == 1 << 16
    assert B.meet(0xF0F0, 0xFF00) == 0xF000
    assert B.neg(0) == B.one
    assert np.array_equal(B.vmeet(np.array([3]), np.array([5])), np.array([1]))
    assert check_hom(identity_hom(B))
