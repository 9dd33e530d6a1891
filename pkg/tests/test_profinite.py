import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from stonekit.errors import (
    IncompatibleTransitions,
    MalformedInput,
    ModuliNotClosed,
    NotPrime,
    PrecisionZero,
    UnknownModulus,
    WrongPrime,
)
from stonekit.profinite import (
    LimitPoint,
    PadicInt,
    cantor_digits,
    check_point,
    digits_to_padic,
    make_system,
    moduli_closure,
    padic_add,
    padic_from_int,
    padic_mul,
    padic_neg,
    residue_chain,
    zhat_compatible,
    zhat_from_int,
    zhat_reduce,
)


class TestSystems:
    def test_constant_identity_system(self):
        S = make_system([("a", "b")] * 3, [(0, 1), (0, 1)])
        assert S.project(2, 0) == [0, 1]

    def test_residue_chain(self):
        S = residue_chain(3, 3)
        assert [len(level) for level in S.levels] == [3, 9, 27]
        assert S.project(2, 0) == [x % 3 for x in range(27)]

    def test_out_of_range(self):
        with pytest.raises(IncompatibleTransitions) as exc:
            make_system([(0, 1), (0, 1, 2)], [(0, 1, 2)])
        assert exc.value.index == 0

    def test_not_total(self):
        with pytest.raises(IncompatibleTransitions):
            make_system([(0, 1), (0, 1, 2)], [(0, 1)])

    def test_points(self):
        S = residue_chain(5, 3)
        assert check_point(LimitPoint(S, (4, 24, 124)))
        assert check_point(LimitPoint(S, (2, 2 % 25, 2 % 125)))
        assert not check_point(LimitPoint(S, (1, 2, 2)))
        with pytest.raises(MalformedInput):
            check_point(LimitPoint(S, (1, 1)))


class TestPadic:
    def test_minus_one(self):
        assert padic_from_int(5, -1, 3).residues == (4, 24, 124)

    def test_add_example(self):
        assert padic_add(padic_from_int(5, 2, 2), padic_from_int(5, 3, 2)).residues == (0, 5)

    def test_errors(self):
        with pytest.raises(NotPrime):
            padic_from_int(4, 1, 2)
        with pytest.raises(PrecisionZero):
            padic_from_int(2, 1, 0)
        with pytest.raises(MalformedInput):
            PadicInt(5, 2, (1, 7))

    def test_mixed_precision_truncates(self):
        r = padic_mul(padic_from_int(3, 5, 4), padic_from_int(3, 7, 2))
        assert r.precision == 2 and r.residues == oracles.residues(35, 3, 2)

    def test_operators(self):
        x, y = padic_from_int(2, 11, 6), padic_from_int(2, -3, 6)
        assert (x + y).residues == oracles.residues(8, 2, 6)
        assert (x * y).residues == oracles.residues(-33, 2, 6)
        assert (-x).residues == oracles.residues(-11, 2, 6)
        assert (x - y).residues == oracles.residues(14, 2, 6)


@settings(max_examples=300, deadline=None)
@given(st.sampled_from([2, 3, 5, 7]), st.integers(1, 64), st.integers(-10**30, 10**30), st.integers(-10**30, 10**30))
def test_arithmetic_matches_big_integers(p, n, x, y):
    a, b = padic_from_int(p, x, n), padic_from_int(p, y, n)
    assert padic_add(a, b).residues == oracles.residues(x + y, p, n)
    assert padic_mul(a, b).residues == oracles.residues(x * y, p, n)
    assert padic_neg(a).residues == oracles.residues(-x, p, n)
    assert padic_add(a, padic_neg(a)).residues == (0,) * n


class TestCantor:
    def test_thirteen(self):
        assert cantor_digits(padic_from_int(2, 13, 4)) == (1, 0, 1, 1)

    def test_zero(self):
        assert digits_to_padic([0] * 5) == padic_from_int(2, 0, 5)

    def test_wrong_prime(self):
        with pytest.raises(WrongPrime):
            cantor_digits(padic_from_int(3, 1, 2))

    @settings(max_examples=200, deadline=None)
    @given(st.lists(st.integers(0, 1), min_size=32, max_size=32))
    def test_round_trip(self, bits):
        x = digits_to_padic(bits)
        assert cantor_digits(x) == tuple(bits)
        assert x.value == sum(b << i for i, b in enumerate(bits))


class TestZhat:
    MODULI = (1, 2, 3, 4, 6, 12)

    def test_seven(self):
        assert zhat_from_int(7, self.MODULI).residues == (0, 1, 1, 3, 1, 7)

    def test_zero(self):
        assert set(zhat_from_int(0, self.MODULI).residues) == {0}

    def test_not_closed(self):
        with pytest.raises(ModuliNotClosed):
            zhat_from_int(1, (1, 2, 12))

    def test_reduce(self):
        e = zhat_from_int(-5, self.MODULI)
        assert zhat_reduce(e, 4) == 3
        with pytest.raises(UnknownModulus):
            zhat_reduce(e, 5)

    def test_closure(self):
        assert moduli_closure([12]) == self.MODULI
        assert moduli_closure([4, 9]) == (1, 2, 3, 4, 9)

    @settings(max_examples=200, deadline=None)
    @given(st.integers(-10**6, 10**6))
    def test_compatible(self, z):
        e = zhat_from_int(z, moduli_closure(range(1, 25)))
        assert zhat_compatible(e)
        assert all(zhat_reduce(e, n) == z % n for n in e.moduli)

    def test_incompatible_detected(self):
        e = zhat_from_int(7, self.MODULI)
        bad = type(e)(e.moduli, e.residues[:-1] + (8,))
        assert not zhat_compatible(bad)
