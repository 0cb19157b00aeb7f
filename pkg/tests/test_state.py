import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from boussinesq.algebra import K, KPoly
from boussinesq.state import (
    CorrelatorKey,
    EtaFactor,
    LinComb,
    UState,
    canonical_ustate,
    eta,
    lincomb_add,
    lincomb_scale,
)

K1 = CorrelatorKey(0, -8, 0)
K2 = CorrelatorKey(1, -6, 3)

eta_factors = st.builds(EtaFactor, st.integers(0, 1), st.integers(1, 4))
states = st.builds(UState, st.integers(0, 3), st.integers(-3, 3), st.integers(0, 1),
                   st.integers(-2, 2), st.lists(eta_factors, max_size=5).map(tuple))
keys = st.builds(CorrelatorKey, st.integers(0, 1), st.integers(-4, 0), st.integers(-2, 2))
coeffs = st.lists(st.fractions(max_denominator=12).map(lambda x: x.limit_denominator(12)),
                  max_size=3).map(KPoly)
lincombs = st.lists(st.tuples(keys, coeffs), max_size=4).map(LinComb)


def test_add_merges():
    half = LinComb({K1: Fraction(1, 2)})
    assert lincomb_add(half, half) == LinComb({K1: 1})


def test_add_cancellation_prunes():
    got = lincomb_add(LinComb({K1: K}), LinComb({K1: -K}))
    assert got == LinComb()
    assert len(got) == 0
    assert str(got) == "0"


def test_add_folds_u3_basis():
    # (1/30618) (k+1)/3 + (223k/1837080 + 919/7348320), over 7348320:
    # 7348320 / (3 * 30618) = 80, 7348320 / 1837080 = 4
    assert 7348320 == 80 * 3 * 30618 == 4 * 1837080
    num = KPoly((80 + 919, 80 + 223 * 4))
    assert num == KPoly((999, 972)) == KPoly((37, 36)) * 27
    a = LinComb({K1: KPoly((1, 1)) * Fraction(1, 3 * 30618)})
    b = LinComb({K1: KPoly((Fraction(919, 7348320), Fraction(223, 1837080)))})
    assert lincomb_add(a, b) == LinComb({K1: KPoly((37, 36)) / 272160})


def test_scale():
    assert lincomb_scale(LinComb({K1: KPoly((1, 1)) / 3}), 3) == LinComb({K1: KPoly((1, 1))})
    assert lincomb_scale(LinComb({K1: 1}), 0) == LinComb()
    assert lincomb_scale(LinComb({K1: KPoly((1, 1)) / 120960}), 3) == \
        LinComb({K1: KPoly((1, 1)) / 40320})


@given(lincombs, lincombs, lincombs)
def test_add_commutative_associative(a, b, c):
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)


@given(lincombs, lincombs, coeffs)
def test_scale_distributes(a, b, c):
    assert (a + b).scale(c) == a.scale(c) + b.scale(c)


@given(lincombs)
def test_no_zero_coefficients_stored(a):
    assert all(not v.is_zero() for _, v in a.items())
    assert all(not v.is_zero() for _, v in (a - a.scale(Fraction(1, 2))).items())


@given(lincombs)
def test_lincomb_json_round_trip(a):
    text = a.dumps()
    assert LinComb.from_json(json.loads(text)) == a
    assert text == LinComb.from_json(json.loads(text)).dumps()


def test_canonical_sorts():
    s = UState(1, 0, 0, 0, (EtaFactor(1, 2), EtaFactor(0, 1)))
    assert canonical_ustate(s).etas == (EtaFactor(0, 1), EtaFactor(1, 2))


def test_canonical_idempotent_on_sorted():
    s = UState(2, 1, 1, -1, (EtaFactor(0, 1), EtaFactor(1, 2)))
    assert canonical_ustate(s) == s
    assert canonical_ustate(canonical_ustate(s)) == canonical_ustate(s)


@given(states, st.randoms())
def test_canonical_order_insensitive(s, rnd):
    shuffled = list(s.etas)
    rnd.shuffle(shuffled)
    other = UState(s.genus, s.dn, s.m, s.dp, tuple(shuffled))
    assert canonical_ustate(other) == canonical_ustate(s)
    assert hash(canonical_ustate(other)) == hash(canonical_ustate(s))


@given(states)
def test_ustate_json_round_trip(s):
    data = json.loads(json.dumps(s.to_json()))
    assert list(data) == ["g", "dn", "m", "dp", "etas"]
    assert UState.from_json(data) == s


def test_key_json():
    assert K2.to_json() == {"m": 1, "shift": -6, "r": 3}
    assert CorrelatorKey.from_json(K2.to_json()) == K2


@pytest.mark.parametrize("bad", [
    lambda: UState(-1, 0, 0, 0, ()),
    lambda: UState(1, 0, 2, 0, ()),
    lambda: UState(1, 0, 0, 0, ((2, 1),)),
    lambda: UState(1, 0, 0, 0, ((0, 0),)),
    lambda: eta(0, 0),
])
def test_invalid_states_rejected(bad):
    with pytest.raises(ValueError):
        bad()
