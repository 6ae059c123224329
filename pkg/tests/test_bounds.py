import math

import pytest

from suitable import bounds
from suitable.bounds import (
    EXACT,
    LOWER,
    core_contradictions,
    dushnik_N,
    furedi_kahn_upper,
    n_table,
    prop_i_lower_bound,
    scn_from_sun,
    small_scn,
    spencer_check,
    sun_from_scn,
    theorem_table,
)


def test_scn_sun_conversion():
    assert scn_from_sun(14, 9) == 5
    assert scn_from_sun(9, 9) == 0
    assert sun_from_scn(8, 4) == 12
    with pytest.raises(ValueError):
        scn_from_sun(3, 4)


def brute_prop_i(v, t):
    return max([i * (t + 1 - i) for i in range(1, min(v, t) + 1)] or [0])


@pytest.mark.parametrize("v, t, expected", [(5, 5, 9), (1, 7, 7), (3, 5, 9)])
def test_prop_i_lower_bound(v, t, expected):
    assert prop_i_lower_bound(v, t) == expected == brute_prop_i(v, t)


def test_small_scn_examples():
    assert small_scn(5, 8) == 2
    assert small_scn(3, 0) == 0
    assert small_scn(5, 9) is None
    assert small_scn(3, 3) == 1
    assert small_scn(4, 4) == small_scn(4, 5) == 1


def test_small_scn_first_gap():
    # the first undetermined N is s(s+1) for t = 2s and (s+1)^2 for t = 2s+1
    for t in range(2, 20):
        first = min(N for N in range(0, t * t) if small_scn(t, N) is None)
        s = t // 2
        assert first == (s * (s + 1) if t % 2 == 0 else (s + 1) ** 2)


def test_small_scn_monotone():
    for t in range(1, 15):
        vals = [small_scn(t, N) for N in range(0, 60)]
        defined = [x for x in vals if x is not None]
        assert defined == sorted(defined)
        for N in range(60):
            a, b = small_scn(t, N), small_scn(t + 1, N)
            if a is not None and b is not None:
                assert a >= b


def test_dushnik():
    assert dushnik_N(4, 3) == 3
    assert dushnik_N(5, 4) == 4
    assert dushnik_N(5, 3) == 4
    assert dushnik_N(9, 2) is None
    assert dushnik_N(3, 2) is None


def test_dushnik_upper_range():
    # the formula determines N(v,t) for floor(v/floor(sqrt v)) + floor(sqrt v) - 1 <= t < v
    for v in range(4, 60):
        r = math.isqrt(v)
        for t in range(v // r + r - 1, v):
            assert dushnik_N(v, t) is not None, (v, t)


def test_spencer_check():
    assert spencer_check(3, 2, 16)
    assert not spencer_check(3, 2, 17)
    assert spencer_check(3, 4, 12)
    assert spencer_check(3, 40, 10 ** 30)
    with pytest.raises(ValueError):
        spencer_check(2, 3, 4)


def test_furedi_kahn():
    assert furedi_kahn_upper(5, 5) == 25
    assert furedi_kahn_upper(8, 2) == pytest.approx(9.545177444479563)
    assert furedi_kahn_upper(4, 3) == pytest.approx(11.589138652066026)
    assert dushnik_N(4, 3) <= furedi_kahn_upper(4, 3)
    with pytest.raises(ValueError):
        furedi_kahn_upper(2, 3)


def test_theorem_table_examples():
    recs = theorem_table(7, 16)
    exact = [r for r in recs if r.kind == EXACT]
    assert len(exact) == 1 and exact[0].value == 5
    assert exact[0].provenance == bounds.PROV_ODD_STRENGTH

    recs = theorem_table(5, 9)
    assert not [r for r in recs if r.kind == EXACT]
    assert max(r.value for r in recs if r.kind == LOWER) == 5

    recs = theorem_table(5, 8)
    assert [(r.kind, r.value, r.provenance) for r in recs] == [(EXACT, 2, bounds.PROV_SMALL)]


def test_colbourn_equality_marked_unproved():
    recs = theorem_table(4, 6)
    eq = [r for r in recs if r.kind == EXACT]
    assert [r.value for r in eq] == [4]
    assert "without proof" in eq[0].provenance


@pytest.mark.parametrize("t", range(1, 12))
def test_table_internal_consistency(t):
    for N in range(0, 40):
        recs = theorem_table(t, N)
        assert bounds.consistency_errors(recs) == []
        k = small_scn(t, N)
        for r in recs:
            if r.kind == EXACT and k is not None:
                assert r.value == k


def test_n_table():
    recs = n_table(5, 4)
    assert [r.value for r in recs if r.kind == EXACT] == [4]
    assert [r.value for r in n_table(4, 4) if r.kind == EXACT] == [4]
    assert bounds.consistency_errors(n_table(6, 4)) == []


def test_core_contradictions():
    assert core_contradictions(9, 5, 5) == []
    # a (16,6,7)-core would contradict scn(7,16) = 5
    assert core_contradictions(16, 6, 7, n_range=range(16, 17))
    # too few rows for the i(t+1-i) bound
    assert core_contradictions(8, 3, 5)


def test_as_sun():
    rec = theorem_table(3, 4)[-1]
    assert bounds.as_sun(rec).value == 12
