
import pytest
from hypothesis import given, strategies as st

from dihedral_lie.series import (
    A1, A2, CUSP, D2, D3, RationalSeries, SeriesArgumentError, closed_form, coefficient,
    euler_lhs, euler_rhs, expand,
)


def test_examples():
    d2 = expand(D2, 14)
    assert (d2[8], d2[10], d2[14]) == (1, 1, 2)
    assert coefficient(D3, 13) == 2
    a1 = expand(A1, 21)
    assert all(a1[w] == (1 if w >= 3 and w % 2 else 0) for w in range(22))


def test_closed_forms():
    assert closed_form("depth2", w=14) == 2
    assert closed_form("depth3_level", p=7) == 1
    assert closed_form("cusp_eps2", p=11) == 1
    assert closed_form("cusp_v2", p=7) == 1
    assert closed_form("unramified_depth1", p=13) == 5
    for bad in [("depth2_level", {"p": 9}), ("depth2_level", {"p": 3}), ("depth1", {"w": 0}),
                ("nope", {}), ("cusp_v2", {"p": "7"})]:
        with pytest.raises(SeriesArgumentError):
            closed_form(bad[0], **bad[1])


def test_bad_series():
    with pytest.raises(SeriesArgumentError):
        RationalSeries((1,), (0, 1))
    with pytest.raises(SeriesArgumentError):
        expand(D2, -1)


@given(st.lists(st.integers(-3, 3), min_size=1, max_size=6),
       st.lists(st.integers(-3, 3), min_size=0, max_size=4))
def test_expansion_inverts_denominator(num, tail):
    den = (1,) + tuple(tail)
    s = RationalSeries(tuple(num), den)
    W = 12
    c = expand(s, W)
    # den * series = num up to order W
    for n in range(W + 1):
        acc = sum(den[k] * c[n - k] for k in range(min(n, len(den) - 1) + 1))
        assert acc == (num[n] if n < len(num) else 0)


def test_series_invariants_to_order_40():
    d2, d3 = expand(D2, 40), expand(D3, 41)
    assert all(d2[w] == (w - 2) // 6 for w in range(8, 41, 2))
    assert all(d3[w] == ((w - 3) ** 2 - 1) // 48 for w in range(11, 42, 2))
    assert expand(D2 - A2, 40) == [-c for c in expand(CUSP, 40)]


def test_euler_helpers():
    assert euler_lhs(7, 2, 1) == 0 == euler_rhs(7, 2)
    assert euler_rhs(7, 3) == 1
    with pytest.raises(SeriesArgumentError):
        euler_rhs(7, 4)
