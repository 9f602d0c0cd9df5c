import math

import pytest

from legendre_pd import (
    BIG50,
    OnCut,
    RepId,
    UnsupportedRepresentation,
    dnu_p,
    dnu_p_cut,
    dnu_p_m0,
    dnu_p_negorder,
    legendre_p,
)
from legendre_pd.deriv_nu import DNU_REPS, auto_rep
from legendre_pd.kernel import big_context
from legendre_pd.oracle import fd_dnu

LN2 = math.log(2)
SQRT2 = math.sqrt(2)

GOLDEN = [
    ((0, 0), LN2),
    ((1, 0), 3 * LN2 + 2),
    ((1, 1), 2 * SQRT2 * LN2 + 3.5 * SQRT2),
]


@pytest.mark.parametrize("rep", list(DNU_REPS))
@pytest.mark.parametrize("idx, expected", GOLDEN)
def test_golden_values_every_rep(idx, expected, rep):
    got = dnu_p(idx, 3, rep).value
    assert got.imag == 0
    assert got.real == pytest.approx(expected, rel=1e-12)


def test_golden_in_big():
    ctx = big_context(50)
    value = dnu_p((1, 1), 3, RepId.E3_7, BIG50).value
    expected = ctx.sqrt(2) * (2 * ctx.ln2 + ctx.mpf(7) / 2)
    assert abs(value - expected) < ctx.mpf(10) ** -45


def test_m0_formulas():
    for n in range(6):
        ref = dnu_p((n, 0), 1 + 1j, RepId.E1_3).value
        for variant in (RepId.E3_3, RepId.E3_9):
            assert abs(dnu_p_m0(n, 1 + 1j, variant).value - ref) <= 1e-12 * abs(ref)
    with pytest.raises(UnsupportedRepresentation):
        dnu_p_m0(2, 3, RepId.E1_4)


def test_finite_difference_sample():
    value = dnu_p((2, 1), 1 + 1j).value
    assert value == pytest.approx(-7.24435679562321 + 6.839460172957494j, rel=1e-13)
    fd = complex(fd_dnu(2, 1, 1 + 1j))
    assert abs(value - fd) <= 1e-7 * abs(value)


@pytest.mark.parametrize(
    "idx, x, expected",
    [((0, 0), 0.0, -LN2), ((1, 0), 0.5, 0.5 * math.log(0.75) - 0.5), ((1, 1), 0.5, -0.9055605554226537)],
)
def test_on_cut(idx, x, expected):
    value = dnu_p_cut(idx, x).value
    assert abs(value.imag) <= 1e-15
    assert value.real == pytest.approx(expected, rel=1e-13)
    assert dnu_p(idx, OnCut(x)).value == value


def test_on_cut_reps_agree():
    for n, m in [(3, 1), (4, 4), (6, 2)]:
        values = [dnu_p_cut((n, m), -0.3, rep).value for rep in (RepId.E1_3, RepId.E3_1, RepId.E3_7)]
        for v in values[1:]:
            assert abs(v - values[0]) <= 1e-12 * abs(values[0])


def test_negative_order():
    assert dnu_p_negorder((1, 1), 3).value.real == pytest.approx(1.3338115340618208, rel=1e-13)
    assert dnu_p_negorder((2, 2), 5).value.real == pytest.approx(4.518059088226551, rel=1e-13)
    # m = 0 is the identity
    assert dnu_p_negorder((3, 0), 2).value == pytest.approx(dnu_p((3, 0), 2).value, rel=1e-14)


def test_auto_region_and_fallback():
    assert auto_rep(1.05) in (RepId.E1_3, RepId.E3_7, RepId.E3_8)
    assert auto_rep(-3 + 0.1j) not in (RepId.E1_3, RepId.E3_7, RepId.E3_8)
    report = dnu_p((8, 0), 1.05, RepId.E3_1)
    assert report.cond > 1e5


def test_lower_side_is_conjugate_for_real_z():
    from legendre_pd import off_cut

    up = dnu_p((4, 2), off_cut(2.5, 1)).value
    dn = dnu_p((4, 2), off_cut(2.5, -1)).value
    assert up == pytest.approx(dn.conjugate(), rel=1e-14)


def test_values_scale_with_p():
    # d/dnu P at n = 0 is ln((z+1)/2) for every z off the cut
    z = 0.5 + 0.5j
    assert dnu_p((0, 0), z).value == pytest.approx(complex(big_context(20).log((z + 1) / 2)), rel=1e-14)
    assert legendre_p((0, 0), z).value == 1
