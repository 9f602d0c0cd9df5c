import math

import pytest

from legendre_pd import (
    BIG50,
    OnCut,
    RepId,
    UnsupportedRepresentation,
    bridge_residual,
    dmu_p,
    legendre_p,
    psi_identity_residual,
)
from legendre_pd.oracle import fd_dmu

LN2 = math.log(2)
SQRT2 = math.sqrt(2)
EULER = 0.5772156649015329


@pytest.mark.parametrize("rep", [RepId.E1_1, RepId.E1_2])
@pytest.mark.parametrize(
    "idx, expected",
    [
        ((0, 0), 0.5 * LN2 - EULER),
        ((1, 0), 1.5 * LN2 + 2 - 3 * EULER),
        ((1, 1), SQRT2 * (LN2 - 1 - 2 * EULER)),
    ],
)
def test_golden_values(idx, expected, rep):
    value = dmu_p(idx, 3, rep).value
    assert value.imag == 0
    assert value.real == pytest.approx(expected, rel=1e-12)


def test_finite_difference_sample():
    value = dmu_p((2, 2), 1.5).value
    assert value.real == pytest.approx(-1.6468626575668104, rel=1e-13)
    assert abs(value - complex(fd_dmu(2, 2, 1.5))) <= 1e-7 * abs(value)


@pytest.mark.parametrize("z", [2, 1.1, 1 + 1j, -0.5 + 2j, 10 + 0.1j, 0.5j])
def test_reps_agree(z):
    for n in range(7):
        for m in range(n + 1):
            a = dmu_p((n, m), z, RepId.E1_1).value
            b = dmu_p((n, m), z, RepId.E1_2).value
            assert abs(a - b) <= 1e-12 * max(abs(a), abs(b))


@pytest.mark.parametrize("variant", [RepId.E2_9, RepId.E2_10])
def test_bridge_residual_vanishes(variant):
    for n in range(6):
        for m in range(n + 1):
            report = bridge_residual((n, m), 1 + 1j, variant)
            assert report.relative <= 1e-13
            if m == 0:
                assert report.value == 0


@pytest.mark.parametrize("variant", [RepId.E3_4, RepId.E3_6])
def test_psi_identity_residual_vanishes(variant):
    for n in range(6):
        for m in range(n + 1):
            assert psi_identity_residual((n, m), 3, variant).relative <= 1e-13


def test_psi_shift_is_covariant():
    base = dmu_p((3, 2), 2, RepId.E1_1, BIG50).value
    shifted = dmu_p((3, 2), 2, RepId.E1_1, BIG50, psi_shift=1).value
    p = legendre_p((3, 2), 2, BIG50).value
    assert abs(shifted - base - p) < 1e-40 * abs(p)


def test_rejected_inputs():
    with pytest.raises(UnsupportedRepresentation):
        dmu_p((2, 1), OnCut(0.5))
    with pytest.raises(UnsupportedRepresentation):
        dmu_p((2, 1), 3, RepId.E1_3)
    with pytest.raises(UnsupportedRepresentation):
        bridge_residual((2, 1), 3, RepId.E3_4)
