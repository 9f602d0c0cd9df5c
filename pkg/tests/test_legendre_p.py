import math
from fractions import Fraction

import pytest

from legendre_pd import (
    BIG50,
    DomainError,
    OnCut,
    jacobi,
    legendre_p,
    legendre_p_exact,
    legendre_p_jacobi,
    legendre_p_negorder,
    parity_check,
)
from legendre_pd.kernel import big_context
from legendre_pd.oracle import rodrigues_exact

mp = big_context(30)


@pytest.mark.parametrize(
    "n, m, z, expected",
    [
        (0, 0, 3, 1.0),
        (1, 0, 3, 3.0),
        (2, 0, 3, 13.0),
        (1, 1, 3, 2 * math.sqrt(2)),
        (2, 2, 2, 9.0),
        (3, 1, 2, 1.5 * math.sqrt(3) * 19),
    ],
)
def test_small_values(n, m, z, expected):
    assert legendre_p((n, m), z).value == pytest.approx(expected, rel=1e-14)


@pytest.mark.parametrize("z", [2 + 0j, 1 + 1j, -0.5 + 2j, 0.5j, 10 + 0.1j])
@pytest.mark.parametrize("n, m", [(0, 0), (3, 1), (5, 5), (8, 3)])
def test_matches_mpmath_hobson(n, m, z):
    expected = complex(mp.legenp(n, m, z, type=3))
    got = legendre_p((n, m), z).value
    assert abs(got - expected) <= 1e-13 * abs(expected)


@pytest.mark.parametrize("x", [-0.9, -0.5, 0.1, 0.3, 0.9])
@pytest.mark.parametrize("n, m", [(2, 1), (4, 3), (6, 0)])
def test_on_cut_is_ferrers(n, m, x):
    expected = float(mp.legenp(n, m, x, type=2))
    got = legendre_p((n, m), OnCut(x)).value
    assert abs(got.imag) <= 1e-15 * max(1.0, abs(expected))
    assert got.real == pytest.approx(expected, rel=1e-13, abs=1e-15)


def test_negative_order_on_and_off_cut():
    assert legendre_p_negorder((2, 1), 3).value == pytest.approx(legendre_p((2, 1), 3).value / 6)
    expected = float(mp.legenp(3, -2, 0.4, type=2))
    assert legendre_p_negorder((3, 2), OnCut(0.4)).value.real == pytest.approx(expected, rel=1e-13)


@pytest.mark.parametrize("z", [Fraction(3, 2), Fraction(2), Fraction(3)])
def test_exact_against_rodrigues(z):
    for n in range(9):
        for m in range(n + 1):
            assert legendre_p_exact((n, m), z) == rodrigues_exact(n, m, z)


def test_jacobi_routes_agree():
    for n, m in [(1, 1), (4, 2), (7, 3)]:
        fwd = legendre_p_jacobi((n, m), 1 + 1j)
        back = legendre_p_jacobi((n, m), 1 + 1j, "reflected")
        ref = legendre_p((n, m), 1 + 1j).value
        assert abs(fwd - ref) <= 1e-13 * abs(ref)
        assert abs(back - ref) <= 1e-12 * abs(ref)


def test_jacobi_is_exact_for_rational_parameters():
    # P_2^{(1,1)}(z) = 15/4 z^2 - 3/4
    assert jacobi(2, 1, 1, 2) == pytest.approx(14.25, rel=1e-16)
    assert jacobi(2, 1, 1, 2, "reflected") == pytest.approx(14.25, rel=1e-16)
    with pytest.raises(ValueError):
        jacobi(2, 1, 1, 2, "sideways")


@pytest.mark.parametrize("z", [3, 1 + 1j, 0.5j, -0.5 + 2j])
def test_parity(z):
    for n in range(6):
        for m in range(n + 1):
            assert parity_check((n, m), z).relative <= 1e-14


def test_big_precision():
    value = legendre_p((1, 1), 3, BIG50).value
    assert abs(value - 2 * mp.sqrt(2)) < mp.mpf(10) ** -28


def test_domain_errors():
    with pytest.raises(DomainError):
        legendre_p((1, 2), 3)
    with pytest.raises(DomainError):
        legendre_p((1, 0), 0.5)
    with pytest.raises(DomainError):
        legendre_p_exact((2, 0), Fraction(1, 2))


def test_jacobi_small_degrees():
    assert jacobi(0, 0, 0, 3) == 1
    assert jacobi(0, Fraction(-1, 2), 2, 3, "reflected") == 1
    assert jacobi(1, 0, 0, 3) == pytest.approx(3)
    # negative integer parameters go through the finite Pochhammer form
    assert jacobi(3, -2, -2, 1.5) == pytest.approx(jacobi(3, -2, -2, 1.5, "reflected"), rel=1e-14)


def test_parity_lower_side():
    assert parity_check((3, 3), 5, -1).relative <= 1e-14
    assert parity_check((1, 0), 1 + 2j, 1).relative <= 1e-14
