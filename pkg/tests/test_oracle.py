import math
from fractions import Fraction

import pytest

from legendre_pd import DOUBLE, DomainError, OracleDomainError
from legendre_pd.kernel import big_context
from legendre_pd.oracle import (
    SeriesControl,
    fd_dmu,
    fd_dnu,
    in_lens,
    p_general,
    p_general_mu,
    q_epsilon_limit,
    rodrigues_exact,
)

LN2 = math.log(2)


def test_integer_degree_reduces_to_polynomial():
    assert complex(p_general(2, 0, 1.5)) == pytest.approx(2.875, rel=1e-30)
    assert complex(p_general(1, 1, 1 + 1j)) == pytest.approx(complex(big_context(30).sqrt((1 + 1j) ** 2 - 1)), rel=1e-14)


def test_general_degree_matches_mpmath():
    ctx = big_context(50)
    value = p_general(Fraction(1, 2), 1, Fraction(6, 5))
    expected = ctx.legenp(ctx.mpf(1) / 2, 1, ctx.mpf(6) / 5, type=3)
    # truncation is set by the default term_tol of 1e-30
    assert abs(value - expected) < ctx.mpf(10) ** -30


def test_general_order_matches_mpmath():
    ctx = big_context(50)
    value = p_general_mu(2, Fraction(1, 3), 0.5 + 0.5j)
    expected = ctx.legenp(2, ctx.mpf(1) / 3, ctx.mpc(0.5, 0.5), type=3)
    assert abs(value - expected) < ctx.mpf(10) ** -40


def test_finite_differences():
    # d/dnu P_nu(z) at nu = 0 is ln((z+1)/2)
    assert complex(fd_dnu(0, 0, 1.5)) == pytest.approx(math.log(1.25), rel=1e-8)
    assert complex(fd_dnu(2, 1, 1 + 1j)) == pytest.approx(-7.24435679562321 + 6.839460172957494j, rel=1e-7)
    assert complex(fd_dmu(2, 2, 1.5)).real == pytest.approx(-1.6468626575668104, rel=1e-7)


def test_epsilon_limit_converges_linearly():
    exact = 0.5 * math.log(2.5 / 0.5)  # Q_0(1.5)
    errors = [abs(complex(q_epsilon_limit(0, 0, 1.5, eps)) - exact) for eps in (1e-4, 1e-5)]
    assert errors[1] < 1e-4
    assert errors[0] / errors[1] == pytest.approx(10, rel=0.05)


def test_epsilon_limit_lower_side():
    up = complex(q_epsilon_limit(2, 1, 1 + 1j, 1e-6))
    dn = complex(q_epsilon_limit(2, 1, 1 - 1j, 1e-6))
    assert up == pytest.approx(dn.conjugate(), rel=1e-10)


def test_rodrigues():
    assert rodrigues_exact(2, 2, 2) == (9, 0)
    assert rodrigues_exact(2, 0, 3) == (13, 0)
    assert rodrigues_exact(1, 1, 3) == (0, 1)
    with pytest.raises(DomainError):
        rodrigues_exact(2, 0, Fraction(1, 2))


def test_lens():
    assert in_lens(0.5j)
    assert not in_lens(3)


def test_oracle_errors():
    with pytest.raises(OracleDomainError):
        p_general(Fraction(1, 2), 0, 5)
    with pytest.raises(OracleDomainError):
        p_general_mu(2, 2, 1.5)  # 1 - mu is a pole
    with pytest.raises(OracleDomainError):
        p_general(Fraction(1, 2), 0, 2.9, SeriesControl(max_terms=5))
    with pytest.raises(ValueError):
        p_general(1, 0, 1.5, mode=DOUBLE)
    with pytest.raises(ValueError):
        q_epsilon_limit(1, 0, 1.5, 0.1)
    with pytest.raises(DomainError):
        q_epsilon_limit(1, 0, 0.5, 1e-6)
    with pytest.raises(ValueError):
        SeriesControl(max_terms=0)


def test_small_cases_in_closed_form():
    assert complex(p_general(1, 0, 1.5)) == pytest.approx(1.5, rel=1e-30)
    assert complex(p_general(1, 1, 1.5)) == pytest.approx(math.sqrt(1.25), rel=1e-15)
    assert complex(fd_dnu(1, 0, 1.5)) == pytest.approx(1.5 * math.log(1.25) + 0.5, rel=1e-7)
    assert complex(p_general_mu(1, 1e-3, 1.5)) == pytest.approx(1.5, rel=2e-3)
    assert complex(p_general_mu(0, 1e-12, 1.5)) == pytest.approx(1, rel=1e-9)
    assert complex(q_epsilon_limit(1, 0, 1.5, 1e-5)) == pytest.approx(0.75 * math.log(5) - 1, rel=1e-4)
