"""Independent reference evaluations used only to validate the finite sums.

Everything here runs in arbitrary precision (``Big``, 50 digits unless told
otherwise): the hypergeometric series for non-integer degree and order,
central finite differences in the degree and order, the ``eps``-limit of the
second-kind function, and exact Rodrigues polynomial calculus.  Gamma,
digamma and the analytically continued ``2F1`` come from mpmath.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Any

from .kernel import BIG50, Big, DomainError, GaussQ, OracleDomainError, PrecisionMode, big_context, to_fraction

__all__ = [
    "SeriesControl",
    "p_general",
    "p_general_mu",
    "fd_dnu",
    "fd_dmu",
    "q_epsilon_limit",
    "rodrigues_exact",
    "in_lens",
]


@dataclass(frozen=True)
class SeriesControl:
    """Truncation of the hypergeometric series."""

    max_terms: int = 2000
    term_tol: float = 1e-30

    def __post_init__(self) -> None:
        if self.max_terms < 1:
            raise ValueError("max_terms must be at least 1")
        if not self.term_tol > 0:
            raise ValueError("term_tol must be positive")


DEFAULT_CONTROL = SeriesControl()


def _ctx(mode: PrecisionMode | None):
    mode = BIG50 if mode is None else mode
    if not isinstance(mode, Big):
        raise ValueError("oracle evaluations need Big precision")
    return big_context(int(mode.digits))


def _mpf(ctx, x: Fraction):
    return ctx.mpf(x.numerator) / x.denominator


def _mpc(ctx, x: Any):
    if isinstance(x, (Fraction, int)):
        return ctx.mpc(_mpf(ctx, Fraction(x)))
    if isinstance(x, GaussQ):
        return ctx.mpc(_mpf(ctx, x.re), _mpf(ctx, x.im))
    if isinstance(x, complex):
        return ctx.mpc(x.real, x.imag)
    return ctx.mpc(ctx.convert(x))


def in_lens(z: Any) -> bool:
    """True where the series converges at both ``z`` and ``-z``."""
    zc = complex(z)
    return abs(zc - 1) < 2 and abs(zc + 1) < 2


def _series(ctx, a, b, c, x, ctl: SeriesControl):
    """``2F1(a, b; c; x)`` by direct summation, ``|x| < 1``."""
    total = term = ctx.mpc(1)
    small = 0
    for k in range(ctl.max_terms):
        term = term * (a + k) * (b + k) / ((k + 1) * (c + k)) * x
        total += term
        if term == 0:
            return total
        if abs(term) <= ctl.term_tol * abs(total):
            small += 1
            if small == 2:
                return total
        else:
            small = 0
    raise OracleDomainError(f"series did not converge in {ctl.max_terms} terms")


def _logs(ctx, z, reflect: int):
    """Logs of ``(w-1)/2`` and ``(w+1)/2`` at ``w = z`` or, for ``reflect=+-1``, at ``-z``.

    The reflected point carries the phase ``e^{-+ i pi}`` of the side it is
    approached from, so real ``z > 1`` maps to ``-z -+ i0``.
    """
    la, lb = ctx.log((z - 1) / 2), ctx.log((z + 1) / 2)
    if not reflect:
        return la, lb
    turn = ctx.mpc(0, -reflect) * ctx.pi
    return lb + turn, la + turn


def _p_nu(ctx, nu, m: int, z, ctl: SeriesControl, reflect: int = 0, continue_ok: bool = False):
    w = -z if reflect else z
    x = (1 - w) / 2
    la, lb = _logs(ctx, z, reflect)
    pre = ctx.exp((la + lb) * m / 2) * ctx.gamma(nu + m + 1) * ctx.rgamma(nu - m + 1) / ctx.factorial(m)
    if abs(x) < 1:
        return pre * _series(ctx, m - nu, nu + m + 1, m + 1, x, ctl)
    if not continue_ok:
        raise OracleDomainError(f"|1 - z|/2 = {float(abs(x)):.3g} is outside the series disc")
    if ctx.im(x) == 0 and ctx.re(x) > 1:
        # x sits on the 2F1 cut; move it to the side matching -z -+ i0.
        x = x + ctx.mpc(0, reflect or 1) * ctx.mpf(10) ** (-(ctx.dps + 20))
    return pre * ctx.hyp2f1(m - nu, nu + m + 1, m + 1, x)


def p_general(
    nu: Any,
    m: int,
    z: Any,
    ctl: SeriesControl = DEFAULT_CONTROL,
    mode: PrecisionMode | None = None,
) -> Any:
    """``P_nu^m(z)`` from its hypergeometric series in ``(1-z)/2``.

    Requires ``|1-z|/2 < 1``; integer ``m >= 0``, complex ``nu``.

    >>> float(p_general(2, 0, 1.5).real)
    2.875
    """
    if m < 0:
        raise DomainError("order must be non-negative")
    ctx = _ctx(mode)
    return _p_nu(ctx, _mpc(ctx, nu), m, _mpc(ctx, z), ctl)


def p_general_mu(
    nu: Any,
    mu: Any,
    z: Any,
    ctl: SeriesControl = DEFAULT_CONTROL,
    mode: PrecisionMode | None = None,
) -> Any:
    """``P_nu^mu(z)`` for general order, ``((z+1)/(z-1))^{mu/2}/Gamma(1-mu) 2F1(-nu, nu+1; 1-mu; (1-z)/2)``."""
    ctx = _ctx(mode)
    nu, mu, z = _mpc(ctx, nu), _mpc(ctx, mu), _mpc(ctx, z)
    c = 1 - mu
    if ctx.im(c) == 0 and ctx.re(c) <= 0 and ctx.isint(ctx.re(c)):
        raise OracleDomainError("1 - mu is a pole of Gamma")
    x = (1 - z) / 2
    if abs(x) >= 1:
        raise OracleDomainError("|1 - z|/2 is outside the series disc")
    pre = ctx.exp(mu / 2 * (ctx.log((z + 1) / 2) - ctx.log((z - 1) / 2))) * ctx.rgamma(c)
    return pre * _series(ctx, -nu, nu + 1, c, x, ctl)


def fd_dnu(
    n: int,
    m: int,
    z: Any,
    h: float = 1e-4,
    ctl: SeriesControl = DEFAULT_CONTROL,
    mode: PrecisionMode | None = None,
) -> Any:
    """Central difference ``[P_{n+h}^m - P_{n-h}^m] / (2h)``."""
    ctx = _ctx(mode)
    zz, hh = _mpc(ctx, z), ctx.mpf(h)
    return (_p_nu(ctx, n + hh, m, zz, ctl) - _p_nu(ctx, n - hh, m, zz, ctl)) / (2 * hh)


def fd_dmu(
    n: int,
    m: int,
    z: Any,
    h: float = 1e-4,
    ctl: SeriesControl = DEFAULT_CONTROL,
    mode: PrecisionMode | None = None,
) -> Any:
    """Central difference ``[P_n^{m+h} - P_n^{m-h}] / (2h)``."""
    ctx = _ctx(mode)
    hh = ctx.mpf(h)
    up = p_general_mu(n, m + hh, z, ctl, mode)
    dn = p_general_mu(n, m - hh, z, ctl, mode)
    return (up - dn) / (2 * hh)


def q_epsilon_limit(
    n: int,
    m: int,
    z: Any,
    eps: float,
    mode: PrecisionMode | None = None,
    ctl: SeriesControl = DEFAULT_CONTROL,
    im_sign: int | None = None,
) -> Any:
    """``Q_{n+eps}^m(z) = (pi/2)[e^{-+i pi nu} P_nu^m(z) - P_nu^m(-z)] / sin(pi nu)``.

    The upper sign is taken for ``Im z > 0`` and for real ``z > 1`` unless
    ``im_sign`` says otherwise.  ``z`` itself must lie in the series disc;
    ``-z`` is continued analytically when it does not.
    """
    if not 0 < eps <= 1e-3:
        raise ValueError("eps must lie in (0, 1e-3]")
    ctx = _ctx(mode)
    zz = _mpc(ctx, z)
    if ctx.im(zz) == 0 and ctx.re(zz) <= 1:
        raise DomainError("z lies on the cut")
    s = im_sign if im_sign is not None else (-1 if ctx.im(zz) < 0 else 1)
    nu = n + ctx.mpf(eps)
    direct = _p_nu(ctx, nu, m, zz, ctl)
    mirrored = _p_nu(ctx, nu, m, zz, ctl, reflect=s, continue_ok=True)
    phase = ctx.expjpi(-s * nu)
    return ctx.pi / 2 * (phase * direct - mirrored) / ctx.sinpi(nu)


def _poly_power(n: int) -> list[int]:
    """Coefficients (ascending) of ``(z^2 - 1)^n``."""
    out = [0] * (2 * n + 1)
    for j in range(n + 1):
        out[2 * j] = comb(n, j) * (-1) ** (n - j)
    return out


def _derive(coefs: list[int], times: int) -> list[int]:
    for _ in range(times):
        coefs = [k * c for k, c in enumerate(coefs)][1:]
    return coefs


def rodrigues_exact(n: int, m: int, z: Any) -> tuple[Fraction, Fraction]:
    """Exact ``P_n^m(z)`` at rational ``z > 1`` from Rodrigues' formula.

    ``P_n^m = (z^2-1)^{m/2} / (2^n n!) d^{n+m}/dz^{n+m} (z^2-1)^n``.
    Returns ``(r, s)`` with ``P = r + s sqrt(z^2-1)``.

    >>> rodrigues_exact(2, 2, 2)
    (Fraction(9, 1), Fraction(0, 1))
    """
    if not 0 <= m <= n:
        raise DomainError("need 0 <= m <= n")
    z = to_fraction(z)
    if z <= 1:
        raise DomainError("rodrigues_exact needs rational z > 1")
    poly = _derive(_poly_power(n), n + m)
    value = Fraction(0)
    for c in reversed(poly):
        value = value * z + c
    value = value * (z * z - 1) ** (m // 2) / (2 ** n * factorial(n))
    return (value, Fraction(0)) if m % 2 == 0 else (Fraction(0), value)
