"""Associated Legendre function of the first kind, integer degree and order.

Off the cut the function is the finite sum

    P_n^m(z) = ((z^2-1)/4)^{m/2} sum_{k=0}^{n-m} (k+n+m)! / (k! (k+m)! (n-m-k)!) ((z-1)/2)^k

with ``((z^2-1)/4)^{m/2}`` split into principal powers of ``(z-1)/2`` and
``(z+1)/2``.  On the cut the two lips are combined with the phase weights
``e^{+-i pi m/2}`` (Ferrers-type values).
"""
from __future__ import annotations

from fractions import Fraction
from typing import Any

from .kernel import (
    Arith,
    Combo,
    DomainError,
    EvalReport,
    Frame,
    Halves,
    IndexPair,
    OffCut,
    OnCut,
    PrecisionMode,
    RepId,
    arith,
    as_index,
    as_point,
    fact,
    frame_off_cut,
    frame_on_cut,
)

__all__ = [
    "jacobi",
    "legendre_p",
    "legendre_p_negorder",
    "legendre_p_jacobi",
    "legendre_p_exact",
    "parity_check",
]


def _pochhammer(a: Any, k: int) -> Any:
    out = 1
    for j in range(k):
        out = out * (a + j)
    return out


def _jacobi_coefs(n: int, alpha: Any, beta: Any, reflected: bool) -> list[Any]:
    # Gamma ratios written as finite products, so integer negative parameters
    # give the finite limiting value directly.
    lead = beta if reflected else alpha
    out = []
    for k in range(n + 1):
        top = _pochhammer(n + alpha + beta + 1, k)
        for j in range(k + 1, n + 1):
            top = top * (j + lead)
        if isinstance(top, int):
            top = Fraction(top)
        c = top / (fact(k) * fact(n - k))
        if reflected and (n + k) % 2:
            c = -c
        out.append(c)
    return out


def jacobi(
    n: int,
    alpha: Any,
    beta: Any,
    z: Any,
    rep: str = "forward",
    mode: PrecisionMode | None = None,
) -> Any:
    """Jacobi polynomial ``P_n^{(alpha, beta)}(z)``.

    ``rep="forward"`` sums powers of ``(z-1)/2``; ``rep="reflected"`` sums
    powers of ``(z+1)/2``.  Both are exact rewritings of the same polynomial.
    Rational ``alpha``/``beta`` (int or Fraction) are summed exactly at the
    exact value of ``z`` and rounded once.
    """
    if n < 0:
        raise DomainError("Jacobi degree must be non-negative")
    rep = rep.lower()
    if rep not in ("forward", "reflected"):
        raise ValueError(f"rep must be 'forward' or 'reflected', got {rep!r}")
    exact = isinstance(alpha, (int, Fraction)) and isinstance(beta, (int, Fraction))
    ar = arith(mode, exact=exact)
    if not exact:
        alpha, beta = ar.num(alpha), ar.num(beta)
    reflected = rep == "reflected"
    coefs = _jacobi_coefs(n, alpha, beta, reflected)
    zz = ar.lift(z)
    t = (zz + 1) / 2 if reflected else (zz - 1) / 2
    total = ar.t_zero
    for c in reversed(coefs):
        total = total * t + (ar.lift(c) if exact else c)
    return ar.round(total)


def _p_coef(n: int, m: int, k: int) -> Fraction:
    return Fraction(fact(k + n + m), fact(k) * fact(k + m) * fact(n - m - k))


def p_on_frame(n: int, m: int, fr: Frame, ar: Arith, combo: Combo | None = None) -> Any:
    """Exact part of ``P_n^m`` at ``fr``; multiply by ``fr.radical(m)`` for the value."""
    c = combo if combo is not None else Combo(ar)
    return c.series(Halves(fr, m).prod, fr.A, n - m, lambda k: _p_coef(n, m, k))[0]


def p_value(n: int, m: int, fr: Frame, ar: Arith) -> Any:
    return ar.round(p_on_frame(n, m, fr, ar)) * fr.radical(m, ar)


def _p_report(idx: IndexPair, pt: Any, ar: Arith, negative: bool = False) -> EvalReport:
    n, m = idx.n, idx.m
    if isinstance(pt, OnCut):
        lips = []
        for side in (1, -1):
            fr = frame_on_cut(pt.x, side, ar)
            combo = Combo(ar)
            p_on_frame(n, m, fr, ar, combo)
            lips.append(combo.report(RepId.SUM, fr.radical(m, ar)))
        up, dn = lips
        j = -m if negative else m
        value = (ar.ipow(j) * up.value + ar.ipow(-j) * dn.value) / 2
        return EvalReport(value, RepId.SUM, ar.mode, max(up.cond, dn.cond), max(up.scale, dn.scale))
    fr = frame_off_cut(pt, ar)
    combo = Combo(ar)
    p_on_frame(n, m, fr, ar, combo)
    return combo.report(RepId.SUM, fr.radical(m, ar))


def legendre_p(idx: Any, pt: Any, mode: PrecisionMode | None = None) -> EvalReport:
    """``P_n^m`` at an off-cut point ``z`` or an on-cut point ``x``.

    >>> round(legendre_p((2, 0), 3).value.real, 12)
    13.0
    """
    idx = as_index(idx)
    return _p_report(idx, as_point(pt), arith(mode))


def legendre_p_negorder(idx: Any, pt: Any, mode: PrecisionMode | None = None) -> EvalReport:
    """``P_n^{-m} = (n-m)!/(n+m)! P_n^m`` off the cut.

    On the cut the lip values obey the same relation but are combined with
    the weights ``e^{-+i pi m/2}`` of order ``-m``, which brings in ``(-1)^m``.
    """
    idx = as_index(idx)
    ar = arith(mode)
    rep = _p_report(idx, as_point(pt), ar, negative=True)
    ratio = ar.num(Fraction(fact(idx.n - idx.m), fact(idx.n + idx.m)))
    return EvalReport(rep.value * ratio, rep.rep, rep.precision, rep.cond, rep.scale * float(abs(ratio)))


def legendre_p_jacobi(idx: Any, pt: Any, rep: str = "forward", mode: PrecisionMode | None = None) -> Any:
    """``P_n^m(z) = (n+m)!/n! ((z^2-1)/4)^{-m/2} P_{n+m}^{(-m,-m)}(z)`` (off cut)."""
    idx = as_index(idx)
    pt = as_point(pt)
    if not isinstance(pt, OffCut):
        raise DomainError("Jacobi route is implemented off the cut only")
    ar = arith(mode)
    fr = frame_off_cut(pt, ar)
    n, m = idx.n, idx.m
    poly = jacobi(n + m, -m, -m, pt.z, rep, ar.mode)
    scale = ar.num(Fraction(fact(n + m), fact(n)))
    return scale * poly * fr.A.half_pow(-m, ar) * fr.B.half_pow(-m, ar)


def legendre_p_exact(idx: Any, z: Fraction) -> tuple[Fraction, Fraction]:
    """Exact ``P_n^m(z)`` at rational ``z > 1``.

    Returns ``(r, s)`` with ``P = r + s * sqrt(z^2 - 1)``; ``s = 0`` for even
    ``m`` and ``r = 0`` for odd ``m``.
    """
    idx = as_index(idx)
    n, m = idx.n, idx.m
    z = Fraction(z)
    if z <= 1:
        raise DomainError("exact evaluation needs rational z > 1")
    a = (z - 1) / 2
    poly = sum((_p_coef(n, m, k) * a ** k for k in range(n - m + 1)), Fraction(0))
    w = z * z - 1
    radical = w ** (m // 2) / Fraction(2) ** m * poly
    return (radical, Fraction(0)) if m % 2 == 0 else (Fraction(0), radical)


def parity_check(idx: Any, z: Any, im_sign: int | None = None, mode: PrecisionMode | None = None) -> EvalReport:
    """Residual ``P_n^m(-z) - (-1)^n P_n^m(z)``; ``-z`` uses phased factors."""
    idx = as_index(idx)
    pt = z if isinstance(z, OffCut) else OffCut(z, im_sign if im_sign is not None else (-1 if complex(z).imag < 0 else 1))
    ar = arith(mode)
    fr = frame_off_cut(pt, ar)
    direct = p_value(idx.n, idx.m, fr, ar)
    mirrored = p_value(idx.n, idx.m, fr.reflect(), ar)
    sgn = -1 if idx.n % 2 else 1
    resid = mirrored - sgn * direct
    return EvalReport(resid, RepId.SUM, ar.mode, 1.0, max(ar.abs(direct), ar.abs(mirrored)))
