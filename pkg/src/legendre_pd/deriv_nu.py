"""Degree derivative ``dP_nu^m(z)/dnu`` at integer ``nu = n``, ``0 <= m <= n``.

Seven finite-sum representations are provided.  E1.3, E3.7 and E3.8 sum
powers of ``(z-1)/2`` and are well conditioned near ``z = 1``; E1.4, E1.5,
E3.1 and E3.2 sum alternating powers of ``(z+1)/2`` and cancel heavily
there.  E3.3 and E3.9 are the ``m = 0`` reductions.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Any, Callable

from .kernel import (
    BIG50,
    Arith,
    Coefs,
    Combo,
    EvalReport,
    Frame,
    Halves,
    IndexPair,
    OnCut,
    PrecisionMode,
    Psi,
    RepId,
    UnsupportedRepresentation,
    arith,
    as_index,
    as_point,
    fact,
    frame_off_cut,
    frame_on_cut,
)
from .legendre_p import p_on_frame, p_value

__all__ = [
    "DNU_REPS",
    "dnu_p",
    "dnu_p_m0",
    "dnu_p_negorder",
    "dnu_p_cut",
    "dnu_on_frame",
    "auto_rep",
]

#: Switch to Big{50} when a Double evaluation reports worse cancellation.
COND_LIMIT = 1e6


def _e1_3(n: int, m: int, fr: Frame, ar: Arith, P: Any) -> Combo:
    c, h, k_ = Combo(ar), Halves(fr, m), Coefs(n, m)
    c.add_log(P, fr.B)
    c.add_psi(P, Psi(n + 1) + Psi(n - m + 1), -1)
    c.series(h.prod, fr.A, n - m, lambda k: Psi(k + n + m + 1).scaled(k_.p(k)))
    c.series(ar.lift(k_.ratio) * h.a_over_b, fr.A, n, lambda k: Psi(k + n + 1).scaled(k_.q(k)))
    return c


def _e1_4(n: int, m: int, fr: Frame, ar: Arith, P: Any) -> Combo:
    c, h, k_ = Combo(ar), Halves(fr, m), Coefs(n, m)
    sn, snm = (-1) ** n, (-1) ** (n + m)
    c.add_log(P, fr.B)
    c.add_psi(P, Psi(n + 1) - Psi(n - m + 1))
    c.series(-sn * ar.lift(k_.ratio) * h.prod_inv, fr.B, m - 1, k_.r)
    c.series(
        snm * h.prod, fr.B, n - m,
        lambda k: (Psi(k + n + m + 1) - Psi(k + m + 1)).scaled((-1) ** k * k_.p(k)),
    )
    c.series(
        sn * ar.lift(k_.ratio) * h.b_over_a, fr.B, n,
        lambda k: (Psi(k + n + 1) - Psi(k + 1)).scaled((-1) ** k * k_.q(k)),
    )
    return c


def _e1_5(n: int, m: int, fr: Frame, ar: Arith, P: Any) -> Combo:
    c, h, k_ = Combo(ar), Halves(fr, m), Coefs(n, m)
    sn, snm = (-1) ** n, (-1) ** (n + m)
    c.add_log(P, fr.B)
    c.add_psi(P, Psi(n + m + 1) - Psi(n + 1))
    c.series(-snm * h.a_over_b, fr.B, m - 1, k_.s)
    c.series(
        snm * h.prod, fr.B, n - m,
        lambda k: (Psi(k + n + m + 1) - Psi(k + 1)).scaled((-1) ** k * k_.p(k)),
    )
    c.series(
        sn * ar.lift(k_.ratio) * h.b_over_a, fr.B, n,
        lambda k: (Psi(k + n + 1) - Psi(k + m + 1)).scaled((-1) ** k * k_.q(k)),
    )
    return c


def _e3_1(n: int, m: int, fr: Frame, ar: Arith, P: Any) -> Combo:
    c, h, k_ = Combo(ar), Halves(fr, m), Coefs(n, m)
    sn = (-1) ** n
    c.add_log(P, fr.B)
    c.add_psi(P, Psi(n + m + 1) - Psi(n - m + 1))
    c.series(-sn * ar.lift(k_.ratio) * h.prod_inv, fr.B, m - 1, k_.r)
    c.series(
        sn * ar.lift(k_.ratio) * h.b_over_a, fr.B, n,
        lambda k: (2 * Psi(k + n + 1) - Psi(k + m + 1) - Psi(k + 1)).scaled((-1) ** k * k_.q(k)),
    )
    return c


def _e3_2(n: int, m: int, fr: Frame, ar: Arith, P: Any) -> Combo:
    c, h, k_ = Combo(ar), Halves(fr, m), Coefs(n, m)
    snm = (-1) ** (n + m)
    c.add_log(P, fr.B)
    c.series(-snm * h.a_over_b, fr.B, m - 1, k_.s)
    c.series(
        snm * h.prod, fr.B, n - m,
        lambda k: (2 * Psi(k + n + m + 1) - Psi(k + m + 1) - Psi(k + 1)).scaled((-1) ** k * k_.p(k)),
    )
    return c


def _e3_7(n: int, m: int, fr: Frame, ar: Arith, P: Any) -> Combo:
    c, h, k_ = Combo(ar), Halves(fr, m), Coefs(n, m)
    c.add_log(P, fr.B)
    c.add_psi(P, Psi(n + m + 1) + Psi(n - m + 1), -1)
    c.series(h.prod, fr.A, n - m, lambda k: (2 * Psi(k + n + m + 1) - Psi(k + m + 1)).scaled(k_.p(k)))
    c.series(ar.lift(k_.ratio) * h.a_over_b, fr.A, n, lambda k: Psi(k + m + 1).scaled(k_.q(k)))
    return c


def _e3_8(n: int, m: int, fr: Frame, ar: Arith, P: Any) -> Combo:
    c, h, k_ = Combo(ar), Halves(fr, m), Coefs(n, m)
    c.add_log(P, fr.B)
    c.add_psi(P, Psi(n + m + 1) - 2 * Psi(n + 1) - Psi(n - m + 1))
    c.series(h.prod, fr.A, n - m, lambda k: Psi(k + m + 1).scaled(k_.p(k)))
    c.series(
        ar.lift(k_.ratio) * h.a_over_b, fr.A, n,
        lambda k: (2 * Psi(k + n + 1) - Psi(k + m + 1)).scaled(k_.q(k)),
    )
    return c


def _e3_3(n: int, m: int, fr: Frame, ar: Arith, P: Any) -> Combo:
    c, k_ = Combo(ar), Coefs(n, 0)
    c.add_log(P, fr.B)
    c.series(
        ar.lift(2 * (-1) ** n), fr.B, n,
        lambda k: (Psi(k + n + 1) - Psi(k + 1)).scaled((-1) ** k * k_.q(k)),
    )
    return c


def _e3_9(n: int, m: int, fr: Frame, ar: Arith, P: Any) -> Combo:
    c, k_ = Combo(ar), Coefs(n, 0)
    c.add_log(P, fr.B)
    c.add_psi(P, Psi(n + 1), -2)
    c.series(ar.lift(2), fr.A, n, lambda k: Psi(k + n + 1).scaled(k_.q(k)))
    return c


Formula = Callable[[int, int, Frame, Arith, Any], Combo]

DNU_REPS: dict[RepId, Formula] = {
    RepId.E1_3: _e1_3,
    RepId.E1_4: _e1_4,
    RepId.E1_5: _e1_5,
    RepId.E3_1: _e3_1,
    RepId.E3_2: _e3_2,
    RepId.E3_7: _e3_7,
    RepId.E3_8: _e3_8,
}
M0_REPS: dict[RepId, Formula] = {RepId.E3_3: _e3_3, RepId.E3_9: _e3_9}

#: Representations summing powers of (z-1)/2.
MINUS_SIDE = (RepId.E1_3, RepId.E3_7, RepId.E3_8, RepId.E3_9)


def auto_rep(z: Any) -> RepId:
    """E3.7 when ``|z-1| <= |z+1|`` (ties included), otherwise E3.1."""
    zc = complex(z)
    return RepId.E3_7 if abs(zc - 1) <= abs(zc + 1) else RepId.E3_1


def _formula(rep: RepId, m: int) -> Formula:
    if rep in DNU_REPS:
        return DNU_REPS[rep]
    if rep in M0_REPS:
        if m != 0:
            raise UnsupportedRepresentation(f"{rep} is the m = 0 special case")
        return M0_REPS[rep]
    raise UnsupportedRepresentation(f"{rep} is not a representation of dP/dnu")


def dnu_on_frame(n: int, m: int, fr: Frame, rep: RepId, ar: Arith) -> Combo:
    """Evaluate one representation at a frame; the result excludes ``fr.radical(m)``."""
    P = p_on_frame(n, m, fr, ar)
    return _formula(rep, m)(n, m, fr, ar, P)


def _resolve(rep: Any, z: Any) -> tuple[RepId, bool]:
    rep = RepId.parse(rep)
    if rep is RepId.AUTO:
        return auto_rep(z), True
    return rep, False


def _evaluate(n: int, m: int, fr: Frame, rep: RepId, ar: Arith) -> EvalReport:
    return dnu_on_frame(n, m, fr, rep, ar).report(rep, fr.radical(m, ar))


def dnu_p(
    idx: Any,
    pt: Any,
    rep: Any = RepId.AUTO,
    mode: PrecisionMode | None = None,
    *,
    psi_shift: Any = 0,
    exact: bool = True,
) -> EvalReport:
    """``[dP_nu^m(z)/dnu]_{nu=n}`` from the selected representation.

    ``rep="Auto"`` picks a representation by region and re-evaluates in
    ``Big(50)`` when a Double result reports ``cond > 1e6``.  On-cut points
    are forwarded to :func:`dnu_p_cut`.  ``psi_shift`` adds a constant to
    every digamma value (structural testing only); ``exact=False`` sums in
    floating point instead of exact rationals.
    """
    idx = as_index(idx)
    pt = as_point(pt)
    if isinstance(pt, OnCut):
        return dnu_p_cut(idx, pt.x, rep, mode, psi_shift=psi_shift, exact=exact)
    rep, auto = _resolve(rep, pt.z)
    ar = arith(mode, psi_shift, exact)
    report = _evaluate(idx.n, idx.m, frame_off_cut(pt, ar), rep, ar)
    if auto and not ar.big and report.cond > COND_LIMIT:
        big = arith(BIG50, psi_shift, exact)
        report = _evaluate(idx.n, idx.m, frame_off_cut(pt, big), rep, big)
    return report


def dnu_p_m0(n: int, pt: Any, variant: Any = RepId.E3_3, mode: PrecisionMode | None = None) -> EvalReport:
    """The ``m = 0`` formulas E3.3 (``(z+1)/2`` powers) and E3.9 (``(z-1)/2`` powers)."""
    idx = as_index((n, 0))
    variant = RepId.parse(variant)
    if variant not in M0_REPS:
        raise UnsupportedRepresentation(f"{variant} is not an m = 0 formula")
    pt = as_point(pt)
    if isinstance(pt, OnCut):
        return dnu_p_cut(idx, pt.x, variant, mode)
    ar = arith(mode)
    return _evaluate(idx.n, 0, frame_off_cut(pt, ar), variant, ar)


def _cut_rep(rep: Any, x: Any) -> RepId:
    rep = RepId.parse(rep)
    if rep is RepId.AUTO:
        return RepId.E3_7 if float(x) >= 0 else RepId.E3_1
    return rep


def _lips(idx: IndexPair, x: Any, rep: RepId, ar: Arith, negative: bool = False) -> tuple[Any, Any, float, float]:
    out = []
    cond = scale = 0.0
    for side in (1, -1):
        fr = frame_on_cut(x, side, ar)
        combo = dnu_on_frame(idx.n, idx.m, fr, rep, ar)
        value = combo.numeric() * fr.radical(idx.m, ar)
        if negative:
            value = _negorder(idx.n, idx.m, value, p_value(idx.n, idx.m, fr, ar), ar)
        out.append(value)
        cond = max(cond, combo.cond)
        scale = max(scale, combo.scale * ar.abs(fr.radical(idx.m, ar)))
    return out[0], out[1], cond, scale


def dnu_p_cut(
    idx: Any,
    x: Any,
    rep: Any = RepId.AUTO,
    mode: PrecisionMode | None = None,
    *,
    psi_shift: Any = 0,
    exact: bool = True,
) -> EvalReport:
    """On-cut derivative ``(1/2)[e^{i pi m/2} D(x+i0) + e^{-i pi m/2} D(x-i0)]``."""
    idx = as_index(idx)
    pt = OnCut(x)
    rep = _cut_rep(rep, pt.x)
    ar = arith(mode, psi_shift, exact)
    up, dn, cond, scale = _lips(idx, pt.x, rep, ar)
    value = (ar.ipow(idx.m) * up + ar.ipow(-idx.m) * dn) / 2
    return EvalReport(value, rep, ar.mode, cond, scale)


def _negorder(n: int, m: int, dnu: Any, P: Any, ar: Arith) -> Any:
    ratio = Fraction(fact(n - m), fact(n + m))
    rational, units = (Psi(n + m + 1) - Psi(n - m + 1)).scaled(ratio)
    return ar.num(ratio) * dnu - ar.coef(rational, units) * P


def dnu_p_negorder(
    idx: Any,
    pt: Any,
    rep: Any = RepId.AUTO,
    mode: PrecisionMode | None = None,
    *,
    psi_shift: Any = 0,
    exact: bool = True,
) -> EvalReport:
    """``[dP_nu^{-m}/dnu]_{nu=n}`` via the relation to the order ``+m`` derivative.

    Off the cut: ``(n-m)!/(n+m)! dP^m/dnu - [psi(n+m+1) - psi(n-m+1)] P_n^{-m}``.
    On the cut the relation is applied on each lip before the lips are
    combined with weights ``e^{-+i pi m/2}``.
    """
    idx = as_index(idx)
    pt = as_point(pt)
    if isinstance(pt, OnCut):
        rep = _cut_rep(rep, pt.x)
        ar = arith(mode, psi_shift, exact)
        up, dn, cond, scale = _lips(idx, pt.x, rep, ar, negative=True)
        value = (ar.ipow(-idx.m) * up + ar.ipow(idx.m) * dn) / 2
        return EvalReport(value, rep, ar.mode, cond, scale)
    base = dnu_p(idx, pt, rep, mode, psi_shift=psi_shift, exact=exact)
    ar = arith(base.precision, psi_shift, exact)
    P = p_value(idx.n, idx.m, frame_off_cut(pt, ar), ar)
    value = _negorder(idx.n, idx.m, base.value, P, ar)
    return EvalReport(value, base.rep, base.precision, base.cond, base.scale)
