"""Order derivative ``dP_n^mu(z)/dmu`` at ``mu = m`` and the identities tying it
to the degree derivative.

The residual functions return ``LHS - RHS`` in an :class:`EvalReport` whose
``scale`` is the largest individual term, so callers can judge the residual
relative to the size of what cancelled.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Any

from .deriv_nu import dnu_on_frame
from .kernel import (
    Arith,
    Coefs,
    Combo,
    EvalReport,
    Frame,
    Halves,
    OnCut,
    PrecisionMode,
    Psi,
    RepId,
    UnsupportedRepresentation,
    arith,
    as_index,
    as_point,
    frame_off_cut,
)
from .legendre_p import p_on_frame

__all__ = ["DMU_REPS", "dmu_p", "bridge_residual", "psi_identity_residual"]


def _e1_1(n: int, m: int, fr: Frame, ar: Arith, P: Any) -> Combo:
    c, h, k_ = Combo(ar), Halves(fr, m), Coefs(n, m)
    c.add_log(P, [(fr.B, 1), (fr.A, -1)], Fraction(1, 2))
    c.series((-1) ** m * h.b_over_a, fr.A, m - 1, lambda k: (-1) ** k * k_.s(k))
    c.series(h.prod, fr.A, n - m, lambda k: Psi(k + 1).scaled(k_.p(k)))
    return c


def _e1_2(n: int, m: int, fr: Frame, ar: Arith, P: Any) -> Combo:
    c, h, k_ = Combo(ar), Halves(fr, m), Coefs(n, m)
    c.add_log(P, [(fr.B, 1), (fr.A, -1)], Fraction(1, 2))
    c.add_psi(P, Psi(n + m + 1) + Psi(n - m + 1))
    c.series(
        -((-1) ** n) * ar.lift(k_.ratio) * h.b_over_a, fr.B, n,
        lambda k: Psi(k + m + 1).scaled((-1) ** k * k_.q(k)),
    )
    return c


DMU_REPS = {RepId.E1_1: _e1_1, RepId.E1_2: _e1_2}


def _resolve(rep: Any, z: Any) -> RepId:
    rep = RepId.parse(rep)
    if rep is RepId.AUTO:
        zc = complex(z)
        return RepId.E1_1 if abs(zc - 1) <= abs(zc + 1) else RepId.E1_2
    if rep not in DMU_REPS:
        raise UnsupportedRepresentation(f"{rep} is not a representation of dP/dmu")
    return rep


def _off_cut(pt: Any):
    pt = as_point(pt)
    if isinstance(pt, OnCut):
        raise UnsupportedRepresentation("dP/dmu is evaluated off the cut only")
    return pt


def dmu_on_frame(n: int, m: int, fr: Frame, rep: RepId, ar: Arith) -> Combo:
    P = p_on_frame(n, m, fr, ar)
    return DMU_REPS[rep](n, m, fr, ar, P)


def dmu_p(
    idx: Any,
    pt: Any,
    rep: Any = RepId.AUTO,
    mode: PrecisionMode | None = None,
    *,
    psi_shift: Any = 0,
    exact: bool = True,
) -> EvalReport:
    """``[dP_n^mu(z)/dmu]_{mu=m}`` from E1.1 (``(z-1)/2`` powers) or E1.2 (``(z+1)/2`` powers).

    ``Auto`` takes E1.1 when ``|z-1| <= |z+1|``.
    """
    idx = as_index(idx)
    pt = _off_cut(pt)
    rep = _resolve(rep, pt.z)
    ar = arith(mode, psi_shift, exact)
    fr = frame_off_cut(pt, ar)
    return dmu_on_frame(idx.n, idx.m, fr, rep, ar).report(rep, fr.radical(idx.m, ar))


def _bridge_rhs(n: int, m: int, fr: Frame, variant: RepId, ar: Arith, P: Any) -> Combo:
    c, h, k_ = Combo(ar), Halves(fr, m), Coefs(n, m)
    ratio = ar.lift(k_.ratio)
    # ln((z^2-1)/4) taken factor-wise
    c.add_log(P, [(fr.A, 1), (fr.B, 1)], Fraction(1, 2))
    c.add_psi(P, Psi(n - m + 1), -2)
    if variant is RepId.E2_9:
        c.series(-((-1) ** m) * ratio * h.prod_inv, fr.A, m - 1, lambda k: (-1) ** k * k_.r(k))
        c.series(ratio * h.a_over_b, fr.A, n, lambda k: (2 * Psi(k + n + 1) - Psi(k + 1)).scaled(k_.q(k)))
    else:
        sn = (-1) ** n
        c.series(-sn * ratio * h.prod_inv, fr.B, m - 1, k_.r)
        c.series(
            sn * ratio * h.b_over_a, fr.B, n,
            lambda k: (2 * Psi(k + n + 1) - Psi(k + 1)).scaled((-1) ** k * k_.q(k)),
        )
    return c


def bridge_residual(
    idx: Any,
    pt: Any,
    variant: Any = RepId.E2_9,
    mode: PrecisionMode | None = None,
    *,
    dnu_rep: Any = RepId.E1_3,
    dmu_rep: Any = RepId.E1_1,
    psi_shift: Any = 0,
    exact: bool = True,
) -> EvalReport:
    """``(dP/dnu - dP/dmu) - RHS`` for the degree/order bridge E2.9 or E2.10."""
    idx = as_index(idx)
    pt = _off_cut(pt)
    variant = RepId.parse(variant)
    if variant not in (RepId.E2_9, RepId.E2_10):
        raise UnsupportedRepresentation(f"{variant} is not a bridge relation")
    ar = arith(mode, psi_shift, exact)
    fr = frame_off_cut(pt, ar)
    n, m = idx.n, idx.m
    P = p_on_frame(n, m, fr, ar)
    total = Combo(ar)
    total.absorb(dnu_on_frame(n, m, fr, RepId.parse(dnu_rep), ar))
    total.absorb(dmu_on_frame(n, m, fr, _resolve(dmu_rep, pt.z), ar), -1)
    total.absorb(_bridge_rhs(n, m, fr, variant, ar, P), -1)
    return total.report(variant, fr.radical(m, ar))


def psi_identity_residual(
    idx: Any,
    pt: Any,
    variant: Any = RepId.E3_6,
    mode: PrecisionMode | None = None,
    *,
    psi_shift: Any = 0,
    exact: bool = True,
) -> EvalReport:
    """``[psi(n+m+1) - psi(n+1)] P_n^m(z) - RHS`` for E3.4 or E3.6."""
    idx = as_index(idx)
    pt = _off_cut(pt)
    variant = RepId.parse(variant)
    if variant not in (RepId.E3_4, RepId.E3_6):
        raise UnsupportedRepresentation(f"{variant} is not a digamma identity")
    ar = arith(mode, psi_shift, exact)
    fr = frame_off_cut(pt, ar)
    n, m = idx.n, idx.m
    h, k_ = Halves(fr, m), Coefs(n, m)
    ratio = ar.lift(k_.ratio)
    c = Combo(ar)
    c.add_psi(p_on_frame(n, m, fr, ar), Psi(n + m + 1) - Psi(n + 1))
    first = lambda k: Psi(k + n + m + 1) - Psi(k + m + 1)  # noqa: E731
    second = lambda k: Psi(k + n + 1) - Psi(k + m + 1)  # noqa: E731
    if variant is RepId.E3_4:
        snm, sn = (-1) ** (n + m), (-1) ** n
        c.series(-snm * h.prod, fr.B, n - m, lambda k: first(k).scaled((-1) ** k * k_.p(k)))
        c.series(sn * ratio * h.b_over_a, fr.B, n, lambda k: second(k).scaled((-1) ** k * k_.q(k)))
    else:
        c.series(-h.prod, fr.A, n - m, lambda k: first(k).scaled(k_.p(k)))
        c.series(ratio * h.a_over_b, fr.A, n, lambda k: second(k).scaled(k_.q(k)))
    return c.report(variant, fr.radical(m, ar))
