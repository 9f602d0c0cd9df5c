"""Associated Legendre function of the second kind ``Q_n^m``, ``0 <= m <= n``.

Five finite-sum representations Q4.4 to Q4.8 are provided, each in two
variants.  The upper variant (``variant=+1``) sums powers of ``(z-1)/2``, the
lower one powers of ``(z+1)/2``.  The variants differ only in which pair of
degree-derivative formulas was combined; the imaginary ``i pi`` parts cancel
in both, so either variant is valid on the whole cut plane.

An independent second route assembles ``Q`` from the degree derivative at
``z`` and at the reflected point ``-z``.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Any, Callable, NamedTuple

from .deriv_nu import dnu_on_frame
from .kernel import (
    BIG50,
    Arith,
    Coefs,
    Combo,
    EvalReport,
    Factor,
    Frame,
    Halves,
    IndexPair,
    OffCut,
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
    "Q_REPS",
    "q",
    "q_assembled",
    "q_negorder",
    "q_cut",
    "ASSEMBLY_PAIRS",
]

COND_LIMIT = 1e6


class _Shape(NamedTuple):
    p_weight: Callable[[int, int], Psi]  # multiplies -v * P
    tail: str  # "r" or "s"
    p_sum: Callable[[int, int, int], Psi]
    q_sum: Callable[[int, int, int], Psi]


def _half(psi: Psi) -> Psi:
    return Psi(rational=psi.rational / 2, units=Fraction(psi.units, 2))


Q_SHAPES: dict[RepId, _Shape] = {
    RepId.Q4_4: _Shape(
        lambda n, m: _half(Psi(n + m + 1) + Psi(n + 1)),
        "r",
        lambda n, m, k: Psi(k + n + m + 1),
        lambda n, m, k: -(Psi(k + n + 1) - Psi(k + m + 1) - Psi(k + 1)),
    ),
    RepId.Q4_5: _Shape(
        lambda n, m: _half(Psi(n + 1) + Psi(n - m + 1)),
        "s",
        lambda n, m, k: -(Psi(k + n + m + 1) - Psi(k + m + 1) - Psi(k + 1)),
        lambda n, m, k: Psi(k + n + 1),
    ),
    RepId.Q4_6: _Shape(
        lambda n, m: Psi(n + m + 1),
        "r",
        lambda n, m, k: 2 * Psi(k + n + m + 1) - Psi(k + m + 1),
        lambda n, m, k: -(2 * Psi(k + n + 1) - 2 * Psi(k + m + 1) - Psi(k + 1)),
    ),
    RepId.Q4_7: _Shape(
        lambda n, m: Psi(n + 1),
        "r",
        lambda n, m, k: Psi(k + m + 1),
        lambda n, m, k: Psi(k + 1),
    ),
    RepId.Q4_8: _Shape(
        lambda n, m: _half(Psi(n + m + 1) + Psi(n - m + 1)),
        "s",
        lambda n, m, k: Psi(k + 1),
        lambda n, m, k: Psi(k + m + 1),
    ),
}
Q_REPS = tuple(Q_SHAPES)

#: Degree-derivative formulas at ``z`` and ``-z`` whose combination gives each
#: representation in its upper variant.
ASSEMBLY_PAIRS: dict[RepId, tuple[RepId, RepId]] = {
    RepId.Q4_4: (RepId.E1_3, RepId.E3_1),
    RepId.Q4_5: (RepId.E1_3, RepId.E3_2),
    RepId.Q4_6: (RepId.E3_1, RepId.E3_7),
    RepId.Q4_7: (RepId.E3_1, RepId.E3_8),
    RepId.Q4_8: (RepId.E3_2, RepId.E3_7),
}


def q_on_frame(n: int, m: int, fr: Frame, rep: RepId, v: int, ar: Arith) -> Combo:
    """Exact-part combination for ``Q_n^m`` (without ``fr.radical(m)``)."""
    shape = Q_SHAPES[rep]
    c, h, k_ = Combo(ar), Halves(fr, m), Coefs(n, m)
    P = p_on_frame(n, m, fr, ar)
    C = fr.A if v > 0 else fr.B
    c_over_d = h.a_over_b if v > 0 else h.b_over_a
    d_over_c = h.b_over_a if v > 0 else h.a_over_b
    ratio = ar.lift(k_.ratio)
    half = ar.lift(Fraction(1, 2))
    vn, vnm = v ** n, v ** (n + m)

    c.add_log(P, [(fr.B, 1), (fr.A, -1)], Fraction(1, 2))
    c.add_psi(P, shape.p_weight(n, m), -v)
    if shape.tail == "r":
        c.series(v * vn * (-v) ** m * half * ratio * h.prod_inv, C, m - 1, lambda k: (-v) ** k * k_.r(k))
    else:
        c.series(v * vn * (-1) ** m * half * d_over_c, C, m - 1, lambda k: (-v) ** k * k_.s(k))
    c.series(v * vnm * half * h.prod, C, n - m, lambda k: shape.p_sum(n, m, k).scaled(v ** k * k_.p(k)))
    c.series(v * vn * half * ratio * c_over_d, C, n, lambda k: shape.q_sum(n, m, k).scaled(v ** k * k_.q(k)))
    return c


def _resolve(rep: Any, z: Any) -> tuple[RepId, bool]:
    rep = RepId.parse(rep)
    if rep is RepId.AUTO:
        return RepId.Q4_4, True
    if rep not in Q_SHAPES:
        raise UnsupportedRepresentation(f"{rep} is not a representation of Q")
    return rep, False


def _region_variant(z: Any) -> int:
    zc = complex(z)
    return 1 if abs(zc - 1) <= abs(zc + 1) else -1


def _off_cut(pt: Any) -> OffCut:
    pt = as_point(pt)
    if isinstance(pt, OnCut):
        raise UnsupportedRepresentation("use q_cut for points on the cut")
    return pt


def q(
    idx: Any,
    pt: Any,
    rep: Any = RepId.AUTO,
    mode: PrecisionMode | None = None,
    *,
    variant: int | None = None,
    psi_shift: Any = 0,
    exact: bool = True,
) -> EvalReport:
    """``Q_n^m(z)`` off the cut; on-cut points are forwarded to :func:`q_cut`.

    ``variant`` defaults to the point's ``im_sign`` (upper for ``Im z > 0``
    and for real ``z > 1``).  With ``rep="Auto"`` the Q4.4 formula is used and
    the variant is picked by region like the degree derivative: powers of
    ``(z-1)/2`` when ``|z-1| <= |z+1|``.  Auto re-evaluates in ``Big(50)``
    when Double reports ``cond > 1e6``.
    """
    idx = as_index(idx)
    pt = as_point(pt)
    if isinstance(pt, OnCut):
        return q_cut(idx, pt.x, rep, mode, psi_shift=psi_shift, exact=exact)
    rep, auto = _resolve(rep, pt.z)
    if variant is None:
        variant = _region_variant(pt.z) if auto else pt.im_sign
    if variant not in (1, -1):
        raise ValueError("variant must be +1 or -1")
    ar = arith(mode, psi_shift, exact)
    fr = frame_off_cut(pt, ar)
    report = q_on_frame(idx.n, idx.m, fr, rep, variant, ar).report(rep, fr.radical(idx.m, ar))
    if auto and not ar.big and report.cond > COND_LIMIT:
        return q(idx, pt, rep, BIG50, variant=variant, psi_shift=psi_shift, exact=exact)
    return report


def _assemble(n: int, m: int, fr: Frame, pair: tuple[RepId, RepId], ar: Arith) -> EvalReport:
    near, far = pair
    mirror = fr.reflect()
    total = Combo(ar)
    total.absorb(dnu_on_frame(n, m, fr, near, ar), Fraction(1, 2))
    # The mirrored radical is (-1)^m times the direct one.
    total.absorb(dnu_on_frame(n, m, mirror, far, ar), Fraction((-1) ** (n + m + 1), 2))
    # -+ (i pi / 2) P written as (1/2) P log(e^{-+ i pi})
    total.add_log(p_on_frame(n, m, fr, ar), Factor(ar.t_one, -fr.sign), Fraction(1, 2))
    return total.report(RepId.SUM, fr.radical(m, ar))


def q_assembled(
    idx: Any,
    pt: Any,
    pair: Any = RepId.Q4_4,
    mode: PrecisionMode | None = None,
) -> EvalReport:
    """``Q = -+ (i pi / 2) P + (1/2) D(z) - ((-1)^n / 2) D(-z)``.

    ``D`` is the degree derivative and ``-z`` is reached through the phased
    reflection of the frame; ``pair`` is a representation id from
    :data:`ASSEMBLY_PAIRS` or an explicit ``(rep at z, rep at -z)`` tuple.
    """
    idx = as_index(idx)
    pt = _off_cut(pt)
    if not isinstance(pair, tuple):
        pair = ASSEMBLY_PAIRS[RepId.parse(pair)]
    pair = (RepId.parse(pair[0]), RepId.parse(pair[1]))
    ar = arith(mode)
    return _assemble(idx.n, idx.m, frame_off_cut(pt, ar), pair, ar)


def _scale_report(rep: EvalReport, factor: Fraction, ar: Arith) -> EvalReport:
    f = ar.num(factor)
    return EvalReport(rep.value * f, rep.rep, rep.precision, rep.cond, rep.scale * float(factor))


def q_negorder(
    idx: Any,
    pt: Any,
    rep: Any = RepId.AUTO,
    mode: PrecisionMode | None = None,
    **kw: Any,
) -> EvalReport:
    """``Q_n^{-m} = (n-m)!/(n+m)! Q_n^m``.

    On the cut the relation holds for the lip values, which are then combined
    with the weights of order ``-m``.
    """
    idx = as_index(idx)
    pt = as_point(pt)
    if isinstance(pt, OnCut):
        base = _q_cut(idx, pt.x, rep, mode, negative=True, **kw)
    else:
        base = q(idx, pt, rep, mode, **kw)
    ratio = Fraction(fact(idx.n - idx.m), fact(idx.n + idx.m))
    return _scale_report(base, ratio, arith(base.precision))


def q_cut(
    idx: Any,
    x: Any,
    rep: Any = RepId.AUTO,
    mode: PrecisionMode | None = None,
    *,
    psi_shift: Any = 0,
    exact: bool = True,
) -> EvalReport:
    """On-cut ``Q_n^m(x) = ((-1)^m/2)[e^{-i pi m/2} Q(x+i0) + e^{i pi m/2} Q(x-i0)]``.

    The lip values come from the selected representation at the phased
    frames of ``x +- i0``; Auto uses Q4.4 summing powers of ``(1-x)/2`` for
    ``x >= 0`` and of ``(1+x)/2`` otherwise.
    """
    return _q_cut(as_index(idx), x, rep, mode, psi_shift=psi_shift, exact=exact)


def _q_cut(
    idx: IndexPair,
    x: Any,
    rep: Any,
    mode: PrecisionMode | None,
    *,
    negative: bool = False,
    psi_shift: Any = 0,
    exact: bool = True,
) -> EvalReport:
    idx = as_index(idx)
    pt = OnCut(x)
    rep, auto = _resolve(rep, pt.x)
    variant = (1 if float(pt.x) >= 0 else -1) if auto else None
    ar = arith(mode, psi_shift, exact)
    lips, cond, scale = [], 1.0, 0.0
    for side in (1, -1):
        fr = frame_on_cut(pt.x, side, ar)
        combo = q_on_frame(idx.n, idx.m, fr, rep, variant or side, ar)
        lips.append(combo.report(rep, fr.radical(idx.m, ar)))
        cond, scale = max(cond, combo.cond), max(scale, lips[-1].scale)
    up, dn = lips
    sm = -1 if idx.m % 2 else 1
    j = idx.m if negative else -idx.m
    value = sm * (ar.ipow(j) * up.value + ar.ipow(-j) * dn.value) / 2
    return EvalReport(value, rep, ar.mode, cond, scale)


def lip_values(idx: IndexPair, x: Any, mode: PrecisionMode | None = None) -> tuple[Any, Any]:
    """``Q_n^m(x + i0)`` and ``Q_n^m(x - i0)`` (diagnostic)."""
    ar = arith(mode)
    out = []
    for side in (1, -1):
        fr = frame_on_cut(x, side, ar)
        out.append(q_on_frame(idx.n, idx.m, fr, RepId.Q4_4, side, ar).numeric() * fr.radical(idx.m, ar))
    return out[0], out[1]
