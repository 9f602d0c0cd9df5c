"""The invariant matrix: every cross-check between representations, identities
and oracles, reduced to one worst residual per check class.

Each check function returns a :class:`CheckResult` holding the largest
relative residual it saw and where.  :func:`run_checks` runs a selection of
them with their default tolerances; the CLI ``check`` command and the
acceptance tests are thin wrappers around it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable, Sequence

from . import oracle
from .deriv_mu import bridge_residual, dmu_p, psi_identity_residual
from .deriv_nu import DNU_REPS, dnu_p, dnu_p_cut, dnu_p_negorder
from .kernel import (
    BIG50,
    DOUBLE,
    EvalPoint,
    GaussQ,
    OffCut,
    OnCut,
    PrecisionMode,
    RepId,
    as_point,
    big_context,
    off_cut,
)
from .legendre_p import legendre_p, legendre_p_exact, legendre_p_negorder, parity_check
from .legendre_q import Q_REPS, q, q_assembled, q_cut, q_negorder

__all__ = [
    "CheckResult",
    "STANDARD_GRID",
    "CUT_POINTS",
    "DEFAULT_TOLERANCES",
    "BASE_CHECKS",
    "ORACLE_CHECKS",
    "run_checks",
    "rel",
    "pairwise",
    "pairs",
]

def _exact(re: str, im: str = "0") -> GaussQ:
    # decimal inputs as exact decimals, so 1.1 means 11/10
    return GaussQ(Fraction(re), Fraction(im))


STANDARD_GRID: tuple[EvalPoint, ...] = tuple(
    off_cut(_exact(*z))
    for z in (("2",), ("3",), ("5",), ("1.1",), ("1", "1"), ("-0.5", "2"), ("10", "0.1"), ("0", "0.5"))
)
CUT_POINTS: tuple[OnCut, ...] = tuple(OnCut(Fraction(x)) for x in ("-0.9", "-0.5", "0", "0.3", "0.5", "0.9"))

#: Points where the degree and order series of the oracle converge.
ORACLE_POINTS: tuple[OffCut, ...] = tuple(
    off_cut(_exact(*z)) for z in (("1.5",), ("1.1",), ("1", "1"), ("0", "0.5"), ("0.5", "0.5"))
)

DEFAULT_TOLERANCES: dict[str, float] = {
    "dnu-agree": 1e-9,
    "dnu-agree-big": 1e-30,
    "dmu-agree": 1e-9,
    "dmu-agree-big": 1e-30,
    "q-agree": 1e-9,
    "q-assembly": 1e-10,
    "bridge": 1e-10,
    "psi-identity": 1e-10,
    "parity": 1e-12,
    "sign-side": 1e-10,
    "realness": 1e-10,
    "psi-offset": 1e-10,
    "oracle-p": 1e-25,
    "rodrigues": 0.0,
    "fd-dnu": 1e-6,
    "fd-dmu": 1e-6,
    "eps-limit": 1e-5,
    "fd-rate": 0.25,
    "eps-rate": 0.25,
    "negorder": 1e-10,
}

#: Check classes whose tolerance the CLI ``--tol`` flag replaces.
TOL_CLASSES = (
    "dnu-agree", "dmu-agree", "q-agree", "q-assembly", "bridge",
    "psi-identity", "parity", "sign-side", "realness", "psi-offset",
)


@dataclass
class CheckResult:
    name: str
    residual: float = 0.0
    tol: float = 0.0
    count: int = 0
    worst: str = ""
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.residual <= self.tol and not math.isnan(self.residual)

    def update(self, residual: float, where: str) -> None:
        self.count += 1
        if residual > self.residual or math.isnan(residual):
            self.residual = residual
            self.worst = where


def rel(a: Any, b: Any, scale: float | None = None) -> float:
    """``|a - b|`` relative to ``|b|`` (or to ``scale`` when given)."""
    den = scale if scale is not None else abs(complex(b))
    diff = abs(a - b)
    diff = float(diff)
    if den == 0:
        return 0.0 if diff == 0 else math.inf
    return diff / den


def pairwise(values: Sequence[Any]) -> float:
    worst = 0.0
    for i in range(len(values)):
        for j in range(i + 1, len(values)):
            a, b = values[i], values[j]
            den = max(abs(complex(a)), abs(complex(b)))
            worst = max(worst, float(abs(a - b)) / den if den else float(abs(a - b)))
    return worst


def pairs(max_n: int) -> Iterable[tuple[int, int]]:
    for n in range(max_n + 1):
        for m in range(n + 1):
            yield n, m


def _label(n: int, m: int, pt: Any, extra: str = "") -> str:
    where = f"x={pt.x}" if isinstance(pt, OnCut) else f"z={complex(pt.z)}"
    return f"n={n} m={m} {where}" + (f" {extra}" if extra else "")


def _off(grid: Iterable[EvalPoint]) -> list[OffCut]:
    return [p for p in map(as_point, grid) if isinstance(p, OffCut)]


def _cut(grid: Iterable[EvalPoint]) -> list[OnCut]:
    return [p for p in map(as_point, grid) if isinstance(p, OnCut)]


def _real_axis(grid: Iterable[EvalPoint]) -> list[OffCut]:
    return [p for p in _off(grid) if complex(p.z).imag == 0]


# ---------------------------------------------------------------------------
# representation agreement


def check_dnu_agreement(max_n: int, grid: Sequence[EvalPoint], mode: PrecisionMode = DOUBLE) -> CheckResult:
    res = CheckResult("dnu-agree-big" if mode is not DOUBLE else "dnu-agree")
    for n, m in pairs(max_n):
        for pt in _off(grid):
            vals = [dnu_p((n, m), pt, rep, mode).value for rep in DNU_REPS]
            res.update(pairwise(vals), _label(n, m, pt))
    return res


def check_dmu_agreement(max_n: int, grid: Sequence[EvalPoint], mode: PrecisionMode = DOUBLE) -> CheckResult:
    res = CheckResult("dmu-agree-big" if mode is not DOUBLE else "dmu-agree")
    for n, m in pairs(max_n):
        for pt in _off(grid):
            vals = [dmu_p((n, m), pt, rep, mode).value for rep in (RepId.E1_1, RepId.E1_2)]
            res.update(pairwise(vals), _label(n, m, pt))
    return res


def check_q_agreement(max_n: int, grid: Sequence[EvalPoint]) -> CheckResult:
    """All five formulas, both variants each."""
    res = CheckResult("q-agree")
    for n, m in pairs(max_n):
        for pt in _off(grid):
            vals = [q((n, m), pt, rep, variant=v).value for rep in Q_REPS for v in (1, -1)]
            res.update(pairwise(vals), _label(n, m, pt))
    return res


def check_q_assembly(max_n: int, grid: Sequence[EvalPoint]) -> CheckResult:
    """Each formula against the value assembled from degree derivatives at ``+-z``."""
    res = CheckResult("q-assembly")
    for n, m in pairs(max_n):
        for pt in _off(grid):
            for rep in Q_REPS:
                direct = q((n, m), pt, rep).value
                res.update(rel(q_assembled((n, m), pt, rep).value, direct), _label(n, m, pt, str(rep)))
    return res


# ---------------------------------------------------------------------------
# identities


def check_bridge(max_n: int, grid: Sequence[EvalPoint]) -> CheckResult:
    res = CheckResult("bridge")
    for n, m in pairs(max_n):
        for pt in _off(grid):
            for variant in (RepId.E2_9, RepId.E2_10):
                for dmu_rep in (RepId.E1_1, RepId.E1_2):
                    r = bridge_residual((n, m), pt, variant, dmu_rep=dmu_rep)
                    res.update(r.relative, _label(n, m, pt, f"{variant}/{dmu_rep}"))
                    if m == 0 and r.value != 0:
                        res.notes.append(f"m=0 residual not structurally zero at {_label(n, m, pt)}")
    return res


def check_psi_identity(max_n: int, grid: Sequence[EvalPoint]) -> CheckResult:
    res = CheckResult("psi-identity")
    for n, m in pairs(max_n):
        for pt in _off(grid):
            for variant in (RepId.E3_4, RepId.E3_6):
                r = psi_identity_residual((n, m), pt, variant)
                res.update(r.relative, _label(n, m, pt, str(variant)))
                if m == 0 and r.value != 0:
                    res.notes.append(f"m=0 residual not structurally zero at {_label(n, m, pt)}")
    return res


def check_parity(max_n: int, grid: Sequence[EvalPoint]) -> CheckResult:
    res = CheckResult("parity")
    for n, m in pairs(max_n):
        for pt in _off(grid):
            res.update(parity_check((n, m), pt).relative, _label(n, m, pt))
    return res


def check_sign_side(max_n: int, grid: Sequence[EvalPoint]) -> CheckResult:
    """For real ``z > 1``: approach from both half-planes, both variants, and ``Im Q``."""
    res = CheckResult("sign-side")
    for n, m in pairs(max_n):
        for pt in _real_axis(grid):
            upper, lower = OffCut(pt.z, 1), OffCut(pt.z, -1)
            for rep in Q_REPS:
                vals = [q((n, m), side, rep, variant=v).value for side in (upper, lower) for v in (1, -1)]
                res.update(pairwise(vals), _label(n, m, pt, str(rep)))
                val = complex(vals[0])
                res.update(abs(val.imag) / abs(val), _label(n, m, pt, f"{rep} Im"))
    return res


def _imag_ratio(report: Any) -> float:
    v = complex(report.value)
    den = abs(v) if abs(v) > 1e-12 * report.scale else report.scale
    return abs(v.imag) / den if den else abs(v.imag)


def check_realness(max_n: int, grid: Sequence[EvalPoint]) -> CheckResult:
    """On-cut ``P``, degree derivative and ``Q`` are real."""
    res = CheckResult("realness")
    for n, m in pairs(max_n):
        for pt in _cut(grid):
            res.update(_imag_ratio(legendre_p((n, m), pt)), _label(n, m, pt, "P"))
            for rep in (RepId.E3_7, RepId.E3_1):
                res.update(_imag_ratio(dnu_p_cut((n, m), pt.x, rep)), _label(n, m, pt, f"dnu {rep}"))
            for rep in Q_REPS:
                res.update(_imag_ratio(q_cut((n, m), pt.x, rep)), _label(n, m, pt, f"Q {rep}"))
    return res


def check_psi_offset(max_n: int, grid: Sequence[EvalPoint], c: int = 1) -> CheckResult:
    """Shifting every digamma value by ``c`` leaves dnu and Q alone and moves dmu by ``c P``."""
    res = CheckResult("psi-offset")
    for n, m in pairs(max_n):
        for pt in _off(grid):
            for rep in DNU_REPS:
                a, b = dnu_p((n, m), pt, rep).value, dnu_p((n, m), pt, rep, psi_shift=c).value
                res.update(rel(b, a), _label(n, m, pt, f"dnu {rep}"))
            for rep in Q_REPS:
                a, b = q((n, m), pt, rep).value, q((n, m), pt, rep, psi_shift=c).value
                res.update(rel(b, a), _label(n, m, pt, f"Q {rep}"))
            P = legendre_p((n, m), pt).value
            for rep in (RepId.E1_1, RepId.E1_2):
                a = dmu_p((n, m), pt, rep)
                b = dmu_p((n, m), pt, rep, psi_shift=c)
                res.update(rel(b.value - a.value, c * P, max(abs(complex(a.value)), a.scale)), _label(n, m, pt, f"dmu {rep}"))
    return res


# ---------------------------------------------------------------------------
# oracle checks (always Big precision)


def _oracle_points(grid: Sequence[EvalPoint]) -> list[OffCut]:
    return [p for p in _off(grid) if abs(complex(p.z) - 1) < 2] or list(ORACLE_POINTS)


def check_oracle_p(max_n: int, grid: Sequence[EvalPoint]) -> CheckResult:
    res = CheckResult("oracle-p")
    for n, m in pairs(max_n):
        for pt in _oracle_points(grid):
            ref = oracle.p_general(n, m, pt.z)
            res.update(rel(legendre_p((n, m), pt, BIG50).value, ref), _label(n, m, pt))
    return res


def check_rodrigues(max_n: int, points: Sequence[Any] = (Fraction(3, 2), Fraction(2), Fraction(3))) -> CheckResult:
    """Exact rational equality; the residual counts mismatches."""
    res = CheckResult("rodrigues")
    for n, m in pairs(max_n):
        for z in points:
            same = oracle.rodrigues_exact(n, m, z) == legendre_p_exact((n, m), z)
            res.update(0.0 if same else 1.0, f"n={n} m={m} z={z}")
    return res


def check_fd(max_n: int, grid: Sequence[EvalPoint], kind: str) -> CheckResult:
    res = CheckResult(f"fd-{kind}")
    fd, prod = (oracle.fd_dnu, dnu_p) if kind == "dnu" else (oracle.fd_dmu, dmu_p)
    for n, m in pairs(min(max_n, 5)):
        for pt in _oracle_points(grid):
            ref = prod((n, m), pt, mode=BIG50).value
            res.update(rel(fd(n, m, pt.z), ref), _label(n, m, pt))
    return res


def check_eps_limit(max_n: int, grid: Sequence[EvalPoint], eps: float = 1e-6) -> CheckResult:
    res = CheckResult("eps-limit")
    for n, m in pairs(min(max_n, 5)):
        for pt in _oracle_points(grid):
            ref = q((n, m), pt, mode=BIG50).value
            res.update(rel(oracle.q_epsilon_limit(n, m, pt.z, eps, im_sign=pt.im_sign), ref), _label(n, m, pt))
    return res


def _rate(errors: Sequence[float], expected: float) -> float:
    worst = 0.0
    for a, b in zip(errors, errors[1:]):
        if b == 0:
            continue
        worst = max(worst, abs(a / b - expected) / expected)
    return worst


def check_fd_rate(max_n: int, grid: Sequence[EvalPoint], hs: Sequence[float] = (4e-4, 2e-4, 1e-4)) -> CheckResult:
    """Halving ``h`` divides the finite-difference error by about 4."""
    res = CheckResult("fd-rate")
    for n, m in pairs(min(max_n, 5)):
        for pt in _oracle_points(grid)[:2]:
            for kind, fd, prod in (("dnu", oracle.fd_dnu, dnu_p), ("dmu", oracle.fd_dmu, dmu_p)):
                ref = prod((n, m), pt, mode=BIG50).value
                errs = [float(abs(fd(n, m, pt.z, h) - ref)) for h in hs]
                if min(errs) > 1e-40:
                    res.update(_rate(errs, (hs[0] / hs[1]) ** 2), _label(n, m, pt, kind))
    return res


def check_eps_rate(max_n: int, grid: Sequence[EvalPoint], epss: Sequence[float] = (1e-3, 1e-4, 1e-5)) -> CheckResult:
    """Each tenfold smaller ``eps`` shrinks the error about tenfold."""
    res = CheckResult("eps-rate")
    for n, m in pairs(min(max_n, 5)):
        for pt in _oracle_points(grid)[:2]:
            ref = q((n, m), pt, mode=BIG50).value
            errs = [float(abs(oracle.q_epsilon_limit(n, m, pt.z, e, im_sign=pt.im_sign) - ref)) for e in epss]
            res.update(_rate(errs, epss[0] / epss[1]), _label(n, m, pt))
    return res


def check_negorder(max_n: int, grid: Sequence[EvalPoint], h: float = 1e-3) -> CheckResult:
    """Negative order against references that never use the order relations.

    ``P_n^{-m}`` is compared with the general-order series, its degree
    derivative with a Richardson-extrapolated central difference of that
    series (error ``O(h^4)``), and ``Q_n^{-m}`` with mpmath's Legendre
    function of the second kind.
    """
    res = CheckResult("negorder")
    ctx = big_context(BIG50.digits)
    for n, m in pairs(min(max_n, 5)):
        for pt in _oracle_points(grid):
            ref = oracle.p_general_mu(n, -m, pt.z)
            res.update(rel(legendre_p_negorder((n, m), pt, BIG50).value, ref), _label(n, m, pt, "P"))

            def central(step: float) -> Any:
                up = oracle.p_general_mu(n + step, -m, pt.z)
                return (up - oracle.p_general_mu(n - step, -m, pt.z)) / (2 * step)

            fd = (4 * central(h / 2) - central(h)) / 3
            res.update(rel(dnu_p_negorder((n, m), pt, mode=BIG50).value, fd), _label(n, m, pt, "dnu"))
            zz = ctx.mpc(complex(pt.z))
            ref_q = ctx.legenq(n, -m, zz, type=3)
            res.update(rel(q_negorder((n, m), pt, mode=BIG50).value, ref_q), _label(n, m, pt, "Q"))
    return res


CheckFn = Callable[[int, Sequence[EvalPoint]], CheckResult]

BASE_CHECKS: dict[str, CheckFn] = {
    "dnu-agree": check_dnu_agreement,
    "dnu-agree-big": lambda n, g: check_dnu_agreement(n, g, BIG50),
    "dmu-agree": check_dmu_agreement,
    "dmu-agree-big": lambda n, g: check_dmu_agreement(n, g, BIG50),
    "q-agree": check_q_agreement,
    "q-assembly": check_q_assembly,
    "bridge": check_bridge,
    "psi-identity": check_psi_identity,
    "parity": check_parity,
    "sign-side": check_sign_side,
    "realness": check_realness,
    "psi-offset": check_psi_offset,
}

ORACLE_CHECKS: dict[str, CheckFn] = {
    "oracle-p": check_oracle_p,
    "rodrigues": lambda n, g: check_rodrigues(n),
    "fd-dnu": lambda n, g: check_fd(n, g, "dnu"),
    "fd-dmu": lambda n, g: check_fd(n, g, "dmu"),
    "eps-limit": check_eps_limit,
    "fd-rate": check_fd_rate,
    "eps-rate": check_eps_rate,
    "negorder": check_negorder,
}


def run_checks(
    max_n: int = 8,
    grid: Sequence[EvalPoint] | None = None,
    tol: float | None = None,
    with_oracle: bool = False,
    only: Iterable[str] | None = None,
) -> list[CheckResult]:
    """Run the invariant matrix and attach tolerances.

    ``grid`` may mix off-cut and on-cut points; it defaults to the standard
    grid plus :data:`CUT_POINTS`.  ``tol`` replaces the tolerance of the
    Double residual classes listed in :data:`TOL_CLASSES`.
    """
    grid = list(grid) if grid is not None else [*STANDARD_GRID, *CUT_POINTS]
    table = dict(BASE_CHECKS)
    if with_oracle:
        table.update(ORACLE_CHECKS)
    names = list(only) if only is not None else list(table)
    out = []
    for name in names:
        result = table[name](max_n, grid)
        result.name = name
        result.tol = tol if (tol is not None and name in TOL_CLASSES) else DEFAULT_TOLERANCES[name]
        out.append(result)
    return out
