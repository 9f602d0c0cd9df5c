"""Acceptance gate: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v`` or directly with
``python3 tests/test_acceptance.py``; both print the same ten lines.
"""
import math
from functools import lru_cache

import pytest

from legendre_pd import BIG50, RepId, bridge_residual, dmu_p, dnu_p, q
from legendre_pd.checks import STANDARD_GRID, run_checks
from legendre_pd.deriv_nu import auto_rep

LN2 = math.log(2)
SQRT2 = math.sqrt(2)
EULER = 0.5772156649015329

PLUS_REPS = (RepId.E1_4, RepId.E1_5, RepId.E3_1, RepId.E3_2)  # powers of (z+1)/2
MINUS_REPS = (RepId.E1_3, RepId.E3_7, RepId.E3_8)  # powers of (z-1)/2

GOLDEN = [
    ("dnu(0,0,3)", lambda: dnu_p((0, 0), 3), LN2),
    ("dnu(1,0,3)", lambda: dnu_p((1, 0), 3), 3 * LN2 + 2),
    ("dnu(1,1,3)", lambda: dnu_p((1, 1), 3), 2 * SQRT2 * LN2 + 3.5 * SQRT2),
    ("dmu(1,0,3)", lambda: dmu_p((1, 0), 3), 1.5 * LN2 + 2 - 3 * EULER),
    ("dmu(1,1,3)", lambda: dmu_p((1, 1), 3), SQRT2 * (LN2 - 1 - 2 * EULER)),
    ("Q(0,0,3)", lambda: q((0, 0), 3), 0.5 * LN2),
    ("Q(1,0,3)", lambda: q((1, 0), 3), 1.5 * LN2 - 1),
]


@lru_cache(maxsize=None)
def matrix():
    return {r.name: r for r in run_checks(max_n=8, with_oracle=True)}


def _classes(*names):
    results = [matrix()[n] for n in names]
    ok = all(r.passed for r in results)
    detail = "; ".join(f"{r.name} {r.residual:.2e} <= {r.tol:.2g}" if r.passed
                       else f"{r.name} {r.residual:.2e} > {r.tol:.2g} at {r.worst}" for r in results)
    return ok, detail


def criterion_1():
    return _classes("dnu-agree", "dnu-agree-big")


def criterion_2():
    return _classes("dmu-agree", "dmu-agree-big")


def criterion_3():
    return _classes("q-agree", "q-assembly")


def criterion_4():
    ok, detail = _classes("bridge", "psi-identity")
    nonzero = [
        (n, str(variant), complex(pt.z))
        for n in range(9)
        for pt in STANDARD_GRID
        for variant in (RepId.E2_9, RepId.E2_10)
        if bridge_residual((n, 0), pt, variant).value != 0
    ]
    detail += f"; m=0 bridge residuals not exactly zero: {len(nonzero)}"
    return ok and not nonzero, detail


def criterion_5():
    worst, where = 0.0, ""
    for name, fn, expected in GOLDEN:
        err = abs(fn().value - expected) / abs(expected)
        if err > worst:
            worst, where = err, name
    return worst <= 1e-12, f"worst {worst:.2e} <= 1e-12 ({where})"


def criterion_6():
    return _classes("fd-dnu", "fd-dmu", "eps-limit", "fd-rate", "eps-rate")


def criterion_7():
    return _classes("psi-offset", "parity", "negorder")


def criterion_8():
    return _classes("realness", "sign-side")


def criterion_9():
    r = matrix()["rodrigues"]
    return r.passed, f"{r.count} exact comparisons, {int(r.residual)} mismatch"


def criterion_10():
    z, n, m = 1.05, 8, 0
    plus = {str(r): dnu_p((n, m), z, r).cond for r in PLUS_REPS}
    minus = {str(r): dnu_p((n, m), z, r).cond for r in MINUS_REPS}
    auto = dnu_p((n, m), z)
    ref = dnu_p((n, m), z, RepId.E1_3, BIG50).value
    err = float(abs(auto.value - ref) / abs(ref))
    ok = min(plus.values()) >= 1e3 and max(minus.values()) <= 10 and err <= 1e-9
    detail = (
        f"n=8 m=0: min cond (z+1)/2 reps {min(plus.values()):.3g} >= 1e3; "
        f"max cond (z-1)/2 reps {max(minus.values()):.3g} <= 10; "
        f"Auto={auto.rep} (region pick {auto_rep(z)}) vs Big50 {err:.1e} <= 1e-9"
    )
    return ok, detail


CRITERIA = [
    (1, "representation agreement d/dnu", criterion_1),
    (2, "representation agreement d/dmu", criterion_2),
    (3, "representation agreement Q and assembly", criterion_3),
    (4, "bridge and digamma-identity residuals", criterion_4),
    (5, "golden values", criterion_5),
    (6, "oracle equivalence and convergence rates", criterion_6),
    (7, "structural properties", criterion_7),
    (8, "realness", criterion_8),
    (9, "exact Rodrigues oracle", criterion_9),
    (10, "conditioning and Auto selection", criterion_10),
]


def line(number, title, fn):
    ok, detail = fn()
    return ok, f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {title}: {detail}"


@pytest.mark.parametrize("number, title, fn", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, title, fn, capsys):
    ok, text = line(number, title, fn)
    with capsys.disabled():
        print("\n" + text)
    assert ok, text


if __name__ == "__main__":
    for c in CRITERIA:
        print(line(*c)[1])
