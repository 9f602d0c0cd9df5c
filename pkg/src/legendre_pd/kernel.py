"""Branch-aware arithmetic, digamma at integers and exact coefficients.

Every formula in the package depends on the evaluation point only through
the two factors ``(z-1)/2`` and ``(z+1)/2``.  Each factor is carried as a
:class:`Factor`, a number together with an explicit phase ``e^{i pi p}``
(``p`` in {-1, 0, 1}).  Half-integer powers and logarithms consume the phase
symbolically, so points reflected through the origin (``-z``) and points on
either lip of the cut ``[-1, 1]`` are handled without numerically collapsing
the phase first.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable, Iterable, Union

import mpmath
from mpmath.libmp import from_rational

__all__ = [
    "LegendreError",
    "DomainError",
    "OnCutError",
    "OracleDomainError",
    "UnsupportedRepresentation",
    "RepId",
    "Double",
    "Big",
    "PrecisionMode",
    "DOUBLE",
    "BIG50",
    "parse_precision",
    "OffCut",
    "OnCut",
    "EvalPoint",
    "off_cut",
    "on_cut",
    "IndexPair",
    "EvalReport",
    "Factor",
    "Arith",
    "arith",
    "harmonic",
    "digamma_int",
    "digamma_int_exact",
    "psi_over_gamma_neg_limit",
    "factorial_ratio",
    "half_integer_power",
    "log_ratio",
    "reflect_point",
]


class LegendreError(ValueError):
    """Base class for errors raised by this package."""


class DomainError(LegendreError):
    pass


class OnCutError(DomainError):
    """Argument lies on a branch cut where a side must be chosen first."""


class OracleDomainError(DomainError):
    """Reference series evaluated outside its region of convergence."""


class UnsupportedRepresentation(LegendreError):
    pass


class RepId(str, Enum):
    """Labels of the printed finite-sum representations."""

    E1_1 = "E1.1"
    E1_2 = "E1.2"
    E1_3 = "E1.3"
    E1_4 = "E1.4"
    E1_5 = "E1.5"
    E2_9 = "E2.9"
    E2_10 = "E2.10"
    E3_1 = "E3.1"
    E3_2 = "E3.2"
    E3_3 = "E3.3"
    E3_4 = "E3.4"
    E3_6 = "E3.6"
    E3_7 = "E3.7"
    E3_8 = "E3.8"
    E3_9 = "E3.9"
    Q4_4 = "Q4.4"
    Q4_5 = "Q4.5"
    Q4_6 = "Q4.6"
    Q4_7 = "Q4.7"
    Q4_8 = "Q4.8"
    SUM = "sum"
    AUTO = "Auto"

    @classmethod
    def parse(cls, value: "RepId | str") -> "RepId":
        if isinstance(value, RepId):
            return value
        text = str(value).strip()
        if text.lower() == "auto":
            return cls.AUTO
        for rep in cls:
            if rep.value.lower() == text.lower():
                return rep
        raise UnsupportedRepresentation(f"unknown representation {value!r}")

    def __str__(self) -> str:
        return self.value


# ---------------------------------------------------------------------------
# precision modes


@dataclass(frozen=True)
class Double:
    def __str__(self) -> str:
        return "double"


@dataclass(frozen=True)
class Big:
    digits: int = 50

    def __post_init__(self) -> None:
        if int(self.digits) < 30:
            raise ValueError(f"Big precision needs at least 30 digits, got {self.digits}")

    def __str__(self) -> str:
        return f"big:{self.digits}"


PrecisionMode = Union[Double, Big]
DOUBLE = Double()
BIG50 = Big(50)


def parse_precision(text: str) -> PrecisionMode:
    """Parse ``double`` or ``big:D``."""
    text = text.strip().lower()
    if text == "double":
        return DOUBLE
    if text == "big":
        return BIG50
    if text.startswith("big:"):
        return Big(int(text[4:]))
    raise ValueError(f"unrecognised precision {text!r}")


# ---------------------------------------------------------------------------
# evaluation points


@dataclass(frozen=True)
class OffCut:
    """Point ``z`` off the cut ``(-inf, 1]``.

    ``im_sign`` is the sign of ``Im z``; for real ``z > 1`` it records from
    which half-plane the point is approached (default: upper).
    """

    z: Any
    im_sign: int = 1

    def __post_init__(self) -> None:
        zc = complex(self.z)
        if self.im_sign not in (1, -1):
            raise ValueError("im_sign must be +1 or -1")
        if zc.imag == 0.0:
            if zc.real <= 1.0:
                raise OnCutError(f"z = {zc.real} lies on the cut (-inf, 1]")
        elif (zc.imag > 0) != (self.im_sign > 0):
            raise ValueError("im_sign must equal the sign of Im z")


@dataclass(frozen=True)
class OnCut:
    """Real point ``-1 < x < 1`` on the cut."""

    x: Any

    def __post_init__(self) -> None:
        xf = float(self.x)
        if not -1.0 < xf < 1.0:
            raise DomainError(f"on-cut point must satisfy -1 < x < 1, got {xf}")


EvalPoint = Union[OffCut, OnCut]


def off_cut(z: Any, im_sign: int | None = None) -> OffCut:
    """Build an :class:`OffCut` point, inferring ``im_sign`` from ``Im z``."""
    if im_sign is None:
        im = complex(z).imag
        im_sign = -1 if im < 0 else 1
    return OffCut(z, im_sign)


def on_cut(x: Any) -> OnCut:
    return OnCut(x)


@dataclass(frozen=True)
class IndexPair:
    n: int
    m: int

    def __post_init__(self) -> None:
        if int(self.n) != self.n or int(self.m) != self.m:
            raise DomainError("degree and order must be integers")
        if self.n < 0 or self.m < 0:
            raise DomainError(f"need n >= 0 and m >= 0, got n={self.n}, m={self.m}")
        if self.m > self.n:
            raise DomainError(f"order m={self.m} exceeds degree n={self.n}")


def as_index(idx: "IndexPair | tuple[int, int]") -> IndexPair:
    if isinstance(idx, IndexPair):
        return idx
    n, m = idx
    return IndexPair(int(n), int(m))


def as_point(pt: Any) -> EvalPoint:
    if isinstance(pt, (OffCut, OnCut)):
        return pt
    return off_cut(pt)


@dataclass(frozen=True)
class EvalReport:
    """Result of one evaluation.

    ``cond`` is the largest ratio ``sum |term| / |sum term|`` over the
    finite sums of the representation (1 when there is no cancellation).
    ``scale`` is the largest magnitude among the combined contributions; the
    residual operations use it to form a relative criterion.
    """

    value: Any
    rep: RepId
    precision: PrecisionMode
    cond: float = 1.0
    scale: float = 0.0

    @property
    def complex(self) -> complex:
        return complex(self.value)

    @property
    def relative(self) -> float:
        """``|value| / scale``; meaningful for residual reports."""
        if self.scale == 0.0:
            return abs(complex(self.value))
        return abs(complex(self.value)) / self.scale


# ---------------------------------------------------------------------------
# exact Gaussian rationals


def to_fraction(x: Any) -> Fraction:
    """Exact value of an int, Fraction, float, decimal string or mpf."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, float, str)):
        return Fraction(x)
    if hasattr(x, "man_exp"):
        man, exp = x.man_exp
        return Fraction(int(man)) * Fraction(2) ** int(exp)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


class GaussQ:
    """Exact complex rational ``(a + i*b) / d`` with integers ``a, b`` and ``d > 0``.

    The common denominator is reduced lazily, only when it grows large, so
    long chains of products and sums avoid a gcd per operation.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, re: Any = 0, im: Any = 0):
        re = re if isinstance(re, Fraction) else Fraction(re)
        im = im if isinstance(im, Fraction) else Fraction(im)
        d = re.denominator * im.denominator // math.gcd(re.denominator, im.denominator)
        self.a = re.numerator * (d // re.denominator)
        self.b = im.numerator * (d // im.denominator)
        self.d = d

    @classmethod
    def _raw(cls, a: int, b: int, d: int) -> "GaussQ":
        out = object.__new__(cls)
        if d.bit_length() > _REDUCE_BITS:
            g = math.gcd(math.gcd(a, b), d)
            if g > 1:
                a, b, d = a // g, b // g, d // g
        out.a, out.b, out.d = a, b, d
        return out

    @classmethod
    def of(cls, x: Any) -> "GaussQ":
        if isinstance(x, GaussQ):
            return x
        if isinstance(x, int):
            return cls._raw(x, 0, 1)
        if isinstance(x, complex):
            return cls(Fraction(x.real), Fraction(x.imag))
        if hasattr(x, "_mpc_"):
            return cls(to_fraction(x.real), to_fraction(x.imag))
        return cls(to_fraction(x))

    @property
    def re(self) -> Fraction:
        return Fraction(self.a, self.d)

    @property
    def im(self) -> Fraction:
        return Fraction(self.b, self.d)

    def __add__(self, o: Any) -> "GaussQ":
        o = _gq(o)
        if self.d == o.d:
            return GaussQ._raw(self.a + o.a, self.b + o.b, self.d)
        return GaussQ._raw(self.a * o.d + o.a * self.d, self.b * o.d + o.b * self.d, self.d * o.d)

    __radd__ = __add__

    def __sub__(self, o: Any) -> "GaussQ":
        return self + (-_gq(o))

    def __rsub__(self, o: Any) -> "GaussQ":
        return _gq(o) - self

    def __neg__(self) -> "GaussQ":
        return GaussQ._raw(-self.a, -self.b, self.d)

    def __mul__(self, o: Any) -> "GaussQ":
        if isinstance(o, int):
            return GaussQ._raw(self.a * o, self.b * o, self.d)
        if isinstance(o, Fraction):
            return GaussQ._raw(self.a * o.numerator, self.b * o.numerator, self.d * o.denominator)
        o = _gq(o)
        if not o.b:
            return GaussQ._raw(self.a * o.a, self.b * o.a, self.d * o.d)
        if not self.b:
            return GaussQ._raw(self.a * o.a, self.a * o.b, self.d * o.d)
        return GaussQ._raw(self.a * o.a - self.b * o.b, self.a * o.b + self.b * o.a, self.d * o.d)

    __rmul__ = __mul__

    def __truediv__(self, o: Any) -> "GaussQ":
        if isinstance(o, (int, Fraction)):
            o = Fraction(o)
            if not o:
                raise ZeroDivisionError("GaussQ division by zero")
            num, den = o.numerator, o.denominator
            if num < 0:
                num, den = -num, -den
            return GaussQ._raw(self.a * den, self.b * den, self.d * num)
        o = _gq(o)
        n2 = o.a * o.a + o.b * o.b
        if n2 == 0:
            raise ZeroDivisionError("GaussQ division by zero")
        # (a + ib)/d / ((c + ie)/f) = f (a + ib)(c - ie) / (d (c^2 + e^2))
        a = (self.a * o.a + self.b * o.b) * o.d
        b = (self.b * o.a - self.a * o.b) * o.d
        return GaussQ._raw(a, b, self.d * n2)

    def __rtruediv__(self, o: Any) -> "GaussQ":
        return _gq(o) / self

    def __pow__(self, k: int) -> "GaussQ":
        if k < 0:
            return GaussQ._raw(1, 0, 1) / self ** (-k)
        out, base = GaussQ._raw(1, 0, 1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, o: object) -> bool:
        try:
            o = _gq(o)
        except TypeError:
            return NotImplemented
        return self.a * o.d == o.a * self.d and self.b * o.d == o.b * self.d

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def __complex__(self) -> complex:
        return complex(self.a / self.d, self.b / self.d)

    def __float__(self) -> float:
        return self.a / self.d

    def __repr__(self) -> str:
        return f"GaussQ({self.re}, {self.im})"


#: Denominators longer than this are reduced by their gcd.
_REDUCE_BITS = 512


def _gq(x: Any) -> GaussQ:
    return x if isinstance(x, GaussQ) else GaussQ.of(x)


# ---------------------------------------------------------------------------
# numeric backends


@lru_cache(maxsize=None)
def big_context(digits: int) -> mpmath.MPContext:
    # Cached contexts are never mutated after creation.
    ctx = mpmath.MPContext()
    ctx.dps = digits
    return ctx


class Arith:
    """Scalar arithmetic for one precision mode.

    Finite sums are carried in a scalar type ``T``: exact :class:`GaussQ`
    when ``exact`` is true (the default; every binary floating-point or
    decimal input is an exact rational), otherwise the mode's floating
    complex type.  ``round`` maps ``T`` to the mode's numbers.  Logarithms,
    square roots and the Euler constant are always rounded in the mode.

    ``shift`` is the numeric stand-in for ``psi(j) - H_{j-1}``, i.e.
    ``-gamma`` plus an optional offset used by structural tests.
    """

    def __init__(self, mode: PrecisionMode, psi_shift: Any = 0, exact: bool = True):
        self.mode = mode
        self.exact = exact
        self.psi_shift = psi_shift
        if isinstance(mode, Big):
            ctx = big_context(int(mode.digits))
            self.ctx = ctx
            self.pi = +ctx.pi
            self.euler = +ctx.euler
            self.zero = ctx.mpc(0)
            self.one = ctx.mpc(1)
            self.I = ctx.mpc(0, 1)
            self._log = ctx.log
            self._sqrt = ctx.sqrt
        else:
            self.ctx = None
            self.pi = math.pi
            self.euler = 0.5772156649015329
            self.zero = 0j
            self.one = 1 + 0j
            self.I = 1j
            self._log = cmath.log
            self._sqrt = cmath.sqrt
        self.shift = self.num(psi_shift) - self.euler
        self.shift_c = complex(self.shift)

    @property
    def big(self) -> bool:
        return self.ctx is not None

    def num(self, x: Any) -> Any:
        """Convert to the mode's floating complex type."""
        if isinstance(x, GaussQ):
            if self.ctx is not None:
                return self.ctx.mpc(self._ratio(x.a, x.d), self._ratio(x.b, x.d))
            return complex(x)
        if isinstance(x, Fraction):
            if self.ctx is not None:
                return self.ctx.mpc(self._ratio(x.numerator, x.denominator))
            return complex(x.numerator / x.denominator if x.denominator != 1 else float(x.numerator))
        if self.ctx is not None:
            if isinstance(x, complex):
                return self.ctx.mpc(x.real, x.imag)
            return self.ctx.convert(x)
        return complex(x)

    def _ratio(self, a: int, d: int) -> Any:
        # correctly rounded a/d
        return self.ctx.make_mpf(from_rational(a, d, self.ctx.prec, "n"))

    def lift(self, x: Any) -> Any:
        """Convert to the sum scalar type ``T``."""
        return GaussQ.of(x) if self.exact else self.num(x)

    def round(self, t: Any) -> Any:
        return self.num(t) if self.exact else t

    @property
    def t_zero(self) -> Any:
        return GaussQ(0) if self.exact else self.zero

    @property
    def t_one(self) -> Any:
        return GaussQ(1) if self.exact else self.one

    def log(self, w: Any) -> Any:
        return self._log(w)

    def sqrt(self, w: Any) -> Any:
        return self._sqrt(w)

    def abs(self, w: Any) -> float:
        return float(abs(complex(w)))

    def ipow(self, j: int) -> Any:
        """Exact ``i**j``."""
        return (self.one, self.I, -self.one, -self.I)[j % 4]

    def coef(self, rational: Fraction, units: Fraction = Fraction(0)) -> Any:
        """Numeric value of ``rational + units * (psi - H)``."""
        value = self.num(rational)
        if units:
            value = value + self.num(units) * self.shift
        return value


def arith(mode: PrecisionMode | None, psi_shift: Any = 0, exact: bool = True) -> Arith:
    return Arith(DOUBLE if mode is None else mode, psi_shift, exact)


# ---------------------------------------------------------------------------
# digamma and exact coefficients


@lru_cache(maxsize=None)
def harmonic(j: int) -> Fraction:
    """Harmonic number ``H_j`` as an exact fraction."""
    if j < 0:
        raise DomainError(f"harmonic number needs j >= 0, got {j}")
    total = Fraction(0)
    for i in range(1, j + 1):
        total += Fraction(1, i)
    return total


def digamma_int_exact(k: int) -> tuple[Fraction, int]:
    """``psi(k)`` as ``(H_{k-1}, -1)``, meaning ``H_{k-1} - 1 * gamma``."""
    if int(k) != k or k <= 0:
        raise DomainError(f"digamma_int needs a positive integer, got {k}")
    return harmonic(int(k) - 1), -1


def digamma_int(k: int, mode: PrecisionMode | None = None) -> Any:
    """``psi(k) = H_{k-1} - gamma`` for positive integer ``k``."""
    rational, _ = digamma_int_exact(k)
    ar = arith(mode)
    value = ar.num(rational) - ar.euler
    return value if ar.big else value.real


def psi_over_gamma_neg_limit(k: int, m: int) -> Fraction:
    """Limit of ``psi(k+l+1)/Gamma(k+l+1)`` as ``l -> -m``, for ``0 <= k < m``."""
    if m < 1 or k < 0 or k >= m:
        raise DomainError(f"limit defined only for 0 <= k <= m-1, got k={k}, m={m}")
    return Fraction((-1) ** (k + m) * math.factorial(m - k - 1))


def factorial_ratio(num: Iterable[int], den: Iterable[int]) -> Fraction:
    """Exact ``prod(num_i!) / prod(den_j!)``."""
    top = 1
    for a in num:
        if a < 0:
            raise DomainError("factorial of a negative integer")
        top *= math.factorial(a)
    bottom = 1
    for b in den:
        if b < 0:
            raise DomainError("factorial of a negative integer")
        bottom *= math.factorial(b)
    return Fraction(top, bottom)


class Psi:
    """Exact linear combination of digamma values at positive integers.

    ``Psi(j)`` stands for ``psi(j)``; sums and integer multiples keep the
    harmonic part exact and count the ``psi - H`` units separately.
    """

    __slots__ = ("rational", "units")

    def __init__(self, j: int | None = None, *, rational: Fraction = Fraction(0), units: int = 0):
        if j is not None:
            rational, u = digamma_int_exact(j)
            units = -u  # one unit of (psi(j) - H_{j-1})
        self.rational = Fraction(rational)
        self.units = units

    def __add__(self, other: "Psi") -> "Psi":
        return Psi(rational=self.rational + other.rational, units=self.units + other.units)

    def __sub__(self, other: "Psi") -> "Psi":
        return Psi(rational=self.rational - other.rational, units=self.units - other.units)

    def __neg__(self) -> "Psi":
        return Psi(rational=-self.rational, units=-self.units)

    def __rmul__(self, c: int) -> "Psi":
        return Psi(rational=c * self.rational, units=c * self.units)

    def scaled(self, c: Fraction) -> tuple[Fraction, Fraction]:
        return c * self.rational, c * self.units

    def __repr__(self) -> str:
        return f"Psi({self.rational} + {self.units}*u)"


ZERO_PSI = Psi()


# ---------------------------------------------------------------------------
# branch-aware factors


@dataclass(frozen=True)
class Factor:
    """The number ``e^{i pi phase} * w`` with ``w`` off the negative real axis.

    ``w`` is held in the sum scalar type of the :class:`Arith` that built it.
    """

    w: Any
    phase: int = 0

    def value(self) -> Any:
        return -self.w if self.phase % 2 else self.w

    def ipow(self, k: int) -> Any:
        out = self.w ** k
        return -out if (self.phase * k) % 2 else out

    def sqrt(self, ar: Arith) -> Any:
        """``e^{i pi phase/2} sqrt(w)``, rounded in the mode."""
        return ar.ipow(self.phase) * ar.sqrt(ar.round(self.w))

    def half_pow(self, two_p: int, ar: Arith) -> Any:
        """``factor ** (two_p / 2)`` on the principal branch of ``w``, rounded."""
        if two_p % 2 == 0:
            return ar.round(self.ipow(two_p // 2))
        root = ar.sqrt(ar.round(self.w))
        out = root ** two_p if two_p >= 0 else ar.one / root ** (-two_p)
        return ar.ipow(self.phase * two_p) * out

    def log(self, ar: Arith) -> Any:
        out = ar.log(ar.round(self.w))
        if self.phase:
            out = out + self.phase * ar.pi * ar.I
        return out


def _on_negative_axis(w: complex) -> bool:
    return w.imag == 0.0 and w.real < 0.0


def half_integer_power(w: Any, two_p: int, mode: PrecisionMode | None = None) -> Any:
    """``w ** (two_p / 2)`` with the principal square root.

    ``w`` may be a plain number or a :class:`Factor` carrying an explicit
    phase.  A plain ``w`` on the negative real axis with odd ``two_p`` is
    ambiguous and raises :class:`OnCutError`.
    """
    ar = arith(mode)
    if isinstance(w, Factor):
        return Factor(ar.lift(w.w), w.phase).half_pow(two_p, ar)
    wv = ar.lift(w)
    if two_p < 0 and not wv:
        raise DomainError("negative power of zero")
    if two_p % 2 and _on_negative_axis(complex(wv)):
        raise OnCutError("half-integer power of a negative real number needs a side")
    return Factor(wv).half_pow(two_p, ar)


def log_ratio(z: Any, mode: PrecisionMode | None = None) -> Any:
    """``ln((z+1)/(z-1))`` as ``ln(z+1) - ln(z-1)`` with principal logs."""
    zc = complex(z)
    if zc.imag == 0.0 and -1.0 <= zc.real <= 1.0:
        raise OnCutError(f"ln((z+1)/(z-1)) is cut on [-1, 1]; got z={zc.real}")
    ar = arith(mode)
    zz = ar.lift(z)
    return ar.log(ar.round(zz + 1)) - ar.log(ar.round(zz - 1))


@dataclass(frozen=True)
class Reflected:
    """Factored form of ``-z``, ``-z+1`` and ``-z-1``."""

    minus_z: Factor
    minus_z_plus_1: Factor
    minus_z_minus_1: Factor


def reflect_point(z: Any, im_sign: int, mode: PrecisionMode | None = None) -> Reflected:
    """Factors ``-z = e^{-+i pi} z`` etc., upper phase for ``im_sign = +1``."""
    if im_sign not in (1, -1):
        raise ValueError("im_sign must be +1 or -1")
    ar = arith(mode)
    zz = ar.lift(z)
    p = -im_sign
    return Reflected(Factor(zz, p), Factor(zz - 1, p), Factor(zz + 1, p))


# ---------------------------------------------------------------------------
# frames: the pair of factors (z-1)/2, (z+1)/2 seen by every formula


@dataclass(frozen=True)
class Frame:
    """``A = (z-1)/2`` and ``B = (z+1)/2`` as phased factors.

    ``sign`` is the upper/lower selector (+1 for the upper half-plane side).
    """

    A: Factor
    B: Factor
    sign: int

    def reflect(self) -> "Frame":
        # (-z-1)/2 = e^{-+i pi} (z+1)/2 and (-z+1)/2 = e^{-+i pi} (z-1)/2
        p = -self.sign
        return Frame(
            Factor(self.B.w, self.B.phase + p),
            Factor(self.A.w, self.A.phase + p),
            -self.sign,
        )

    def radical(self, m: int, ar: Arith) -> Any:
        """``sqrt(A) sqrt(B)`` for odd ``m``, else 1.

        Every half-integer power of order ``m`` is this radical times an
        exact rational function of ``A`` and ``B``; :class:`Halves` and the
        explicit sums carry only the exact part.
        """
        if m % 2 == 0:
            return ar.one
        return self.A.sqrt(ar) * self.B.sqrt(ar)


def frame_off_cut(pt: OffCut, ar: Arith) -> Frame:
    z = ar.lift(pt.z)
    return Frame(Factor((z - 1) / 2), Factor((z + 1) / 2), pt.im_sign)


def frame_on_cut(x: Any, side: int, ar: Arith) -> Frame:
    """Frame of ``x + i0`` (``side = +1``) or ``x - i0`` (``side = -1``)."""
    xx = ar.lift(x)
    return Frame(Factor((1 - xx) / 2, side), Factor((1 + xx) / 2), side)


class Halves:
    """Exact parts of ``((z^2-1)/4)^{+-m/2}`` and ``((z-+1)/(z+-1))^{m/2}``.

    The common radical ``Frame.radical(m)`` is factored out.
    """

    def __init__(self, fr: Frame, m: int):
        r = m % 2
        lo, hi = (m - r) // 2, (m + r) // 2
        A, B = fr.A, fr.B
        self.prod = A.ipow(lo) * B.ipow(lo)
        self.prod_inv = A.ipow(-hi) * B.ipow(-hi)
        self.a_over_b = A.ipow(lo) * B.ipow(-hi)
        self.b_over_a = B.ipow(lo) * A.ipow(-hi)


# ---------------------------------------------------------------------------
# finite sums with exact coefficients


#: Guard digits for the re-evaluation in :meth:`Combo.numeric`.
GUARD_DIGITS = 10
#: Upper limit on extra digits spent on a cancelling combination.
MAX_EXTRA_DIGITS = 80


class Combo:
    """Accumulates the contributions of one representation.

    The algebraic part is kept in the sum scalar type as ``x0 + x1 * u``,
    where ``u = psi(j) - H_{j-1}`` is the common digamma offset; logarithmic
    terms are accumulated numerically.  All of it is relative to the frame
    radical, which :meth:`report` multiplies back in.

    ``cond`` is the worst ratio ``sum |term| / |sum|`` seen inside any finite
    sum and ``scale`` the largest single contribution.
    """

    def __init__(self, ar: Arith):
        self.ar = ar
        self.x0 = ar.t_zero
        self.x1 = ar.t_zero
        self.logs: dict[tuple[Any, int], tuple[Factor, Any]] = {}
        self.scale = 0.0
        self.cond = 1.0

    def _mag(self, t0: Any, t1: Any) -> float:
        return abs(complex(t0) + complex(t1) * self.ar.shift_c)

    def add_exact(self, t0: Any, t1: Any = None) -> None:
        self.x0 = self.x0 + t0
        if t1 is not None:
            self.x1 = self.x1 + t1
        self.scale = max(self.scale, self._mag(t0, t1 if t1 is not None else 0))

    def add_psi(self, factor: Any, psi: "Psi", weight: Fraction | int = 1) -> None:
        """Add ``weight * psi * factor`` with the digamma combination exact."""
        rational, units = psi.scaled(Fraction(weight))
        if rational or units:
            ar = self.ar
            self.add_exact(factor * ar.lift(rational), factor * ar.lift(units))

    def add_log(self, factor: Any, logs: "Factor | Iterable[tuple[Factor, int]]", weight: Fraction | int = 1) -> None:
        """Add ``weight * factor * sum(c * log(F))`` over ``logs``.

        Logarithms are kept symbolically, keyed by factor, so equal logs from
        different formulas merge exactly and are rounded only in
        :meth:`numeric`.
        """
        ar = self.ar
        pairs = [(logs, 1)] if isinstance(logs, Factor) else list(logs)
        base = factor * ar.lift(Fraction(weight))
        for f, c in pairs:
            key = (f.w, f.phase)
            old = self.logs.get(key, (f, ar.t_zero))[1]
            self.logs[key] = (f, old + base * c)
            self.scale = max(self.scale, ar.abs(ar.round(base * c)) * ar.abs(f.log(ar)))

    def series(
        self,
        prefactor: Any,
        base: Factor,
        kmax: int,
        coef: Callable[[int], "tuple[Fraction, Fraction] | Fraction"],
    ) -> tuple[Any, Any]:
        """Add ``prefactor * sum_{k=0}^{kmax} coef(k) * base**k``.

        ``coef`` returns an exact fraction or an exact ``(rational, units)``
        pair.  An empty range (``kmax < 0``) contributes nothing.  Returns the
        contribution as ``(rational part, units part)``.
        """
        ar = self.ar
        if kmax < 0:
            return ar.t_zero, ar.t_zero
        coefs = []
        for k in range(kmax + 1):
            c = coef(k)
            coefs.append(c if isinstance(c, tuple) else (c, Fraction(0)))
        # Horner for the sums; term magnitudes only need floats.
        step = base.value()
        s0, s1 = ar.t_zero, ar.t_zero
        for r, u in reversed(coefs):
            s0 = s0 * step + ar.lift(r) if s0 else ar.lift(r)
            s1 = s1 * step + ar.lift(u) if s1 else ar.lift(u)
        t = ar.abs(step)
        magnitude = sum(
            abs(float(r) + float(u) * self.ar.shift_c) * t ** k for k, (r, u) in enumerate(coefs)
        )
        size = self._mag(s0, s1)
        # A sum that vanishes identically contributes nothing and is skipped.
        if magnitude > 0.0 and size > 0.0:
            self.cond = max(self.cond, magnitude / size)
        c0, c1 = prefactor * s0, prefactor * s1
        self.add_exact(c0, c1)
        return c0, c1

    def absorb(self, other: "Combo", weight: Fraction | int = 1) -> None:
        """Add ``weight * other`` term by term, keeping exact parts exact."""
        ar = self.ar
        w = ar.lift(Fraction(weight))
        self.x0 = self.x0 + w * other.x0
        self.x1 = self.x1 + w * other.x1
        for key, (f, c) in other.logs.items():
            old = self.logs.get(key, (f, ar.t_zero))[1]
            self.logs[key] = (f, old + w * c)
        self.scale = max(self.scale, other.scale * abs(float(Fraction(weight))))
        self.cond = max(self.cond, other.cond)

    def _evaluate(self, ar: Arith) -> Any:
        out = ar.num(self.x0) + ar.num(self.x1) * ar.shift
        for f, c in self.logs.values():
            if c:
                out = out + ar.num(c) * f.log(ar)
        return out

    def numeric(self) -> Any:
        """Round the combination into the mode.

        With exact sums the only rounded ingredients are the logarithms and
        the digamma offset.  When these cancel against the exact part (a
        recessive value, or a residual that should vanish) the combination
        is re-evaluated with enough guard digits to cover the observed loss,
        then rounded once into the mode.
        """
        ar = self.ar
        if not ar.exact:
            out = ar.round(self.x0) + ar.round(self.x1) * ar.shift
            for f, c in self.logs.values():
                out = out + c * f.log(ar)
            return out
        value = self._evaluate(ar)
        base = int(ar.mode.digits) if ar.big else 16
        digits = base
        while True:
            size = ar.abs(value)
            lost = math.log10(self.scale / size) if size > 0.0 else float(MAX_EXTRA_DIGITS)
            need = base + GUARD_DIGITS + max(0, math.ceil(lost))
            if lost <= 2 or digits >= need or digits >= base + MAX_EXTRA_DIGITS:
                break
            digits = min(need, base + MAX_EXTRA_DIGITS)
            value = self._evaluate(Arith(Big(max(digits, 30)), ar.psi_shift))
        if digits == base:
            return value
        return ar.ctx.mpc(value.real, value.imag) if ar.big else complex(value)

    def report(self, rep: RepId, radical: Any) -> EvalReport:
        value = self.numeric() * radical
        scale = self.scale * abs(complex(radical))
        return EvalReport(value, rep, self.ar.mode, self.cond, scale)


def fact(j: int) -> int:
    return math.factorial(j)


class Coefs:
    """Exact factorial coefficients shared by the representations at ``(n, m)``.

    ``p``: (k+n+m)!/(k!(k+m)!(n-m-k)!), ``q``: (k+n)!/(k!(k+m)!(n-k)!),
    ``r``: (k+n-m)!(m-k-1)!/(k!(n+m-k)!), ``s``: (k+n)!(m-k-1)!/(k!(n-k)!),
    ``ratio``: (n+m)!/(n-m)!.
    """

    def __init__(self, n: int, m: int):
        self.n, self.m = n, m
        self.ratio = Fraction(fact(n + m), fact(n - m))

    def p(self, k: int) -> Fraction:
        n, m = self.n, self.m
        return Fraction(fact(k + n + m), fact(k) * fact(k + m) * fact(n - m - k))

    def q(self, k: int) -> Fraction:
        n, m = self.n, self.m
        return Fraction(fact(k + n), fact(k) * fact(k + m) * fact(n - k))

    def r(self, k: int) -> Fraction:
        n, m = self.n, self.m
        return Fraction(fact(k + n - m) * fact(m - k - 1), fact(k) * fact(n + m - k))

    def s(self, k: int) -> Fraction:
        n, m = self.n, self.m
        return Fraction(fact(k + n) * fact(m - k - 1), fact(k) * fact(n - k))
