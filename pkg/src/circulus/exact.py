"""Outward-rounded interval arithmetic over exact rationals.

Endpoints are dyadic rationals kept to a stated number of significant
bits; every operation rounds its result outward, so an enclosure always
contains the exact real value it tracks.  Nothing here ever touches
floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DivisionByIntervalContainingZero,
    DomainError,
    NegativeRadicand,
    PoleProximity,
)

Q = Fraction

_ZERO = Q(0)
_ONE = Q(1)


@dataclass(frozen=True, slots=True)
class Precision:
    """Working precision: endpoints carry at most `bits` significant bits."""

    bits: int

    def __post_init__(self) -> None:
        if self.bits < 8:
            raise ValueError(f"precision must be at least 8 bits, got {self.bits}")

    def raised(self, extra: int) -> "Precision":
        return Precision(self.bits + extra)


def _mag_exponent(x: Q) -> int:
    """e such that 2**e <= |x| < 2**(e+1); x must be nonzero."""
    n, d = abs(x.numerator), x.denominator
    e = n.bit_length() - d.bit_length()
    if e >= 0:
        if n < d << e:
            e -= 1
    elif n << -e < d:
        e -= 1
    return e


def round_down(x: Q, bits: int) -> Q:
    """Largest dyadic value with `bits` significant bits that is <= x."""
    if x == 0:
        return _ZERO
    g = _mag_exponent(x) + 1 - bits  # grid spacing 2**g
    n, d = x.numerator, x.denominator
    if g >= 0:
        return Q((n // (d << g)) * (1 << g))
    return Q((n << -g) // d, 1 << -g)


def round_up(x: Q, bits: int) -> Q:
    """Smallest dyadic value with `bits` significant bits that is >= x."""
    return -round_down(-x, bits)


def ulp(x: Q, bits: int) -> Q:
    """Grid spacing at x for the given precision (tiny positive for x = 0)."""
    if x == 0:
        return Q(1, 1 << (2 * bits))
    return Q(2) ** (_mag_exponent(x) + 1 - bits)


@dataclass(frozen=True, slots=True)
class Enclosure:
    """Closed interval [lo, hi] certified to contain an exact real value."""

    lo: Q
    hi: Q
    precision: Precision

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError(f"inverted enclosure: {self.lo} > {self.hi}")

    # -- construction -------------------------------------------------

    @classmethod
    def from_endpoints(cls, lo: Q, hi: Q, precision: Precision) -> "Enclosure":
        """Outward-round arbitrary rational endpoints onto the dyadic grid."""
        b = precision.bits
        return cls(round_down(Q(lo), b), round_up(Q(hi), b), precision)

    @classmethod
    def from_rational(cls, value: Q | int, precision: Precision) -> "Enclosure":
        """Tightest grid enclosure of a single rational value."""
        q = Q(value)
        b = precision.bits
        return cls(round_down(q, b), round_up(q, b), precision)

    @classmethod
    def point(cls, value: Q | int, precision: Precision) -> "Enclosure":
        """Exact degenerate interval; the value is kept verbatim."""
        q = Q(value)
        return cls(q, q, precision)

    # -- inspection ---------------------------------------------------

    @property
    def width(self) -> Q:
        return self.hi - self.lo

    @property
    def mid(self) -> Q:
        return (self.lo + self.hi) / 2

    def mag_ub(self) -> Q:
        return max(-self.lo, self.hi)

    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, value: Q | int) -> bool:
        return self.lo <= value <= self.hi

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def encloses(self, other: "Enclosure") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def overlaps(self, other: "Enclosure") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    # -- precision plumbing -------------------------------------------

    def rounded(self, precision: Precision) -> "Enclosure":
        b = precision.bits
        return Enclosure(round_down(self.lo, b), round_up(self.hi, b), precision)

    def at_precision(self, precision: Precision) -> "Enclosure":
        """Retag at a finer precision, or outward-round to a coarser one."""
        if precision.bits >= self.precision.bits:
            return Enclosure(self.lo, self.hi, precision)
        return self.rounded(precision)

    def intersect(self, other: "Enclosure") -> "Enclosure":
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        if lo > hi:
            raise ValueError("empty intersection of enclosures")
        return Enclosure(lo, hi, self.precision)

    # -- arithmetic ----------------------------------------------------

    def _coerce(self, other: "Enclosure | Q | int") -> "Enclosure | None":
        if isinstance(other, Enclosure):
            return other
        if isinstance(other, (int, Fraction)):
            # exact lift: the scalar itself is never rounded
            return Enclosure.point(Q(other), self.precision)
        return None

    def _out(self, lo: Q, hi: Q, other: "Enclosure") -> "Enclosure":
        p = self.precision if self.precision.bits <= other.precision.bits else other.precision
        return Enclosure(round_down(lo, p.bits), round_up(hi, p.bits), p)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._out(self.lo + o.lo, self.hi + o.hi, o)

    __radd__ = __add__

    def __neg__(self):
        return Enclosure(-self.hi, -self.lo, self.precision)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._out(self.lo - o.hi, self.hi - o.lo, o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o.__sub__(self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        products = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return self._out(min(products), max(products), o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.lo <= 0 <= o.hi:
            raise DivisionByIntervalContainingZero(
                f"denominator enclosure [{o.lo}, {o.hi}] contains zero"
            )
        quotients = (self.lo / o.lo, self.lo / o.hi, self.hi / o.lo, self.hi / o.hi)
        return self._out(min(quotients), max(quotients), o)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o.__truediv__(self)

    def square(self) -> "Enclosure":
        """Tight interval square (accounts for the shared operand)."""
        if self.lo >= 0:
            lo, hi = self.lo * self.lo, self.hi * self.hi
        elif self.hi <= 0:
            lo, hi = self.hi * self.hi, self.lo * self.lo
        else:
            lo, hi = _ZERO, max(self.lo * self.lo, self.hi * self.hi)
        return self._out(lo, hi, self)

    def __abs__(self) -> "Enclosure":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return Enclosure(_ZERO, self.mag_ub(), self.precision)

    def __str__(self) -> str:
        digits = max(1, self.precision.bits * 301 // 1000)
        return render(self, digits)


def enc_arith(a: Enclosure, b: Enclosure, kind: str) -> Enclosure:
    """Dispatch one of the four ring operations by name."""
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "div":
        return a / b
    raise ValueError(f"unknown operation kind: {kind!r}")


# -- square root -------------------------------------------------------


def _sqrt_down(x: Q, bits: int) -> Q:
    """Dyadic lower bound on sqrt(x) for x >= 0."""
    if x == 0:
        return _ZERO
    k = bits + 2 - _mag_exponent(x) // 2
    n, d = x.numerator, x.denominator
    if k >= 0:
        scaled = (n << 2 * k) // d
    else:
        scaled = n // (d << -2 * k)
    r = math.isqrt(scaled)
    val = Q(r, 1 << k) if k >= 0 else Q(r << -k)
    return round_down(val, bits)


def _sqrt_up(x: Q, bits: int) -> Q:
    """Dyadic upper bound on sqrt(x) for x >= 0."""
    if x == 0:
        return _ZERO
    k = bits + 2 - _mag_exponent(x) // 2
    n, d = x.numerator, x.denominator
    if k >= 0:
        scaled = -((-n << 2 * k) // d)  # ceil(x * 4**k)
    else:
        scaled = -(-n // (d << -2 * k))
    r = math.isqrt(scaled)
    if r * r < scaled:
        r += 1
    val = Q(r, 1 << k) if k >= 0 else Q(r << -k)
    return round_up(val, bits)


def enc_sqrt(x: Enclosure, precision: Precision | None = None) -> Enclosure:
    """Enclosure of the square root, via integer square roots of scaled values."""
    if x.lo < 0:
        raise NegativeRadicand(f"sqrt of enclosure with lo = {x.lo} < 0")
    p = precision or x.precision
    return Enclosure(_sqrt_down(x.lo, p.bits), _sqrt_up(x.hi, p.bits), p)


# -- trigonometric and inverse trigonometric functions -----------------

_SERIES_GUARD = 16  # extra working bits inside every series evaluation


def _tail_threshold(bits: int) -> Q:
    return Q(1, 1 << (bits + 4))


def _pad_remainder(total: Enclosure, bound: Q) -> Enclosure:
    return Enclosure(total.lo - bound, total.hi + bound, total.precision)


def _sin_series(x: Enclosure, work: Precision) -> Enclosure:
    # Alternating Taylor series; valid because term magnitudes decrease
    # for |x| <= 9/8, so the first omitted term bounds the remainder.
    x2 = x.square()
    term = x
    total = x
    thresh = _tail_threshold(work.bits)
    for k in range(1, 200):
        term = -(term * x2) / ((2 * k) * (2 * k + 1))
        bound = term.mag_ub()
        if bound < thresh:
            return _pad_remainder(total, bound)
        total = total + term
    raise ArithmeticError("sine series failed to converge")


def _cos_series(x: Enclosure, work: Precision) -> Enclosure:
    x2 = x.square()
    term = Enclosure.point(_ONE, work)
    total = term
    thresh = _tail_threshold(work.bits)
    for k in range(1, 200):
        term = -(term * x2) / ((2 * k - 1) * (2 * k))
        bound = term.mag_ub()
        if bound < thresh:
            return _pad_remainder(total, bound)
        total = total + term
    raise ArithmeticError("cosine series failed to converge")


def _arctan_series(x: Enclosure, work: Precision) -> Enclosure:
    # Requires |x| well below 1; callers reduce to |x| <= 0.27.
    x2 = x.square()
    power = x
    total = x
    sign = -1
    thresh = _tail_threshold(work.bits)
    for k in range(1, 400):
        power = power * x2
        term = power / (2 * k + 1)
        bound = term.mag_ub()
        if bound < thresh:
            return _pad_remainder(total, bound)
        total = total + term if sign > 0 else total - term
        sign = -sign
    raise ArithmeticError("arctangent series failed to converge")


def _clamp_unit(e: Enclosure) -> Enclosure:
    return Enclosure(max(e.lo, Q(-1)), min(e.hi, _ONE), e.precision)


def _reduce_quarter(x: Enclosure, work: Precision) -> tuple[Enclosure, int]:
    """Write x = y + q*(pi/2) with |y| small; return (y, q mod 4)."""
    if x.mag_ub() <= 1:
        return x, 0
    half_pi = pi_reference(work) * Q(1, 2)
    q = round(x.mid / half_pi.mid)
    y = x - q * half_pi
    return y, q % 4


def enc_sin(x: Enclosure, precision: Precision | None = None) -> Enclosure:
    p = precision or x.precision
    work = p.raised(_SERIES_GUARD)
    y, q = _reduce_quarter(x.at_precision(work), work)
    if y.mag_ub() > Q(9, 8):
        return Enclosure(Q(-1), _ONE, p)  # argument too wide to reduce
    if q == 0:
        out = _sin_series(y, work)
    elif q == 1:
        out = _cos_series(y, work)
    elif q == 2:
        out = -_sin_series(y, work)
    else:
        out = -_cos_series(y, work)
    return _clamp_unit(out.rounded(p))


def enc_cos(x: Enclosure, precision: Precision | None = None) -> Enclosure:
    p = precision or x.precision
    work = p.raised(_SERIES_GUARD)
    y, q = _reduce_quarter(x.at_precision(work), work)
    if y.mag_ub() > Q(9, 8):
        return Enclosure(Q(-1), _ONE, p)
    if q == 0:
        out = _cos_series(y, work)
    elif q == 1:
        out = -_sin_series(y, work)
    elif q == 2:
        out = -_cos_series(y, work)
    else:
        out = _sin_series(y, work)
    return _clamp_unit(out.rounded(p))


def enc_tan(x: Enclosure, precision: Precision | None = None) -> Enclosure:
    p = precision or x.precision
    work = p.raised(8)
    c = enc_cos(x, work)
    if c.contains_zero():
        raise PoleProximity(
            f"cos enclosure [{c.lo}, {c.hi}] contains zero: argument too close to a pole"
        )
    s = enc_sin(x, work)
    return (s / c).rounded(p)


def enc_arctan(x: Enclosure, precision: Precision | None = None) -> Enclosure:
    p = precision or x.precision
    work = p.raised(_SERIES_GUARD)
    y = x.at_precision(work)
    doublings = 0
    # halve the argument until the series converges briskly: the map
    # t -> t/(1 + sqrt(1 + t^2)) sends tan(a) to tan(a/2)
    while y.mag_ub() > Q(27, 100):
        y = y / (Enclosure.point(_ONE, work) + enc_sqrt(y.square() + 1))
        doublings += 1
        if doublings > 200:
            raise ArithmeticError("arctangent reduction failed to contract")
    out = _arctan_series(y, work)
    if doublings:
        out = out * (1 << doublings)
    return out.rounded(p)


def _arcsin_point(v: Q, work: Precision) -> Enclosure:
    if v == 1:
        return pi_reference(work) * Q(1, 2)
    if v == -1:
        return pi_reference(work) * Q(-1, 2)
    pv = Enclosure.point(v, work)
    root = enc_sqrt(Enclosure.point(_ONE, work) - pv.square())
    return enc_arctan(pv / root, work)


def enc_arcsin(x: Enclosure, precision: Precision | None = None) -> Enclosure:
    if x.lo < -1 or x.hi > 1:
        raise DomainError(f"arcsin argument [{x.lo}, {x.hi}] leaves [-1, 1]")
    p = precision or x.precision
    work = p.raised(_SERIES_GUARD)
    if x.is_point():
        return _arcsin_point(x.lo, work).rounded(p)
    lo = _arcsin_point(x.lo, work).lo  # arcsin is increasing
    hi = _arcsin_point(x.hi, work).hi
    return Enclosure(lo, hi, work).rounded(p)


_TRIG = {
    "sin": enc_sin,
    "cos": enc_cos,
    "tan": enc_tan,
    "arcsin": enc_arcsin,
    "arctan": enc_arctan,
}


def enc_trig(x: Enclosure, which: str, precision: Precision | None = None) -> Enclosure:
    try:
        fn = _TRIG[which]
    except KeyError:
        raise ValueError(f"unknown trig function: {which!r}") from None
    return fn(x, precision)


# -- pi ----------------------------------------------------------------

_pi_tight: Enclosure | None = None
_pi_bits = 0


def pi_reference(precision: Precision) -> Enclosure:
    """Machin-formula enclosure of pi: 16*arctan(1/5) - 4*arctan(1/239).

    Results at different precisions are coarsenings of one shared tight
    interval, so pi_reference(p) always encloses pi_reference(p + k).
    """
    global _pi_tight, _pi_bits
    need = precision.bits
    if _pi_bits < need:
        work = Precision(need + 32)
        a = _arctan_series(Enclosure.point(Q(1, 5), work), work)
        b = _arctan_series(Enclosure.point(Q(1, 239), work), work)
        fresh = a * 16 - b * 4
        if _pi_tight is not None:
            # both intervals contain pi, so the intersection does too;
            # intersecting keeps every previously returned coarsening valid
            fresh = fresh.intersect(_pi_tight.at_precision(work))
        _pi_tight, _pi_bits = fresh, need
    return _pi_tight.rounded(precision)


# -- precision policy ---------------------------------------------------


def bits_for_digits(digits: int) -> int:
    """Working bits needed to report `digits` decimal digits comfortably."""
    if digits < 1:
        raise ValueError("digit count must be positive")
    return -(-digits * 333 // 100) + 32  # ceil(3.33 * digits) + 32


# -- decimal rendering ---------------------------------------------------


def decimal_string(x: Q, places: int, direction: str) -> str:
    """Fixed-point decimal with `places` fractional digits, floor or ceil."""
    scale = 10**places
    n, d = x.numerator * scale, x.denominator
    if direction == "down":
        q = n // d
    elif direction == "up":
        q = -(-n // d)
    else:
        raise ValueError(f"direction must be 'down' or 'up', got {direction!r}")
    sign = "-" if q < 0 else ""
    a = abs(q)
    if places == 0:
        return f"{sign}{a}"
    return f"{sign}{a // scale}.{a % scale:0{places}d}"


def _dec_exponent(x: Q) -> int:
    """e such that 10**e <= |x| < 10**(e+1); x must be nonzero."""
    x = abs(x)
    e = 0
    while x >= 10:
        x /= 10
        e += 1
    while x < 1:
        x *= 10
        e -= 1
    return e


def _strip(s: str) -> str:
    return s.rstrip("0").rstrip(".") if "." in s else s


def render(enc: Enclosure, digits: int) -> str:
    """Longest common decimal prefix of the endpoints, then a digit bracket.

    `digits` counts significant digits from the first nonzero digit.
    A point enclosure with a terminating decimal prints plainly; when no
    prefix is shared the two directed-rounded endpoints print in full.
    """
    if digits < 1:
        raise ValueError("digit count must be positive")
    if enc.lo == 0 and enc.hi == 0:
        return "0"
    if enc.hi <= 0:
        return "-" + render(Enclosure(-enc.hi, -enc.lo, enc.precision), digits)
    places = max(0, digits - 1 - _dec_exponent(enc.mag_ub()))
    low = decimal_string(enc.lo, places, "down")
    high = decimal_string(enc.hi, places, "up")
    if enc.lo < 0 < enc.hi:
        return f"[{low}, {high}]"
    if low == high:
        return _strip(low)
    int_len = len(high.split(".")[0]) if "." in high else len(high)
    a, b = low.replace(".", ""), high.replace(".", "")
    if len(a) != len(b):
        return f"[{_strip(low)}, {_strip(high)}]"
    shared = 0
    while shared < len(a) and a[shared] == b[shared]:
        shared += 1
    if shared < int_len:
        return f"[{_strip(low)}, {_strip(high)}]"
    prefix = a[:shared]
    head = prefix[:int_len] + ("." + prefix[int_len:] if places else "")
    return f"{head}[{a[shared:]}, {b[shared:]}]"


def correct_digits(enc: Enclosure) -> int:
    """Decimal places at which both endpoints truncate identically."""
    cap = max(1, enc.precision.bits * 301 // 1000)
    lo_n, lo_d = enc.lo.numerator, enc.lo.denominator
    hi_n, hi_d = enc.hi.numerator, enc.hi.denominator
    k = 0
    while k < cap:
        s = 10 ** (k + 1)
        if (lo_n * s) // lo_d != (hi_n * s) // hi_d:
            break
        k += 1
    return k
