"""p-adic numbers at bounded precision, Newton polygons and Hensel lifting.

Everything here lives over Q_p for a prime p >= 5.  Elements enter as exact
rationals and are stored as u * p^v with the unit u known modulo p^N, so the
valuation v is exact as long as at least one nonzero digit is known.  A sum
whose known digits cancel completely degrades to an "approximate zero" that
only carries a lower bound on its valuation; any consumer that needs the
exact valuation of such an element raises PrecisionExhausted, and drivers
retry the whole computation at doubled precision up to a hard cap.

Ramification data for quadratic extensions is classified exactly from
rational input (sqrt_class); the digit machinery is only needed where a
square root that exists in Q_p but not in Q has to be evaluated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

DEFAULT_PRECISION = 64
MIN_PRECISION = 8
MAX_PRECISION = 1024


class PrecisionExhausted(ArithmeticError):
    """Raised when a result has fewer significant p-adic digits than allowed."""


class OutOfScopeError(ValueError):
    """Raised for inputs outside the supported domain (p in {2, 3}, etc.)."""


def check_prime(p):
    if not isinstance(p, int) or p < 2 or not _is_prime(p):
        raise ValueError(f"p = {p!r} is not a prime")
    if p in (2, 3):
        raise OutOfScopeError("residue characteristics 2 and 3 are not supported")
    return p


def _is_prime(n):
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    # deterministic Miller-Rabin, valid far beyond any sensible input prime
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def vp_int(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0 is undefined")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp_fraction(q, p: int) -> int:
    q = Fraction(q)
    if q == 0:
        raise ValueError("valuation of 0 is undefined")
    return vp_int(q.numerator, p) - vp_int(q.denominator, p)


@dataclass(frozen=True)
class ExtensionDescriptor:
    """Bookkeeping (e, f) for an extension of local fields.

    Only degree <= 2 extensions are ever constructed explicitly; larger tame
    extensions are tracked through this descriptor alone, in which case only
    the ramification index e is meaningful.
    """

    e: int
    f: int
    kind: str = "abstract-tame"

    def __post_init__(self):
        if self.e < 1 or self.f < 1:
            raise ValueError("e and f must be positive")

    def compose(self, other: "ExtensionDescriptor") -> "ExtensionDescriptor":
        # tower composition multiplies e and f componentwise
        return ExtensionDescriptor(self.e * other.e, self.f * other.f, "abstract-tame")


TRIVIAL_EXTENSION = ExtensionDescriptor(1, 1, "trivial")
UNRAMIFIED_QUADRATIC = ExtensionDescriptor(1, 2, "unramified-quadratic")
RAMIFIED_QUADRATIC = ExtensionDescriptor(2, 1, "ramified-quadratic")


class PadicNumber:
    """An element of Q_p known modulo p^(valuation + precision).

    The unit part is an integer coprime to p unless the element is a zero;
    exact zeros are flagged separately from approximate zeros, which only
    record a lower bound on the valuation.
    """

    __slots__ = ("prime", "valuation", "unit", "precision", "zero", "exact_zero")

    def __init__(self, prime, valuation, unit, precision, zero=False, exact_zero=False):
        self.prime = prime
        self.valuation = valuation
        self.unit = unit
        self.precision = precision
        self.zero = zero
        self.exact_zero = exact_zero

    @classmethod
    def from_rational(cls, value, prime, precision=DEFAULT_PRECISION):
        q = Fraction(value)
        if q == 0:
            return cls.exact_zero_of(prime, precision)
        v = vp_fraction(q, prime)
        num = q.numerator // prime ** max(vp_int(q.numerator, prime), 0)
        den = q.denominator // prime ** max(vp_int(q.denominator, prime), 0)
        mod = prime**precision
        unit = num * pow(den, -1, mod) % mod
        return cls(prime, v, unit, precision)

    @classmethod
    def exact_zero_of(cls, prime, precision=DEFAULT_PRECISION):
        return cls(prime, 0, 0, precision, zero=True, exact_zero=True)

    @classmethod
    def approx_zero(cls, prime, bound, precision=DEFAULT_PRECISION):
        # known to be divisible by p^bound, nothing more
        return cls(prime, bound, 0, precision, zero=True, exact_zero=False)

    def val(self) -> int:
        """Exact valuation; raises on zeros."""
        if self.exact_zero:
            raise ValueError("valuation of exact zero is undefined")
        if self.zero:
            raise PrecisionExhausted(
                f"valuation only bounded below by {self.valuation}"
            )
        return self.valuation

    def known_modulus_exponent(self):
        if self.zero:
            return self.valuation if not self.exact_zero else None
        return self.valuation + self.precision

    def residue(self) -> int:
        """Unit part modulo p (0 for zeros of positive valuation bound)."""
        if self.zero:
            return 0
        return self.unit % self.prime

    def lift_unit(self) -> int:
        return 0 if self.zero else self.unit

    def _coerce(self, other):
        if isinstance(other, PadicNumber):
            if other.prime != self.prime:
                raise ValueError("mixed primes")
            return other
        return PadicNumber.from_rational(other, self.prime, self.precision)

    def __add__(self, other):
        other = self._coerce(other)
        p = self.prime
        if self.exact_zero:
            return other
        if other.exact_zero:
            return self
        if self.zero and other.zero:
            return PadicNumber.approx_zero(p, min(self.valuation, other.valuation),
                                           min(self.precision, other.precision))
        if self.zero or other.zero:
            z, nz = (self, other) if self.zero else (other, self)
            known = min(z.valuation, nz.valuation + nz.precision)
            if nz.valuation >= known:
                return PadicNumber.approx_zero(p, known, nz.precision)
            n = known - nz.valuation
            return PadicNumber(p, nz.valuation, nz.unit % p**n, n)
        known = min(self.valuation + self.precision,
                    other.valuation + other.precision)
        v0 = min(self.valuation, other.valuation)
        mod = p ** (known - v0)
        total = (self.unit * p ** (self.valuation - v0)
                 + other.unit * p ** (other.valuation - v0)) % mod
        if total == 0:
            return PadicNumber.approx_zero(p, known, min(self.precision, other.precision))
        shift = vp_int(total, p)
        v = v0 + shift
        n = known - v
        if n < MIN_PRECISION:
            raise PrecisionExhausted(
                f"cancellation left {n} significant digits (floor {MIN_PRECISION})"
            )
        return PadicNumber(p, v, total // p**shift, n)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        if self.zero:
            return self
        mod = self.prime**self.precision
        return PadicNumber(self.prime, self.valuation, (-self.unit) % mod, self.precision)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        p = self.prime
        if self.exact_zero or other.exact_zero:
            return PadicNumber.exact_zero_of(p, min(self.precision, other.precision))
        if self.zero or other.zero:
            z, o = (self, other) if self.zero else (other, self)
            bound = z.valuation + (o.valuation if not o.zero else o.valuation)
            return PadicNumber.approx_zero(p, bound, min(self.precision, other.precision))
        n = min(self.precision, other.precision)
        mod = p**n
        return PadicNumber(p, self.valuation + other.valuation,
                           self.unit * other.unit % mod, n)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        other = self._coerce(other)
        p = self.prime
        if other.exact_zero:
            raise ZeroDivisionError("division by exact zero")
        if other.zero:
            raise PrecisionExhausted("division by an approximate zero")
        if self.exact_zero:
            return self
        if self.zero:
            return PadicNumber.approx_zero(p, self.valuation - other.valuation,
                                           min(self.precision, other.precision))
        n = min(self.precision, other.precision)
        mod = p**n
        inv = pow(other.unit % mod, -1, mod)
        return PadicNumber(p, self.valuation - other.valuation,
                           self.unit * inv % mod, n)

    def __rtruediv__(self, other):
        return self._coerce(other).__truediv__(self)

    def __eq__(self, other):
        try:
            d = self - self._coerce(other)
        except (ValueError, TypeError):
            return NotImplemented
        return d.zero

    def __hash__(self):
        raise TypeError("PadicNumber is not hashable (inexact equality)")

    def __repr__(self):
        if self.exact_zero:
            return f"O(p=∞; {self.prime}-adic 0)"
        if self.zero:
            return f"O({self.prime}^{self.valuation})"
        return (f"{self.unit % self.prime**min(4, self.precision)}"
                f"*{self.prime}^{self.valuation} + O({self.prime}^"
                f"{self.valuation + self.precision})")


def padic_arith(x: PadicNumber, y: PadicNumber, op: str) -> PadicNumber:
    """Dispatch helper mirroring the four field operations."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# Newton polygons


@dataclass(frozen=True)
class NewtonPolygon:
    """Lower convex hull of coefficient valuations.

    ``slopes`` lists (root valuation, length) pairs sorted by ascending root
    valuation; roots at zero (an exact x^k factor) are split off and counted
    in ``zero_root_multiplicity``.
    """

    vertices: tuple
    slopes: tuple
    zero_root_multiplicity: int = 0

    def denominators(self):
        return sorted({s.denominator for s, _ in self.slopes})


def newton_polygon_from_points(points, zero_mult=0) -> NewtonPolygon:
    """Hull of (exponent, valuation) lattice points, exponents strictly increasing."""
    if not points:
        raise ValueError("no nonzero coefficients")
    hull = []
    for pt in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop x2 if it lies on or above segment (x1,y1)-(pt)
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    slopes = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        slopes.append((Fraction(y1 - y2, x2 - x1), x2 - x1))
    slopes.sort(key=lambda t: t[0])
    return NewtonPolygon(tuple(hull), tuple(slopes), zero_mult)


def newton_polygon(coeffs, prime=None) -> NewtonPolygon:
    """Newton polygon of sum coeffs[i] * x^i, coefficients p-adic or rational.

    The leading coefficient must be nonzero.  An exactly zero constant term is
    handled by splitting off the corresponding power of x.  Rational
    coefficients need the prime, either explicitly or from a PadicNumber in
    the list.
    """
    if prime is None:
        prime = next((c.prime for c in coeffs if isinstance(c, PadicNumber)),
                     None)
    vals = []
    for c in coeffs:
        if isinstance(c, PadicNumber):
            if c.exact_zero:
                vals.append(None)
            else:
                vals.append(c.val())
        else:
            c = Fraction(c)
            if c == 0:
                vals.append(None)
            elif prime is None:
                raise ValueError("rational coefficients need an explicit prime")
            else:
                vals.append(vp_fraction(c, prime))
    return _polygon_from_value_list(vals)


def _polygon_from_value_list(vals):
    if all(v is None for v in vals):
        raise ValueError("all coefficients are zero")
    if vals[-1] is None:
        raise ValueError("leading coefficient must be nonzero")
    first = next(i for i, v in enumerate(vals) if v is not None)
    points = [(i, v) for i, v in enumerate(vals) if v is not None]
    return newton_polygon_from_points([pt for pt in points if pt[0] >= first],
                                      zero_mult=first)


# ---------------------------------------------------------------------------
# Hensel lifting and square classes


def _eval_poly(coeffs, x):
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * x + c
    return acc


def hensel_root(coeffs, approx) -> PadicNumber:
    """Newton-lift a simple root from an approximation.

    Requires the classical criterion v(g(approx)) > 2 v(g'(approx)); the lifted
    root is the unique one in the corresponding Hensel disk and satisfies
    g(root) = 0 to the full working precision.
    """
    sample = next((c for c in coeffs if isinstance(c, PadicNumber)), None)
    if sample is None:
        if not isinstance(approx, PadicNumber):
            raise ValueError("cannot infer the prime; pass PadicNumber inputs")
        sample = approx
    p, n = sample.prime, sample.precision
    cs = [c if isinstance(c, PadicNumber) else PadicNumber.from_rational(c, p, n)
          for c in coeffs]
    r = approx if isinstance(approx, PadicNumber) else \
        PadicNumber.from_rational(approx, p, n)
    deriv = [c * i for i, c in enumerate(cs)][1:]

    f0, f1 = _eval_poly(cs, r), _eval_poly(deriv, r)
    if f1.zero:
        raise PrecisionExhausted("derivative indistinguishable from zero")
    k = f1.val()
    if not f0.zero and f0.val() <= 2 * k:
        raise ValueError("Hensel criterion v(g(a)) > 2 v(g'(a)) not met")

    target = min(c.known_modulus_exponent() or n for c in cs)
    for _ in range(max(4, n.bit_length() + 4)):
        f0 = _eval_poly(cs, r)
        if f0.zero and f0.valuation >= target:
            return r
        if f0.exact_zero:
            return r
        f1 = _eval_poly(deriv, r)
        r = r - f0 / f1
    raise PrecisionExhausted("Hensel iteration did not converge at this precision")


def sqrt_mod_p(a: int, p: int) -> int:
    """Tonelli-Shanks square root modulo an odd prime; a must be a residue."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        raise ValueError(f"{a} is not a quadratic residue mod {p}")
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def is_square_unit(u: int, p: int) -> bool:
    return pow(u % p, (p - 1) // 2, p) == 1


def sqrt_class(x, prime=None):
    """Square class of a nonzero element of Q_p.

    Returns (kind, ExtensionDescriptor) with kind one of "square",
    "unramified-quadratic", "ramified-quadratic".
    """
    if isinstance(x, PadicNumber):
        p, v, u = x.prime, x.val(), x.residue()
        if x.zero:
            raise ValueError("square class of zero is undefined")
    else:
        q = Fraction(x)
        if q == 0:
            raise ValueError("square class of zero is undefined")
        if prime is None:
            raise ValueError("prime required for rational input")
        p = check_prime(prime)
        v = vp_fraction(q, p)
        unit = q / Fraction(p) ** v
        u = unit.numerator * pow(unit.denominator, -1, p) % p
    if v % 2 == 1:
        return "ramified-quadratic", RAMIFIED_QUADRATIC
    if is_square_unit(u, p):
        return "square", TRIVIAL_EXTENSION
    return "unramified-quadratic", UNRAMIFIED_QUADRATIC


def padic_sqrt(d, p, precision=DEFAULT_PRECISION) -> PadicNumber:
    """Square root in Q_p of a rational d that is a p-adic square.

    Deterministic choice: the branch whose first digit is the least residue
    produced by Tonelli-Shanks, reduced to min(r, p - r).
    """
    d = Fraction(d)
    kind, _ = sqrt_class(d, p)
    if kind != "square":
        raise ValueError("d is not a square in Q_p")
    v = vp_fraction(d, p)
    unit = d / Fraction(p) ** v
    mod = p**precision
    u = unit.numerator * pow(unit.denominator, -1, mod) % mod
    r0 = sqrt_mod_p(u % p, p)
    r0 = min(r0, p - r0)
    root = hensel_root(
        [PadicNumber(p, 0, (-u) % mod, precision),
         PadicNumber.from_rational(0, p, precision),
         PadicNumber.from_rational(1, p, precision)],
        PadicNumber(p, 0, r0, precision),
    )
    return PadicNumber(p, v // 2, root.lift_unit() % mod, precision) * 1


def rational_sqrt(q):
    """Exact square root of a Fraction if it is one, else None."""
    q = Fraction(q)
    if q < 0:
        return None
    rn = math.isqrt(q.numerator)
    rd = math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def run_with_precision(fn, start=DEFAULT_PRECISION, maximum=MAX_PRECISION):
    """Retry driver: call fn(precision), doubling precision on exhaustion."""
    n = start
    while True:
        try:
            return fn(n)
        except PrecisionExhausted:
            if n >= maximum:
                raise
            n = min(2 * n, maximum)
