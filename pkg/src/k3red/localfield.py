"""Exact arithmetic in Q_p and in one tracked quadratic extension.

A quadratic layer Q(beta), beta^2 = d, is stored as exact coordinate pairs
x + y*beta with x, y rational; d is never a rational square here, so the
pair arithmetic is ordinary arithmetic in a quadratic number field and is
exact in every case.  The p-adic kind of the layer decides how valuations
and residues are computed:

  split       beta exists in Q_p; valuations need its digits (Hensel sqrt),
              the residue field is F_p,
  unramified  v(x + y*beta) = min(v(x), v(y) + m) with d = p^(2m) u, residue
              field F_p^2,
  ramified    valuations are normalized so the uniformizer pi = beta / p^m
              has v(pi) = 1 and v(p) = 2, residue field F_p.

Nonzero tests are exact in all kinds: with d irrational, x + y*beta = 0 in
Q_p forces x = y = 0.

The *Context classes present a uniform coefficient-field interface used by
the ramification machinery: val, residue, lift, uniformizer, residue_field.
"""

from __future__ import annotations

from fractions import Fraction

from .padic import (
    DEFAULT_PRECISION,
    PadicNumber,
    PrecisionExhausted,
    check_prime,
    padic_sqrt,
    rational_sqrt,
    sqrt_class,
    vp_fraction,
)

F = Fraction


# ---------------------------------------------------------------------------
# residue fields


class PrimeField:
    """F_p with integer representatives in [0, p)."""

    def __init__(self, p):
        self.p = p
        self.size = p
        self.zero = 0
        self.one = 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        return pow(a, -1, self.p)

    def is_zero(self, a):
        return a % self.p == 0

    def convert_int(self, n):
        return n % self.p

    def shift_element(self, k):
        return k % self.p


class QuadResidueField:
    """F_p(s) with s^2 = n, n a nonresidue mod p; elements are (a, b) pairs."""

    def __init__(self, p, n):
        self.p = p
        self.n = n % p
        self.size = p * p
        self.zero = (0, 0)
        self.one = (1, 0)

    def add(self, a, b):
        return ((a[0] + b[0]) % self.p, (a[1] + b[1]) % self.p)

    def sub(self, a, b):
        return ((a[0] - b[0]) % self.p, (a[1] - b[1]) % self.p)

    def neg(self, a):
        return ((-a[0]) % self.p, (-a[1]) % self.p)

    def mul(self, a, b):
        return (
            (a[0] * b[0] + self.n * a[1] * b[1]) % self.p,
            (a[0] * b[1] + a[1] * b[0]) % self.p,
        )

    def inv(self, a):
        norm = (a[0] * a[0] - self.n * a[1] * a[1]) % self.p
        ninv = pow(norm, -1, self.p)
        return (a[0] * ninv % self.p, (-a[1]) * ninv % self.p)

    def is_zero(self, a):
        return a[0] % self.p == 0 and a[1] % self.p == 0

    def convert_int(self, n):
        return (n % self.p, 0)

    def shift_element(self, k):
        # must range outside the prime subfield, else Frobenius-conjugate
        # roots have equal character and never separate; this sweep
        # eventually enumerates the whole field
        return ((k // self.p) % self.p, k % self.p)


# polynomial helpers over a residue field (coefficient lists, ascending)


def _ff_trim(f, K):
    while f and K.is_zero(f[-1]):
        f.pop()
    return f


def _ff_monic(f, K):
    inv = K.inv(f[-1])
    return [K.mul(c, inv) for c in f]


def _ff_divmod(f, g, K):
    g = _ff_monic(g, K)
    f = list(f)
    q = [K.zero] * max(0, len(f) - len(g) + 1)
    while len(f) >= len(g) and f:
        if K.is_zero(f[-1]):
            f.pop()
            continue
        shift = len(f) - len(g)
        c = f[-1]
        q[shift] = c
        for i, gc in enumerate(g):
            f[shift + i] = K.sub(f[shift + i], K.mul(c, gc))
        _ff_trim(f, K)
    return _ff_trim(q, K), f


def _ff_gcd(f, g, K):
    f, g = [list(x) for x in (f, g)]
    _ff_trim(f, K)
    _ff_trim(g, K)
    while g:
        f, g = g, _ff_divmod(f, g, K)[1]
    return _ff_monic(f, K) if f else f


def _ff_mulmod(f, g, h, K):
    out = [K.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if K.is_zero(a):
            continue
        for j, b in enumerate(g):
            out[i + j] = K.add(out[i + j], K.mul(a, b))
    return _ff_divmod(out, h, K)[1]


def _ff_powmod(f, e, h, K):
    result = [K.one]
    base = _ff_divmod(list(f), h, K)[1]
    while e:
        if e & 1:
            result = _ff_mulmod(result, base, h, K)
        base = _ff_mulmod(base, base, h, K)
        e >>= 1
    return result


def _ff_deriv(f, K):
    out = []
    for i, c in enumerate(f[1:], start=1):
        acc = K.zero
        for _ in range(i):
            acc = K.add(acc, c)
        out.append(acc)
    return _ff_trim(out, K)


def residue_roots(f, K):
    """Roots of f over the residue field K with multiplicities.

    Used only for degree <= 3 residual polynomials; root extraction from the
    split part uses a deterministic shift sweep.
    """
    f = _ff_trim(list(f), K)
    if len(f) <= 1:
        raise ValueError("constant polynomial")
    f = _ff_monic(f, K)
    q = K.size
    x_q = _ff_powmod([K.zero, K.one], q, f, K)
    split = _ff_gcd(_ff_trim([K.sub(a, b) for a, b in
                              _zip_pad(x_q, [K.zero, K.one], K)], K), f, K)
    roots = []
    _extract_linear(split, K, roots)
    out = []
    for r in roots:
        mult, g = 0, f
        while True:
            quo, rem = _ff_divmod(g, [K.neg(r), K.one], K)
            if rem:
                break
            mult, g = mult + 1, quo
        out.append((r, mult))
    return out


def _zip_pad(a, b, K):
    n = max(len(a), len(b))
    a = list(a) + [K.zero] * (n - len(a))
    b = list(b) + [K.zero] * (n - len(b))
    return zip(a, b)


def _extract_linear(g, K, out):
    g = _ff_trim(list(g), K)
    if len(g) <= 1:
        return
    if len(g) == 2:
        out.append(K.mul(K.neg(g[0]), K.inv(g[1])))
        return
    # g splits into distinct linear factors; split with (x + c)^((q-1)/2) - 1
    e = (K.size - 1) // 2
    c = 0
    while True:
        c += 1
        shift = K.shift_element(c)
        probe = _ff_powmod([shift, K.one], e, g, K)
        probe = _ff_trim([K.sub(a, b) for a, b in _zip_pad(probe, [K.one], K)], K)
        if not probe:
            continue
        h = _ff_gcd(probe, g, K)
        if 0 < len(h) - 1 < len(g) - 1:
            _extract_linear(h, K, out)
            _extract_linear(_ff_divmod(g, h, K)[0], K, out)
            return
        if c > 4 * K.size + 8:
            raise RuntimeError("root splitting failed to terminate")


# ---------------------------------------------------------------------------
# quadratic layer


class QuadraticField:
    """Q(beta) with beta^2 = d, d in Q* not a rational square.

    With a prime the field is completed at p and carries valuations; with
    p = None it is a plain quadratic number field (exact arithmetic only),
    used for coefficient towers that never meet a p-adic place.
    """

    def __init__(self, p, d, precision=DEFAULT_PRECISION):
        self.d = F(d)
        if self.d == 0 or rational_sqrt(self.d) is not None:
            raise ValueError("d must be a nonzero rational nonsquare")
        self.precision = precision
        self._beta_digits = None
        if p is None:
            self.p = None
            self.kind = "algebraic"
            self.descriptor = None
            self.m = 0
            self.u = self.d
            return
        self.p = check_prime(p)
        self.kind, self.descriptor = sqrt_class(self.d, p)
        if self.kind == "square":
            self.kind = "split"
        v = vp_fraction(self.d, p)
        self.m = v // 2  # beta = p^m * sqrt(unit part), unit part u below
        self.u = self.d / F(p) ** (2 * self.m)

    # e of the completion over Q_p (1 unless ramified)
    @property
    def e(self):
        return 2 if self.kind == "ramified-quadratic" else 1

    def beta_digits(self) -> PadicNumber:
        if self.kind != "split":
            raise ValueError("beta has digits in Q_p only in the split kind")
        if self._beta_digits is None:
            self._beta_digits = padic_sqrt(self.d, self.p, self.precision)
        return self._beta_digits

    def element(self, x, y=0):
        return QuadElement(self, F(x), F(y))

    def zero(self):
        return self.element(0)

    def one(self):
        return self.element(1)

    def __repr__(self):
        if self.p is None:
            return f"Q[sqrt({self.d})]"
        return f"Q({self.p})[sqrt({self.d})] ({self.kind})"


class QuadElement:
    """x + y*beta with exact rational coordinates."""

    __slots__ = ("field", "x", "y")

    def __init__(self, field, x, y=0):
        self.field = field
        self.x = F(x)
        self.y = F(y)

    def _coerce(self, other):
        if isinstance(other, QuadElement):
            if other.field is not self.field and (
                other.field.d != self.field.d or other.field.p != self.field.p
            ):
                raise ValueError("mixed quadratic fields")
            return other
        return QuadElement(self.field, F(other))

    def __add__(self, other):
        o = self._coerce(other)
        return QuadElement(self.field, self.x + o.x, self.y + o.y)

    __radd__ = __add__

    def __neg__(self):
        return QuadElement(self.field, -self.x, -self.y)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        d = self.field.d
        return QuadElement(
            self.field,
            self.x * o.x + d * self.y * o.y,
            self.x * o.y + self.y * o.x,
        )

    __rmul__ = __mul__

    def conjugate(self):
        return QuadElement(self.field, self.x, -self.y)

    def norm(self) -> Fraction:
        return self.x * self.x - self.field.d * self.y * self.y

    def trace(self) -> Fraction:
        return 2 * self.x

    def __truediv__(self, other):
        o = self._coerce(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero quadratic element")
        conj = o.conjugate()
        prod = self * conj
        return QuadElement(self.field, prod.x / n, prod.y / n)

    def __rtruediv__(self, other):
        return self._coerce(other).__truediv__(self)

    def __pow__(self, n):
        if n < 0:
            return self.field.one() / self**(-n)
        out, base = self.field.one(), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, QuadElement):
            return self.x == other.x and self.y == other.y
        try:
            q = F(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.y == 0 and self.x == q

    def __hash__(self):
        return hash((self.x, self.y, self.field.d))

    def is_zero(self):
        return self.x == 0 and self.y == 0

    def is_rational(self):
        return self.y == 0

    def __repr__(self):
        if self.y == 0:
            return f"{self.x}"
        return f"{self.x} + {self.y}*sqrt({self.field.d})"


# ---------------------------------------------------------------------------
# coefficient-field contexts


class QpContext:
    """Exact rationals viewed inside Q_p; valuation normalized v(p) = 1."""

    e = 1

    def __init__(self, p, precision=DEFAULT_PRECISION):
        self.p = check_prime(p)
        self.precision = precision
        self.residue_field = PrimeField(p)

    def convert(self, c):
        return F(c)

    def is_zero(self, c):
        return c == 0

    def val(self, c):
        return vp_fraction(c, self.p)

    def uniformizer(self):
        return F(self.p)

    def residue(self, c):
        # c must have val >= 0
        c = F(c)
        return c.numerator * pow(c.denominator, -1, self.p) % self.p

    def lift(self, r):
        return F(r)

    def scalar(self, q):
        return F(q)


class QuadContext:
    """Coefficients in Q(beta); valuation integer-normalized for the kind."""

    def __init__(self, field: QuadraticField):
        if field.p is None:
            raise ValueError("a p-adic context needs a completed field")
        self.field = field
        self.p = field.p
        self.precision = field.precision
        self.e = field.e
        if field.kind == "unramified-quadratic":
            ubar = QpContext(field.p, field.precision).residue(field.u)
            self.residue_field = QuadResidueField(field.p, ubar)
        else:
            self.residue_field = PrimeField(field.p)

    def convert(self, c):
        if isinstance(c, QuadElement):
            return c
        return self.field.element(F(c))

    def is_zero(self, c):
        return c.is_zero()

    def val(self, c):
        """Exact valuation; v(pi) = 1 in the ramified kind (so v(p) = 2)."""
        if c.is_zero():
            raise ValueError("valuation of zero")
        f = self.field
        kind = f.kind
        vx = None if c.x == 0 else vp_fraction(c.x, f.p)
        vy = None if c.y == 0 else vp_fraction(c.y, f.p)
        if kind == "unramified-quadratic":
            cands = [v for v in (vx, None if vy is None else vy + f.m) if v is not None]
            return min(cands)
        if kind == "ramified-quadratic":
            cands = []
            if vx is not None:
                cands.append(2 * vx)
            if vy is not None:
                cands.append(2 * (vy + f.m) + 1)
            return min(cands)
        # split: need digits; exactness holds whenever the digit sum is nonzero
        beta = f.beta_digits()
        z = PadicNumber.from_rational(c.x, f.p, f.precision) + \
            PadicNumber.from_rational(c.y, f.p, f.precision) * beta
        if z.zero:
            raise PrecisionExhausted(
                "split-kind valuation undecided at this precision"
            )
        return z.val()

    def uniformizer(self):
        f = self.field
        if f.kind == "ramified-quadratic":
            # pi = beta / p^m, pi^2 = p * unit
            return QuadElement(f, 0, F(1, f.p**f.m))
        return f.element(f.p)

    def residue(self, c):
        f = self.field
        if f.kind == "unramified-quadratic":
            # residue of x + (y p^m) * s with s the image of beta / p^m
            qp = QpContext(f.p, f.precision)
            a = 0 if c.x == 0 or vp_fraction(c.x, f.p) > 0 else qp.residue(c.x)
            yy = c.y * F(f.p) ** f.m
            b = 0 if yy == 0 or vp_fraction(yy, f.p) > 0 else qp.residue(yy)
            return (a, b)
        if f.kind == "ramified-quadratic":
            # v >= 0 means the beta part has valuation >= 1; residue is x mod p
            if c.x == 0 or vp_fraction(c.x, f.p) > 0:
                return 0
            return QpContext(f.p, f.precision).residue(c.x)
        beta = f.beta_digits()
        z = PadicNumber.from_rational(c.x, f.p, f.precision) + \
            PadicNumber.from_rational(c.y, f.p, f.precision) * beta
        if z.zero:
            return 0
        if z.val() > 0:
            return 0
        return z.residue()

    def lift(self, r):
        f = self.field
        if f.kind == "unramified-quadratic":
            a, b = r
            return QuadElement(f, F(a), F(b, f.p**f.m))
        return f.element(F(r))

    def scalar(self, q):
        return self.field.element(F(q))


def quad_sqrt(elem: QuadElement):
    """Square root of x + y*sqrt(m) inside Q(sqrt(m)), or None.

    Solves (s + t*sqrt(m))^2 = x + y*sqrt(m) through the norm equation."""
    m, u, v = elem.field.d, elem.x, elem.y
    if v == 0:
        r = rational_sqrt(u)
        if r is not None:
            return elem.field.element(r)
        r = rational_sqrt(u / m)
        if r is not None:
            return elem.field.element(0, r)
        return None
    n = rational_sqrt(u * u - m * v * v)
    if n is None:
        return None
    for s in (n, -n):
        half = (u + s) / 2
        x = rational_sqrt(half)
        if x is not None and x != 0:
            return elem.field.element(x, v / (2 * x))
    return None


def context_for(p, d=None, precision=DEFAULT_PRECISION):
    """Context over Q_p, or over Q_p(sqrt(d)) when d is not a rational square."""
    if d is None:
        return QpContext(p, precision)
    d = F(d)
    r = rational_sqrt(d)
    if r is not None:
        return QpContext(p, precision)
    return QuadContext(QuadraticField(p, d, precision))
