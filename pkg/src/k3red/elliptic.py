"""Elliptic curves over local fields in short Weierstrass form y^2 = x^3 + ax + b.

Covers invariants, minimal models, the reduction report (type, potential
good reduction, semistability defect, quadratic-twist class), quadratic
twists, and the ramification of the 2-torsion field.  Only the short form is
supported; away from 2 and 3 every curve completes to it, and rejecting the
five-coefficient form keeps the classification free of Tate-loop cases.

The semistability defect 12 / gcd(12, v(Delta_min)) is the computable stand-in
for the order of the inertia action obstructing good reduction; for p >= 5 the
two notions agree for potentially good curves.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .kodaira import I0, KodairaType, LocalInvariants, classify_from_invariants
from .localfield import QpContext, QuadElement
from .ramification import splitting_ramification_cubic

F = Fraction


def _as_coeff(x):
    return x if isinstance(x, QuadElement) else F(x)


def _is_zero(x):
    return x.is_zero() if isinstance(x, QuadElement) else x == 0


@dataclass(frozen=True)
class WeierstrassCurve:
    """Smooth short Weierstrass data; coefficients rational or in a tracked
    quadratic extension."""

    a: object
    b: object

    def __post_init__(self):
        object.__setattr__(self, "a", _as_coeff(self.a))
        object.__setattr__(self, "b", _as_coeff(self.b))
        if _is_zero(self.discriminant):
            raise ValueError("discriminant vanishes; use SingularFiber")

    @property
    def c4(self):
        return -48 * self.a

    @property
    def c6(self):
        return -864 * self.b

    @property
    def discriminant(self):
        return -16 * (4 * self.a * self.a * self.a + 27 * self.b * self.b)

    @property
    def j(self):
        return self.c4 * self.c4 * self.c4 / self.discriminant

    def two_torsion_cubic(self):
        return [self.b, self.a, 0, 1]


@dataclass(frozen=True)
class SingularFiber:
    """Weierstrass data with vanishing discriminant.

    Only nodal (kind "I2") and cuspidal (kind "IV") degenerations occur as
    the distinguished fibers of the normalized pencils handled here; the kind
    records which.  The 2-torsion of the smooth locus sits over the distinct
    roots of the cubic, so ramification questions use its radical.
    """

    a: object
    b: object

    def __post_init__(self):
        object.__setattr__(self, "a", _as_coeff(self.a))
        object.__setattr__(self, "b", _as_coeff(self.b))
        disc = -16 * (4 * self.a * self.a * self.a + 27 * self.b * self.b)
        if not _is_zero(disc):
            raise ValueError("discriminant does not vanish; use WeierstrassCurve")

    @property
    def kind(self) -> str:
        # triple root forces a = b = 0 for a depressed cubic
        return "IV" if _is_zero(self.a) and _is_zero(self.b) else "I2"

    def two_torsion_cubic(self):
        return [self.b, self.a, 0, 1]


def make_fiber(a, b):
    """WeierstrassCurve or SingularFiber depending on the discriminant."""
    a, b = _as_coeff(a), _as_coeff(b)
    disc = 4 * a * a * a + 27 * b * b
    if _is_zero(disc):
        return SingularFiber(a, b)
    return WeierstrassCurve(a, b)


@dataclass(frozen=True)
class ReductionReport:
    kodaira: KodairaType
    minimal_scaling_exponent: int  # u = p^k
    invariants: LocalInvariants
    potentially_good: bool
    semistability_defect: int | None
    twist_class_needed: str | None
    j_valuation: object  # int or None for j = 0

    @property
    def good(self) -> bool:
        return self.kodaira == I0


def minimal_model(curve: WeierstrassCurve, p: int):
    """Scale (a, b) -> (u^-4 a, u^-6 b), u = p^k with k maximal integral.

    Returns (minimal curve, k).  The result satisfies v(c4) < 4 or v(c6) < 6;
    for p >= 5 that is exactly minimality of v(Delta).
    """
    ctx = QpContext(p)
    ks = []
    if not _is_zero(curve.a):
        ks.append(ctx.val(curve.a) // 4)
    if not _is_zero(curve.b):
        ks.append(ctx.val(curve.b) // 6)
    k = min(ks)
    u4 = F(p) ** (4 * k)
    u6 = F(p) ** (6 * k)
    return WeierstrassCurve(curve.a / u4, curve.b / u6), k


def reduction_data(a, b, ctx, scale=1):
    """Minimal valuation triple of y^2 = x^3 + ax + b over the context's base,
    optionally after base change along a tame extension with ramification
    index ``scale``."""
    a, b = ctx.convert(a), ctx.convert(b)
    disc = 4 * a * a * a + 27 * b * b
    if ctx.is_zero(disc):
        raise ValueError("singular Weierstrass data has no reduction type")
    va = None if ctx.is_zero(a) else ctx.val(a) * scale
    vb = None if ctx.is_zero(b) else ctx.val(b) * scale
    vdisc = ctx.val(disc) * scale
    ks = [v // 4 for v in [va] if v is not None] + \
         [v // 6 for v in [vb] if v is not None]
    k = min(ks)
    vc4 = None if va is None else va - 4 * k
    vc6 = None if vb is None else vb - 6 * k
    vd = vdisc - 12 * k
    return LocalInvariants(vc4, vc6, vd), k


def report_from_invariants(inv: LocalInvariants, k: int) -> ReductionReport:
    kod = classify_from_invariants(inv)
    vd = inv.vdelta
    # v(j) = 3 v(c4) - v(Delta); I_n and I*_n (n >= 1) have a j-pole
    potentially_good = inv.vc4 is None or 3 * inv.vc4 - vd >= 0
    if potentially_good:
        defect = 12 // gcd(12, vd)
        if defect == 1:
            twist = "none"
        elif defect == 2:
            twist = "ramified-quadratic"
        else:
            twist = f"higher({defect})"
    else:
        defect, twist = None, None
    if inv.vc4 is None:
        jval = None  # j = 0
    else:
        jval = 3 * inv.vc4 - vd
    return ReductionReport(kod, k, inv, potentially_good, defect, twist, jval)


def reduction_type(curve: WeierstrassCurve, p: int) -> ReductionReport:
    """Reduction report over Q_p; good reduction iff the type is I0."""
    ctx = QpContext(p)
    inv, k = reduction_data(curve.a, curve.b, ctx)
    return report_from_invariants(inv, k)


def quadratic_twist(curve: WeierstrassCurve, d) -> WeierstrassCurve:
    """Twist (a, b) -> (a d^2, b d^3), isomorphic over the sqrt(d) extension."""
    d = _as_coeff(d)
    if _is_zero(d):
        raise ValueError("twist parameter must be nonzero")
    return WeierstrassCurve(curve.a * d * d, curve.b * d * d * d)


def two_torsion_ramification(fiber, p=None, ctx=None) -> int:
    """Ramification index of the 2-torsion field, always in {1, 2, 3}.

    Accepts a smooth curve or a singular fiber of kind I2 / IV; for the
    singular kinds the splitting field of the radical of the cubic is used
    (the 2-torsion x-coordinates of the smooth locus are among its distinct
    roots).
    """
    if ctx is None:
        if p is None:
            raise ValueError("a prime or a context is required")
        ctx = QpContext(p)
    return splitting_ramification_cubic(fiber.two_torsion_cubic(), ctx)
