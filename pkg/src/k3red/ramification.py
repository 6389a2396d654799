"""Ramification index of splitting fields of monic polynomials of degree <= 3.

Over a tame base (residue characteristic >= 5, absolute ramification <= 2)
the splitting field of a separable cubic has ramification index in {1, 2, 3}:
the Galois group sits in S_3, tameness makes inertia cyclic, and cyclic
subgroups of S_3 have order at most 3.

The index is computed as the lcm of
  (i)  denominators of Newton polygon slopes met in a recursive
       slope / residual-root refinement (Ore-style, depth bounded by the
       discriminant valuation), and
  (ii) 2 if the discriminant has odd valuation (the sqrt-disc contribution
       from the quadratic resolvent).

Repeated roots are removed first: the splitting field of a polynomial with
multiple factors is taken to be that of its radical.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .localfield import QpContext, residue_roots
from .padic import PrecisionExhausted, newton_polygon_from_points

F = Fraction


def _trim(coeffs, ctx):
    coeffs = list(coeffs)
    while coeffs and ctx.is_zero(coeffs[-1]):
        coeffs.pop()
    return coeffs


def _poly_divmod(f, g, ctx):
    f = list(f)
    g = _trim(g, ctx)
    lead = g[-1]
    q = [ctx.scalar(0)] * max(0, len(f) - len(g) + 1)
    while len(f) >= len(g):
        if ctx.is_zero(f[-1]):
            f.pop()
            continue
        c = f[-1] / lead
        shift = len(f) - len(g)
        q[shift] = c
        for i, gc in enumerate(g):
            f[shift + i] = f[shift + i] - c * gc
        f.pop()
        f = _trim(f, ctx)
        if not f:
            break
    return q, f


def _poly_gcd(f, g, ctx):
    f, g = _trim(f, ctx), _trim(g, ctx)
    while g:
        f, g = g, _poly_divmod(f, g, ctx)[1]
    if f:
        f = [c / f[-1] for c in f]
    return f


def _deriv(f):
    return [i * c for i, c in enumerate(f)][1:]


def radical(coeffs, ctx):
    """Square-free part (exact field computation, valid in every kind)."""
    g = _trim(coeffs, ctx)
    if len(g) <= 2:
        return g
    common = _poly_gcd(g, _deriv(g), ctx)
    if len(common) <= 1:
        return g
    return _poly_divmod(g, common, ctx)[0]


def discriminant(coeffs, ctx):
    """Discriminant of a monic polynomial of degree 2 or 3."""
    g = _trim(coeffs, ctx)
    deg = len(g) - 1
    if deg == 2:
        b, c = g[1], g[0]
        return b * b - 4 * c
    if deg == 3:
        c2, c1, c0 = g[2], g[1], g[0]
        return (18 * c2 * c1 * c0 - 4 * c2 * c2 * c2 * c0
                + c2 * c2 * c1 * c1 - 4 * c1 * c1 * c1 - 27 * c0 * c0)
    raise ValueError("discriminant implemented for degrees 2 and 3 only")


def _segments(coeffs, ctx):
    """Newton polygon segments as (root valuation, i0, i1) triples."""
    vals = []
    for c in coeffs:
        vals.append(None if ctx.is_zero(c) else ctx.val(c))
    first = next(i for i, v in enumerate(vals) if v is not None)
    points = [(i, v) for i, v in enumerate(vals) if v is not None and i >= first]
    poly = newton_polygon_from_points(points, zero_mult=first)
    segs = []
    for (x1, y1), (x2, y2) in zip(poly.vertices, poly.vertices[1:]):
        segs.append((F(y1 - y2, x2 - x1), x1, x2))
    return segs


def _shift(coeffs, c0):
    """Taylor shift f(x + c0) by repeated synthetic division."""
    out = list(coeffs)
    res = []
    while out:
        carry = None
        new = []
        for coef in reversed(out):
            carry = coef if carry is None else carry * c0 + coef
            new.append(carry)
        new.reverse()
        res.append(new[0])
        out = new[1:]
    return res


def _slope_denominators(coeffs, ctx, positive_only, budget, denoms):
    g = _trim(coeffs, ctx)
    if len(g) <= 2:
        return  # constant or linear: roots lie in the base field
    for slope, i0, i1 in _segments(g, ctx):
        if positive_only and slope <= 0:
            continue
        if slope.denominator > 1:
            denoms.add(slope.denominator)
            continue
        m = int(slope)
        length = i1 - i0
        if length < 2:
            continue
        pi = ctx.uniformizer()
        v0 = ctx.val(g[i0])
        resid = []
        for i in range(i0, i1 + 1):
            line = v0 - m * (i - i0)
            c = g[i]
            if ctx.is_zero(c) or ctx.val(c) > line:
                resid.append(ctx.residue_field.zero)
            else:
                resid.append(ctx.residue(c / pi**line))
        for root, mult in residue_roots(resid, ctx.residue_field):
            if mult < 2:
                continue
            if budget[0] <= 0:
                raise PrecisionExhausted(
                    "slope refinement exceeded its depth budget"
                )
            budget[0] -= 1
            deg = len(g) - 1
            scaled = [g[i] * pi ** (m * (i - deg)) for i in range(len(g))]
            shifted = _shift(scaled, ctx.lift(root))
            _slope_denominators(shifted, ctx, True, budget, denoms)


def splitting_ramification_cubic(coeffs, ctx=None, p=None) -> int:
    """Ramification index over the base of the splitting field of a monic
    polynomial of degree <= 3.

    ``coeffs`` are ascending; entries live in the context's field (rationals
    for the Q_p context).  Repeated roots are allowed and are removed before
    the computation.  The result is constrained to {1, 2, 3}.
    """
    if ctx is None:
        if p is None:
            raise ValueError("either a context or a prime is required")
        ctx = QpContext(p)
    g = _trim([ctx.convert(c) for c in coeffs], ctx)
    if not g:
        raise ValueError("zero polynomial")
    if len(g) - 1 > 3:
        raise ValueError("degree exceeds 3")
    if not ctx.is_zero(g[-1] - ctx.scalar(1)):
        raise ValueError("polynomial must be monic")
    g = radical(g, ctx)
    if len(g) <= 2:
        return 1

    contributions = {1}
    disc = discriminant(g, ctx)
    v_disc = ctx.val(disc)
    if v_disc % 2 == 1:
        contributions.add(2)

    denoms = set()
    budget = [3 * (abs(v_disc) + 4)]
    _slope_denominators(g, ctx, False, budget, denoms)
    contributions |= denoms

    e = lcm(*contributions)
    if e not in (1, 2, 3):
        raise RuntimeError(
            f"computed ramification index {e} outside the tame range; "
            "cyclic inertia in S_3 forbids this"
        )
    return e
