"""Elliptic surfaces over the t-line: y^2 = x^3 + A(t) x + B(t).

Fibers are classified from exact t-adic orders at each place (including
t = infinity through the degree-(8, 12) homogenization A*(s) = s^8 A(1/s),
B*(s) = s^12 B(1/s)).  For p >= 5-style bases the Euler number of a fiber
equals the minimal discriminant order, which turns the total Euler number
into pure degree bookkeeping:

    euler_sum = 24 - 12 * (sum of local minimalization exponents).

A Shioda-Inose pencil of product type carries fibers of type II* at two
places; after moving them to {0, infinity} the defining data collapses to
four coefficients (a, b_{-1}, b_0, b_1) of the Laurent normal form

    y^2 = x^3 + a x + (b_{-1} t^{-1} + b_0 + b_1 t),  b_{-1} b_1 != 0,

equivalently the homogeneous form y^2 = x^3 + a t^4 x + (b_{-1} t^5 +
b_0 t^6 + b_1 t^7) after x -> x t^2, y -> y t^3 and division by t^6.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import sympy

from .kodaira import IISTAR, KodairaType, LocalInvariants, classify_from_invariants
from .localfield import QuadElement, QuadraticField
from .padic import rational_sqrt
from . import polys as P

F = Fraction


class _PlaceAtInfinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "infinity"


INFINITY = _PlaceAtInfinity()


def _coeffs(seq):
    return tuple(c if isinstance(c, QuadElement) else F(c) for c in seq)


@dataclass(frozen=True)
class SurfacePencil:
    """Weierstrass pencil with polynomial coefficients, optionally flagged K3."""

    A: tuple
    B: tuple
    k3: bool = True

    def __post_init__(self):
        object.__setattr__(self, "A", _coeffs(P.trim(list(self.A))))
        object.__setattr__(self, "B", _coeffs(P.trim(list(self.B))))
        if P.is_zero_poly(self.discriminant_poly()):
            raise ValueError("discriminant vanishes identically")
        if self.k3:
            bound = max(3 * max(P.degree(self.A), 0), 2 * max(P.degree(self.B), 0))
            if bound > 24:
                raise ValueError("degrees violate the K3 bound "
                                 "max(3 deg A, 2 deg B) <= 24")
        if P.degree(self.A) > 8 or P.degree(self.B) > 12:
            raise ValueError("supported pencils have deg A <= 8, deg B <= 12")

    @classmethod
    def from_laurent(cls, a_terms: dict, b_terms: dict, k3=True):
        """Pencil from Laurent data {exponent: coefficient}; the variable
        change x -> x t^(2k), y -> y t^(3k) clears denominators."""
        min_a = min([e for e, c in a_terms.items() if F(c) != 0], default=0)
        min_b = min([e for e, c in b_terms.items() if F(c) != 0], default=0)
        k = 0
        while 4 * k + min_a < 0 or 6 * k + min_b < 0:
            k += 1
        A = [F(0)] * (max(a_terms, default=0) + 4 * k + 1)
        for e, c in a_terms.items():
            A[e + 4 * k] = F(c)
        B = [F(0)] * (max(b_terms, default=0) + 6 * k + 1)
        for e, c in b_terms.items():
            B[e + 6 * k] = F(c)
        return cls(tuple(A), tuple(B), k3)

    def discriminant_poly(self):
        cached = getattr(self, "_disc", None)
        if cached is None:
            a3 = P.pmul(P.pmul(list(self.A), list(self.A)), list(self.A))
            b2 = P.pmul(list(self.B), list(self.B))
            cached = P.pscale(P.padd(P.pscale(a3, F(4)), P.pscale(b2, F(27))),
                              F(-16))
            object.__setattr__(self, "_disc", cached)
        return list(cached)


@dataclass(frozen=True)
class SIPencil:
    """Laurent normal form of a product-type Shioda-Inose pencil."""

    a: object
    b_m1: object
    b_0: object
    b_1: object

    def __post_init__(self):
        for name in ("a", "b_m1", "b_0", "b_1"):
            v = getattr(self, name)
            object.__setattr__(self, name,
                               v if isinstance(v, QuadElement) else F(v))
        if self.b_m1 == 0 or self.b_1 == 0:
            raise ValueError("b_{-1} and b_1 must be nonzero")

    @property
    def b_prime(self):
        return self.b_m1 / self.b_1

    def homogenize(self) -> SurfacePencil:
        z = self.a - self.a  # zero of the right coefficient type
        return SurfacePencil(
            (z, z, z, z, self.a),
            (z, z, z, z, z, self.b_m1, self.b_0, self.b_1),
        )

    def coefficient_field(self):
        for v in (self.a, self.b_m1, self.b_0, self.b_1):
            if isinstance(v, QuadElement):
                return v.field
        return None


# ---------------------------------------------------------------------------
# local orders and fiber classification


def local_orders(pencil: SurfacePencil, place):
    """Exact (ord A, ord B, ord Delta) at a finite place or at infinity.

    None entries mean the polynomial is identically zero there.
    """
    A, B = list(pencil.A), list(pencil.B)
    D = pencil.discriminant_poly()
    if place is INFINITY:
        degA, degB, degD = P.degree(A), P.degree(B), P.degree(D)
        va = None if degA < 0 else 8 - degA
        vb = None if degB < 0 else 12 - degB
        return va, vb, 24 - degD
    if place == 0:
        return P.ord_at_zero(A), P.ord_at_zero(B), P.ord_at_zero(D)
    va = P.ord_at_zero(P.pshift(A, place)) if not P.is_zero_poly(A) else None
    vb = P.ord_at_zero(P.pshift(B, place)) if not P.is_zero_poly(B) else None
    vd = P.ord_at_zero(P.pshift(D, place))
    return va, vb, vd


def classify_orders(va, vb, vd) -> KodairaType:
    """Kodaira type from raw local orders, minimalizing at the place first."""
    ks = [v // 4 for v in (va,) if v is not None] + \
         [v // 6 for v in (vb,) if v is not None]
    k = min(ks) if ks else 0
    if k:
        va = None if va is None else va - 4 * k
        vb = None if vb is None else vb - 6 * k
        vd = vd - 12 * k
    return classify_from_invariants(LocalInvariants(va, vb, vd))


def fiber_at(pencil, place) -> KodairaType:
    """Fiber type of the pencil at a place (roots of Delta give the singular
    fibers; any other finite place returns I0)."""
    if isinstance(pencil, SIPencil):
        pencil = pencil.homogenize()
    return classify_orders(*local_orders(pencil, place))


def fiber_at_factor(pencil: SurfacePencil, g) -> KodairaType:
    """Fiber type at every root of an irreducible factor g of Delta.

    Conjugate places share their type, and the orders at a root equal the
    factor multiplicities, so no root-field arithmetic is needed.
    """
    g = P.trim(list(g))
    A, B = list(pencil.A), list(pencil.B)
    D = pencil.discriminant_poly()
    va = None if P.is_zero_poly(A) else P.factor_multiplicity(A, g)
    vb = None if P.is_zero_poly(B) else P.factor_multiplicity(B, g)
    vd = P.factor_multiplicity(D, g)
    return classify_orders(va, vb, vd)


def _rational_poly_to_sympy(f, t):
    return sympy.Poly([sympy.Rational(c) for c in reversed(P.trim(list(f)))], t)


def factor_rational_poly(f):
    """Irreducible monic factors over Q with multiplicities, as coefficient
    lists (the content is dropped)."""
    t = sympy.Symbol("t")
    poly = _rational_poly_to_sympy(f, t)
    _, factors = poly.factor_list()
    out = []
    for fac, mult in factors:
        coeffs = [F(str(c)) for c in reversed(fac.all_coeffs())]
        lead = coeffs[-1]
        out.append(([c / lead for c in coeffs], int(mult)))
    return out


def _high_multiplicity_part(f, order):
    """gcd chain isolating factors of multiplicity > order in f."""
    g = P.trim(list(f))
    for _ in range(order):
        if P.degree(g) < 1:
            break
        g = P.pgcd(g, P.pderiv(g))
    return g


def euler_sum(pencil: SurfacePencil) -> int:
    """Total Euler number over all places, including infinity.

    Away from 2 and 3 each fiber contributes its minimal discriminant order,
    so the sum is 24 minus 12 per unit of non-minimality.  A finite place is
    non-minimal only along an irreducible g with g^4 | A and g^6 | B, which
    forces g to divide the derivative-gcd chains below; factorization only
    runs on that (usually constant) candidate.
    """
    A, B = list(pencil.A), list(pencil.B)
    corrections = 0
    if P.is_zero_poly(A):
        candidate = _high_multiplicity_part(B, 5)
    elif P.is_zero_poly(B):
        candidate = _high_multiplicity_part(A, 3)
    else:
        candidate = P.pgcd(_high_multiplicity_part(A, 3),
                           _high_multiplicity_part(B, 5))
    if P.degree(candidate) >= 1:
        if any(isinstance(c, QuadElement) for c in candidate):
            raise NotImplementedError(
                "euler_sum over extension coefficients with a non-minimal "
                "finite place is not supported"
            )
        for g, _ in factor_rational_poly(candidate):
            ka = None if P.is_zero_poly(A) else P.factor_multiplicity(A, g) // 4
            kb = None if P.is_zero_poly(B) else P.factor_multiplicity(B, g) // 6
            k = min(v for v in (ka, kb) if v is not None)
            corrections += k * P.degree(g)
    va, vb, _ = local_orders(pencil, INFINITY)
    k_inf = min(v for v in (
        va // 4 if va is not None else None,
        vb // 6 if vb is not None else None,
    ) if v is not None)
    corrections += k_inf
    return 24 - 12 * corrections


# ---------------------------------------------------------------------------
# recognition and normalization


def _mobius_transform(pencil: SurfacePencil, alpha, beta, gamma, delta):
    """Pencil pulled back along t -> (alpha t + beta) / (gamma t + delta)."""
    A = P.mobius_numerator(list(pencil.A), alpha, beta, gamma, delta, 8)
    B = P.mobius_numerator(list(pencil.B), alpha, beta, gamma, delta, 12)
    return SurfacePencil(tuple(A), tuple(B), pencil.k3)


def _extract_si(pencil: SurfacePencil) -> SIPencil:
    A, B = list(pencil.A), list(pencil.B)
    oa = P.ord_at_zero(A)
    ob = P.ord_at_zero(B)
    ks = [v for v in ((oa // 4) if oa is not None else None,
                      (ob // 6) if ob is not None else None) if v is not None]
    k = min(ks)
    if k:
        A = A[4 * k:] if oa is not None else A
        B = B[6 * k:]
    if not (P.degree(B) == 7 and P.ord_at_zero(B) == 5):
        raise ValueError("normalized pencil does not have the t^5..t^7 shape "
                         "required by II* fibers at 0 and infinity")
    if not P.is_zero_poly(A):
        if P.degree(A) > 4 or P.ord_at_zero(A) < 4:
            raise ValueError("normalized x-coefficient is not a * t^4")
    a = A[4] if len(A) > 4 else F(0)
    return SIPencil(a, B[5], B[6], B[7])


def recognize_and_normalize_si(pencil) -> SIPencil:
    """Move the two II* fibers of a K3 pencil to {0, infinity} and read off
    the Laurent normal form.

    Admissible moves are fractional-linear substitutions with entries in the
    coefficient field or in one quadratic extension (conjugate II* places).
    """
    if isinstance(pencil, SIPencil):
        return pencil
    if any(isinstance(c, QuadElement) for c in pencil.A + pencil.B):
        raise NotImplementedError("recognition expects rational coefficients")

    places = []  # entries: ("finite", root as Fraction/QuadElement) or ("inf",)
    if fiber_at_is_iistar_at_infinity(pencil):
        places.append(("inf", None))
    D = pencil.discriminant_poly()
    for g, _ in factor_rational_poly(D):
        if P.degree(g) > 2:
            if fiber_at_factor(pencil, g) == IISTAR:
                raise ValueError("II* places generate a field of degree > 2; "
                                 "not rationalizable here")
            continue
        if fiber_at_factor(pencil, g) != IISTAR:
            continue
        if P.degree(g) == 1:
            places.append(("finite", -g[0]))
        else:
            disc = g[1] * g[1] - 4 * g[0]
            r = rational_sqrt(disc)
            if r is not None:
                places.append(("finite", (-g[1] + r) / 2))
                places.append(("finite", (-g[1] - r) / 2))
            else:
                field = QuadraticField(None, disc)
                beta = field.element(0, 1)
                places.append(("finite", (beta - g[1]) / 2))
                places.append(("finite", (-beta - g[1]) / 2))

    if len(places) != 2:
        raise ValueError(f"expected exactly two II* fibers, found {len(places)}")

    if places[0][0] == "inf" or places[1][0] == "inf":
        r = next(p[1] for p in places if p[0] == "finite")
        if r == 0:
            moved = pencil
        else:
            moved = _mobius_transform(pencil, 1, r, 0, 1)  # t -> t + r
    else:
        r0, r1 = places[0][1], places[1][1]
        # t' = (t - r0)/(t - r1) sends r0 -> 0, r1 -> infinity;
        # pull back along its inverse t = (r1 t' - r0)/(t' - 1)
        moved = _mobius_transform(pencil, r1, -r0, 1, -1)
    si = _extract_si(moved)
    hom = si.homogenize()
    for place in (F(0), INFINITY):
        if fiber_at(hom, place) != IISTAR:
            raise ValueError("normalization failed to keep II* fibers at 0 "
                             "and infinity")
    return si


def fiber_at_is_iistar_at_infinity(pencil: SurfacePencil) -> bool:
    try:
        return fiber_at(pencil, INFINITY) == IISTAR
    except ValueError:
        return False
