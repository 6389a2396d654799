"""The product-type Shioda-Inose pipeline over Q_p.

Given the Laurent normal form y^2 = x^3 + ax + (b_{-1}/t + b_0 + b_1 t) this
module constructs the involution (x, y, t) -> (x, -y, b'/t) with b' =
b_{-1}/b_1, the fibers E_+- above t = +-beta (beta^2 = b'), the ramification
index of the field cut out by the eight fixed points, the Kuwata-Shioda
coordinate changes to the Kummer-side fibrations, the associated pair of
j-invariants, and the final reduction verdict.

Coordinate-change conventions (verified symbolically at import-from-use
time, cached):

    u = t + b'/t,   w = y / (t - b'/t),   v = u w - b_1 / (2 w),

which turn the normal form into

    (u^2 - 4b') w^2 = x^3 + a x + (b_0 + b_1 u)
    v^2 = x^3 + a x + (b_0 + 4 b' w^2 + (b_1^2 / 4) w^{-2}).

Note the minus sign in v: the plus variant misses the second equation by
2 b_1 u, as a two-line expansion (or the symbolic checker) shows.

The j-pair of the underlying product abelian surface is read off from E_+-:
the u-line fibration has I*-type fibers at u = +-2 beta whose quadratic
twists by the local parameter are exactly E_+-, so j(E_+) and j(E_-) are the
j-invariants carried by those fibers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm

import sympy

from .elliptic import (
    SingularFiber,
    WeierstrassCurve,
    make_fiber,
    report_from_invariants,
    reduction_data,
    two_torsion_ramification,
)
from .kodaira import IISTAR
from .kummer import KummerDecision, decide_from_valuations
from .localfield import (
    QpContext,
    QuadContext,
    QuadElement,
    QuadraticField,
    quad_sqrt,
)
from .padic import (
    DEFAULT_PRECISION,
    MAX_PRECISION,
    ExtensionDescriptor,
    rational_sqrt,
    run_with_precision,
    sqrt_class,
    vp_fraction,
)
from .pencil import INFINITY, SIPencil, SurfacePencil, fiber_at
from . import polys as P

F = Fraction


# ---------------------------------------------------------------------------
# symbolic identities (coefficient-generic, verified once per process)


@lru_cache(maxsize=None)
def involution_identities_verified() -> bool:
    """(x, y, t) -> (x, -y, b'/t) preserves the normal form and squares to
    the identity."""
    a, bm1, b0, b1, t = sympy.symbols("a b_m1 b_0 b_1 t")
    x = sympy.Symbol("x")
    bp = bm1 / b1
    rhs = x**3 + a * x + bm1 / t + b0 + b1 * t
    moved = rhs.subs(t, bp / t)
    if sympy.cancel(sympy.together(moved - rhs)) != 0:
        return False
    # y -> -y leaves y^2 alone; t -> b'/t twice is the identity
    if sympy.cancel(bp / (bp / t) - t) != 0:
        return False
    return True


@lru_cache(maxsize=None)
def kummer_chain_verified() -> bool:
    """The substitution chain turns the normal form into the u-line equation
    and the w-line Weierstrass equation, identically over the rational
    function field in (a, b_{-1}, b_0, b_1, t) with y^2 eliminated by the
    curve relation."""
    a, bm1, b0, b1, t = sympy.symbols("a b_m1 b_0 b_1 t")
    x, Y = sympy.symbols("x Y")  # Y stands for y^2
    bp = bm1 / b1
    rhs = x**3 + a * x + bm1 / t + b0 + b1 * t
    u = t + bp / t
    w2 = Y / (t - bp / t) ** 2  # w^2 with y^2 = Y
    first = ((u**2 - 4 * bp) * w2 - (x**3 + a * x + b0 + b1 * u)).subs(Y, rhs)
    if sympy.cancel(sympy.together(first)) != 0:
        return False
    # v = u w - b_1/(2w): v^2 = u^2 w^2 - b_1 u + b_1^2/(4 w^2)
    v2 = u**2 * w2 - b1 * u + b1**2 / (4 * w2)
    target = x**3 + a * x + (b0 + 4 * bp * w2 + b1**2 / (4 * w2))
    second = (v2 - target).subs(Y, rhs)
    return sympy.cancel(sympy.together(second)) == 0


# ---------------------------------------------------------------------------
# involution data and fixed points


@dataclass(frozen=True)
class InvolutionData:
    pencil: SIPencil
    prime: int
    b_prime: Fraction
    beta_class: str
    descriptor: ExtensionDescriptor  # of K' = K(beta) over K
    beta_rational: Fraction | None
    field: QuadraticField | None  # completed field when beta is irrational
    e_plus: object  # WeierstrassCurve or SingularFiber over K'
    e_minus: object
    symbolic_checked: bool

    @property
    def conjugate_fibers(self) -> bool:
        return self.beta_class != "square"


def fixed_point_census(fiber) -> dict:
    """The four geometric fixed points of y -> -y on one distinguished fiber.

    A smooth fiber has its 2-torsion: three affine points plus infinity.  On
    the singular kinds the missing affine points reappear on the exceptional
    components of the minimal smooth model: one for the node, two for the
    cusp, keeping the count at four.
    """
    if isinstance(fiber, WeierstrassCurve):
        return {"kind": "smooth", "affine_two_torsion": 3, "at_infinity": 1,
                "on_exceptional_curves": 0, "total": 4}
    radical_degree = 2 if fiber.kind == "I2" else 1
    return {"kind": fiber.kind, "affine_two_torsion": radical_degree,
            "at_infinity": 1, "on_exceptional_curves": 3 - radical_degree,
            "total": 4}


def fixed_point_count(data: InvolutionData) -> int:
    return fixed_point_census(data.e_plus)["total"] + \
        fixed_point_census(data.e_minus)["total"]


def involution_fixed_fibers(pencil: SIPencil, p: int,
                            precision=DEFAULT_PRECISION) -> InvolutionData:
    """Fibers above t = +-beta together with the square class of b'."""
    for c in (pencil.a, pencil.b_m1, pencil.b_0, pencil.b_1):
        if isinstance(c, QuadElement):
            raise ValueError("p-adic analysis expects rational coefficients")
    if not involution_identities_verified():
        raise RuntimeError("involution identity check failed")
    bp = pencil.b_prime
    beta_class, descriptor = sqrt_class(bp, p)
    r = rational_sqrt(bp)
    if r is not None:
        c_plus = pencil.b_0 + 2 * pencil.b_1 * r
        c_minus = pencil.b_0 - 2 * pencil.b_1 * r
        field = None
        beta = r
    else:
        field = QuadraticField(p, bp, precision)
        beta = None
        b = field.element(0, 1)
        c_plus = pencil.b_0 + 2 * pencil.b_1 * b
        c_minus = pencil.b_0 - 2 * pencil.b_1 * b
    return InvolutionData(
        pencil, p, bp, beta_class, descriptor, beta, field,
        make_fiber(pencil.a, c_plus), make_fiber(pencil.a, c_minus),
        True,
    )


# ---------------------------------------------------------------------------
# ramification certificate


@dataclass(frozen=True)
class RamificationCertificate:
    e_kprime: int  # 1 or 2
    f_plus: int
    f_minus: int
    f_total: int
    conjugate_fibers: bool

    def __post_init__(self):
        if self.f_total not in (1, 2, 3, 4, 6):
            raise ValueError(f"f_total = {self.f_total} outside {{1,2,3,4,6}}")


def ramification_index(data: InvolutionData) -> RamificationCertificate:
    """Ramification index over K of the field fixed by the permutation
    action on the eight fixed points: e(K'/K) * lcm(f_+, f_-) by tameness.

    Because the kernel field contains K', the tower rule makes this value
    exact for that field; whether good reduction needs all of it is not
    decided here.
    """
    if data.field is None:
        ctx = QpContext(data.prime)
    else:
        ctx = QuadContext(data.field)
    f_plus = two_torsion_ramification(data.e_plus, ctx=ctx)
    f_minus = two_torsion_ramification(data.e_minus, ctx=ctx)
    if data.conjugate_fibers and f_plus != f_minus:
        raise RuntimeError("conjugate fibers computed different ramification")
    f_total = data.descriptor.e * lcm(f_plus, f_minus)
    return RamificationCertificate(data.descriptor.e, f_plus, f_minus,
                                   f_total, data.conjugate_fibers)


def ramification_certificate(pencil: SIPencil, p: int,
                             start=DEFAULT_PRECISION,
                             maximum=MAX_PRECISION) -> RamificationCertificate:
    """Precision-retrying driver for the certificate."""
    return run_with_precision(
        lambda n: ramification_index(involution_fixed_fibers(pencil, p, n)),
        start, maximum,
    )


# ---------------------------------------------------------------------------
# Kummer-side pencils


def kummer_transform(pencil: SIPencil):
    """The w-line and u-line pencils of the quotient Kummer surface.

    w-line:  A = a w^4,            B = (b_1^2/4) w^4 + b_0 w^6 + 4 b' w^8
    u-line:  A = a (u^2 - 4b')^2,  B = (b_0 + b_1 u) (u^2 - 4b')^3
    """
    if not kummer_chain_verified():
        raise RuntimeError("substitution-chain identity check failed")
    a, b0, b1 = pencil.a, pencil.b_0, pencil.b_1
    bp = pencil.b_prime
    zero = a - a if isinstance(a, QuadElement) else F(0)
    w_pencil = SurfacePencil(
        (zero, zero, zero, zero, a),
        (zero, zero, zero, zero, b1 * b1 / 4, zero, b0, zero, 4 * bp),
    )
    q = [-4 * bp, zero, zero + 1]
    q2 = P.pmul(q, q)
    a_u = P.pscale(q2, a)
    b_u = P.pmul([b0, b1], P.pmul(q2, q))
    u_pencil = SurfacePencil(tuple(a_u) if a_u else (), tuple(b_u))
    return w_pencil, u_pencil


def u_fiber_types(pencil: SIPencil, u_pencil: SurfacePencil | None = None):
    """Fiber types of the u-line pencil at infinity and at u = +-2 beta.

    All orders are structural: with q = u^2 - 4b',

        A_U = a q^2,  B_U = (b_0 + b_1 u) q^3,
        Delta_U = -16 q^6 (4a^3 + 27 (b_0 + b_1 u)^2),

    so the orders at u = +-2 beta come from scalar evaluations of
    h = 4a^3 + 27 (b_0 + b_1 u)^2 and its derivative, with no polynomial
    arithmetic.  Conjugate places share their type.
    """
    from .pencil import classify_orders

    a, b0, b1 = pencil.a, pencil.b_0, pencil.b_1
    bp = pencil.b_prime
    # infinity: deg A_U = 4 (or A = 0), deg B_U = 7, deg Delta_U = 14
    t_inf = classify_orders(None if a == 0 else 4, 5, 10)

    def at_center(c):
        # c = b_0 + b_1 u evaluated at the center u = +-2 beta
        h = 4 * a * a * a + 27 * c * c
        va = None if a == 0 else 2
        vb = 3 + (1 if c == 0 else 0)
        if h != 0:
            extra = 0
        elif 54 * b1 * c != 0:
            extra = 1
        else:
            extra = 2
        return classify_orders(va, vb, 6 + extra)

    r = rational_sqrt(bp)
    if r is not None:
        t_plus = at_center(b0 + 2 * b1 * r)
        t_minus = at_center(b0 - 2 * b1 * r)
    else:
        field = QuadraticField(None, bp)
        beta = field.element(0, 1)
        t_plus = at_center(b0 + 2 * b1 * beta)
        t_minus = at_center(b0 - 2 * b1 * beta)
    return t_inf, t_plus, t_minus


# ---------------------------------------------------------------------------
# j-invariants of the product


def _j_from_coefficients(a, c):
    num = 6912 * a * a * a
    den = 4 * a * a * a + 27 * c * c
    return num / den


@dataclass(frozen=True)
class JPair:
    """Unordered pair of j-invariants, rational or quadratic conjugates."""

    j1: object  # Fraction or QuadElement
    j2: object

    @property
    def total(self):
        return self.j1 + self.j2

    @property
    def product(self):
        return self.j1 * self.j2

    def rational_values(self):
        vals = []
        for j in (self.j1, self.j2):
            if isinstance(j, QuadElement):
                if not j.is_rational():
                    return None
                vals.append(j.x)
            else:
                vals.append(j)
        return tuple(sorted(vals))

    def matches(self, v1, v2) -> bool:
        got = self.rational_values()
        return got is not None and got == tuple(sorted((F(v1), F(v2))))


def recover_j_pair(pencil: SIPencil) -> JPair:
    """j-invariants of the two elliptic curves whose product underlies the
    quotient Kummer surface: j(E_+) and j(E_-).

    They generate at most one quadratic extension of the coefficient field;
    a pencil whose beta would force a second layer is rejected with the
    minimal polynomial in the message.
    """
    bp = pencil.b_prime
    coeff_field = pencil.coefficient_field()
    if coeff_field is None:
        beta = rational_sqrt(bp)
        if beta is None:
            field = QuadraticField(None, bp)
            beta = field.element(0, 1)
    else:
        beta = quad_sqrt(bp if isinstance(bp, QuadElement)
                         else coeff_field.element(bp))
        if beta is None:
            raise ValueError(
                "the j-pair lives in a degree-4 extension: beta satisfies "
                f"x^2 - ({bp}) over {coeff_field}"
            )
    c_plus = pencil.b_0 + 2 * pencil.b_1 * beta
    c_minus = pencil.b_0 - 2 * pencil.b_1 * beta
    a = pencil.a
    for c, label in ((c_plus, "+beta"), (c_minus, "-beta")):
        disc = 4 * a * a * a + 27 * c * c
        if disc == 0:
            raise ValueError(
                f"the fiber above {label} is singular; its j-invariant is a "
                "pole and the pair is not defined"
            )
    j1 = _j_from_coefficients(a, c_plus)
    j2 = _j_from_coefficients(a, c_minus)
    # collapse quadratic elements that came out rational
    if isinstance(j1, QuadElement) and j1.is_rational():
        j1 = j1.x
    if isinstance(j2, QuadElement) and j2.is_rational():
        j2 = j2.x
    return JPair(j1, j2)


def _twist_shape(j):
    """s with c^2 = a^3 s realizing j(a, c) = j; defined away from j = 0."""
    j = F(j)
    return 4 * (1728 - j) / (27 * j)


def inose_pencil(j1, j2) -> SIPencil:
    """A normal-form pencil whose distinguished fibers carry (j1, j2).

    Output coefficients are rational whenever the square class of
    s(j1) s(j2) allows it and otherwise live in one tracked quadratic
    extension.  The pairs (0, j != 0) and (1728, 1728) admit no such pencil:
    a vanishing x-coefficient forces both j to 0, and j = 1728 on both
    fibers forces b_{-1} = 0.
    """
    j1, j2 = F(j1), F(j2)
    if {j1, j2} == {F(0)}:
        result = SIPencil(F(0), F(1), F(0), F(1))
        _check_inose_contract(result, j1, j2)
        return result
    if F(0) in (j1, j2):
        raise ValueError("no product-type pencil pairs j = 0 with a nonzero "
                         "j: the x-coefficient would have to vanish and not "
                         "vanish at once")
    if j1 == j2 == F(1728):
        raise ValueError("no product-type pencil has j = 1728 on both "
                         "distinguished fibers: both Laurent tails would "
                         "vanish")
    if j1 == F(1728) or j2 == F(1728):
        other = j2 if j1 == F(1728) else j1
        s2 = _twist_shape(other)
        a = s2
        c_plus, c_minus = F(0), s2 * s2
    elif j1 == j2:
        s = _twist_shape(j1)
        a = s
        c_plus, c_minus = s * s, -s * s
    else:
        s1, s2 = _twist_shape(j1), _twist_shape(j2)
        a = s1
        c_plus = s1 * s1
        r = rational_sqrt(s1 * s2)
        if r is None:
            field = QuadraticField(None, s1 * s2)
            r = field.element(0, 1)
        c_minus = s1 * r
        if c_minus == c_plus:
            c_minus = -c_minus
    b_0 = (c_plus + c_minus) / 2
    beta = (c_plus - c_minus) / 4
    result = SIPencil(a, beta * beta, b_0, 1)
    _check_inose_contract(result, j1, j2)
    return result


def _check_inose_contract(pencil: SIPencil, j1, j2):
    pair_ = recover_j_pair(pencil)
    if not pair_.matches(j1, j2):
        raise RuntimeError(f"constructed pencil recovers {pair_} instead of "
                           f"({j1}, {j2})")
    hom = pencil.homogenize()
    for place in (F(0), INFINITY):
        if fiber_at(hom, place) != IISTAR:
            raise RuntimeError("constructed pencil lost its II* fibers")


# ---------------------------------------------------------------------------
# verdict


@dataclass(frozen=True)
class SIVerdict:
    f_total: int
    e_kprime: int
    f_plus: int
    f_minus: int
    conjugate_fibers: bool
    beta_class: str
    j_pair: JPair | None
    j_pair_error: str | None
    j_valuations: tuple | None
    potentially_good: bool | None
    kummer_verdict: KummerDecision | None
    certified_extension: ExtensionDescriptor
    fixed_points: tuple
    surrogate: tuple

    @property
    def certificate_realized(self) -> bool:
        return (self.kummer_verdict is not None
                and self.kummer_verdict.km_good_over_unramified)


def _j_valuation(j, p, bp, precision):
    """v_p of a j-invariant, possibly inside the completed K(beta)."""
    if not isinstance(j, QuadElement):
        if j == 0:
            return None  # +infinity
        return vp_fraction(j, p)
    completed = QuadraticField(p, j.field.d, precision)
    ctx = QuadContext(completed)
    val = ctx.val(completed.element(j.x, j.y))
    # report in K-normalized units when K'/K ramifies
    return F(val, completed.e)


def si_verdict(pencil: SIPencil, p: int, precision=DEFAULT_PRECISION,
               maximum=MAX_PRECISION) -> SIVerdict:
    """Assemble the reduction verdict for a product-type pencil over Q_p.

    The unramifiedness of the second cohomology is not computable here; the
    certified extension realizes the good-reduction conclusion conditionally
    and the surrogate field lists what was actually checked.
    """

    def attempt(n):
        data = involution_fixed_fibers(pencil, p, n)
        cert = ramification_index(data)

        j_pair = j_err = None
        try:
            j_pair = recover_j_pair(pencil)
        except ValueError as exc:
            j_err = str(exc)

        j_vals = None
        potentially_good = None
        if j_pair is not None:
            j_vals = tuple(_j_valuation(j, p, data.b_prime, n)
                           for j in (j_pair.j1, j_pair.j2))
            potentially_good = all(v is None or v >= 0 for v in j_vals)

        kummer = None
        if not isinstance(data.e_plus, SingularFiber) and \
                not isinstance(data.e_minus, SingularFiber):
            ctx = QpContext(p) if data.field is None else QuadContext(data.field)
            scale = lcm(cert.f_plus, cert.f_minus)
            reports = []
            for fiber in (data.e_plus, data.e_minus):
                inv, kmin = reduction_data(fiber.a, fiber.b, ctx, scale=scale)
                reports.append(report_from_invariants(inv, kmin))
            kummer = decide_from_valuations(
                reports[0].invariants.vdelta,
                reports[1].invariants.vdelta,
                all(r.potentially_good for r in reports),
                reports,
            )

        surrogate = (
            "checked: square class of b' and tame 2-torsion ramification of "
            "the distinguished fibers (Newton polygons, discriminant parity)",
            "checked: j-integrality of the recovered pair"
            if j_pair is not None else
            "unchecked: j-pair not recoverable (" + str(j_err) + ")",
            "checked: quadratic-twist matching of the fiber pair over the "
            "extended base" if kummer is not None else
            "unchecked: twist matching skipped (singular distinguished fiber)",
            "assumed: unramifiedness of the second cohomology; the certified "
            "extension realizes the good-reduction conclusion conditionally",
        )
        return SIVerdict(
            cert.f_total, cert.e_kprime, cert.f_plus, cert.f_minus,
            cert.conjugate_fibers, data.beta_class,
            j_pair, j_err, j_vals, potentially_good, kummer,
            ExtensionDescriptor(cert.f_total, 1, "abstract-tame"),
            (fixed_point_census(data.e_plus), fixed_point_census(data.e_minus)),
            surrogate,
        )

    return run_with_precision(attempt, precision, maximum)
