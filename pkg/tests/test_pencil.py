import random
from fractions import Fraction

import pytest

from k3red.kodaira import I0, II, IISTAR, IVSTAR, euler_number
from k3red.pencil import (
    INFINITY,
    SIPencil,
    SurfacePencil,
    euler_sum,
    factor_rational_poly,
    fiber_at,
    fiber_at_factor,
    recognize_and_normalize_si,
)

F = Fraction


def si(a, bm1, b0, b1):
    return SIPencil(F(a), F(bm1), F(b0), F(b1))


def test_homogenized_si_has_iistar_at_ends():
    p = si(0, 1, 0, 1)
    assert fiber_at(p, F(0)) == IISTAR
    assert fiber_at(p, INFINITY) == IISTAR


def test_fiber_at_smooth_place():
    # A = 1, B = t: Delta(t) = -16 (4 + 27 t^2), unit at t = 0
    p = SurfacePencil((F(1),), (F(0), F(1)), k3=False)
    assert fiber_at(p, F(0)) == I0


def test_euler_sum_k3_normal_form():
    assert euler_sum(si(0, 1, 0, 1).homogenize()) == 24
    assert euler_sum(si(3, 5, 1, 1).homogenize()) == 24


def test_euler_sum_rational_elliptic_surface():
    # A = 0, B = t(t-1): two II fibers and IV* at infinity, total 12
    p = SurfacePencil((), (F(0), F(-1), F(1)), k3=False)
    assert euler_sum(p) == 12
    assert fiber_at(p, F(0)) == II
    assert fiber_at(p, F(1)) == II
    assert fiber_at(p, INFINITY) == IVSTAR


def test_euler_sum_nonminimal_places_corrected():
    # y^2 = x^3 + t^4 x + t^6 is a scaled constant pencil: non-minimal at 0
    # and at infinity, so the total Euler number is 0
    A = (F(0),) * 4 + (F(1),)
    B = (F(0),) * 6 + (F(1),)
    p = SurfacePencil(A, B, k3=False)
    assert euler_sum(p) == 0


def test_si_pencil_validation():
    with pytest.raises(ValueError):
        SIPencil(F(1), F(0), F(0), F(1))
    with pytest.raises(ValueError):
        SIPencil(F(1), F(1), F(0), F(0))


def test_k3_degree_bound_enforced():
    with pytest.raises(ValueError):
        SurfacePencil(tuple(F(1) for _ in range(10)), (F(1),), k3=True)


def test_recognize_homogeneous_form_round_trip():
    p = si(7, 3, -2, 5)
    got = recognize_and_normalize_si(p.homogenize())
    assert got == p


def test_recognize_laurent_identity():
    p = SurfacePencil.from_laurent({0: F(2)}, {-1: F(1), 0: F(4), 1: F(3)})
    got = recognize_and_normalize_si(p)
    assert got == SIPencil(F(2), F(1), F(4), F(3))


def test_recognize_shifted_pencil():
    # II* fibers at t = 1 and infinity
    base = si(2, 1, 1, 1).homogenize()
    from k3red.polys import pshift

    shifted = SurfacePencil(tuple(pshift(list(base.A), F(-1))),
                            tuple(pshift(list(base.B), F(-1))))
    got = recognize_and_normalize_si(shifted)
    hom = got.homogenize()
    assert fiber_at(hom, F(0)) == IISTAR
    assert fiber_at(hom, INFINITY) == IISTAR
    assert got == si(2, 1, 1, 1)


def test_recognize_two_finite_places():
    # move {0, infinity} to {1, 3} by t -> (t - 3)/(t - 1)-type change, then
    # recognize; scaling invariants must survive the round trip
    base = si(2, 3, 1, 5)
    from k3red.polys import mobius_numerator

    A = mobius_numerator(list(base.homogenize().A), F(3), F(1), F(1), F(1), 8)
    B = mobius_numerator(list(base.homogenize().B), F(3), F(1), F(1), F(1), 12)
    moved = SurfacePencil(tuple(A), tuple(B))
    got = recognize_and_normalize_si(moved)
    inv = lambda q: (q.a**3 / (q.b_m1 * q.b_1), q.b_0**2 / (q.b_m1 * q.b_1))
    assert inv(got) == inv(base)
    from k3red.padic import sqrt_class

    assert sqrt_class(got.b_prime, 5) == sqrt_class(base.b_prime, 5)


def test_recognize_rejects_wrong_fibers():
    p = SurfacePencil((), (F(0), F(-1), F(1)), k3=False)
    with pytest.raises(ValueError):
        recognize_and_normalize_si(p)


def test_scaling_class_property_random():
    rng = random.Random(42)
    for _ in range(60):
        a = F(rng.randint(-9, 9))
        bm1 = F(rng.choice([1, 2, 3, 5, -1, -4]))
        b0 = F(rng.randint(-9, 9))
        b1 = F(rng.choice([1, 2, 3, 5, -1, -4]))
        base = SIPencil(a, bm1, b0, b1)
        lam = F(rng.choice([1, 2, 3, -2]))
        mu = F(rng.choice([1, 2, -3]))
        scaled = SIPencil(a * lam**4, bm1 * lam**5 * mu, b0 * lam**6,
                          b1 * lam**7 / mu)
        got = recognize_and_normalize_si(scaled.homogenize())
        # the admissible scaling preserves these invariants
        if a != 0:
            assert got.a**3 / (got.b_m1 * got.b_1) == \
                base.a**3 / (base.b_m1 * base.b_1) * lam**0
        assert got.b_0**2 / (got.b_m1 * got.b_1) == \
            base.b_0**2 / (base.b_m1 * base.b_1)


def test_fiber_multiset_of_si_delta():
    # Delta of the homogeneous form is t^10 times a quartic; the quartic's
    # simple roots are I1 fibers
    p = si(1, 1, 0, 1).homogenize()
    D = p.discriminant_poly()
    factors = factor_rational_poly(D)
    total = euler_number(fiber_at(p, INFINITY))
    for g, mult in factors:
        from k3red.polys import degree

        t = fiber_at_factor(p, g)
        total += euler_number(t) * degree(g)
    assert total == 24


def test_euler_bound_per_place():
    rng = random.Random(17)
    for _ in range(40):
        p = si(rng.randint(-5, 5), rng.choice([1, 2, 5]), rng.randint(-5, 5),
               rng.choice([1, 3])).homogenize()
        D = p.discriminant_poly()
        for g, mult in factor_rational_poly(D):
            t = fiber_at_factor(p, g)
            assert euler_number(t) <= mult + 2
