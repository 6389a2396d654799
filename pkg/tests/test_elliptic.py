import random
from fractions import Fraction

import pytest

from k3red.elliptic import (
    SingularFiber,
    WeierstrassCurve,
    make_fiber,
    minimal_model,
    quadratic_twist,
    reduction_type,
    two_torsion_ramification,
)
from k3red.kodaira import I0, In, Istar

F = Fraction


def test_invariants():
    e = WeierstrassCurve(1, 1)
    assert e.c4 == -48 and e.c6 == -864
    assert e.discriminant == -16 * 31
    assert e.j == F((-48) ** 3, -496)


def test_singular_wrapper():
    with pytest.raises(ValueError):
        WeierstrassCurve(-3, 2)  # 4*(-27) + 27*4 = 0
    s = SingularFiber(-3, 2)
    assert s.kind == "I2"
    assert SingularFiber(0, 0).kind == "IV"
    with pytest.raises(ValueError):
        SingularFiber(1, 1)
    assert isinstance(make_fiber(-3, 2), SingularFiber)
    assert isinstance(make_fiber(1, 1), WeierstrassCurve)


def test_minimal_model_examples():
    m, k = minimal_model(WeierstrassCurve(5**4, 5**6), 5)
    assert (m.a, m.b, k) == (1, 1, 1)
    # v(Delta) = 6 < 12: already minimal
    m, k = minimal_model(WeierstrassCurve(25, 125), 5)
    assert (m.a, m.b, k) == (25, 125, 0)
    m, k = minimal_model(WeierstrassCurve(1, 1), 5)
    assert (m.a, m.b, k) == (1, 1, 0)
    # non-integral input scales up
    m, k = minimal_model(WeierstrassCurve(F(1, 5**4), F(1, 5**6)), 5)
    assert (m.a, m.b, k) == (1, 1, -1)


def test_reduction_type_good():
    r = reduction_type(WeierstrassCurve(1, 1), 5)
    assert r.kodaira == I0 and r.good and r.potentially_good
    assert r.semistability_defect == 1 and r.twist_class_needed == "none"


def test_reduction_type_istar0():
    # Delta = -16 * 5^6 * 31: triple (2, 3, 6)
    r = reduction_type(WeierstrassCurve(25, 125), 5)
    assert r.kodaira == Istar(0)
    assert r.potentially_good
    assert r.semistability_defect == 2
    assert r.twist_class_needed == "ramified-quadratic"


def test_reduction_type_multiplicative():
    # Delta = -19440 = -2^4 3^5 5, v(c4) = 0, v(j) = -1
    r = reduction_type(WeierstrassCurve(-3, 7), 5)
    assert r.kodaira == In(1)
    assert not r.potentially_good
    assert r.semistability_defect is None
    assert r.j_valuation == -1


def test_quadratic_twist_formula():
    assert quadratic_twist(WeierstrassCurve(1, 1), 4) == WeierstrassCurve(16, 64)
    # the ramified twist by 1/5 of the I*0 curve is good
    t = quadratic_twist(WeierstrassCurve(25, 125), F(1, 5))
    assert (t.a, t.b) == (1, 1)
    assert reduction_type(t, 5).good
    e = WeierstrassCurve(1, 1)
    for d in (2, 5, 10):
        assert quadratic_twist(e, d).j == e.j


def test_twist_invariance_of_j_random():
    rng = random.Random(3)
    for _ in range(100):
        a, b = rng.randint(-20, 20), rng.randint(-20, 20)
        if 4 * a**3 + 27 * b**2 == 0:
            continue
        e = WeierstrassCurve(a, b)
        d = F(rng.randint(1, 30), rng.randint(1, 30))
        assert quadratic_twist(e, d).j == e.j


def test_reduction_invariant_under_unit_scaling():
    rng = random.Random(5)
    for _ in range(150):
        p = rng.choice([5, 7, 11, 13])
        a = F(rng.randint(-30, 30)) * F(p) ** rng.randint(0, 3)
        b = F(rng.randint(-30, 30)) * F(p) ** rng.randint(0, 3)
        if 4 * a**3 + 27 * b**2 == 0:
            continue
        e = WeierstrassCurve(a, b)
        u = rng.choice([2, 3, 7, F(1, 2), F(4, 3)])
        if F(u).numerator % p == 0 or F(u).denominator % p == 0:
            continue
        scaled = WeierstrassCurve(a * u**4, b * u**6)
        r1, r2 = reduction_type(e, p), reduction_type(scaled, p)
        assert r1.kodaira == r2.kodaira
        assert r1.semistability_defect == r2.semistability_defect


def test_ramified_twist_repairs_defect_two():
    rng = random.Random(8)
    count = 0
    while count < 120:
        p = rng.choice([5, 7, 11, 13])
        a, b = rng.randint(-20, 20), rng.randint(-20, 20)
        if 4 * a**3 + 27 * b**2 == 0:
            continue
        base = WeierstrassCurve(a, b)
        if not reduction_type(base, p).good:
            continue
        c = quadratic_twist(base, p)
        r = reduction_type(c, p)
        assert r.semistability_defect == 2
        assert r.twist_class_needed == "ramified-quadratic"
        for d in (F(p), F(1, p)):
            assert reduction_type(quadratic_twist(c, d), p).good
        count += 1


def test_two_torsion_ramification_examples():
    assert two_torsion_ramification(WeierstrassCurve(0, -5), p=5) == 3
    assert two_torsion_ramification(WeierstrassCurve(-5, 0), p=5) == 2
    assert two_torsion_ramification(WeierstrassCurve(-1, 0), p=5) == 1


def test_two_torsion_singular_fibers():
    # nodal: radical quadratic
    s = SingularFiber(-3, 2)  # roots 1 (double), -2
    assert two_torsion_ramification(s, p=5) == 1
    # nodal with ramified 2-torsion: (x^2 - 5)^... use (x - r)^2(x + 2r) shape
    # a = -3r^2, b = 2r^3 with r = 5: a = -75, b = 250
    s = SingularFiber(-75, 250)
    assert two_torsion_ramification(s, p=5) == 1  # roots 5, 5, -10 rational
    assert two_torsion_ramification(SingularFiber(0, 0), p=5) == 1


def test_torsion_ramification_divides_defect():
    rng = random.Random(13)
    for _ in range(250):
        p = rng.choice([5, 7, 11, 13])
        a = F(rng.randint(-30, 30)) * F(p) ** rng.randint(0, 3)
        b = F(rng.randint(-30, 30)) * F(p) ** rng.randint(0, 3)
        if 4 * a**3 + 27 * b**2 == 0:
            continue
        e = WeierstrassCurve(a, b)
        r = reduction_type(e, p)
        f = two_torsion_ramification(e, p=p)
        assert f in (1, 2, 3)
        if r.potentially_good:
            assert r.semistability_defect % f == 0
