import random
from fractions import Fraction

from k3red.elliptic import WeierstrassCurve, quadratic_twist
from k3red.kummer import (
    GOOD_MATCHED_TWIST,
    GOOD_UNRAMIFIED,
    NEEDS_DEEPER,
    NOT_POTENTIALLY_GOOD,
    d_infinity,
    d_zero,
    kummer_config,
    kummer_reduction_decision,
    pair,
    recognize_divisor,
    validate_fibration,
    w00,
)

F = Fraction

CFG = kummer_config()


def test_gram_adjacency():
    i = CFG.index
    assert CFG.gram[i("u0")][i("w00")] == 1
    assert CFG.gram[i("u0")][i("v0")] == 0
    assert CFG.gram[i("w00")][i("w00")] == -2
    assert CFG.gram[i("v2")][i("w12")] == 1
    assert CFG.gram[i("v2")][i("w13")] == 0
    assert CFG.gram[i("w01")][i("w10")] == 0


def test_divisor_pairings():
    d0, dinf, z = d_zero(CFG), d_infinity(CFG), w00(CFG)
    assert pair(CFG, d0, d0) == 0
    assert pair(CFG, dinf, dinf) == 0
    assert pair(CFG, d0, dinf) == 0
    assert pair(CFG, z, d0) == 1
    assert pair(CFG, z, dinf) == 1


def test_multiplicities_lie_in_kernel():
    for D in (d_zero(CFG), d_infinity(CFG)):
        sup = D.support()
        for i in sup:
            assert sum(CFG.gram[i][j] * D.coefficients[j] for j in sup) == 0


def test_divisors_recognized_as_ivstar():
    assert recognize_divisor(CFG, d_zero(CFG)).serialize() == "IV*"
    assert recognize_divisor(CFG, d_infinity(CFG)).serialize() == "IV*"


def test_validate_fibration_passes():
    rep = validate_fibration(CFG, d_zero(CFG), w00(CFG), [d_infinity(CFG)])
    assert rep.ok
    assert rep.d_type == "IV*"
    assert rep.others[0][3] == "IV*"


def test_validate_fibration_failures():
    d0 = d_zero(CFG)
    bumped = d0 + CFG.divisor({"u0": 1})
    rep = validate_fibration(CFG, bumped, w00(CFG))
    assert rep.d_self_intersection != 0 and not rep.ok
    rep = validate_fibration(CFG, w00(CFG), w00(CFG))
    assert rep.d_self_intersection == -2 and not rep.ok


# -- reduction decision -------------------------------------------------------


def test_both_good():
    e = WeierstrassCurve(1, 1)
    d = kummer_reduction_decision(e, e, 5)
    assert d.verdict == GOOD_UNRAMIFIED and d.km_good_over_unramified


def test_matched_ramified_twists():
    c = WeierstrassCurve(25, 125)
    d = kummer_reduction_decision(c, c, 5)
    assert d.verdict == GOOD_MATCHED_TWIST
    assert d.km_good_over_unramified


def test_mismatched_twists_need_quadratic():
    good = WeierstrassCurve(1, 1)
    bad = WeierstrassCurve(25, 125)
    d = kummer_reduction_decision(good, bad, 5)
    assert d.verdict == NEEDS_DEEPER
    assert d.extension_e == 2


def test_multiplicative_factor_is_hopeless():
    mult = WeierstrassCurve(-3, 7)  # I1 over Q_5
    d = kummer_reduction_decision(mult, WeierstrassCurve(1, 1), 5)
    assert d.verdict == NOT_POTENTIALLY_GOOD


def test_symmetry_and_twist_invariance():
    rng = random.Random(77)
    tried = 0
    while tried < 200:
        p = rng.choice([5, 7, 11, 13])
        a1 = F(rng.randint(-20, 20)) * F(p) ** rng.randint(0, 2)
        b1 = F(rng.randint(-20, 20)) * F(p) ** rng.randint(0, 2)
        a2 = F(rng.randint(-20, 20)) * F(p) ** rng.randint(0, 2)
        b2 = F(rng.randint(-20, 20)) * F(p) ** rng.randint(0, 2)
        if 4 * a1**3 + 27 * b1**2 == 0 or 4 * a2**3 + 27 * b2**2 == 0:
            continue
        tried += 1
        c1, c2 = WeierstrassCurve(a1, b1), WeierstrassCurve(a2, b2)
        d12 = kummer_reduction_decision(c1, c2, p)
        d21 = kummer_reduction_decision(c2, c1, p)
        assert d12.verdict == d21.verdict
        assert d12.invariant_key == d21.invariant_key
        for d in (F(2), F(p), F(3 * p), F(1, p)):
            t12 = kummer_reduction_decision(
                quadratic_twist(c1, d), quadratic_twist(c2, d), p
            )
            assert t12.invariant_key == d12.invariant_key


def test_decision_over_extended_base():
    # defect-3 pair becomes good over a tame cubic extension
    c = WeierstrassCurve(0, 25)  # IV: (inf, 2, 4)
    d = kummer_reduction_decision(c, c, 5)
    assert d.verdict == NEEDS_DEEPER and d.extension_e == 3
    d3 = kummer_reduction_decision(c, c, 5, scale=3)
    assert d3.km_good_over_unramified
