import math

import pytest

from k3red.bounds import gl_order, si_composite_bound, torsion_bound


def test_gl_order_small():
    assert gl_order(1, 3) == 2  # units of F_3
    assert gl_order(2, 3) == 48  # (9 - 1)(9 - 3)


def test_gl_order_bounded_by_torsion_bound():
    assert gl_order(22, 3) <= 3**484
    for n in range(1, 31):
        for l in (3, 5, 7, 11, 13):
            assert gl_order(n, l) <= torsion_bound(n, l)


def test_torsion_bound_values():
    assert torsion_bound(22, 3) == 3**484
    assert torsion_bound(1, 3) == 3
    with pytest.raises(ValueError):
        torsion_bound(22, 2)


def test_composite_bound():
    exact, exp, verified = si_composite_bound()
    assert exact == 3**1004 * math.factorial(8)
    assert math.factorial(8) == 40320
    assert 484 + 484 + 36 == 1004
    assert verified and exact <= 10**exp
