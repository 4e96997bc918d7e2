"""Dickman grid, logarithmic integral, and smooth-count tests.

Frozen reference constants were produced offline by 30-digit quadrature
(logarithmic integral) and a 1/8192-step 4th-order integration of the delay
equation split at its integer knots (Dickman rho); both agree with the
closed forms where those exist.
"""

import math

import pytest

from chebmu.analytic import (
    DickmanTable,
    SmoothCount,
    default_table,
    dickman_rho,
    gamma_bound,
    li,
    smooth_count,
)
from chebmu.numberfield import FieldInvariants, NumberFieldSpec, count_ideals

from gaussian_oracle import all_ideals, factor_ideal, gaussian_primes

LI_FROM_2 = {
    3: 1.1184248145496992,
    10: 5.1204357246698052,
    100: 29.080977803962137,
    10**4: 1245.092052119271,
    10**6: 78626.503995682064,
}

RHO = {
    2: 0.30685281944005468,
    3: 0.048608388291131564,
    4: 0.0049109256477608315,
    5: 0.0003547247004560396,
    10: 2.7701718377259488e-11,
}


@pytest.fixture(scope="module")
def gaussian():
    return NumberFieldSpec.create(
        "gaussian", [1, 0, 1],
        invariants=FieldInvariants(r1=0, r2=1, h=1, reg=1.0, w=4, disc=-4))


def test_rho_on_initial_interval():
    assert dickman_rho(0.0) == 1.0
    assert dickman_rho(0.5) == 1.0
    assert dickman_rho(1.0) == 1.0


def test_rho_closed_form_on_1_2():
    # rho(b) = 1 - log b there
    for b in (1.25, 1.5, 1.75, 2.0):
        assert dickman_rho(b) == pytest.approx(1 - math.log(b), abs=1e-6)


def test_rho_frozen_references():
    # measured relative error of the 2^-10 grid: 1e-7 at beta=2 up to 7e-6
    # at beta=10
    for b, want in RHO.items():
        got = dickman_rho(float(b))
        assert got == pytest.approx(want, rel=2e-5, abs=1e-12), b


def test_rho_gamma_bound_everywhere():
    t = default_table()
    for k, v in enumerate(t.values):
        beta = k * t.step
        assert v <= gamma_bound(beta) * (1 + 1e-12), beta


def test_rho_positive_nonincreasing():
    t = default_table()
    start = round(1.0 / t.step)
    for k in range(start, len(t.values) - 1):
        assert t.values[k + 1] <= t.values[k]
        assert t.values[k + 1] > 0.0


def test_rho_grid_convergence():
    fine = DickmanTable.build(step=2.0**-11)
    assert abs(fine.values[-1] - default_table().values[-1]) < 1e-6
    assert abs(fine.rho(10.0) - dickman_rho(10.0)) < 1e-6


def test_rho_out_of_range():
    with pytest.raises(ValueError):
        dickman_rho(-0.1)
    with pytest.raises(ValueError):
        dickman_rho(20.5)
    val, bound_only = default_table().rho_or_bound(25.0)
    assert bound_only and val == pytest.approx(gamma_bound(25.0))
    val, bound_only = default_table().rho_or_bound(3.0)
    assert not bound_only and val == dickman_rho(3.0)


def test_li_basics():
    assert li(2) == 0.0
    with pytest.raises(ValueError):
        li(1.5)


def test_li_frozen_references():
    for x, want in LI_FROM_2.items():
        assert li(x) == pytest.approx(want, rel=1e-9), x


def test_li_upper_bound():
    for x in (10, 1000, 10**6):
        assert li(x) < x / math.log(2)


def test_li_additive():
    # int_2^a + int_a^b = int_2^b for the same integrand
    assert li(100) + (li(10**4) - li(100)) == pytest.approx(li(10**4), rel=1e-12)


def test_smooth_trivial_cases(gaussian):
    assert smooth_count(gaussian, 1000, 1000).exact == count_ideals(gaussian, 1000).count
    one = smooth_count(gaussian, 1000, 1)
    assert one.exact == 1 and one.predicted == 0.0
    with pytest.raises(ValueError):
        smooth_count(gaussian, 10, 20)


def test_smooth_monotone_in_y(gaussian):
    counts = [smooth_count(gaussian, 2000, y).exact for y in (2, 5, 13, 50, 2000)]
    assert counts == sorted(counts)


def test_smooth_vs_gaussian_oracle(gaussian):
    primes = gaussian_primes(400)
    for x, y in ((100, 10), (300, 17), (400, 50)):
        want = 0
        for a, b, n in all_ideals(x):
            if n == 1:
                want += 1
                continue
            fac = factor_ideal(a, b, primes)
            if max(g.norm for g in fac) <= y:
                want += 1
        got = smooth_count(gaussian, x, y)
        assert got.exact == want, (x, y)


def test_smooth_count_result_shape(gaussian):
    sc = smooth_count(gaussian, 10**4, 100)
    assert isinstance(sc, SmoothCount)
    assert sc.exact >= 1
    assert sc.exact <= count_ideals(gaussian, 10**4).count
    assert sc.rel_error == pytest.approx(abs(sc.exact - sc.predicted) / sc.exact)
