"""Number field decomposition tests against splitting-law and Z[i] oracles."""

import math

import pytest

from chebmu.errors import (
    IndexDivisorError,
    InvariantsUnavailableError,
    NormOverflowError,
)
from chebmu.numberfield import (
    FieldInvariants,
    NumberFieldSpec,
    count_ideals,
    decompose_prime,
    is_index_divisor,
    poly_discriminant,
    prime_ideal_stream,
    residue,
    residue_from_invariants,
    sieve_primes,
)

from gaussian_oracle import all_ideals, gaussian_primes


@pytest.fixture(scope="module")
def gaussian():
    return NumberFieldSpec.create(
        "gaussian", [1, 0, 1],
        invariants=FieldInvariants(r1=0, r2=1, h=1, reg=1.0, w=4, disc=-4))


@pytest.fixture(scope="module")
def zeta7():
    return NumberFieldSpec.create("zeta7", [1] * 7)


@pytest.fixture(scope="module")
def dedekind_cubic():
    # the classic field with an essential index divisor at 2
    return NumberFieldSpec.create("dedekind", [-8, -2, -1, 1])


def test_spec_creation_and_irreducibility():
    s = NumberFieldSpec.create("gaussian", [1, 0, 1])
    assert s.degree == 2 and not s.irreducibility_trusted
    z = NumberFieldSpec.create("zeta7", [1] * 7)
    assert z.degree == 6 and z.irreducibility_trusted
    with pytest.raises(ValueError):
        NumberFieldSpec.create("bad", [-1, 0, 1])  # x^2 - 1
    with pytest.raises(ValueError):
        NumberFieldSpec.create("bad", [0, 1, 1])  # x^2 + x = x(x+1)
    with pytest.raises(ValueError):
        NumberFieldSpec.create("bad", [1, 0, 2])  # not monic
    with pytest.raises(ValueError):
        NumberFieldSpec.create(
            "bad", [1, 0, 1],
            invariants=FieldInvariants(r1=1, r2=1, h=1, reg=1.0, w=2, disc=-4))


def test_discriminants():
    assert poly_discriminant([1, 0, 1]) == -4
    assert poly_discriminant([-2, 0, 1]) == 8
    assert poly_discriminant([1, 1, 0, 1]) == -31
    assert poly_discriminant([1] * 7) == -16807  # -7^5
    # cubic formula oracle: disc = 18abcd - 4b^3 d + b^2 c^2 - 4ac^3 - 27a^2 d^2
    a, b, c, d = 1, -1, -2, -8
    want = (18 * a * b * c * d - 4 * b**3 * d + b * b * c * c
            - 4 * a * c**3 - 27 * a * a * d * d)
    assert want == -2012  # = -4 * 503: field disc -503, index [O_K:Z[theta]] = 2
    assert poly_discriminant([-8, -2, -1, 1]) == want


def test_decompose_examples(gaussian, zeta7):
    r5 = decompose_prime(gaussian, 5)
    assert [(q.f, q.e, q.norm) for q in r5.primes] == [(1, 1, 5), (1, 1, 5)]
    assert not r5.ramified_in_K
    r2 = decompose_prime(gaussian, 2)
    assert [(q.f, q.e, q.norm) for q in r2.primes] == [(1, 2, 2)]
    assert r2.ramified_in_K
    z2 = decompose_prime(zeta7, 2)
    assert [(q.f, q.e, q.norm) for q in z2.primes] == [(3, 1, 8), (3, 1, 8)]
    z7 = decompose_prime(zeta7, 7)
    assert [(q.f, q.e, q.norm) for q in z7.primes] == [(1, 6, 7)]
    assert z7.ramified_in_K


def test_sum_ef_equals_degree(gaussian, zeta7, dedekind_cubic):
    for spec in (gaussian, zeta7):
        for p in sieve_primes(500):
            rep = decompose_prime(spec, p)
            assert sum(q.e * q.f for q in rep.primes) == spec.degree
            assert rep.ramified_in_K == any(q.e > 1 for q in rep.primes)
    for p in sieve_primes(100):
        rep = decompose_prime(dedekind_cubic, p)
        if not rep.index_divisor:
            assert sum(q.e * q.f for q in rep.primes) == 3


def test_index_divisor(gaussian, zeta7, dedekind_cubic):
    assert not is_index_divisor(gaussian, 2)
    assert not is_index_divisor(gaussian, 3)
    assert not is_index_divisor(zeta7, 7)
    assert is_index_divisor(dedekind_cubic, 2)
    assert not is_index_divisor(dedekind_cubic, 5)  # 25 | 2300 but criterion passes
    rep = decompose_prime(dedekind_cubic, 2)
    assert rep.index_divisor and rep.primes == ()
    with pytest.raises(IndexDivisorError):
        prime_ideal_stream(dedekind_cubic, 50)


def test_index_divisor_only_at_square_disc_divisors(gaussian, zeta7, dedekind_cubic):
    for spec in (gaussian, zeta7, dedekind_cubic):
        for p in sieve_primes(200):
            if is_index_divisor(spec, p):
                assert spec.disc_min_poly % (p * p) == 0


def test_stream_examples(gaussian, zeta7):
    s = prime_ideal_stream(gaussian, 5)
    assert [(q.norm, q.f, q.e) for q in s] == [(2, 1, 2), (5, 1, 1), (5, 1, 1)]
    z = prime_ideal_stream(zeta7, 7)
    assert [(q.norm, q.f, q.e) for q in z] == [(7, 1, 6)]
    assert prime_ideal_stream(gaussian, 1) == []


def test_stream_sorted_and_prefix_stable(gaussian, zeta7):
    for spec in (gaussian, zeta7):
        big = prime_ideal_stream(spec, 3000)
        keys = [q.sort_key() for q in big]
        assert keys == sorted(keys)
        small = prime_ideal_stream(spec, 500)
        assert small == [q for q in big if q.norm <= 500]


def test_gaussian_splitting_law_oracle(gaussian):
    stream = prime_ideal_stream(gaussian, 10**4)
    by_p = {}
    for q in stream:
        by_p.setdefault(q.p, []).append(q)
    for p in sieve_primes(10**4):
        qs = by_p.get(p, [])
        if p == 2:
            assert [(q.f, q.e) for q in qs] == [(1, 2)]
        elif p % 4 == 1:
            assert [(q.f, q.e) for q in qs] == [(1, 1), (1, 1)]
        else:
            expect = [(2, 1)] if p * p <= 10**4 else []
            assert [(q.f, q.e) for q in qs] == expect


def test_zeta7_splitting_law_oracle(zeta7):
    x_max = 10**4
    stream = prime_ideal_stream(zeta7, x_max)
    by_p = {}
    for q in stream:
        by_p.setdefault(q.p, []).append(q)
    for p in sieve_primes(x_max):
        qs = by_p.get(p, [])
        if p == 7:
            assert [(q.f, q.e) for q in qs] == [(1, 6)]
            continue
        order = 1
        while pow(p, order, 7) != 1:
            order += 1
        if p**order <= x_max:
            assert [(q.f, q.e) for q in qs] == [(order, 1)] * (6 // order), p
        else:
            assert qs == [], p


def test_count_ideals_examples(gaussian):
    assert count_ideals(gaussian, 10).count == 9
    assert count_ideals(gaussian, 1).count == 1


def test_count_ideals_vs_gaussian_grid(gaussian):
    # the (1, 0) grid point is the unit ideal, so the counts align directly
    for x in (10, 50, 137, 300):
        assert count_ideals(gaussian, x).count == len(all_ideals(x))


def test_count_monotone(gaussian):
    counts = [count_ideals(gaussian, x).count for x in (10, 20, 40, 80, 160)]
    assert counts == sorted(counts)


def test_residues(gaussian):
    assert residue_from_invariants(gaussian) == pytest.approx(math.pi / 4, rel=1e-12)
    rational = NumberFieldSpec.create(
        "Q", [0, 1], invariants=FieldInvariants(1, 0, 1, 1.0, 2, 1))
    assert residue_from_invariants(rational) == pytest.approx(1.0, rel=1e-12)
    sqrt2 = NumberFieldSpec.create(
        "sqrt2", [-2, 0, 1],
        invariants=FieldInvariants(2, 0, 1, math.log(1 + math.sqrt(2)), 2, 8))
    want = 4 * math.log(1 + math.sqrt(2)) / (2 * math.sqrt(8))
    assert residue_from_invariants(sqrt2) == pytest.approx(want, rel=1e-12)


def test_residue_fallback_estimate():
    z = NumberFieldSpec.create("zeta7", [1] * 7)
    with pytest.raises(InvariantsUnavailableError):
        residue_from_invariants(z)
    est1 = residue(z, x_max=20000)
    est2 = residue(z, x_max=80000)
    assert 0.1 < est1 < 1.0
    assert abs(est1 - est2) / est2 < 0.05  # the ratio has stabilized


def test_ratio_converges_toward_residue(gaussian):
    target = math.pi / 4
    errs = [abs(count_ideals(gaussian, x).ratio - target) for x in (10**3, 10**5)]
    assert errs[1] < errs[0]


def test_overflow_guard(gaussian):
    with pytest.raises(NormOverflowError):
        prime_ideal_stream(gaussian, 1 << 62)
    with pytest.raises(NormOverflowError):
        count_ideals(gaussian, 1 << 62)


def test_oracle_self_check():
    primes = gaussian_primes(200)
    norms = sorted(g.norm for g in primes)
    assert norms[:6] == [2, 5, 5, 9, 13, 13]
    from gaussian_oracle import factor_ideal
    fac = factor_ideal(3, 1, primes)  # (3+i) = (1+i)(2-i)
    assert sorted((g.norm, m) for g, m in fac.items()) == [(2, 1), (5, 1)]
    fac = factor_ideal(0, 4, primes)  # (4) = (1+i)^4
    assert [(g.norm, m) for g, m in fac.items()] == [(2, 4)]
