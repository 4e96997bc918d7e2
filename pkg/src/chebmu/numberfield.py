"""Monogenic number fields: prime decomposition via the minimal polynomial,
Dedekind's index-divisor criterion, norm-ordered prime ideal streams, exact
ideal counting, and the zeta residue from classical invariants.

A prime ideal here is an abstract decomposition slot (p, f, e, slot) with
norm p^f; nothing downstream needs generators, only norms and residue
degrees.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import (
    IndexDivisorError,
    InvariantsUnavailableError,
    NormOverflowError,
)
from .finitefield import (
    NORM_BITS,
    FpPoly,
    _ddf_counts,
    _deriv,
    _divexact,
    _gcd,
    _radical,
    _reduce,
    factor_multiplicities,
)

NORM_LIMIT = 1 << NORM_BITS


# ---------------------------------------------------------------------------
# integer polynomial helpers (discriminant via Sylvester/Bareiss)

def _int_deriv(c: Sequence[int]) -> list[int]:
    return [i * c[i] for i in range(1, len(c))]


def _bareiss_det(m: list[list[int]]) -> int:
    """Exact integer determinant by fraction-free Gaussian elimination."""
    n = len(m)
    if n == 0:
        return 1
    m = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def poly_discriminant(coeffs: Sequence[int]) -> int:
    """Discriminant of a monic integer polynomial (ascending coefficients)."""
    d = len(coeffs) - 1
    if d < 1:
        raise ValueError("polynomial must have degree >= 1")
    if coeffs[-1] != 1:
        raise ValueError("polynomial must be monic")
    if d == 1:
        return 1
    fp = _int_deriv(coeffs)
    n, m = d, d - 1
    size = n + m
    rows = []
    rev_f = list(reversed(coeffs))
    rev_fp = list(reversed(fp))
    for i in range(m):
        rows.append([0] * i + rev_f + [0] * (size - n - 1 - i))
    for i in range(n):
        rows.append([0] * i + rev_fp + [0] * (size - m - 1 - i))
    res = _bareiss_det(rows)
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    return sign * res


# ---------------------------------------------------------------------------
# field spec

@dataclass(frozen=True)
class FieldInvariants:
    """Inputs to the zeta residue: unit rank data, class number, regulator,
    roots of unity, discriminant."""

    r1: int
    r2: int
    h: int
    reg: float
    w: int
    disc: int


@dataclass(frozen=True)
class NumberFieldSpec:
    name: str
    min_poly: tuple[int, ...]
    degree: int
    monogenic_asserted: bool
    invariants: FieldInvariants | None
    irreducibility_trusted: bool
    disc_min_poly: int

    @classmethod
    def create(cls, name: str, min_poly: Sequence[int], monogenic: bool = True,
               invariants: FieldInvariants | None = None) -> "NumberFieldSpec":
        coeffs = tuple(int(c) for c in min_poly)
        d = len(coeffs) - 1
        if d < 1 or coeffs[-1] != 1:
            raise ValueError("min_poly must be monic of degree >= 1")
        trusted = False
        if d > 1:
            if _has_integer_root(coeffs):
                raise ValueError(f"min_poly for {name!r} has a rational root; "
                                 "not irreducible over Q")
            # degree 2 and 3 are irreducible iff rootless; beyond that the
            # root check is necessary but not sufficient
            trusted = d > 3
        if invariants is not None:
            if invariants.r1 + 2 * invariants.r2 != d:
                raise ValueError("invariants r1 + 2*r2 must equal the degree")
            if invariants.h < 1 or invariants.w < 2:
                raise ValueError("invariants need h >= 1 and w >= 2")
        return cls(name=name, min_poly=coeffs, degree=d,
                   monogenic_asserted=monogenic, invariants=invariants,
                   irreducibility_trusted=trusted,
                   disc_min_poly=poly_discriminant(coeffs))


def _has_integer_root(coeffs: tuple[int, ...]) -> bool:
    # monic, so rational roots are integer divisors of the constant term
    c0 = coeffs[0]
    if c0 == 0:
        return True
    for r in range(1, abs(c0) + 1):
        if abs(c0) % r:
            continue
        for s in (r, -r):
            acc = 0
            for c in reversed(coeffs):
                acc = acc * s + c
            if acc == 0:
                return True
    return False


@dataclass(frozen=True)
class PrimeIdeal:
    """Abstract prime of O_K above p with residue degree f, ramification
    index e, and a slot index disambiguating primes above the same p."""

    p: int
    f: int
    e: int
    slot: int
    norm: int

    def sort_key(self) -> tuple[int, int, int]:
        return (self.norm, self.p, self.slot)


@dataclass(frozen=True)
class DecompositionReport:
    p: int
    primes: tuple[PrimeIdeal, ...]
    ramified_in_K: bool
    index_divisor: bool


# ---------------------------------------------------------------------------
# Dedekind's criterion

def is_index_divisor(spec: NumberFieldSpec, p: int) -> bool:
    """True iff p divides [O_K : Z[theta]] by Dedekind's criterion applied
    to the minimal polynomial mod p."""
    fbar = _reduce(spec.min_poly, p)
    der = _deriv(fbar, p)
    g = _gcd(fbar, der, p) if der else fbar
    if len(g) == 1:
        return False  # squarefree mod p: p is unramified in Z[theta]
    gbar = _radical(fbar, p)
    hbar = _divexact(fbar, gbar, p)
    # lift to Z[x] with coefficients in [0, p), multiply, subtract f, divide by p
    G = list(gbar)
    H = list(hbar)
    prod = [0] * (len(G) + len(H) - 1)
    for i, a in enumerate(G):
        for j, b in enumerate(H):
            prod[i + j] += a * b
    diff = list(spec.min_poly)
    for i, c in enumerate(prod):
        diff[i] = c - diff[i] if i < len(diff) else c
    for i in range(len(prod), len(diff)):
        diff[i] = -diff[i]
    assert all(c % p == 0 for c in diff)
    tbar = _reduce([c // p for c in diff], p)
    acc = _gcd(tbar, gbar, p) if tbar else gbar
    acc = _gcd(acc, hbar, p)
    return len(acc) > 1


# ---------------------------------------------------------------------------
# decomposition

def decompose_prime(spec: NumberFieldSpec, p: int) -> DecompositionReport:
    """Decompose pO_K from the factorization shape of min_poly mod p.

    Index-divisor primes produce a report with no primes; callers that
    stream must treat that as fatal for this field.
    """
    if not spec.monogenic_asserted:
        raise ValueError(f"field {spec.name!r} is not asserted monogenic")
    fbar = _reduce(spec.min_poly, p)
    der = _deriv(fbar, p)
    g = _gcd(fbar, der, p) if der else fbar
    if len(g) == 1:
        shape = [(f, 1, c) for f, c in sorted(_ddf_counts(fbar, p).items())]
        ramified = False
    else:
        if is_index_divisor(spec, p):
            # the true decomposition is invisible to Z[theta]; claim nothing
            return DecompositionReport(p=p, primes=(), ramified_in_K=False,
                                       index_divisor=True)
        shape = sorted(factor_multiplicities(FpPoly(p, fbar)))
        shape = [(f, e, c) for f, e, c in shape]
        ramified = any(e > 1 for _f, e, _c in shape)
    primes = []
    slot = 0
    for f, e, count in sorted(shape):
        norm = p**f
        for _ in range(count):
            primes.append(PrimeIdeal(p=p, f=f, e=e, slot=slot, norm=norm))
            slot += 1
    return DecompositionReport(p=p, primes=tuple(primes),
                               ramified_in_K=ramified, index_divisor=False)


def sieve_primes(n: int) -> list[int]:
    """Rational primes <= n by a byte sieve."""
    if n < 2:
        return []
    flags = bytearray([1]) * (n + 1)
    flags[0] = flags[1] = 0
    for i in range(2, math.isqrt(n) + 1):
        if flags[i]:
            flags[i * i :: i] = bytearray((n - i * i) // i + 1)
    return [i for i in range(2, n + 1) if flags[i]]


def _check_bound(x_max: int) -> None:
    if x_max >= NORM_LIMIT:
        raise NormOverflowError(f"bound {x_max} exceeds the {NORM_BITS}-bit norm budget")


def prime_ideal_stream(spec: NumberFieldSpec, x_max: int) -> list[PrimeIdeal]:
    """Every prime ideal with norm <= x_max, sorted by (norm, p, slot).

    Raises IndexDivisorError if a prime dividing the index is encountered:
    for such p the minimal polynomial does not see the true decomposition.
    """
    return list(cached_stream(spec, x_max))


@lru_cache(maxsize=8)
def cached_stream(spec: NumberFieldSpec, x_max: int) -> tuple[PrimeIdeal, ...]:
    """Materialized stream shared by the series operations; treat as
    read-only."""
    return tuple(_build_stream(spec, x_max))


def _build_stream(spec: NumberFieldSpec, x_max: int) -> list[PrimeIdeal]:
    _check_bound(x_max)
    out: list[PrimeIdeal] = []
    if x_max < 2:
        return out
    d = spec.degree
    for p in sieve_primes(x_max):
        max_f = 1
        while p ** (max_f + 1) <= x_max and max_f < d:
            max_f += 1
        fbar = _reduce(spec.min_poly, p)
        der = _deriv(fbar, p)
        g = _gcd(fbar, der, p) if der else fbar
        if len(g) == 1:
            counts = _ddf_counts(fbar, p, max_deg=max_f)
            slot = 0
            for f in sorted(counts):
                norm = p**f
                for _ in range(counts[f]):
                    out.append(PrimeIdeal(p=p, f=f, e=1, slot=slot, norm=norm))
                    slot += 1
        else:
            report = decompose_prime(spec, p)
            if report.index_divisor:
                raise IndexDivisorError(p, spec.name)
            out.extend(q for q in report.primes if q.norm <= x_max)
    out.sort(key=PrimeIdeal.sort_key)
    return out


# ---------------------------------------------------------------------------
# ideal counting and the zeta residue

@dataclass(frozen=True)
class IdealCount:
    x_max: int
    count: int
    ratio: float


def count_ideals(spec: NumberFieldSpec, x_max: int) -> IdealCount:
    """Exact number of ideals (unit ideal included) with norm <= x_max;
    the ratio count/x_max estimates the zeta residue with error O(x^{-1/d})."""
    if x_max < 1:
        raise ValueError("x_max must be >= 1")
    _check_bound(x_max)
    norms = [q.norm for q in prime_ideal_stream(spec, x_max)]
    count = 1 + _count_products(norms, x_max)
    return IdealCount(x_max=x_max, count=count, ratio=count / x_max)


def _count_products(norms: list[int], budget: int) -> int:
    """Number of nonempty prime-power products with norm <= budget, choosing
    primes at increasing stream index."""
    n = len(norms)

    def rec(start: int, budget: int) -> int:
        total = 0
        for k in range(start, n):
            q = norms[k]
            if q > budget:
                break
            b = budget // q
            while True:
                total += 1 + rec(k + 1, b)
                if q > b:
                    break
                b //= q
        return total

    return rec(0, budget)


def residue_from_invariants(spec: NumberFieldSpec) -> float:
    """Zeta residue 2^r1 (2 pi)^r2 Reg h / (w sqrt|disc|) from invariants."""
    inv = spec.invariants
    if inv is None:
        raise InvariantsUnavailableError(
            f"field {spec.name!r} has no invariants; use a count_ideals estimate")
    return (2.0**inv.r1 * (2.0 * math.pi) ** inv.r2 * inv.reg * inv.h
            / (inv.w * math.sqrt(abs(inv.disc))))


def residue(spec: NumberFieldSpec, x_max: int = 10**6) -> float:
    """Zeta residue from invariants when supplied, else the count_ideals
    ratio at x_max."""
    try:
        return residue_from_invariants(spec)
    except InvariantsUnavailableError:
        return count_ideals(spec, x_max).ratio


def stream_norms(primes: Iterable[PrimeIdeal]) -> list[int]:
    return [q.norm for q in primes]
