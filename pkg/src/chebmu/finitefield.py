"""Univariate polynomial arithmetic over F_p and F_{p^f}, reduced to what
prime decomposition and Frobenius cycle types need: factorization *degree
patterns* via distinct-degree GCD stripping, never explicit factors.

Raw polynomials are tuples of ints in ascending degree order with trailing
zeros stripped; the zero polynomial is the empty tuple. The hot path
(decomposing every rational prime up to the norm bound) runs on these raw
tuples; the public types wrap them with validation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .errors import NormOverflowError

NORM_BITS = 62


# ---------------------------------------------------------------------------
# raw tuple arithmetic over F_p

def _trim(c: list) -> tuple:
    n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    return tuple(c[:n])


def _reduce(coeffs: Sequence[int], p: int) -> tuple:
    return _trim([c % p for c in coeffs])


def _mul(a: tuple, b: tuple, p: int) -> tuple:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _trim([c % p for c in out])


def _rem(a: tuple, m: tuple, p: int) -> tuple:
    """a mod m for monic m."""
    dm = len(m) - 1
    if len(a) <= dm:
        return a
    r = list(a)
    for i in range(len(r) - 1, dm - 1, -1):
        c = r[i]
        if c:
            r[i] = 0
            base = i - dm
            for k in range(dm):
                r[base + k] = (r[base + k] - c * m[k]) % p
    return _trim(r)


def _mulrem(a: tuple, b: tuple, m: tuple, p: int) -> tuple:
    return _rem(_mul(a, b, p), m, p)


def _powrem(a: tuple, e: int, m: tuple, p: int) -> tuple:
    """a^e mod m, binary exponentiation with reduction at each square."""
    result = (1 % p,)
    base = _rem(a, m, p)
    while e:
        if e & 1:
            result = _mulrem(result, base, m, p)
        e >>= 1
        if e:
            base = _mulrem(base, base, m, p)
    return result


def _monic(a: tuple, p: int) -> tuple:
    lc = a[-1]
    if lc == 1:
        return a
    inv = pow(lc, p - 2, p)
    return tuple((c * inv) % p for c in a)


def _gcd(a: tuple, b: tuple, p: int) -> tuple:
    """Monic gcd; returns () only if both inputs are zero."""
    while b:
        b = _monic(b, p)
        a, b = b, _rem(a, b, p)
    return _monic(a, p) if a else a


def _deriv(a: tuple, p: int) -> tuple:
    return _trim([(i * a[i]) % p for i in range(1, len(a))])


def _divexact(a: tuple, b: tuple, p: int) -> tuple:
    """a / b for monic b dividing a exactly."""
    if not a:
        return ()
    db = len(b) - 1
    r = list(a)
    q = [0] * (len(a) - db)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i]
        if c:
            q[i - db] = c
            r[i] = 0
            base = i - db
            for k in range(db):
                r[base + k] = (r[base + k] - c * b[k]) % p
    return _trim(q)


def _pth_root(a: tuple, p: int) -> tuple:
    # over F_p a polynomial with zero derivative is g(x^p) = g(x)^p
    return _trim([a[i] for i in range(0, len(a), p)])


def _radical(a: tuple, p: int) -> tuple:
    """Product of the distinct monic irreducible factors of monic a."""
    if len(a) <= 1:
        return (1,)
    d = _deriv(a, p)
    if not d:
        return _radical(_pth_root(a, p), p)
    g = _gcd(a, d, p)
    if len(g) == 1:
        return a
    w = _divexact(a, g, p)  # factors with multiplicity not divisible by p
    # strip w's irreducibles out of g; what survives is a p-th power
    y = g
    c = _gcd(y, w, p)
    while len(c) > 1:
        y = _divexact(y, c, p)
        c = _gcd(y, w, p)
    if len(y) == 1:
        return w
    return _mul(w, _radical(_pth_root(y, p), p), p)


def _ddf_counts(f: tuple, p: int, max_deg: int | None = None) -> dict[int, int]:
    """Degree -> factor count for monic squarefree f over F_p.

    With max_deg set, only degrees <= max_deg are reported (partial DDF,
    used when higher-degree factors would exceed the norm bound anyway).
    """
    counts: dict[int, int] = {}
    fstar = f
    h = _rem((0, 1), fstar, p)
    i = 0
    limit = max_deg if max_deg is not None else len(f) - 1
    while len(fstar) > 1 and i < limit:
        i += 1
        deg_left = len(fstar) - 1
        if deg_left < 2 * i:
            # everything of degree < i is stripped: fstar itself is irreducible
            if deg_left <= limit:
                counts[deg_left] = counts.get(deg_left, 0) + 1
            return counts
        h = _powrem(h, p, fstar, p)
        hx = _sub(h, (0, 1), p)
        g = _gcd(fstar, hx, p) if hx else fstar
        if len(g) > 1:
            counts[i] = counts.get(i, 0) + (len(g) - 1) // i
            fstar = _divexact(fstar, g, p)
            h = _rem(h, fstar, p)
    if max_deg is None and len(fstar) > 1:
        d = len(fstar) - 1
        counts[d] = counts.get(d, 0) + 1
    return counts


def _sub(a: tuple, b: tuple, p: int) -> tuple:
    n = max(len(a), len(b))
    out = [0] * n
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return _trim(out)


# ---------------------------------------------------------------------------
# public types

@dataclass(frozen=True)
class FpPoly:
    """Polynomial over F_p: coefficients ascending, trailing zeros stripped."""

    p: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.p < 2:
            raise ValueError(f"modulus {self.p} is not a prime")
        if any(not (0 <= c < self.p) for c in self.coeffs):
            raise ValueError("coefficients must lie in [0, p)")
        if self.coeffs and self.coeffs[-1] == 0:
            raise ValueError("leading coefficient must be nonzero")

    @classmethod
    def from_integer_coeffs(cls, coeffs: Sequence[int], p: int) -> "FpPoly":
        return cls(p, _reduce(coeffs, p))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # zero polynomial: -1

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1


@dataclass(frozen=True)
class FactorPattern:
    """Multiset of (degree, count) for the distinct irreducible factors.

    When squarefree is False the entries describe the squarefree part only
    and must not be used for Artin classification.
    """

    entries: tuple[tuple[int, int], ...]
    squarefree: bool

    def total_degree(self) -> int:
        return sum(d * c for d, c in self.entries)

    def degrees(self) -> tuple[int, ...]:
        """Expanded sorted degree tuple, e.g. {(1,2),(2,1)} -> (1, 1, 2)."""
        out: list[int] = []
        for d, c in self.entries:
            out.extend([d] * c)
        return tuple(out)


def _pattern_from_counts(counts: dict[int, int], squarefree: bool) -> FactorPattern:
    return FactorPattern(tuple(sorted(counts.items())), squarefree)


def _check_monic_nonconstant(f: FpPoly) -> None:
    if f.degree < 1:
        raise ValueError("polynomial must have degree >= 1")
    if not f.is_monic:
        raise ValueError("polynomial must be monic")


def ddf_pattern(f: FpPoly) -> FactorPattern:
    """Distinct-degree factor pattern of monic f over F_p.

    Multiplicities are collapsed: a non-squarefree f is flagged and the
    pattern describes its radical.
    """
    _check_monic_nonconstant(f)
    c = f.coeffs
    p = f.p
    d = _deriv(c, p)
    g = _gcd(c, d, p) if d else c
    if len(g) == 1:
        return _pattern_from_counts(_ddf_counts(c, p), True)
    rad = _radical(c, p)
    return _pattern_from_counts(_ddf_counts(rad, p), False)


def is_irreducible(f: FpPoly) -> bool:
    _check_monic_nonconstant(f)
    pat = ddf_pattern(f)
    return pat.squarefree and pat.entries == ((f.degree, 1),)


def factor_multiplicities(f: FpPoly) -> tuple[tuple[int, int, int], ...]:
    """(degree, multiplicity, count) triples for monic f over F_p.

    Computed by radical peeling: repeatedly divide out the radical and run
    the degree pattern on each layer; a factor of multiplicity e shows up in
    the first e layers.
    """
    _check_monic_nonconstant(f)
    p = f.p
    layers: list[dict[int, int]] = []
    h = f.coeffs
    while len(h) > 1:
        rad = _radical(h, p)
        layers.append(_ddf_counts(rad, p))
        h = _divexact(h, rad, p)
    out: list[tuple[int, int, int]] = []
    degrees = sorted({d for layer in layers for d in layer})
    for d in degrees:
        col = [layer.get(d, 0) for layer in layers] + [0]
        for e in range(1, len(layers) + 1):
            n = col[e - 1] - col[e]
            if n:
                out.append((d, e, n))
    return tuple(out)


# ---------------------------------------------------------------------------
# extension fields F_{p^f} = F_p[t]/(h)

@lru_cache(maxsize=None)
def find_irreducible(p: int, degree: int) -> tuple[int, ...]:
    """First monic irreducible of the given degree over F_p, searching
    constant-first coefficient vectors in ascending order. Deterministic."""
    if degree == 1:
        return (0, 1)
    n = 0
    while True:
        lower = []
        k = n
        for _ in range(degree):
            lower.append(k % p)
            k //= p
        if k:
            raise ValueError(f"no irreducible of degree {degree} over F_{p}")
        cand = FpPoly(p, tuple(lower) + (1,))
        if is_irreducible(cand):
            return cand.coeffs
        n += 1


class ResidueField:
    """F_{p^f} as F_p[t]/(h); elements are coefficient tuples of length f."""

    def __init__(self, p: int, f: int):
        self.p = p
        self.f = f
        self.order = p**f
        self.modulus = find_irreducible(p, f)
        self.zero = (0,) * f
        self.one = (1,) + (0,) * (f - 1)

    def embed(self, c: int) -> tuple:
        return (c % self.p,) + (0,) * (self.f - 1)

    def add(self, a: tuple, b: tuple) -> tuple:
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a: tuple, b: tuple) -> tuple:
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def mul(self, a: tuple, b: tuple) -> tuple:
        p, f, m = self.p, self.f, self.modulus
        out = [0] * (2 * f - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        for i in range(2 * f - 2, f - 1, -1):
            c = out[i] % p
            if c:
                base = i - f
                for k in range(f):
                    out[base + k] -= c * m[k]
            out[i] = 0
        return tuple(c % p for c in out[:f])

    def pow(self, a: tuple, e: int) -> tuple:
        result = self.one
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return result

    def inv(self, a: tuple) -> tuple:
        if a == self.zero:
            raise ZeroDivisionError("inverse of zero in residue field")
        return self.pow(a, self.order - 2)


# polynomials over a ResidueField: lists/tuples of element tuples

def _xtrim(c: list, zero: tuple) -> list:
    n = len(c)
    while n and c[n - 1] == zero:
        n -= 1
    return c[:n]


def _xmul(a: list, b: list, F: ResidueField) -> list:
    if not a or not b:
        return []
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai != F.zero:
            for j, bj in enumerate(b):
                if bj != F.zero:
                    out[i + j] = F.add(out[i + j], F.mul(ai, bj))
    return _xtrim(out, F.zero)


def _xrem(a: list, m: list, F: ResidueField) -> list:
    dm = len(m) - 1
    if len(a) <= dm:
        return list(a)
    r = list(a)
    inv_lc = F.inv(m[-1])
    for i in range(len(r) - 1, dm - 1, -1):
        c = r[i]
        if c != F.zero:
            q = F.mul(c, inv_lc)
            r[i] = F.zero
            base = i - dm
            for k in range(dm):
                if m[k] != F.zero:
                    r[base + k] = F.sub(r[base + k], F.mul(q, m[k]))
    return _xtrim(r, F.zero)


def _xpowrem(a: list, e: int, m: list, F: ResidueField) -> list:
    result = [F.one]
    base = _xrem(a, m, F)
    while e:
        if e & 1:
            result = _xrem(_xmul(result, base, F), m, F)
        e >>= 1
        if e:
            base = _xrem(_xmul(base, base, F), m, F)
    return result


def _xmonic(a: list, F: ResidueField) -> list:
    inv = F.inv(a[-1])
    return [F.mul(c, inv) for c in a]


def _xgcd(a: list, b: list, F: ResidueField) -> list:
    while b:
        b = _xmonic(b, F)
        a, b = b, _xrem(a, b, F)
    return _xmonic(a, F) if a else a


def _xderiv(a: list, F: ResidueField) -> list:
    p = F.p
    out = []
    for i in range(1, len(a)):
        k = i % p
        out.append(tuple((k * c) % p for c in a[i]))
    return _xtrim(out, F.zero)


def _xdivexact(a: list, b: list, F: ResidueField) -> list:
    if not a:
        return []
    db = len(b) - 1
    r = list(a)
    q = [F.zero] * (len(a) - db)
    inv_lc = F.inv(b[-1])
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i]
        if c != F.zero:
            qc = F.mul(c, inv_lc)
            q[i - db] = qc
            r[i] = F.zero
            base = i - db
            for k in range(db):
                if b[k] != F.zero:
                    r[base + k] = F.sub(r[base + k], F.mul(qc, b[k]))
    return _xtrim(q, F.zero)


def _xpth_root(a: list, F: ResidueField) -> list:
    # coefficientwise inverse Frobenius: c -> c^{p^{f-1}}
    e = F.p ** (F.f - 1)
    return [F.pow(a[i], e) for i in range(0, len(a), F.p)]


def _xradical(a: list, F: ResidueField) -> list:
    if len(a) <= 1:
        return [F.one]
    d = _xderiv(a, F)
    if not d:
        return _xradical(_xpth_root(a, F), F)
    g = _xgcd(a, d, F)
    if len(g) == 1:
        return list(a)
    w = _xdivexact(a, g, F)
    y = g
    c = _xgcd(y, w, F)
    while len(c) > 1:
        y = _xdivexact(y, c, F)
        c = _xgcd(y, w, F)
    if len(y) == 1:
        return w
    return _xmul(w, _xradical(_xpth_root(y, F), F), F)


def _xddf_counts(f: list, F: ResidueField) -> dict[int, int]:
    counts: dict[int, int] = {}
    fstar = list(f)
    x = [F.zero, F.one]
    h = _xrem(x, fstar, F)
    i = 0
    while len(fstar) > 1:
        i += 1
        deg_left = len(fstar) - 1
        if deg_left < 2 * i:
            counts[deg_left] = counts.get(deg_left, 0) + 1
            return counts
        h = _xpowrem(h, F.order, fstar, F)
        hx = list(h)
        while len(hx) < 2:
            hx.append(F.zero)
        hx[1] = F.sub(hx[1], F.one)
        hx = _xtrim(hx, F.zero)
        g = _xgcd(fstar, hx, F) if hx else fstar
        if len(g) > 1:
            counts[i] = counts.get(i, 0) + (len(g) - 1) // i
            fstar = _xdivexact(fstar, g, F)
            h = _xrem(h, fstar, F)
    return counts


def pattern_over_extension(g: Sequence[int], p: int, f_res: int) -> FactorPattern:
    """Distinct-degree pattern of an integer polynomial g over F_{p^f_res}.

    The extension is F_p[t]/(h) with h the first monic irreducible of degree
    f_res in ascending coefficient order, so identical inputs always see the
    identical internal modulus. For f_res = 1 this is plain F_p arithmetic
    and the prime-field path is used directly.
    """
    if not g or g[-1] != 1:
        raise ValueError("g must be monic with integer coefficients")
    deg = len(g) - 1
    if deg < 1:
        raise ValueError("g must have degree >= 1")
    if f_res < 1:
        raise ValueError("f_res must be >= 1")
    if deg * f_res * math.log2(p) > NORM_BITS:
        raise NormOverflowError(
            f"deg(g)={deg}, f={f_res}, p={p} exceeds the {NORM_BITS}-bit norm budget")
    if f_res == 1:
        reduced = _reduce(g, p)
        if len(reduced) - 1 < deg:
            # leading coefficient vanished: cannot happen for monic g, p >= 2
            raise ValueError("g must stay monic mod p")
        return ddf_pattern(FpPoly(p, reduced))
    F = ResidueField(p, f_res)
    gx = _xtrim([F.embed(c) for c in g], F.zero)
    d = _xderiv(gx, F)
    gcd = _xgcd(gx, d, F) if d else gx
    if len(gcd) == 1:
        return _pattern_from_counts(_xddf_counts(gx, F), True)
    rad = _xradical(gx, F)
    return _pattern_from_counts(_xddf_counts(rad, F), False)
