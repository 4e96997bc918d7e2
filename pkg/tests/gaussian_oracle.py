"""Independent Z[i] oracle for tests.

Ideals of Z[i] correspond to canonical Gaussian integers (a > 0, b >= 0,
one representative per associate class). Prime elements are generated from
the mod-4 splitting law and factorization is by exact trial division of
Gaussian integers, so none of the package's polynomial machinery is
involved.
"""

from dataclasses import dataclass


def rational_primes(n):
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, int(n**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray((n - i * i) // i + 1)
    return [i for i in range(2, n + 1) if sieve[i]]


def canonical(a, b):
    """Canonical associate of a+bi: the representative with a > 0, b >= 0."""
    for _ in range(4):
        if a > 0 and b >= 0:
            return (a, b)
        a, b = -b, a
    raise AssertionError("zero has no canonical associate")


@dataclass(frozen=True)
class GPrime:
    a: int
    b: int
    norm: int
    p: int  # rational prime below
    f: int  # residue degree
    e: int  # ramification index over p


def gaussian_primes(x_max):
    """Prime elements of Z[i] with norm <= x_max, one per ideal."""
    out = []
    for p in rational_primes(x_max):
        if p == 2:
            out.append(GPrime(1, 1, 2, 2, 1, 2))
        elif p % 4 == 1:
            a = 1
            while True:
                b2 = p - a * a
                b = int(b2**0.5)
                if b * b == b2:
                    break
                a += 1
            ca, cb = canonical(a, b)
            da, db = canonical(a, -b)
            first, second = sorted([(ca, cb), (da, db)])
            out.append(GPrime(first[0], first[1], p, p, 1, 1))
            out.append(GPrime(second[0], second[1], p, p, 1, 1))
        else:
            if p * p <= x_max:
                out.append(GPrime(p, 0, p * p, p, 2, 1))
    out.sort(key=lambda g: (g.norm, g.p, g.a, g.b))
    return out


def gdiv(a, b, c, d):
    """(a+bi)/(c+di) if exact, else None."""
    n = c * c + d * d
    re = a * c + b * d
    im = b * c - a * d
    if re % n or im % n:
        return None
    return (re // n, im // n)


def factor_ideal(a, b, primes):
    """Multiset {GPrime: multiplicity} for the ideal (a+bi)."""
    a, b = canonical(a, b)
    norm = a * a + b * b
    out = {}
    for g in primes:
        if g.norm > norm:
            break
        while True:
            q = gdiv(a, b, g.a, g.b)
            if q is None:
                # associates generate the same ideal: try the unit rotations
                rotated = False
                for ua, ub in ((-g.b, g.a), (-g.a, -g.b), (g.b, -g.a)):
                    q = gdiv(a, b, ua, ub)
                    if q is not None:
                        rotated = True
                        break
                if not rotated:
                    break
            a, b = q
            norm = a * a + b * b
            out[g] = out.get(g, 0) + 1
    assert norm == 1, "incomplete factorization"
    return out


def all_ideals(x_max):
    """Every nonzero ideal of norm <= x_max as a canonical (a, b) pair."""
    out = []
    amax = int(x_max**0.5) + 1
    for a in range(1, amax + 1):
        for b in range(0, amax + 1):
            n = a * a + b * b
            if 1 <= n <= x_max:
                out.append((a, b, n))
    return out


def classify_cubic(g_prime):
    """Cycle type of x^3+x+1 over the residue field of a small Gaussian
    prime, by exhaustive root counting. Returns '1', '12', '123', or
    'ramified' (repeated roots / 31 | disc)."""
    p, f = g_prime.p, g_prime.f
    if p == 31:
        return "ramified"
    if f == 1:
        roots = sum(1 for t in range(p) if (t * t * t + t + 1) % p == 0)
    else:
        # residue field Z[i]/p for inert p (p % 4 == 3)
        roots = 0
        for u in range(p):
            for v in range(p):
                # (u+vi)^3 + (u+vi) + 1
                re = u * u * u - 3 * u * v * v + u + 1
                im = 3 * u * u * v - v * v * v + v
                if re % p == 0 and im % p == 0:
                    roots += 1
    if roots == 3:
        return "1"
    if roots == 1:
        return "12"
    assert roots == 0
    return "123"
