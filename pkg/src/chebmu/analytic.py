"""Dickman's function on a fixed grid, the logarithmic integral, and exact
smooth-ideal counts against the X * rho(log X / log Y) prediction."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import NormOverflowError

BETA_MAX = 20.0
GRID_STEP = 2.0**-10


@dataclass(frozen=True)
class DickmanTable:
    """rho sampled at step h on [0, beta_max].

    rho = 1 on [0, 1]; past that the delay equation -t rho'(t) = rho(t-1) is
    advanced by trapezoidal steps of the equivalent sliding-window integral
    t rho(t) = int_{t-1}^t rho. (The textbook form rho(b) = rho(a) -
    int_a^b rho(t-1)/t dt carries an absolute error floor around 1e-7 in
    doubles, which swamps rho below beta ~ 9 and even turns it negative;
    the window form keeps the error relative, so positivity and the
    1/Gamma(beta+1) bound survive out to beta_max.) With h a power of two,
    t - 1 is always on the grid, so no interpolation enters the
    construction; the window integral is re-summed from the grid at every
    integer knot to stop rounding drift.
    """

    step: float
    beta_max: float
    values: tuple[float, ...]

    @classmethod
    def build(cls, step: float = GRID_STEP, beta_max: float = BETA_MAX) -> "DickmanTable":
        per = round(1.0 / step)
        if per * step != 1.0:
            raise ValueError("step must divide 1 exactly (use a power of two)")
        n = round(beta_max / step)
        vals = [1.0] * (per + 1)
        window = 1.0  # int_{beta-1}^{beta} rho at beta = 1
        for k in range(per, n):
            t1 = (k + 1) * step
            rhs = (window + 0.5 * step * vals[k]
                   - 0.5 * step * (vals[k + 1 - per] + vals[k - per]))
            new = rhs / (t1 - 0.5 * step)
            vals.append(new)
            if (k + 1) % per:
                window = t1 * new
            else:
                # fresh trapezoid over [t1 - 1, t1] from the stored grid
                lo = k + 1 - per
                window = 0.5 * step * (vals[lo] + vals[k + 1])
                window += step * math.fsum(vals[lo + 1 : k + 1])
        return cls(step=step, beta_max=beta_max, values=tuple(vals))

    def rho(self, beta: float) -> float:
        """Linear interpolation between grid nodes; out of range raises."""
        if beta < 0 or beta > self.beta_max or math.isnan(beta):
            raise ValueError(f"beta = {beta} outside [0, {self.beta_max}]")
        if beta <= 1.0:
            return 1.0
        pos = beta / self.step
        k = int(pos)
        if k >= len(self.values) - 1:
            return self.values[-1]
        frac = pos - k
        return self.values[k] * (1.0 - frac) + self.values[k + 1] * frac

    def rho_or_bound(self, beta: float) -> tuple[float, bool]:
        """(rho(beta), False) inside the grid; past beta_max falls back to
        the 1/Gamma(beta+1) upper bound, flagged bound-only."""
        if beta <= self.beta_max:
            return self.rho(beta), False
        return gamma_bound(beta), True


def gamma_bound(beta: float) -> float:
    """The upper bound rho(beta) <= 1/Gamma(beta + 1)."""
    return math.exp(-math.lgamma(beta + 1.0))


@lru_cache(maxsize=1)
def default_table() -> DickmanTable:
    return DickmanTable.build()


def dickman_rho(beta: float) -> float:
    return default_table().rho(beta)


# ---------------------------------------------------------------------------
# logarithmic integral int_2^x dt/log t by adaptive Simpson

def _simpson(f, a: float, fa: float, b: float, fb: float) -> tuple[float, float, float]:
    m = 0.5 * (a + b)
    fm = f(m)
    return m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb)


def _adaptive(f, a, fa, b, fb, whole, m, fm, eps, depth):
    lm, flm, left = _simpson(f, a, fa, m, fm)
    rm, frm, right = _simpson(f, m, fm, b, fb)
    delta = left + right - whole
    if depth <= 0 or abs(delta) <= 15.0 * eps:
        return left + right + delta / 15.0
    return (_adaptive(f, a, fa, m, fm, left, lm, flm, 0.5 * eps, depth - 1)
            + _adaptive(f, m, fm, b, fb, right, rm, frm, 0.5 * eps, depth - 1))


def li(x: float, rel_tol: float = 1e-9) -> float:
    """int_2^x dt / log t (offset fixed at 2, stated with every report)."""
    if x < 2:
        raise ValueError(f"li is defined for x >= 2, got {x}")
    if x == 2:
        return 0.0

    def f(t: float) -> float:
        return 1.0 / math.log(t)

    # crude scale for the absolute tolerance; refined by the 15*eps rule
    scale = (x - 2.0) / math.log(x)
    eps = max(rel_tol * scale, 1e-300)
    fa, fb = f(2.0), f(x)
    m, fm, whole = _simpson(f, 2.0, fa, x, fb)
    return _adaptive(f, 2.0, fa, x, fb, whole, m, fm, eps, 60)


# ---------------------------------------------------------------------------
# smooth ideals

@dataclass(frozen=True)
class SmoothCount:
    """Exact count of ideals with norm <= x and all prime-divisor norms <= y,
    against the x * rho(log x / log y) prediction."""

    x: int
    y: int
    exact: int
    predicted: float
    rel_error: float


def smooth_count(spec, x: int, y: int) -> SmoothCount:
    """Psi(x, y) by prime-power enumeration over primes of norm <= y.

    y = 1 is allowed (only the unit ideal is 1-smooth; the prediction is 0).
    """
    from .numberfield import NORM_LIMIT, count_ideals, prime_ideal_stream

    if x < 1 or y < 1:
        raise ValueError("bounds must be >= 1")
    if y > x:
        raise ValueError("smoothness bound y must be <= x")
    if x >= NORM_LIMIT:
        raise NormOverflowError(f"bound {x} exceeds the norm budget")
    if y == 1:
        return SmoothCount(x=x, y=y, exact=1, predicted=0.0, rel_error=1.0)
    if y == x:
        exact = count_ideals(spec, x).count
    else:
        norms = [q.norm for q in prime_ideal_stream(spec, y)]
        exact = 1 + _count_smooth(norms, x)
    beta = math.log(x) / math.log(y)
    rho, _bound_only = default_table().rho_or_bound(beta)
    predicted = x * rho
    rel = abs(exact - predicted) / exact
    return SmoothCount(x=x, y=y, exact=exact, predicted=predicted, rel_error=rel)


def _count_smooth(norms: list[int], budget: int) -> int:
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
