"""Squarefree-ideal enumeration and every Mobius-weighted partial sum the
artifact reports: the per-class salient sums S_C(X), the maximal-prime
counting sums over all ideals, Mertens-type sums, the theta/psi prime sums,
and the brute-force minimal/maximal duality check.

Summation layout: enumeration roots (stream index of the smallest prime
factor) are split into a fixed number of stripes; each stripe accumulates
compensated partial sums per checkpoint bucket in DFS order, stripes are
merged in stripe order, then buckets are prefix-merged in checkpoint order.
The reduction tree depends only on the input, never on the worker count,
so reports are byte-identical for any --workers value.
"""

from __future__ import annotations

import math
import multiprocessing
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from .errors import NormOverflowError
from .finitefield import NORM_BITS, pattern_over_extension
from .galois import RelativeExtension, classify_stream, eligible_min_code
from .numberfield import (
    NumberFieldSpec,
    PrimeIdeal,
    cached_stream,
    residue,
)

N_STRIPES = 256


# ---------------------------------------------------------------------------
# squarefree ideals

@dataclass(frozen=True)
class SquarefreeIdeal:
    """Product of distinct prime ideals, factors sorted by (norm, p, slot).

    salient means exactly one factor attains the minimal norm; that factor
    is factors[0].
    """

    factors: tuple[PrimeIdeal, ...]
    norm: int
    mu: int
    min_norm: int
    max_norm: int
    salient: bool

    def __post_init__(self):
        keys = [q.sort_key() for q in self.factors]
        if not keys:
            raise ValueError("the unit ideal is not represented")
        if any(a >= b for a, b in zip(keys, keys[1:])):
            raise ValueError("factors must be strictly sorted (distinct primes)")
        prod = 1
        for q in self.factors:
            prod *= q.norm
        if prod != self.norm:
            raise ValueError("norm must be the product of the factor norms")
        if self.mu != (-1) ** len(self.factors):
            raise ValueError("mu must be (-1)^k")
        if self.min_norm != self.factors[0].norm or self.max_norm != self.factors[-1].norm:
            raise ValueError("min/max norms disagree with the factors")
        want_salient = len(self.factors) == 1 or \
            self.factors[0].norm != self.factors[1].norm
        if self.salient != want_salient:
            raise ValueError("salient flag disagrees with the factors")

    @classmethod
    def from_factors(cls, factors: Sequence[PrimeIdeal]) -> "SquarefreeIdeal":
        fs = tuple(sorted(factors, key=PrimeIdeal.sort_key))
        norm = 1
        for q in fs:
            norm *= q.norm
        return cls(factors=fs, norm=norm, mu=(-1) ** len(fs),
                   min_norm=fs[0].norm, max_norm=fs[-1].norm,
                   salient=len(fs) == 1 or fs[0].norm != fs[1].norm)


def enumerate_squarefree(spec: NumberFieldSpec, x_max: int,
                         ) -> Iterator[SquarefreeIdeal]:
    """Every squarefree ideal with 2 <= norm <= x_max, exactly once, in
    depth-first order over the norm-sorted prime stream."""
    if x_max >= (1 << NORM_BITS):
        raise NormOverflowError(f"bound {x_max} exceeds the norm budget")
    primes = cached_stream(spec, x_max)
    n = len(primes)

    def rec(start: int, factors: tuple, norm: int) -> Iterator[SquarefreeIdeal]:
        for j in range(start, n):
            q = primes[j]
            nn = norm * q.norm
            if nn > x_max:
                break
            fs = factors + (q,)
            yield SquarefreeIdeal(
                factors=fs, norm=nn, mu=(-1) ** len(fs),
                min_norm=fs[0].norm, max_norm=q.norm,
                salient=len(fs) == 1 or fs[0].norm != fs[1].norm)
            yield from rec(j + 1, fs, nn)

    yield from rec(0, (), 1)


# ---------------------------------------------------------------------------
# minimal-prime predicates (the indicator function behind the duality check)

class MinPrimePredicate:
    """Deterministic predicate on primes, applied to minimal prime divisors."""

    name = "predicate"

    def holds(self, prime: PrimeIdeal) -> bool:  # pragma: no cover
        raise NotImplementedError


class ArtinClassIs(MinPrimePredicate):
    """Membership predicate of the salient-ideal class set: the prime is
    unramified over Q and in L/K, with the given Artin class."""

    def __init__(self, ext: RelativeExtension, label: str):
        if label not in ext.labels():
            raise ValueError(f"unknown class label {label!r}")
        self.ext = ext
        self.label = label
        self.name = f"artin_class_is[{label}]"
        self._code = ext.labels().index(label)

    def holds(self, prime: PrimeIdeal) -> bool:
        return eligible_min_code(self.ext, prime) == self._code


class SplitsCompletely(MinPrimePredicate):
    """The defining polynomial splits into distinct linear factors over the
    residue field (and the prime is unramified over Q)."""

    def __init__(self, ext: RelativeExtension):
        self.ext = ext
        self.name = "splits_completely"
        self._cache: dict[tuple[int, int], bool] = {}

    def holds(self, prime: PrimeIdeal) -> bool:
        if prime.e > 1:
            return False
        key = (prime.p, prime.f)
        out = self._cache.get(key)
        if out is None:
            pat = pattern_over_extension(self.ext.g, prime.p, prime.f)
            out = pat.squarefree and all(d == 1 for d, _c in pat.entries)
            self._cache[key] = out
        return out


class LiesOver(MinPrimePredicate):
    """The prime lies over a fixed rational prime; no ramification condition."""

    def __init__(self, p: int):
        self.p = p
        self.name = f"lies_over[{p}]"

    def holds(self, prime: PrimeIdeal) -> bool:
        return prime.p == self.p


@dataclass(frozen=True)
class DualityCheck:
    lhs: int
    rhs: int
    equal: bool


def duality_check(spec: NumberFieldSpec, ext: RelativeExtension,
                  ideal: SquarefreeIdeal, pred: MinPrimePredicate) -> DualityCheck:
    """Verify sum_{J | I} mu(J) f(J) = -Q_pred(I) on a squarefree ideal by
    exhausting the 2^k divisors, where f is the salient-minimal-prime
    indicator induced by pred and Q_pred counts maximal-norm prime divisors
    satisfying pred."""
    fs = ideal.factors
    keys = {q.sort_key() for q in fs}
    if len(keys) != len(fs):
        raise ValueError("duality_check needs a squarefree ideal")
    k = len(fs)
    holds = [pred.holds(q) for q in fs]
    lhs = 0
    for mask in range(1, 1 << k):
        idx = [i for i in range(k) if mask >> i & 1]
        lo = idx[0]
        min_norm = fs[lo].norm
        if len(idx) > 1 and fs[idx[1]].norm == min_norm:
            continue  # not salient: f = 0
        if holds[lo]:
            lhs += (-1) ** len(idx)
    q_pred = sum(1 for i in range(k) if fs[i].norm == ideal.max_norm and holds[i])
    rhs = -q_pred
    return DualityCheck(lhs=lhs, rhs=rhs, equal=lhs == rhs)


# ---------------------------------------------------------------------------
# compensated summation (Kahan-Babuska / Neumaier: true sum = s + c)

def _nadd(s: float, c: float, x: float) -> tuple[float, float]:
    t = s + x
    if abs(s) >= abs(x):
        c += (s - t) + x
    else:
        c += (x - t) + s
    return t, c


# ---------------------------------------------------------------------------
# series container

@dataclass
class SumSeries:
    """Checkpointed accumulators; rows keyed by (series, label).

    Values are exact ints for counting rows and compensated doubles for the
    rest. references mirrors rows where the spec defines a companion column.
    """

    checkpoints: tuple[int, ...]
    boundary_inclusive: bool
    rows: dict[tuple[str, str], tuple]
    references: dict[tuple[str, str], tuple | None]
    kprime: dict[str, float] | None = None

    def value(self, series: str, label: str, x: int):
        i = self.checkpoints.index(x)
        return self.rows[(series, label)][i]

    def merged_with(self, other: "SumSeries") -> "SumSeries":
        if (other.checkpoints != self.checkpoints
                or other.boundary_inclusive != self.boundary_inclusive):
            raise ValueError("series checkpoints/boundary do not match")
        rows = dict(self.rows)
        rows.update(other.rows)
        refs = dict(self.references)
        refs.update(other.references)
        kp = self.kprime or other.kprime
        return SumSeries(self.checkpoints, self.boundary_inclusive, rows, refs, kp)

    def to_tsv(self) -> str:
        out = ["X\tseries\tlabel\tvalue\treference_value\tabs_diff"]
        for i, x in enumerate(self.checkpoints):
            for key, vals in self.rows.items():
                series, label = key
                v = vals[i]
                ref = self.references.get(key)
                vtxt = _fmt(v)
                if ref is None:
                    out.append(f"{x}\t{series}\t{label}\t{vtxt}\t\t")
                else:
                    r = ref[i]
                    out.append(f"{x}\t{series}\t{label}\t{vtxt}\t{_fmt(r)}"
                               f"\t{_fmt(abs(v - r))}")
        return "\n".join(out) + "\n"


def _fmt(v) -> str:
    if isinstance(v, int):
        return str(v)
    return format(v, ".10g")


def _validate_checkpoints(checkpoints: Sequence[int]) -> tuple[int, ...]:
    cps = tuple(int(x) for x in checkpoints)
    if not cps:
        raise ValueError("need at least one checkpoint")
    if any(a >= b for a, b in zip(cps, cps[1:])):
        raise ValueError("checkpoints must be strictly ascending")
    if cps[0] < 1:
        raise ValueError("checkpoints must be >= 1")
    if cps[-1] >= (1 << NORM_BITS):
        raise NormOverflowError("checkpoint exceeds the norm budget")
    return cps


# ---------------------------------------------------------------------------
# stripe workers: module-level for pickling; context installed per process

_CTX: dict = {}


def _init_worker(ctx: dict) -> None:
    global _CTX
    _CTX = ctx


def _bucket_fn(inclusive: bool) -> Callable:
    return bisect_left if inclusive else bisect_right


def _sc_stripe(stripe: int):
    """Salient-ideal sums: one row per class plus a ramified-minimal row.
    Returns (S, C) lists of per-bucket compensated pairs."""
    norms: list = _CTX["norms"]
    codes: list = _CTX["codes"]
    cps: tuple = _CTX["cps"]
    bis = _bucket_fn(_CTX["inclusive"])
    nrows = _CTX["n_classes"] + 1
    n = len(norms)
    m = len(cps)
    bound = cps[-1]
    S = [[0.0] * m for _ in range(nrows)]
    C = [[0.0] * m for _ in range(nrows)]

    def walk(start: int, cur: int, mu: float, Srow: list, Crow: list) -> None:
        # children of an ideal with Mobius value mu contribute mu/N to the
        # (already negated) S row
        for j in range(start, n):
            nn = cur * norms[j]
            if nn > bound:
                break
            b = bis(cps, nn)
            if b < m:
                x = mu / nn
                s = Srow[b]
                t = s + x
                if abs(s) >= abs(x):
                    Crow[b] += (s - t) + x
                else:
                    Crow[b] += (x - t) + s
                Srow[b] = t
            walk(j + 1, nn, -mu, Srow, Crow)

    for r in range(stripe, n, N_STRIPES):
        q0 = norms[r]
        if q0 > bound:
            break
        code = codes[r]
        row = code if code >= 0 else nrows - 1
        Srow = S[row]
        Crow = C[row]
        b = bis(cps, q0)
        if b < m:
            Srow[b], Crow[b] = _nadd(Srow[b], Crow[b], 1.0 / q0)
        for j in range(r + 1, n):
            q = norms[j]
            nn = q0 * q
            if nn > bound:
                break
            if q == q0:
                continue  # tied minimal norm: the whole branch is non-salient
            b = bis(cps, nn)
            if b < m:
                Srow[b], Crow[b] = _nadd(Srow[b], Crow[b], -1.0 / nn)
            walk(j + 1, nn, 1.0, Srow, Crow)
    return S, C


def _mertens_stripe(stripe: int):
    """Mobius rows over squarefree ideals plus theta/psi over primes."""
    norms: list = _CTX["norms"]
    cps: tuple = _CTX["cps"]
    bis = _bucket_fn(_CTX["inclusive"])
    n = len(norms)
    m = len(cps)
    bound = cps[-1]
    mu_int = [0] * m
    S = [[0.0] * m for _ in range(4)]  # mu/N, mu logN/N, theta, psi
    C = [[0.0] * m for _ in range(4)]
    log = math.log

    def walk(start: int, cur: int, mu: int) -> None:
        for j in range(start, n):
            nn = cur * norms[j]
            if nn > bound:
                break
            b = bis(cps, nn)
            if b < m:
                child = -mu
                mu_int[b] += child
                S[0][b], C[0][b] = _nadd(S[0][b], C[0][b], child / nn)
                S[1][b], C[1][b] = _nadd(S[1][b], C[1][b], child * log(nn) / nn)
            walk(j + 1, nn, -mu)

    for r in range(stripe, n, N_STRIPES):
        q0 = norms[r]
        if q0 > bound:
            break
        lg = log(q0)
        b = bis(cps, q0)
        if b < m:
            S[2][b], C[2][b] = _nadd(S[2][b], C[2][b], lg)
            mu_int[b] += -1
            S[0][b], C[0][b] = _nadd(S[0][b], C[0][b], -1.0 / q0)
            S[1][b], C[1][b] = _nadd(S[1][b], C[1][b], -lg / q0)
        pw = q0
        while pw <= bound:
            bp = bis(cps, pw)
            if bp < m:
                S[3][bp], C[3][bp] = _nadd(S[3][bp], C[3][bp], lg)
            if pw > bound // q0:
                break
            pw *= q0
        walk(r + 1, q0, -1)
    return mu_int, S, C


def _qc_stripe(stripe: int):
    """Maximal-prime counting sums over all ideals (prime powers included)."""
    norms: list = _CTX["norms"]
    codes: list = _CTX["codes"]
    cps: tuple = _CTX["cps"]
    bis = _bucket_fn(_CTX["inclusive"])
    ncls = _CTX["n_classes"]
    n = len(norms)
    m = len(cps)
    bound = cps[-1]
    q_int = [0] * m
    qc_int = [[0] * m for _ in range(ncls)]
    S = [[0.0] * m for _ in range(ncls)]  # Q_C / N
    C = [[0.0] * m for _ in range(ncls)]

    def visit(nn: int, tot: int, at_max: tuple) -> None:
        b = bis(cps, nn)
        if b < m:
            q_int[b] += tot
            for cls, k in at_max:
                qc_int[cls][b] += k
                S[cls][b], C[cls][b] = _nadd(S[cls][b], C[cls][b], k / nn)

    def walk(start: int, cur: int, mx: int, tot: int, at_max: tuple) -> None:
        for j in range(start, n):
            q = norms[j]
            base = cur * q
            if base > bound:
                break
            code = codes[j]
            if q > mx:
                ntot = 1
                nat = ((code, 1),) if code >= 0 else ()
            else:  # q == mx: another prime of the same maximal norm
                ntot = tot + 1
                if code >= 0:
                    d = dict(at_max)
                    d[code] = d.get(code, 0) + 1
                    nat = tuple(sorted(d.items()))
                else:
                    nat = at_max
            nn = base
            while True:
                visit(nn, ntot, nat)
                walk(j + 1, nn, q, ntot, nat)
                if nn > bound // q:
                    break
                nn *= q

    for r in range(stripe, n, N_STRIPES):
        q0 = norms[r]
        if q0 > bound:
            break
        code = codes[r]
        at = ((code, 1),) if code >= 0 else ()
        nn = q0
        while True:
            visit(nn, 1, at)
            walk(r + 1, nn, q0, 1, at)
            if nn > bound // q0:
                break
            nn *= q0
    return q_int, qc_int, S, C


_STRIPE_FNS = {"sc": _sc_stripe, "mertens": _mertens_stripe, "qc": _qc_stripe}


def _dispatch(args):
    kind, stripe = args
    return _STRIPE_FNS[kind](stripe)


def _run_stripes(kind: str, ctx: dict, workers: int) -> list:
    tasks = [(kind, k) for k in range(N_STRIPES)]
    if workers <= 1:
        _init_worker(ctx)
        return [_dispatch(t) for t in tasks]
    try:
        mpctx = multiprocessing.get_context("fork")
    except ValueError:  # pragma: no cover - non-fork platforms
        mpctx = multiprocessing.get_context()
    with mpctx.Pool(processes=workers, initializer=_init_worker,
                    initargs=(ctx,)) as pool:
        chunk = max(1, N_STRIPES // (4 * workers))
        return pool.map(_dispatch, tasks, chunksize=chunk)


def _merge_float_rows(parts: list, pick) -> list[list[tuple[float, float]]]:
    """Merge per-stripe (S, C) bucket arrays in stripe order; returns per-row
    lists of (s, c) pairs per bucket."""
    first_s, first_c = pick(parts[0])
    nrows = len(first_s)
    m = len(first_s[0]) if nrows else 0
    acc_s = [[0.0] * m for _ in range(nrows)]
    acc_c = [[0.0] * m for _ in range(nrows)]
    for part in parts:
        ps, pc = pick(part)
        for r in range(nrows):
            row_s, row_c = ps[r], pc[r]
            for b in range(m):
                s, c = _nadd(acc_s[r][b], acc_c[r][b], row_s[b])
                s, c = _nadd(s, c, row_c[b])
                acc_s[r][b], acc_c[r][b] = s, c
    return [[(acc_s[r][b], acc_c[r][b]) for b in range(m)] for r in range(nrows)]


def _prefix_values(buckets: list[tuple[float, float]]) -> tuple[float, ...]:
    s, c = 0.0, 0.0
    out = []
    for bs, bc in buckets:
        s, c = _nadd(s, c, bs)
        s, c = _nadd(s, c, bc)
        out.append(s + c)
    return tuple(out)


def _prefix_ints(buckets: list[int]) -> tuple[int, ...]:
    acc = 0
    out = []
    for b in buckets:
        acc += b
        out.append(acc)
    return tuple(out)


def _merge_int_rows(parts: list, pick) -> list[list[int]]:
    first = pick(parts[0])
    if first and isinstance(first[0], list):
        nrows, m = len(first), len(first[0])
        acc = [[0] * m for _ in range(nrows)]
        for part in parts:
            rows = pick(part)
            for r in range(nrows):
                for b in range(m):
                    acc[r][b] += rows[r][b]
        return acc
    m = len(first)
    acc1 = [0] * m
    for part in parts:
        row = pick(part)
        for b in range(m):
            acc1[b] += row[b]
    return [acc1]


# ---------------------------------------------------------------------------
# series operations

def _series_context(spec: NumberFieldSpec, ext: RelativeExtension | None,
                    cps: tuple[int, ...], boundary_inclusive: bool) -> dict:
    primes = cached_stream(spec, cps[-1])
    ctx = {
        "norms": [q.norm for q in primes],
        "cps": cps,
        "inclusive": boundary_inclusive,
        "n_classes": len(ext.classes) if ext is not None else 0,
        "codes": classify_stream(ext, primes) if ext is not None else None,
    }
    return ctx


def s_c_series(spec: NumberFieldSpec, ext: RelativeExtension,
               checkpoints: Sequence[int], *, boundary_inclusive: bool = True,
               workers: int = 1) -> SumSeries:
    """S_C(X) = -sum mu(I)/N(I) over salient ideals with 2 <= N(I) <= X whose
    minimal prime is unramified (over Q and in L/K) with Artin class C, one
    row per class, plus the ramified-minimal diagnostic row."""
    cps = _validate_checkpoints(checkpoints)
    ctx = _series_context(spec, ext, cps, boundary_inclusive)
    parts = _run_stripes("sc", ctx, workers)
    merged = _merge_float_rows(parts, lambda p: p)
    rows: dict[tuple[str, str], tuple] = {}
    refs: dict[tuple[str, str], tuple | None] = {}
    for i, entry in enumerate(ext.classes):
        key = ("S_C", entry.label)
        rows[key] = _prefix_values(merged[i])
        refs[key] = tuple(float(entry.weight) for _ in cps)
    key = ("S_ramified_min", "")
    rows[key] = _prefix_values(merged[-1])
    refs[key] = None
    return SumSeries(cps, boundary_inclusive, rows, refs)


def mertens_series(spec: NumberFieldSpec, checkpoints: Sequence[int], *,
                   boundary_inclusive: bool = True, workers: int = 1,
                   c_k: float | None = None) -> SumSeries:
    """Partial sums of mu(I), mu(I)/N(I), mu(I) log N(I)/N(I) over squarefree
    ideals, and theta(X), psi(X) over primes and prime powers."""
    cps = _validate_checkpoints(checkpoints)
    if c_k is None:
        c_k = residue(spec, cps[-1])
    ctx = _series_context(spec, None, cps, boundary_inclusive)
    parts = _run_stripes("mertens", ctx, workers)
    mu_rows = _merge_int_rows(parts, lambda p: p[0])
    float_rows = _merge_float_rows(parts, lambda p: (p[1], p[2]))
    rows: dict[tuple[str, str], tuple] = {}
    refs: dict[tuple[str, str], tuple | None] = {}
    rows[("mertens_mu", "")] = _prefix_ints(mu_rows[0])
    refs[("mertens_mu", "")] = None
    rows[("mertens_mu_over_norm", "")] = _prefix_values(float_rows[0])
    refs[("mertens_mu_over_norm", "")] = None
    rows[("mertens_mu_log_over_norm", "")] = _prefix_values(float_rows[1])
    refs[("mertens_mu_log_over_norm", "")] = tuple(-1.0 / c_k for _ in cps)
    rows[("theta", "")] = _prefix_values(float_rows[2])
    refs[("theta", "")] = tuple(float(x) for x in cps)
    rows[("psi", "")] = _prefix_values(float_rows[3])
    refs[("psi", "")] = tuple(float(x) for x in cps)
    return SumSeries(cps, boundary_inclusive, rows, refs)


def qc_series(spec: NumberFieldSpec, ext: RelativeExtension,
              checkpoints: Sequence[int], *, boundary_inclusive: bool = True,
              workers: int = 1, c_k: float | None = None) -> SumSeries:
    """Exact sums of Q_C(I), Q(I) and Q_C(I)/N(I) over all ideals with
    2 <= N(I) <= X. Q counts maximal-norm prime divisors; Q_C additionally
    requires the class-membership predicate. The constant of the
    log-comparison row is fitted per class over the checkpoints and stored
    in SumSeries.kprime."""
    cps = _validate_checkpoints(checkpoints)
    if c_k is None:
        c_k = residue(spec, cps[-1])
    ctx = _series_context(spec, ext, cps, boundary_inclusive)
    parts = _run_stripes("qc", ctx, workers)
    q_rows = _merge_int_rows(parts, lambda p: p[0])
    qc_rows = _merge_int_rows(parts, lambda p: p[1])
    float_rows = _merge_float_rows(parts, lambda p: (p[2], p[3]))
    rows: dict[tuple[str, str], tuple] = {}
    refs: dict[tuple[str, str], tuple | None] = {}
    rows[("Q_sum", "")] = _prefix_ints(q_rows[0])
    refs[("Q_sum", "")] = None
    kprime: dict[str, float] = {}
    for i, entry in enumerate(ext.classes):
        w = float(entry.weight)
        key = ("Q_C_sum", entry.label)
        rows[key] = _prefix_ints(qc_rows[i])
        refs[key] = tuple(c_k * w * x for x in cps)
        nkey = ("Q_C_over_norm", entry.label)
        vals = _prefix_values(float_rows[i])
        rows[nkey] = vals
        refs[nkey] = None
        # least squares with only the intercept free: the mean residual
        resid = [v - c_k * w * math.log(x) for v, x in zip(vals, cps)]
        kprime[entry.label] = math.fsum(resid) / len(resid)
    out = SumSeries(cps, boundary_inclusive, rows, refs)
    out.kprime = kprime
    return out
