"""Artin symbols via Frobenius cycle types: the factor-degree pattern of the
defining polynomial of L/K over the residue field O_K/p identifies the
conjugacy class, for groups whose classes are separated by cycle type.

Classification depends only on (p, f), never on the slot, so results are
cached per extension.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .analytic import li
from .errors import AmbiguousClassTableError, UnclassifiablePrimeError
from .finitefield import pattern_over_extension
from .numberfield import NumberFieldSpec, PrimeIdeal, prime_ideal_stream


@dataclass(frozen=True)
class ClassEntry:
    """One conjugacy class: display label, cycle type as a sorted degree
    tuple, and exact weight |C|/|G|."""

    label: str
    pattern: tuple[int, ...]
    weight: Fraction


@dataclass(frozen=True)
class ArtinClass:
    label: str


@dataclass(frozen=True)
class RamifiedInL:
    pass


@dataclass(frozen=True)
class Unclassifiable:
    pattern: tuple[int, ...]


ArtinResult = ArtinClass | RamifiedInL | Unclassifiable

RAMIFIED = RamifiedInL()


@dataclass
class RelativeExtension:
    """Galois extension L/K given by a monic integer polynomial g plus the
    cycle-type class table. Immutable after construction except for the
    per-(p, f) classification cache."""

    g: tuple[int, ...]
    group_order: int
    classes: tuple[ClassEntry, ...]
    _by_pattern: dict[tuple[int, ...], int] = field(
        default_factory=dict, repr=False, compare=False)
    _cache: dict[tuple[int, int], int] = field(
        default_factory=dict, repr=False, compare=False)

    @classmethod
    def create(cls, g: Sequence[int], group_order: int,
               classes: Sequence[tuple[str, Sequence[int], Fraction]],
               ) -> "RelativeExtension":
        gt = tuple(int(c) for c in g)
        deg = len(gt) - 1
        if deg < 1 or gt[-1] != 1:
            raise ValueError("g must be monic of degree >= 1")
        if group_order < 1:
            raise ValueError("group_order must be >= 1")
        entries = []
        seen: dict[tuple[int, ...], str] = {}
        total = Fraction(0)
        for label, pattern, weight in classes:
            pat = tuple(sorted(int(d) for d in pattern))
            if sum(pat) != deg:
                raise ValueError(
                    f"class {label!r}: pattern {pat} does not sum to deg g = {deg}")
            if pat in seen:
                raise AmbiguousClassTableError(
                    f"classes {seen[pat]!r} and {label!r} share the cycle type "
                    f"{pat}; cycle types cannot separate them")
            if not (0 < weight <= 1):
                raise ValueError(f"class {label!r}: weight {weight} out of (0, 1]")
            seen[pat] = label
            entries.append(ClassEntry(label=label, pattern=pat, weight=weight))
            total += weight
        if total != 1:
            raise ValueError(f"class weights sum to {total}, expected 1")
        ext = cls(g=gt, group_order=group_order, classes=tuple(entries))
        ext._by_pattern = {e.pattern: i for i, e in enumerate(ext.classes)}
        return ext

    @property
    def degree(self) -> int:
        return len(self.g) - 1

    def labels(self) -> tuple[str, ...]:
        return tuple(e.label for e in self.classes)

    # internal integer codes: >= 0 class index, -1 ramified in L,
    # -2 pattern missing from the table
    RAMIFIED_CODE = -1
    UNKNOWN_CODE = -2

    def class_code(self, p: int, f: int) -> int:
        key = (p, f)
        code = self._cache.get(key)
        if code is None:
            pat = pattern_over_extension(self.g, p, f)
            if not pat.squarefree:
                code = self.RAMIFIED_CODE
            else:
                code = self._by_pattern.get(pat.degrees(), self.UNKNOWN_CODE)
            self._cache[key] = code
        return code


def artin_class(ext: RelativeExtension, prime: PrimeIdeal) -> ArtinResult:
    """Artin symbol of a prime of K in L/K by the residue-field cycle type.

    A non-squarefree pattern means the prime ramifies in L; a squarefree
    pattern absent from the class table is reported, not raised, so callers
    can decide whether a wrong table is fatal.
    """
    code = ext.class_code(prime.p, prime.f)
    if code == RelativeExtension.RAMIFIED_CODE:
        return RAMIFIED
    if code == RelativeExtension.UNKNOWN_CODE:
        return Unclassifiable(
            pattern_over_extension(ext.g, prime.p, prime.f).degrees())
    return ArtinClass(ext.classes[code].label)


def eligible_min_code(ext: RelativeExtension, prime: PrimeIdeal) -> int:
    """Class index if the prime can carry class membership, else -1.

    Membership in the salient-ideal sets requires the minimal prime to be
    unramified both over Q (e = 1) and in L/K (squarefree pattern); this is
    the convention under which the worked examples' tables reproduce.
    Raises for an unramified prime whose pattern is missing from the table.
    """
    if prime.e > 1:
        return -1
    code = ext.class_code(prime.p, prime.f)
    if code == RelativeExtension.UNKNOWN_CODE:
        raise UnclassifiablePrimeError(
            prime.p, prime.f,
            pattern_over_extension(ext.g, prime.p, prime.f).degrees())
    return code


def classify_stream(ext: RelativeExtension,
                    primes: Sequence[PrimeIdeal]) -> list[int]:
    """eligible_min_code for every prime in the stream."""
    return [eligible_min_code(ext, q) for q in primes]


@dataclass(frozen=True)
class CensusReport:
    """Chebotarev head-count: classified primes per class against the
    Lagarias-Odlyzko main term weight * Li(X)."""

    x_max: int
    total: int
    counts: dict[str, int]
    ramified: int
    ratios: dict[str, float]
    weights: dict[str, float]
    li_value: float
    li_deviation: dict[str, float]


def prime_census(spec: NumberFieldSpec, ext: RelativeExtension,
                 x_max: int) -> CensusReport:
    """Count classified primes of norm <= x_max per conjugacy class.

    The ramified tally covers primes with e > 1 or a non-squarefree pattern;
    an unramified prime with an unknown pattern raises (wrong class table).
    """
    stream = prime_ideal_stream(spec, x_max)
    counts = [0] * len(ext.classes)
    ramified = 0
    for q in stream:
        code = eligible_min_code(ext, q)
        if code < 0:
            ramified += 1
        else:
            counts[code] += 1
    total = len(stream)
    classified = sum(counts)
    li_x = li(x_max) if x_max >= 2 else 0.0
    labels = ext.labels()
    by_label = dict(zip(labels, counts))
    ratios = {lab: (by_label[lab] / classified if classified else 0.0)
              for lab in labels}
    weights = {e.label: float(e.weight) for e in ext.classes}
    deviation = {e.label: abs(by_label[e.label] - float(e.weight) * li_x)
                 for e in ext.classes}
    return CensusReport(x_max=x_max, total=total, counts=by_label,
                        ramified=ramified, ratios=ratios, weights=weights,
                        li_value=li_x, li_deviation=deviation)
