"""Self-verification suites behind the CLI: exhaustive duality, decomposition
cross-checks, the salient partition identity, and census-vs-weight agreement
(which is what catches a class table whose patterns were swapped)."""

from __future__ import annotations

from dataclasses import dataclass, field

from .galois import RelativeExtension, eligible_min_code, prime_census
from .moebius import ArtinClassIs, SplitsCompletely, duality_check, enumerate_squarefree
from .numberfield import NumberFieldSpec, decompose_prime, sieve_primes

MAX_COUNTEREXAMPLES = 10


@dataclass
class VerifyReport:
    bound: int
    suites: list[tuple[str, int]] = field(default_factory=list)  # (name, cases)
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def lines(self) -> list[str]:
        out = []
        for name, cases in self.suites:
            status = "pass"
            prefix = f"{name} "
            fails = [f for f in self.failures if f.startswith(prefix)]
            if fails:
                status = f"FAIL ({len(fails)} counterexamples)"
            out.append(f"suite={name}\tcases={cases}\t{status}")
        for f in self.failures[:MAX_COUNTEREXAMPLES]:
            out.append(f"counterexample\t{f}")
        return out


def run_verification(spec: NumberFieldSpec, ext: RelativeExtension | None,
                     bound: int, census_tolerance: float = 0.12,
                     census_min_classified: int = 200) -> VerifyReport:
    report = VerifyReport(bound=bound)
    _check_decomposition(spec, min(bound, 1000), report)
    if ext is not None:
        _check_duality(spec, ext, bound, report)
        _check_partition(spec, ext, bound, report)
        _check_census(spec, ext, bound, census_tolerance,
                      census_min_classified, report)
    return report


def _check_decomposition(spec: NumberFieldSpec, bound: int,
                         report: VerifyReport) -> None:
    cases = 0
    for p in sieve_primes(bound):
        rep = decompose_prime(spec, p)
        if rep.index_divisor:
            report.failures.append(
                f"decomposition p={p}: index divisor; field outside guaranteed scope")
            continue
        cases += 1
        total = sum(q.e * q.f for q in rep.primes)
        if total != spec.degree:
            report.failures.append(
                f"decomposition p={p}: sum e*f = {total} != degree {spec.degree}")
        if p <= 300:
            roots = sum(
                1 for r in range(p)
                if sum(c * pow(r, i, p) for i, c in enumerate(spec.min_poly)) % p == 0)
            got = len({q.slot for q in rep.primes if q.f == 1})
            if got != roots:
                report.failures.append(
                    f"decomposition p={p}: {got} degree-1 primes vs {roots} roots")
    report.suites.append(("decomposition", cases))


def _check_duality(spec: NumberFieldSpec, ext: RelativeExtension, bound: int,
                   report: VerifyReport) -> None:
    preds = [ArtinClassIs(ext, lab) for lab in ext.labels()]
    preds.append(SplitsCompletely(ext))
    cases = 0
    for ideal in enumerate_squarefree(spec, bound):
        for pred in preds:
            cases += 1
            chk = duality_check(spec, ext, ideal, pred)
            if not chk.equal:
                report.failures.append(
                    f"duality N(I)={ideal.norm} pred={pred.name}: "
                    f"lhs={chk.lhs} rhs={chk.rhs}")
                if len(report.failures) >= MAX_COUNTEREXAMPLES:
                    report.suites.append(("duality", cases))
                    return
    report.suites.append(("duality", cases))


def _check_partition(spec: NumberFieldSpec, ext: RelativeExtension, bound: int,
                     report: VerifyReport) -> None:
    salient_classified = salient_ram = non_salient = total = 0
    for ideal in enumerate_squarefree(spec, bound):
        total += 1
        if not ideal.salient:
            non_salient += 1
        elif eligible_min_code(ext, ideal.factors[0]) >= 0:
            salient_classified += 1
        else:
            salient_ram += 1
    if salient_classified + salient_ram + non_salient != total:
        report.failures.append(
            f"partition {salient_classified}+{salient_ram}+{non_salient} != {total}")
    report.suites.append(("partition", total))


def _check_census(spec: NumberFieldSpec, ext: RelativeExtension, bound: int,
                  tolerance: float, min_classified: int,
                  report: VerifyReport) -> None:
    rep = prime_census(spec, ext, bound)
    classified = sum(rep.counts.values())
    if classified < min_classified:
        report.suites.append(("census", 0))  # not enough data to judge
        return
    for lab, w in rep.weights.items():
        dev = abs(rep.ratios[lab] - w)
        if dev > tolerance:
            report.failures.append(
                f"census class={lab}: ratio {rep.ratios[lab]:.4f} vs weight "
                f"{w:.4f} (|diff| {dev:.4f} > {tolerance}); patterns and "
                "weights likely mismatched")
    report.suites.append(("census", classified))
