"""Chebotarev densities as Mobius-weighted partial sums over ideals of a
number field, with the supporting prime-ideal, Artin-symbol, Dickman, and
Mertens machinery."""

from .analytic import (
    DickmanTable,
    SmoothCount,
    default_table,
    dickman_rho,
    gamma_bound,
    li,
    smooth_count,
)
from .errors import (
    AmbiguousClassTableError,
    ConfigError,
    IndexDivisorError,
    InvariantsUnavailableError,
    NormOverflowError,
    UnclassifiablePrimeError,
)
from .finitefield import (
    FactorPattern,
    FpPoly,
    ResidueField,
    ddf_pattern,
    factor_multiplicities,
    find_irreducible,
    is_irreducible,
    pattern_over_extension,
)
from .galois import (
    ArtinClass,
    ArtinResult,
    CensusReport,
    ClassEntry,
    RamifiedInL,
    RelativeExtension,
    Unclassifiable,
    artin_class,
    prime_census,
)
from .configs import bundled_names, load_extension, load_field
from .moebius import (
    ArtinClassIs,
    DualityCheck,
    LiesOver,
    MinPrimePredicate,
    SplitsCompletely,
    SquarefreeIdeal,
    SumSeries,
    duality_check,
    enumerate_squarefree,
    mertens_series,
    qc_series,
    s_c_series,
)
from .numberfield import (
    DecompositionReport,
    FieldInvariants,
    IdealCount,
    NumberFieldSpec,
    PrimeIdeal,
    count_ideals,
    decompose_prime,
    is_index_divisor,
    poly_discriminant,
    prime_ideal_stream,
    residue,
    residue_from_invariants,
    sieve_primes,
)
from .verify import VerifyReport, run_verification

__version__ = "0.1.0"
