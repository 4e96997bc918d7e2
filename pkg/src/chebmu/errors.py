"""Exception types shared across the package."""


class NormOverflowError(OverflowError):
    """A norm, bound, or exponent budget left the supported 62-bit range."""


class IndexDivisorError(RuntimeError):
    """A prime divides the index [O_K : Z[theta]]; polynomial factorization
    mod p does not give the true ideal decomposition for this field/prime."""

    def __init__(self, p: int, field_name: str = ""):
        self.p = p
        self.field_name = field_name
        where = f" in {field_name}" if field_name else ""
        super().__init__(f"prime {p} divides the index [O_K : Z[theta]]{where}; "
                         "decomposition via the minimal polynomial is not valid")


class UnclassifiablePrimeError(RuntimeError):
    """An unramified prime's factor pattern is missing from the class table."""

    def __init__(self, p: int, f: int, pattern):
        self.p = p
        self.f = f
        self.pattern = pattern
        super().__init__(f"prime p={p} (residue degree {f}) has factor pattern "
                         f"{pattern} not present in the class table")


class AmbiguousClassTableError(ValueError):
    """Two conjugacy classes share a factor-degree pattern."""


class InvariantsUnavailableError(LookupError):
    """Field invariants (r1, r2, h, Reg, w, disc) were not supplied."""


class ConfigError(ValueError):
    """A field or extension config file failed to parse or validate."""
