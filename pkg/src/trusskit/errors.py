"""Exceptions and enumeration guards shared across the package."""

from __future__ import annotations

DEFAULT_MAX_ENUM = 1_000_000
ORDER_CAP = 2**32


class TrussKitError(Exception):
    """Base class for all package-specific errors."""


class BoundExceeded(TrussKitError):
    """An enumeration or table materialization would exceed the configured cap."""

    def __init__(self, what: str, needed: int, limit: int) -> None:
        super().__init__(
            f"{what} would enumerate {needed} objects; cap is {limit} "
            f"(raise max_enum to override)"
        )
        self.what = what
        self.needed = needed
        self.limit = limit


class NotAHeapMorphism(TrussKitError):
    """A value table does not split into an additive part plus a translation."""


class NotAnIsomorphism(TrussKitError):
    """The given morphism is not a bijective structure-preserving map."""


class InvalidEquivalence(TrussKitError):
    """A claimed module equivalence fails its defining identities."""


def resolve_max_enum(value: int | None) -> int:
    """Turn an optional user cap into an effective one (default 10**6 objects)."""
    if value is None:
        return DEFAULT_MAX_ENUM
    value = int(value)
    if value < 1:
        raise ValueError(f"max_enum must be positive, got {value}")
    return value


def guard(needed: int, limit: int, what: str) -> None:
    if needed > limit:
        raise BoundExceeded(what, needed, limit)
